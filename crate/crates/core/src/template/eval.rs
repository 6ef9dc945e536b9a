//! Template evaluation, generic over the value domain.
//!
//! The same tree walk produces exact rational functions, numbers at a point,
//! degree bounds, or the set of free variables, depending on the [`Domain`].

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use super::ast::{Affine, BigOpKind, BinOp, Exponent, Node, NodeKind};
use super::error::EvalError;
use crate::exact::rational::{factorial, pow_u32};
use crate::exact::{Factored, MultiPoly, Rational, VarId};
use crate::symfun::q_binomial;

/// Arithmetic over the values a template evaluates to.
pub trait Domain {
    type Value: Clone;

    fn constant(&self, c: Rational) -> Self::Value;
    fn var(&self, v: VarId) -> Result<Self::Value, EvalError>;
    fn poly(&self, p: &MultiPoly) -> Result<Self::Value, EvalError>;
    fn add(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn sub(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn mul(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn div(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value, EvalError>;
    fn neg(&self, a: Self::Value) -> Self::Value;
    fn pow(&self, a: Self::Value, k: u32) -> Self::Value;
}

/// Integer context of an evaluation: `n`, the permutation and parameters.
#[derive(Clone, Copy, Debug)]
pub struct Env<'a> {
    pub n: i64,
    /// 1-based images `σ(1), …, σ(m)`, if slots are to be resolved.
    pub sigma: Option<&'a [u32]>,
    pub params: &'a BTreeMap<String, i64>,
}

impl<'a> Env<'a> {
    pub fn new(n: i64, sigma: Option<&'a [u32]>, params: &'a BTreeMap<String, i64>) -> Self {
        Env { n, sigma, params }
    }
}

pub fn evaluate<D: Domain>(d: &D, node: &Node, env: &Env) -> Result<D::Value, EvalError> {
    let mut bound = Vec::new();
    Walker { d, env }.eval(node, &mut bound)
}

struct Walker<'a, 'e, D> {
    d: &'a D,
    env: &'a Env<'e>,
}

impl<D: Domain> Walker<'_, '_, D> {
    fn lookup(&self, name: &str, bound: &[(String, i64)]) -> Option<i64> {
        if let Some((_, v)) = bound.iter().rev().find(|(k, _)| k == name) {
            return Some(*v);
        }
        if name == "n" {
            return Some(self.env.n);
        }
        self.env.params.get(name).copied()
    }

    fn affine(&self, a: &Affine, bound: &[(String, i64)]) -> Result<i64, EvalError> {
        a.eval(|k| self.lookup(k, bound)).map_err(EvalError::UnboundParameter)
    }

    fn positive(&self, a: &Affine, bound: &[(String, i64)]) -> Result<u32, EvalError> {
        let i = self.affine(a, bound)?;
        if i < 1 {
            return Err(EvalError::IndexOutOfRange { index: i });
        }
        u32::try_from(i).map_err(|_| EvalError::IndexOutOfRange { index: i })
    }

    fn int(&self, i: i64) -> D::Value {
        self.d.constant(Rational::from_integer(i.into()))
    }

    fn eval(&self, node: &Node, bound: &mut Vec<(String, i64)>) -> Result<D::Value, EvalError> {
        let d = self.d;
        Ok(match &node.kind {
            NodeKind::Const(c) => d.constant(c.clone()),
            NodeKind::Scalar(v) => d.var(*v)?,
            NodeKind::Lambda(a) => d.var(VarId::Lambda(self.positive(a, bound)?))?,
            NodeKind::X(a) => d.var(VarId::X(self.positive(a, bound)?))?,
            NodeKind::Yvec(a) => d.var(VarId::Yvec(self.positive(a, bound)?))?,
            NodeKind::Slot(a) => {
                let sigma = self.env.sigma.ok_or(EvalError::NoPermutation)?;
                let i = self.affine(a, bound)?;
                if i < 1 || i as usize > sigma.len() {
                    return Err(EvalError::SlotOutOfRange {
                        index: i,
                        max: sigma.len() as i64,
                    });
                }
                d.var(VarId::Lambda(sigma[i as usize - 1]))?
            }
            NodeKind::Index(name) => {
                let v = self
                    .lookup(name, bound)
                    .ok_or_else(|| EvalError::UnboundParameter(name.clone()))?;
                self.int(v)
            }
            NodeKind::Neg(a) => {
                let v = self.eval(a, bound)?;
                d.neg(v)
            }
            NodeKind::Binary(op, a, b) => {
                let x = self.eval(a, bound)?;
                let y = self.eval(b, bound)?;
                match op {
                    BinOp::Add => d.add(x, y),
                    BinOp::Sub => d.sub(x, y),
                    BinOp::Mul => d.mul(x, y),
                    BinOp::Div => d.div(x, y)?,
                }
            }
            NodeKind::Pow(base, e) => {
                let k = match e {
                    Exponent::Literal(k) => *k as i64,
                    Exponent::Param(p) => self
                        .lookup(p, bound)
                        .ok_or_else(|| EvalError::UnboundParameter(p.clone()))?,
                };
                if k < 0 {
                    return Err(EvalError::NegativeExponent(k));
                }
                let v = self.eval(base, bound)?;
                d.pow(v, k as u32)
            }
            NodeKind::BigOp {
                kind,
                var,
                lo,
                hi,
                body,
            } => {
                let lo = self.affine(lo, bound)?;
                let hi = self.affine(hi, bound)?;
                let mut acc: Option<D::Value> = None;
                for i in lo..=hi {
                    bound.push((var.clone(), i));
                    let v = self.eval(body, bound);
                    bound.pop();
                    let v = v?;
                    acc = Some(match (acc, kind) {
                        (None, _) => v,
                        (Some(a), BigOpKind::Sum) => d.add(a, v),
                        (Some(a), BigOpKind::Prod) => d.mul(a, v),
                    });
                }
                match (acc, kind) {
                    (Some(a), _) => a,
                    (None, BigOpKind::Sum) => self.int(0),
                    (None, BigOpKind::Prod) => self.int(1),
                }
            }
            NodeKind::Binom(top, k) => {
                let k = self.affine(k, bound)?;
                if k < 0 {
                    return Ok(self.int(0));
                }
                let x = self.eval(top, bound)?;
                let mut acc = self.int(1);
                for i in 0..k {
                    acc = d.mul(acc, d.sub(x.clone(), self.int(i)));
                }
                let kf = Rational::from_integer(factorial(k as u64));
                d.mul(acc, d.constant(kf.recip()))
            }
            NodeKind::Fact(a) => {
                let k = self.affine(a, bound)?;
                if k < 0 {
                    return Err(EvalError::NegativeFactorial(k));
                }
                d.constant(Rational::from_integer(factorial(k as u64)))
            }
            NodeKind::Sign(a) => {
                let k = self.affine(a, bound)?;
                self.int(if k.rem_euclid(2) == 0 { 1 } else { -1 })
            }
            NodeKind::QBinom(a, b) => {
                let a = self.affine(a, bound)?;
                let b = self.affine(b, bound)?;
                d.poly(&q_binomial(a, b))?
            }
        })
    }
}

/// Exact evaluation at a point; every variable must be bound.
pub struct Numeric<'a> {
    pub point: &'a BTreeMap<VarId, Rational>,
}

impl Domain for Numeric<'_> {
    type Value = Rational;

    fn constant(&self, c: Rational) -> Rational {
        c
    }

    fn var(&self, v: VarId) -> Result<Rational, EvalError> {
        self.point.get(&v).cloned().ok_or(EvalError::MissingAssignment(v))
    }

    fn poly(&self, p: &MultiPoly) -> Result<Rational, EvalError> {
        Ok(p.eval(self.point)?)
    }

    fn add(&self, a: Rational, b: Rational) -> Rational {
        a + b
    }

    fn sub(&self, a: Rational, b: Rational) -> Rational {
        a - b
    }

    fn mul(&self, a: Rational, b: Rational) -> Rational {
        a * b
    }

    fn div(&self, a: Rational, b: Rational) -> Result<Rational, EvalError> {
        if b.is_zero() {
            return Err(EvalError::PoleAtPoint);
        }
        Ok(a / b)
    }

    fn neg(&self, a: Rational) -> Rational {
        -a
    }

    fn pow(&self, a: Rational, k: u32) -> Rational {
        pow_u32(&a, k)
    }
}

/// Symbolic evaluation into factored rational functions. Variables listed in
/// `bindings` are replaced by their values; the rest stay symbolic.
#[derive(Default)]
pub struct Exact<'a> {
    pub bindings: Option<&'a BTreeMap<VarId, Rational>>,
}

impl<'a> Exact<'a> {
    pub fn symbolic() -> Self {
        Exact { bindings: None }
    }

    pub fn partial(bindings: &'a BTreeMap<VarId, Rational>) -> Self {
        Exact {
            bindings: Some(bindings),
        }
    }
}

impl Domain for Exact<'_> {
    type Value = Factored;

    fn constant(&self, c: Rational) -> Factored {
        Factored::constant(c)
    }

    fn var(&self, v: VarId) -> Result<Factored, EvalError> {
        if let Some(c) = self.bindings.and_then(|b| b.get(&v)) {
            return Ok(Factored::constant(c.clone()));
        }
        Ok(Factored::from_poly(MultiPoly::var(v)))
    }

    fn poly(&self, p: &MultiPoly) -> Result<Factored, EvalError> {
        Ok(match self.bindings {
            Some(b) => Factored::from_poly(p.substitute(b)),
            None => Factored::from_poly(p.clone()),
        })
    }

    fn add(&self, a: Factored, b: Factored) -> Factored {
        a.add(&b)
    }

    fn sub(&self, a: Factored, b: Factored) -> Factored {
        a.sub(&b)
    }

    fn mul(&self, a: Factored, b: Factored) -> Factored {
        a.mul(&b)
    }

    fn div(&self, a: Factored, b: Factored) -> Result<Factored, EvalError> {
        if b.is_zero() {
            return Err(if self.bindings.is_some_and(|b| !b.is_empty()) {
                EvalError::PoleAtPoint
            } else {
                EvalError::DivisionByZeroFunction
            });
        }
        Ok(a.div(&b)?)
    }

    fn neg(&self, a: Factored) -> Factored {
        a.neg()
    }

    fn pow(&self, a: Factored, k: u32) -> Factored {
        a.pow(k)
    }
}

/// Collects the variables a template references.
pub struct VarCollector;

impl Domain for VarCollector {
    type Value = BTreeSet<VarId>;

    fn constant(&self, _: Rational) -> Self::Value {
        BTreeSet::new()
    }

    fn var(&self, v: VarId) -> Result<Self::Value, EvalError> {
        Ok([v].into())
    }

    fn poly(&self, p: &MultiPoly) -> Result<Self::Value, EvalError> {
        Ok(p.vars())
    }

    fn add(&self, mut a: Self::Value, b: Self::Value) -> Self::Value {
        a.extend(b);
        a
    }

    fn sub(&self, a: Self::Value, b: Self::Value) -> Self::Value {
        self.add(a, b)
    }

    fn mul(&self, a: Self::Value, b: Self::Value) -> Self::Value {
        self.add(a, b)
    }

    fn div(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value, EvalError> {
        Ok(self.add(a, b))
    }

    fn neg(&self, a: Self::Value) -> Self::Value {
        a
    }

    fn pow(&self, a: Self::Value, k: u32) -> Self::Value {
        if k == 0 {
            BTreeSet::new()
        } else {
            a
        }
    }
}

/// Convenience: evaluate to a factored value with everything symbolic.
pub fn eval_exact(node: &Node, env: &Env) -> Result<Factored, EvalError> {
    evaluate(&Exact::symbolic(), node, env)
}

/// Convenience: evaluate to a number at `point`.
pub fn eval_numeric(node: &Node, env: &Env, point: &BTreeMap<VarId, Rational>) -> Result<Rational, EvalError> {
    evaluate(&Numeric { point }, node, env)
}
