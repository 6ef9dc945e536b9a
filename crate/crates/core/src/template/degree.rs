//! Degree-bound analysis.
//!
//! A value is tracked as `N / D` where `D` is an exact multiset of monic
//! denominator factors and `N` is known only through an upper bound on its
//! degree in each variable. Sums take the least common multiset of
//! denominators, products add bounds, powers multiply them. Small values are
//! also kept exactly so that division (which must know the divisor's
//! numerator factors) stays possible.

use std::collections::BTreeMap;

use super::error::EvalError;
use super::eval::Domain;
use crate::exact::{Factored, MultiPoly, Rational, VarId};

/// Factored values whose factors hold more terms than this are demoted to
/// pure bounds.
const EXACT_TERM_CAP: usize = 400;

pub type FactorSet = BTreeMap<MultiPoly, u32>;
pub type DegreeMap = BTreeMap<VarId, u32>;

#[derive(Clone, Debug)]
pub enum DegVal {
    Exact(Factored),
    Bound { num: DegreeMap, den: FactorSet },
}

impl DegVal {
    /// Numerator degree bounds and the denominator multiset.
    pub fn parts(&self) -> (DegreeMap, FactorSet) {
        match self {
            DegVal::Exact(f) => {
                let mut num = DegreeMap::new();
                if !f.is_zero() {
                    for (p, e) in f.numerator_factors() {
                        for v in p.vars() {
                            *num.entry(v).or_insert(0) += p.degree_in(v) * e;
                        }
                    }
                }
                let den = f.denominator_factors().map(|(p, e)| (p.clone(), e)).collect();
                (num, den)
            }
            DegVal::Bound { num, den } => (num.clone(), den.clone()),
        }
    }

    fn from_exact(f: Factored) -> DegVal {
        let size: usize = f
            .numerator_factors()
            .chain(f.denominator_factors())
            .map(|(p, _)| p.num_terms())
            .sum();
        if size <= EXACT_TERM_CAP {
            DegVal::Exact(f)
        } else {
            let (num, den) = DegVal::Exact(f).parts();
            DegVal::Bound { num, den }
        }
    }
}

pub fn factor_degree(den: &FactorSet, v: VarId) -> u32 {
    den.iter().map(|(p, e)| p.degree_in(v) * e).sum()
}

pub fn max_merge(a: &FactorSet, b: &FactorSet) -> FactorSet {
    let mut out = a.clone();
    for (p, &e) in b {
        let slot = out.entry(p.clone()).or_insert(0);
        *slot = (*slot).max(e);
    }
    out
}

fn sum_merge(a: &FactorSet, b: &FactorSet) -> FactorSet {
    let mut out = a.clone();
    for (p, &e) in b {
        *out.entry(p.clone()).or_insert(0) += e;
    }
    out
}

/// Degree bound of `common · value` in `v`, where `common` is a multiple of
/// the value's denominator.
pub fn cleared_degree(num: &DegreeMap, den: &FactorSet, common: &FactorSet, v: VarId) -> u32 {
    num.get(&v).copied().unwrap_or(0) + factor_degree(common, v) - factor_degree(den, v)
}

/// The degree-bound domain; variables in `bindings` count as constants.
#[derive(Default)]
pub struct Degrees<'a> {
    pub bindings: Option<&'a BTreeMap<VarId, Rational>>,
}

impl Degrees<'_> {
    fn bound_add(a: &DegVal, b: &DegVal) -> DegVal {
        let (na, da) = a.parts();
        let (nb, db) = b.parts();
        let den = max_merge(&da, &db);
        let mut num = DegreeMap::new();
        let vars: std::collections::BTreeSet<VarId> = na
            .keys()
            .chain(nb.keys())
            .copied()
            .chain(den.keys().flat_map(|p| p.vars()))
            .collect();
        for v in vars {
            let d = cleared_degree(&na, &da, &den, v).max(cleared_degree(&nb, &db, &den, v));
            if d > 0 {
                num.insert(v, d);
            }
        }
        DegVal::Bound { num, den }
    }
}

impl Domain for Degrees<'_> {
    type Value = DegVal;

    fn constant(&self, c: Rational) -> DegVal {
        DegVal::Exact(Factored::constant(c))
    }

    fn var(&self, v: VarId) -> Result<DegVal, EvalError> {
        if let Some(c) = self.bindings.and_then(|b| b.get(&v)) {
            return Ok(DegVal::Exact(Factored::constant(c.clone())));
        }
        Ok(DegVal::Exact(Factored::from_poly(MultiPoly::var(v))))
    }

    fn poly(&self, p: &MultiPoly) -> Result<DegVal, EvalError> {
        let p = match self.bindings {
            Some(b) => p.substitute(b),
            None => p.clone(),
        };
        Ok(DegVal::from_exact(Factored::from_poly(p)))
    }

    fn add(&self, a: DegVal, b: DegVal) -> DegVal {
        match (&a, &b) {
            (DegVal::Exact(x), DegVal::Exact(y)) => DegVal::from_exact(x.add(y)),
            _ => Self::bound_add(&a, &b),
        }
    }

    fn sub(&self, a: DegVal, b: DegVal) -> DegVal {
        match (&a, &b) {
            (DegVal::Exact(x), DegVal::Exact(y)) => DegVal::from_exact(x.sub(y)),
            _ => Self::bound_add(&a, &b),
        }
    }

    fn mul(&self, a: DegVal, b: DegVal) -> DegVal {
        match (&a, &b) {
            (DegVal::Exact(x), DegVal::Exact(y)) => DegVal::from_exact(x.mul(y)),
            _ => {
                let (na, da) = a.parts();
                let (nb, db) = b.parts();
                let mut num = na;
                for (v, d) in nb {
                    *num.entry(v).or_insert(0) += d;
                }
                DegVal::Bound {
                    num,
                    den: sum_merge(&da, &db),
                }
            }
        }
    }

    fn div(&self, a: DegVal, b: DegVal) -> Result<DegVal, EvalError> {
        let f = match b {
            DegVal::Exact(f) => f,
            DegVal::Bound { .. } => {
                return Err(EvalError::DegreeBoundUnavailable(
                    "divisor too large to track exactly".into(),
                ))
            }
        };
        let inv = f.recip().map_err(|_| EvalError::DivisionByZeroFunction)?;
        Ok(match a {
            DegVal::Exact(x) => DegVal::from_exact(x.mul(&inv)),
            bound => self.mul(bound, DegVal::Exact(inv)),
        })
    }

    fn neg(&self, a: DegVal) -> DegVal {
        match a {
            DegVal::Exact(x) => DegVal::Exact(x.neg()),
            b => b,
        }
    }

    fn pow(&self, a: DegVal, k: u32) -> DegVal {
        match a {
            DegVal::Exact(x) => DegVal::from_exact(x.pow(k)),
            DegVal::Bound { num, den } => DegVal::Bound {
                num: num.into_iter().map(|(v, d)| (v, d * k)).collect(),
                den: den.into_iter().map(|(p, e)| (p, e * k)).collect(),
            },
        }
    }
}
