use std::collections::BTreeMap;
use std::fmt;

use crate::exact::{Rational, VarId};

/// Byte range `[start, end)` into the source text.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        SourceSpan { start, end }
    }

    pub fn join(self, other: SourceSpan) -> SourceSpan {
        SourceSpan::new(self.start.min(other.start), self.end.max(other.end))
    }
}

/// An affine integer expression `c0 + Σ c_i·name_i` over `n`, bound
/// indices and parameters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Affine {
    pub constant: i64,
    pub coeffs: BTreeMap<String, i64>,
}

impl Affine {
    pub fn constant(c: i64) -> Self {
        Affine {
            constant: c,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn name(name: &str) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(name.to_string(), 1);
        Affine { constant: 0, coeffs }
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Affine) -> Affine {
        let mut out = self.clone();
        out.constant += other.constant;
        for (k, v) in &other.coeffs {
            *out.coeffs.entry(k.clone()).or_insert(0) += v;
        }
        out.coeffs.retain(|_, v| *v != 0);
        out
    }

    pub fn scale(&self, c: i64) -> Affine {
        if c == 0 {
            return Affine::constant(0);
        }
        Affine {
            constant: self.constant * c,
            coeffs: self.coeffs.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Evaluates with `lookup` resolving every name.
    pub fn eval(&self, lookup: impl Fn(&str) -> Option<i64>) -> Result<i64, String> {
        let mut acc = self.constant;
        for (k, c) in &self.coeffs {
            acc += c * lookup(k).ok_or_else(|| k.clone())?;
        }
        Ok(acc)
    }

    pub fn rename(&self, from: &str, to: &str) -> Affine {
        let mut out = Affine::constant(self.constant);
        for (k, v) in &self.coeffs {
            let key = if k == from { to.to_string() } else { k.clone() };
            *out.coeffs.entry(key).or_insert(0) += v;
        }
        out.coeffs.retain(|_, v| *v != 0);
        out
    }
}

/// Canonical form: names in sorted order, then the constant; `k+1`, `2*n-1`.
impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, &c) in &self.coeffs {
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.unsigned_abs();
            if mag == 1 {
                write!(f, "{sign}{name}")?;
            } else {
                write!(f, "{sign}{mag}*{name}")?;
            }
            first = false;
        }
        if first {
            write!(f, "{}", self.constant)
        } else if self.constant > 0 {
            write!(f, "+{}", self.constant)
        } else if self.constant < 0 {
            write!(f, "{}", self.constant)
        } else {
            Ok(())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BigOpKind {
    Sum,
    Prod,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Exponent {
    Literal(u32),
    Param(String),
}

/// A syntax tree node. Equality ignores spans.
#[derive(Clone, Debug)]
pub struct Node {
    pub kind: NodeKind,
    pub span: SourceSpan,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Node {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Const(Rational),
    /// One of `Y`, `Z`, `t`, `q`.
    Scalar(VarId),
    /// `L(e)`: a fixed λ.
    Lambda(Affine),
    /// `L(s(e))`: λ at the permuted position σ(e).
    Slot(Affine),
    X(Affine),
    Yvec(Affine),
    /// The integer value of an index, `n` or a parameter.
    Index(String),
    Neg(Box<Node>),
    Binary(BinOp, Box<Node>, Box<Node>),
    Pow(Box<Node>, Exponent),
    BigOp {
        kind: BigOpKind,
        var: String,
        lo: Affine,
        hi: Affine,
        body: Box<Node>,
    },
    /// `binom(x, k)` = x(x−1)…(x−k+1)/k!.
    Binom(Box<Node>, Affine),
    Fact(Affine),
    /// `sign(e)` = (−1)^e.
    Sign(Affine),
    /// Gaussian binomial in `q`.
    QBinom(Affine, Affine),
}

impl Node {
    pub fn new(kind: NodeKind, span: SourceSpan) -> Self {
        Node { kind, span }
    }

    /// Visits every node in pre-order.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Node)) {
        f(self);
        match &self.kind {
            NodeKind::Neg(a) | NodeKind::Pow(a, _) | NodeKind::Binom(a, _) => a.walk(f),
            NodeKind::Binary(_, a, b) => {
                a.walk(f);
                b.walk(f);
            }
            NodeKind::BigOp { body, .. } => body.walk(f),
            _ => {}
        }
    }

    /// Renames every occurrence of bound index `from` bound by a binder
    /// named `from` to `to` (including the binder itself).
    pub fn rename_binder(&self, from: &str, to: &str) -> Node {
        self.rename_inner(from, to, false)
    }

    fn rename_inner(&self, from: &str, to: &str, active: bool) -> Node {
        let r = |a: &Affine| if active { a.rename(from, to) } else { a.clone() };
        let rb = |b: &Node, act: bool| Box::new(b.rename_inner(from, to, act));
        let kind = match &self.kind {
            NodeKind::Lambda(a) => NodeKind::Lambda(r(a)),
            NodeKind::Slot(a) => NodeKind::Slot(r(a)),
            NodeKind::X(a) => NodeKind::X(r(a)),
            NodeKind::Yvec(a) => NodeKind::Yvec(r(a)),
            NodeKind::Index(name) if active && name == from => NodeKind::Index(to.to_string()),
            NodeKind::Neg(a) => NodeKind::Neg(rb(a, active)),
            NodeKind::Binary(op, a, b) => NodeKind::Binary(*op, rb(a, active), rb(b, active)),
            NodeKind::Pow(a, e) => NodeKind::Pow(rb(a, active), e.clone()),
            NodeKind::BigOp {
                kind,
                var,
                lo,
                hi,
                body,
            } => {
                let inner = if var == from { true } else { active };
                NodeKind::BigOp {
                    kind: *kind,
                    var: if var == from { to.to_string() } else { var.clone() },
                    lo: r(lo),
                    hi: r(hi),
                    body: rb(body, inner),
                }
            }
            NodeKind::Binom(a, k) => NodeKind::Binom(rb(a, active), r(k)),
            NodeKind::Fact(a) => NodeKind::Fact(r(a)),
            NodeKind::Sign(a) => NodeKind::Sign(r(a)),
            NodeKind::QBinom(a, b) => NodeKind::QBinom(r(a), r(b)),
            other => other.clone(),
        };
        Node::new(kind, self.span)
    }
}

/// A parsed template together with the parameter names it may reference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Template {
    pub root: Node,
    pub params: Vec<String>,
}

impl Template {
    /// True if the template references a permutation slot `L(s(..))`.
    pub fn has_slots(&self) -> bool {
        let mut found = false;
        self.root.walk(&mut |n| found |= matches!(n.kind, NodeKind::Slot(_)));
        found
    }
}
