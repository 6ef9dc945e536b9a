//! The divided symmetrization operator
//!
//! ```text
//! ⟨f⟩ = Σ_{σ ∈ S_{n+1}} f(λ_σ(1), …, λ_σ(n+1)) ∏_{k=1}^{n} 1/(λ_σ(k) − λ_σ(k+1))
//! ```
//!
//! in symbolic and pointwise form, and the degree classifier for the
//! `S_n` variant with kernel indices `1..n−1`.

mod points;

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

pub use points::{draw_point, with_generic_point, GENERIC_RANGE, POLE_RETRIES};

use crate::exact::{Degree, Factored, LazySum, MultiPoly, RatFunc, Rational, VarId};
use crate::perm::{self, PermError, PermStream, DEFAULT_MAX_M};
use crate::template::{evaluate, Domain, Env, EvalError, Exact, Numeric, Template};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DsError {
    #[error("S_{m} exceeds the permutation limit S_{limit}")]
    SizeLimitExceeded { m: u32, limit: u32 },
    #[error("a denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("no value assigned to {0}")]
    MissingAssignment(VarId),
    #[error("{0} is not one of the symmetrized variables")]
    ForeignVariable(VarId),
    #[error(transparent)]
    Eval(EvalError),
}

impl From<EvalError> for DsError {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::PoleAtPoint => DsError::PoleAtPoint,
            EvalError::MissingAssignment(v) => DsError::MissingAssignment(v),
            e => DsError::Eval(e),
        }
    }
}

impl From<PermError> for DsError {
    fn from(e: PermError) -> Self {
        match e {
            PermError::SizeLimitExceeded { m, limit } => DsError::SizeLimitExceeded { m, limit },
            // m = n + 1 ≥ 1 and at least one chunk are guaranteed by the callers
            other => unreachable!("{other}"),
        }
    }
}

/// A summand over `S_{n+1}`. Unless `kernel_included` is set, the operator
/// multiplies the body by `∏_{k=1}^{n} 1/(λ_σ(k) − λ_σ(k+1))`.
#[derive(Clone, Debug)]
pub struct DsProblem {
    pub body: Template,
    pub n: u32,
    pub kernel_included: bool,
    pub params: BTreeMap<String, i64>,
}

impl DsProblem {
    pub fn new(body: Template, n: u32) -> Self {
        DsProblem {
            body,
            n,
            kernel_included: false,
            params: BTreeMap::new(),
        }
    }

    pub fn kernel_included(mut self, yes: bool) -> Self {
        self.kernel_included = yes;
        self
    }

    pub fn with_params(mut self, params: BTreeMap<String, i64>) -> Self {
        self.params = params;
        self
    }

    fn summand<D: Domain>(&self, d: &D, sigma: &[u32]) -> Result<D::Value, EvalError> {
        let env = Env::new(self.n as i64, Some(sigma), &self.params);
        let mut v = evaluate(d, &self.body.root, &env)?;
        if !self.kernel_included {
            v = apply_kernel(d, v, sigma)?;
        }
        Ok(v)
    }
}

fn apply_kernel<D: Domain>(d: &D, mut v: D::Value, sigma: &[u32]) -> Result<D::Value, EvalError> {
    for w in sigma.windows(2) {
        let diff = d.sub(d.var(VarId::Lambda(w[0]))?, d.var(VarId::Lambda(w[1]))?);
        v = d.div(v, diff)?;
    }
    Ok(v)
}

/// Execution knobs shared by the operator entry points.
#[derive(Clone, Copy, Debug)]
pub struct DsConfig {
    /// Largest `m` for which `S_m` may be enumerated.
    pub max_m: u32,
    /// Number of permutation chunks; 0 picks one from the thread pool size.
    pub chunks: usize,
}

impl Default for DsConfig {
    fn default() -> Self {
        DsConfig {
            max_m: DEFAULT_MAX_M,
            chunks: 0,
        }
    }
}

impl DsConfig {
    fn streams(&self, m: u32) -> Result<Vec<PermStream>, DsError> {
        let total: u64 = (1..=m as u64).product();
        let wanted = if self.chunks == 0 {
            // small groups are not worth splitting
            if total < 48 {
                1
            } else {
                4 * rayon::current_num_threads()
            }
        } else {
            self.chunks
        };
        let chunks = wanted.clamp(1, total.max(1) as usize);
        Ok(perm::chunked_with_limit(m, chunks, self.max_m)?)
    }
}

/// Sums `term(σ)` over `S_m` in exact factored arithmetic. Chunks are summed
/// in parallel and merged in chunk order.
fn sum_factored<F>(m: u32, cfg: &DsConfig, term: F) -> Result<Factored, DsError>
where
    F: Fn(&[u32]) -> Result<Factored, EvalError> + Sync,
{
    let partials: Vec<LazySum> = cfg
        .streams(m)?
        .into_par_iter()
        .map(|stream| {
            let mut acc = LazySum::new();
            for p in stream {
                acc.add(&term(p.image())?);
            }
            Ok(acc)
        })
        .collect::<Result<_, EvalError>>()?;
    let mut total = LazySum::new();
    for part in partials {
        total.merge(part);
    }
    Ok(total.finish())
}

/// Exact normalized `⟨f⟩` with every variable symbolic.
pub fn ds_symbolic(p: &DsProblem) -> Result<RatFunc, DsError> {
    ds_symbolic_with(p, &DsConfig::default())
}

pub fn ds_symbolic_with(p: &DsProblem, cfg: &DsConfig) -> Result<RatFunc, DsError> {
    let d = Exact::symbolic();
    Ok(sum_factored(p.n + 1, cfg, |s| p.summand(&d, s))?.to_ratfunc())
}

/// `⟨f⟩` with the variables in `bindings` specialized before summation and
/// everything else kept symbolic.
pub fn ds_partial(p: &DsProblem, bindings: &BTreeMap<VarId, Rational>, cfg: &DsConfig) -> Result<RatFunc, DsError> {
    let d = Exact::partial(bindings);
    Ok(sum_factored(p.n + 1, cfg, |s| p.summand(&d, s))?.to_ratfunc())
}

/// `⟨f⟩` evaluated at `point` without building the symbolic sum.
pub fn ds_eval(p: &DsProblem, point: &BTreeMap<VarId, Rational>) -> Result<Rational, DsError> {
    ds_eval_with(p, point, &DsConfig::default())
}

pub fn ds_eval_with(p: &DsProblem, point: &BTreeMap<VarId, Rational>, cfg: &DsConfig) -> Result<Rational, DsError> {
    let d = Numeric { point };
    let partials: Vec<Rational> = cfg
        .streams(p.n + 1)?
        .into_par_iter()
        .map(|mut stream| {
            stream.try_fold(Rational::default(), |acc, s| {
                Ok::<_, EvalError>(acc + p.summand(&d, s.image())?)
            })
        })
        .collect::<Result<_, _>>()?;
    Ok(partials.into_iter().sum())
}

/// Outcome of the degree classifier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Prop0 {
    /// `deg f = n − 1`: the symmetrization is this constant.
    Constant(Rational),
    /// `deg f < n − 1`: the symmetrization vanishes.
    Zero,
    /// `deg f > n − 1`: the full symbolic result.
    HigherDegree(RatFunc),
}

/// Symmetrizes `f(λ_1..λ_n)` over `S_n` with kernel `∏_{k=1}^{n−1}` and
/// classifies the result by `deg f`. The classification is checked against
/// the computed sum; a mismatch is reported as an error rather than trusted.
pub fn classify_prop0(f: &MultiPoly, n: u32) -> Result<Prop0, DsError> {
    classify_prop0_with(f, n, &DsConfig::default())
}

pub fn classify_prop0_with(f: &MultiPoly, n: u32, cfg: &DsConfig) -> Result<Prop0, DsError> {
    if let Some(v) = f
        .vars()
        .into_iter()
        .find(|v| !matches!(v, VarId::Lambda(i) if (1..=n).contains(i)))
    {
        return Err(DsError::ForeignVariable(v));
    }
    let d = Exact::symbolic();
    let sum = sum_factored(n, cfg, |sigma| {
        let g = f.rename(|v| match v {
            VarId::Lambda(i) => VarId::Lambda(sigma[i as usize - 1]),
            other => other,
        });
        apply_kernel(&d, Factored::from_poly(g), sigma)
    })?
    .to_ratfunc();
    let target = n - 1;
    let classified = match f.total_degree() {
        Degree::NegInfinity => Prop0::Zero,
        Degree::Finite(k) if k < target => Prop0::Zero,
        Degree::Finite(k) if k == target => match sum.constant_value() {
            Some(c) => Prop0::Constant(c),
            None => return Err(inconsistent(&sum)),
        },
        Degree::Finite(_) => Prop0::HigherDegree(sum.clone()),
    };
    if classified == Prop0::Zero && !sum.is_zero() {
        return Err(inconsistent(&sum));
    }
    Ok(classified)
}

fn inconsistent(sum: &RatFunc) -> DsError {
    DsError::Eval(EvalError::DegreeBoundUnavailable(format!(
        "symmetrization {sum} contradicts the degree law"
    )))
}
