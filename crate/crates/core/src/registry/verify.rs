//! Verification of catalog entries and the report format.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{grid, IdentitySpec, Kind, Registry, RegistryError, Status};
use crate::divsym::{
    ds_eval_with, ds_symbolic_with, with_generic_point, DsConfig, DsError, DsProblem, GENERIC_RANGE, POLE_RETRIES,
};
use crate::exact::{rat, RatFunc, Rational, VarId};
use crate::perm::DEFAULT_MAX_M;
use crate::template::{evaluate, Env, EvalError, Exact, Numeric, VarCollector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Exact symbolic comparison of both sides.
    Symbolic,
    /// Cleared-denominator evaluation on a grid exceeding the degree bound.
    Grid,
    /// The given number of trials at random generic points.
    Random(u32),
}

impl Mode {
    fn index(self) -> usize {
        match self {
            Mode::Symbolic => 0,
            Mode::Grid => 1,
            Mode::Random(_) => 2,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Symbolic => f.write_str("symbolic"),
            Mode::Grid => f.write_str("grid"),
            Mode::Random(t) => write!(f, "random({t})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown mode `{0}` (expected symbolic, grid or random(N))")]
pub struct ParseModeError(pub String);

impl FromStr for Mode {
    type Err = ParseModeError;
    fn from_str(s: &str) -> Result<Self, ParseModeError> {
        let bad = || ParseModeError(s.to_string());
        match s.trim() {
            "symbolic" => Ok(Mode::Symbolic),
            "grid" => Ok(Mode::Grid),
            "random" => Ok(Mode::Random(20)),
            other => {
                let inner = other
                    .strip_prefix("random(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(bad)?;
                inner.trim().parse().map(Mode::Random).map_err(|_| bad())
            }
        }
    }
}

impl Serialize for Mode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Mode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// An assignment at which the two sides differ, with both values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub params: BTreeMap<String, i64>,
    /// Variable name (`L(1)`, `Y`, `x(2)`, ...) to exact value.
    pub point: BTreeMap<String, String>,
    pub lhs: String,
    pub rhs: String,
}

impl Witness {
    /// The point as typed variables and values.
    pub fn assignment(&self) -> Option<BTreeMap<VarId, Rational>> {
        self.point
            .iter()
            .map(|(k, v)| Some((k.parse().ok()?, crate::exact::rational::parse_rational(v)?)))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Outcome {
    Pass {
        /// The common constant value, when there is a single one.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        value: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        note: Option<String>,
    },
    Fail {
        witness: Witness,
    },
    Skipped {
        reason: String,
    },
}

impl Outcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, Outcome::Pass { .. })
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail { .. })
    }

    pub fn is_skipped(&self) -> bool {
        matches!(self, Outcome::Skipped { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub id: String,
    pub n: u32,
    pub mode: Mode,
    pub outcome: Outcome,
    /// Wall-clock seconds; `null` unless timings were requested, which keeps
    /// reports byte-stable.
    pub elapsed: Option<f64>,
    #[serde(rename = "degreeBound")]
    pub degree_bound: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Registry(#[from] RegistryError),
    #[error("S_{m} exceeds the permutation limit S_{limit}")]
    SizeLimitExceeded { m: u32, limit: u32 },
    #[error("degree bound unavailable: {0}")]
    DegreeBoundUnavailable(String),
    #[error("a denominator vanishes at every point tried")]
    PoleAtPoint,
    #[error("sides differ symbolically but no separating point was found")]
    NoWitness,
    #[error(transparent)]
    Eval(EvalError),
}

impl From<EvalError> for VerifyError {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::PoleAtPoint => VerifyError::PoleAtPoint,
            EvalError::DegreeBoundUnavailable(s) => VerifyError::DegreeBoundUnavailable(s),
            e => VerifyError::Eval(e),
        }
    }
}

impl From<DsError> for VerifyError {
    fn from(e: DsError) -> Self {
        match e {
            DsError::SizeLimitExceeded { m, limit } => VerifyError::SizeLimitExceeded { m, limit },
            DsError::PoleAtPoint => VerifyError::PoleAtPoint,
            DsError::Eval(e) => e.into(),
            DsError::MissingAssignment(v) => VerifyError::Eval(EvalError::MissingAssignment(v)),
            DsError::ForeignVariable(v) => VerifyError::Eval(EvalError::MissingAssignment(v)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    /// Seed of the random mode; each (id, n) pair derives its own stream.
    pub seed: u64,
    /// Largest permutation group size enumerated.
    pub max_m: u32,
    /// Permutation chunks per sum; 0 picks one from the thread pool size.
    pub chunks: usize,
    /// Record wall-clock time in reports.
    pub timings: bool,
    /// Replaces the per-kind default largest `n`.
    pub max_n: Option<u32>,
    /// Pins parameters to single values.
    pub params: BTreeMap<String, i64>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            max_m: DEFAULT_MAX_M,
            chunks: 0,
            timings: false,
            max_n: None,
            params: BTreeMap::new(),
        }
    }
}

impl VerifyConfig {
    fn ds(&self) -> DsConfig {
        DsConfig {
            max_m: self.max_m,
            chunks: self.chunks,
        }
    }
}

/// FNV-1a over the seed, id and `n`, so each pair has its own stream.
fn stream_seed(seed: u64, id: &str, n: u32) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in seed.to_le_bytes().iter().chain(id.as_bytes()).chain(&n.to_le_bytes()) {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

/// Result of comparing the sides for one parameter assignment.
enum Check {
    Agree {
        value: Option<Rational>,
        bound: Option<u32>,
    },
    /// Values at which the sides differ; missing variables are still free.
    Differ(BTreeMap<VarId, Rational>),
}

fn problem(spec: &IdentitySpec, n: u32, params: &BTreeMap<String, i64>) -> DsProblem {
    DsProblem::new(spec.lhs.clone(), n)
        .kernel_included(true)
        .with_params(params.clone())
}

fn specialized_point(n: u32) -> BTreeMap<VarId, Rational> {
    (1..=n + 1).map(|j| (VarId::Lambda(j), rat(j as i64))).collect()
}

/// Variables of both sides that a numeric evaluation must bind.
fn free_vars(spec: &IdentitySpec, n: u32, params: &BTreeMap<String, i64>) -> Result<BTreeSet<VarId>, EvalError> {
    let ids: Vec<u32> = (1..=n + 1).collect();
    let sigma = (spec.kind != Kind::Plain).then_some(ids.as_slice());
    let mut vars = evaluate(&VarCollector, &spec.lhs.root, &Env::new(n as i64, sigma, params))?;
    vars.extend(spec.rhs.vars(n, params)?);
    if spec.kind != Kind::Plain {
        vars.extend((1..=n + 1).map(VarId::Lambda));
    }
    Ok(vars)
}

/// Both sides at a point, the left one through the defining sum.
fn numeric_sides(
    spec: &IdentitySpec,
    n: u32,
    params: &BTreeMap<String, i64>,
    point: &BTreeMap<VarId, Rational>,
    cfg: &DsConfig,
) -> Result<(Rational, Rational), DsError> {
    let lhs = match spec.kind {
        Kind::Plain => evaluate(&Numeric { point }, &spec.lhs.root, &Env::new(n as i64, None, params))?,
        _ => ds_eval_with(&problem(spec, n, params), point, cfg)?,
    };
    Ok((lhs, spec.rhs.numeric(n, params, point)?))
}

fn symbolic_lhs(
    spec: &IdentitySpec,
    n: u32,
    params: &BTreeMap<String, i64>,
    cfg: &DsConfig,
) -> Result<RatFunc, VerifyError> {
    Ok(match spec.kind {
        Kind::Plain => evaluate(&Exact::symbolic(), &spec.lhs.root, &Env::new(n as i64, None, params))?.to_ratfunc(),
        _ => ds_symbolic_with(&problem(spec, n, params), cfg)?,
    })
}

/// Completes `fixed` to a full point where the sides differ, evaluating the
/// left side afresh from its definition.
fn find_witness(
    spec: &IdentitySpec,
    n: u32,
    params: &BTreeMap<String, i64>,
    fixed: &BTreeMap<VarId, Rational>,
    rng: &mut ChaCha8Rng,
    cfg: &DsConfig,
) -> Result<Witness, VerifyError> {
    let missing: Vec<VarId> = free_vars(spec, n, params)?
        .into_iter()
        .filter(|v| !fixed.contains_key(v))
        .collect();
    let tries = if missing.is_empty() { 1 } else { POLE_RETRIES };
    for _ in 0..tries {
        let mut point = fixed.clone();
        for &v in &missing {
            loop {
                let x = rat(rng.gen_range(1..=GENERIC_RANGE) as i64);
                let clash = v.is_lambda() && point.iter().any(|(w, y)| w.is_lambda() && *y == x);
                if !clash {
                    point.insert(v, x);
                    break;
                }
            }
        }
        match numeric_sides(spec, n, params, &point, cfg) {
            Ok((l, r)) if l != r => {
                return Ok(Witness {
                    params: params.clone(),
                    point: point.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
                    lhs: l.to_string(),
                    rhs: r.to_string(),
                })
            }
            Ok(_) | Err(DsError::PoleAtPoint) => continue,
            Err(e) => return Err(e.into()),
        }
    }
    Err(VerifyError::NoWitness)
}

fn check_symbolic(
    spec: &IdentitySpec,
    n: u32,
    params: &BTreeMap<String, i64>,
    cfg: &DsConfig,
) -> Result<Check, VerifyError> {
    let lhs = symbolic_lhs(spec, n, params, cfg)?;
    let rhs = spec.rhs.symbolic(n, params)?;
    Ok(if lhs.value_eq(&rhs) {
        Check::Agree {
            value: lhs.constant_value(),
            bound: None,
        }
    } else {
        Check::Differ(BTreeMap::new())
    })
}

fn check_specialized(
    spec: &IdentitySpec,
    n: u32,
    params: &BTreeMap<String, i64>,
    cfg: &DsConfig,
) -> Result<Check, VerifyError> {
    let point = specialized_point(n);
    let (l, r) = numeric_sides(spec, n, params, &point, cfg)?;
    Ok(if l == r {
        Check::Agree {
            value: Some(l),
            bound: None,
        }
    } else {
        Check::Differ(point)
    })
}

fn check_random(
    spec: &IdentitySpec,
    n: u32,
    params: &BTreeMap<String, i64>,
    trials: u32,
    rng: &mut ChaCha8Rng,
    cfg: &DsConfig,
) -> Result<Check, VerifyError> {
    let vars = free_vars(spec, n, params)?;
    let lambda_count = vars
        .iter()
        .filter_map(|v| match v {
            VarId::Lambda(i) => Some(*i),
            _ => None,
        })
        .max()
        .unwrap_or(0);
    let aux: Vec<VarId> = vars.into_iter().filter(|v| !v.is_lambda()).collect();
    for _ in 0..trials {
        let (point, l, r) = with_generic_point(rng, lambda_count, &aux, |p| {
            let (l, r) = numeric_sides(spec, n, params, p, cfg)?;
            Ok((p.clone(), l, r))
        })?;
        if l != r {
            return Ok(Check::Differ(point));
        }
    }
    Ok(Check::Agree {
        value: None,
        bound: None,
    })
}

fn check_grid(
    spec: &IdentitySpec,
    n: u32,
    params: &BTreeMap<String, i64>,
    cfg: &DsConfig,
) -> Result<Check, VerifyError> {
    let g = match spec.kind {
        Kind::Plain => grid::plain(spec, n, params)?,
        _ => grid::symmetrized(spec, n, params, cfg)?,
    };
    Ok(match g.mismatch {
        Some(p) => Check::Differ(p),
        None => Check::Agree {
            value: None,
            bound: Some(g.degree_bound),
        },
    })
}

/// Whether the left side changes when `v` alone is moved, at a few random
/// points.
fn independent_of(
    spec: &IdentitySpec,
    n: u32,
    params: &BTreeMap<String, i64>,
    v: VarId,
    rng: &mut ChaCha8Rng,
    cfg: &DsConfig,
) -> Result<bool, VerifyError> {
    let aux: Vec<VarId> = free_vars(spec, n, params)?
        .into_iter()
        .filter(|w| !w.is_lambda())
        .collect();
    for _ in 0..3 {
        let (a, b) = with_generic_point(rng, n + 1, &aux, |p| {
            let mut q = p.clone();
            q.insert(v, p.get(&v).cloned().unwrap_or_default() + rat(1));
            Ok((
                numeric_sides(spec, n, params, p, cfg)?.0,
                numeric_sides(spec, n, params, &q, cfg)?.0,
            ))
        })?;
        if a != b {
            return Ok(false);
        }
    }
    Ok(true)
}

fn mode_cap(spec: &IdentitySpec, mode: Mode, cfg: &VerifyConfig) -> u32 {
    cfg.max_n.unwrap_or(spec.default_max_n()[mode.index()])
}

fn run(spec: &IdentitySpec, n: u32, mode: Mode, cfg: &VerifyConfig) -> Result<(Outcome, Option<u32>), VerifyError> {
    let ds = cfg.ds();
    let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(cfg.seed, &spec.id, n));
    let combos = spec.param_grid(n, &cfg.params)?;
    let mut values = Vec::new();
    let mut bound: Option<u32> = None;
    for p in &combos {
        let check = match (spec.kind, mode) {
            (Kind::Specialized, _) => check_specialized(spec, n, p, &ds)?,
            (_, Mode::Symbolic) => check_symbolic(spec, n, p, &ds)?,
            (_, Mode::Grid) => check_grid(spec, n, p, &ds)?,
            (_, Mode::Random(t)) => check_random(spec, n, p, t, &mut rng, &ds)?,
        };
        match check {
            Check::Agree { value, bound: b } => {
                values.push(value);
                bound = bound.max(b);
            }
            Check::Differ(fixed) => {
                let fixed = match spec.kind {
                    Kind::Specialized => specialized_point(n),
                    _ => fixed,
                };
                let witness = find_witness(spec, n, p, &fixed, &mut rng, &ds)?;
                return Ok((Outcome::Fail { witness }, bound));
            }
        }
    }

    let mut notes = Vec::new();
    if spec.status != Status::Proved {
        notes.push("verified at small n".to_string());
    }
    if let Some(v) = spec.independent_of {
        let all = combos
            .iter()
            .map(|p| independent_of(spec, n, p, v, &mut rng, &ds))
            .collect::<Result<Vec<bool>, _>>()?;
        let verdict = if all.iter().all(|&b| b) { "yes" } else { "no" };
        notes.push(format!("left side independent of {v}: {verdict}"));
    }
    if let Mode::Random(_) = mode {
        notes.push(format!("seed {}", cfg.seed));
    }
    let constant = (values.len() == 1 && (mode == Mode::Symbolic || spec.kind == Kind::Specialized))
        .then(|| values.pop().flatten())
        .flatten();
    Ok((
        Outcome::Pass {
            value: constant.map(|c| c.to_string()),
            note: (!notes.is_empty()).then(|| notes.join("; ")),
        },
        bound,
    ))
}

/// Verifies one entry at one `n`. Entries outside their `n` range are
/// reported as skipped.
pub fn verify(reg: &Registry, id: &str, n: u32, mode: Mode, cfg: &VerifyConfig) -> Result<Report, VerifyError> {
    let spec = reg.lookup(id)?;
    let start = Instant::now();
    let cap = mode_cap(spec, mode, cfg);
    let (outcome, degree_bound) = if n < spec.min_n.max(1) {
        let reason = format!("n = {n} is below the minimum {}", spec.min_n.max(1));
        (Outcome::Skipped { reason }, None)
    } else if n > cap {
        let reason = format!("n = {n} exceeds maxN {cap} for {mode} mode");
        (Outcome::Skipped { reason }, None)
    } else {
        run(spec, n, mode, cfg)?
    };
    Ok(Report {
        id: spec.id.clone(),
        n,
        mode,
        outcome,
        elapsed: cfg.timings.then(|| start.elapsed().as_secs_f64()),
        degree_bound,
    })
}

/// Verifies the listed entries over `ns`. Pairs run concurrently and are
/// reported sorted by (id, n); errors become skipped outcomes. Only the first
/// `budget` pairs in that order are run.
pub fn verify_many(
    reg: &Registry,
    ids: &[&str],
    ns: RangeInclusive<u32>,
    mode: Mode,
    budget: Option<usize>,
    cfg: &VerifyConfig,
) -> Result<Vec<Report>, VerifyError> {
    let mut ids: Vec<&str> = ids.to_vec();
    ids.sort_unstable();
    ids.dedup();
    for id in &ids {
        reg.lookup(id)?;
    }
    let pairs: Vec<(&str, u32)> = ids.iter().flat_map(|&id| ns.clone().map(move |n| (id, n))).collect();
    Ok(pairs
        .par_iter()
        .enumerate()
        .map(|(i, &(id, n))| {
            if budget.is_some_and(|b| i >= b) {
                return Report {
                    id: id.to_string(),
                    n,
                    mode,
                    outcome: Outcome::Skipped {
                        reason: "budget exhausted".to_string(),
                    },
                    elapsed: None,
                    degree_bound: None,
                };
            }
            verify(reg, id, n, mode, cfg).unwrap_or_else(|e| Report {
                id: id.to_string(),
                n,
                mode,
                outcome: Outcome::Skipped { reason: e.to_string() },
                elapsed: None,
                degree_bound: None,
            })
        })
        .collect())
}

/// [`verify_many`] over the whole registry.
pub fn verify_all(
    reg: &Registry,
    ns: RangeInclusive<u32>,
    mode: Mode,
    budget: Option<usize>,
    cfg: &VerifyConfig,
) -> Vec<Report> {
    let ids: Vec<&str> = reg.list().iter().map(|s| s.id.as_str()).collect();
    verify_many(reg, &ids, ns, mode, budget, cfg).expect("registry ids resolve")
}
