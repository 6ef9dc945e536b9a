//! Deterministic grid verification.
//!
//! Both sides are multiplied by a common denominator `L`, so their difference
//! becomes a polynomial `P` whose degree in each gridded variable is bounded
//! by the template analyzer. `P` vanishing on a grid of `bound + 1` values per
//! variable forces `P = 0`.
//!
//! For symmetrized sums the grid is smaller. The left side is symmetric in
//! `λ`; once the right side is checked to be symmetric and `L` to be
//! antisymmetric, `P` is antisymmetric. An antisymmetric polynomial that
//! vanishes at every strictly increasing tuple drawn from a set `S` vanishes
//! on all of `S^{n+1}` (repeated coordinates are zeros of the Vandermonde
//! factor), so `C(|S|, n+1)` points replace `|S|^{n+1}`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::One;
use rayon::prelude::*;

use super::verify::VerifyError;
use super::IdentitySpec;
use crate::divsym::{ds_eval_with, ds_partial, DsConfig, DsError, DsProblem};
use crate::exact::rational::pow_u32;
use crate::exact::{rat, MultiPoly, Rational, VarId};
use crate::perm;
use crate::symfun::lambdas;
use crate::template::degree::{cleared_degree, max_merge, DegreeMap, Degrees, FactorSet};
use crate::template::{evaluate, Env, EvalError, Exact, NodeKind, Template};

/// Offsets tried before giving up on finding a pole-free grid.
const MAX_SHIFTS: i64 = 64;

pub(super) struct GridCheck {
    pub degree_bound: u32,
    /// Values at which the sides differ; unlisted variables were symbolic.
    pub mismatch: Option<BTreeMap<VarId, Rational>>,
}

fn unavailable(msg: impl Into<String>) -> VerifyError {
    VerifyError::DegreeBoundUnavailable(msg.into())
}

fn uses_fixed_lambda(t: &Template) -> bool {
    let mut found = false;
    t.root.walk(&mut |n| found |= matches!(n.kind, NodeKind::Lambda(_)));
    found
}

/// True if swapping `a` and `b` maps the factor multiset to itself with an
/// overall sign of −1.
fn flips_sign(common: &FactorSet, a: VarId, b: VarId) -> bool {
    let mut sign = Rational::one();
    for (f, &e) in common {
        let (c, g) = f.swap_vars(a, b).monic_parts();
        if common.get(&g) != Some(&e) {
            return false;
        }
        sign *= pow_u32(&c, e);
    }
    sign == -Rational::one()
}

fn vanishes(common: &FactorSet, point: &BTreeMap<VarId, Rational>) -> bool {
    common.keys().any(|f| f.substitute(point).is_zero())
}

/// All strictly increasing `k`-subsets of `0..size`.
fn combinations(size: u32, k: u32) -> Vec<Vec<u32>> {
    if k > size {
        return Vec::new();
    }
    let mut cur: Vec<u32> = (0..k).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (0..k as usize).rev().find(|&i| cur[i] < size - k + i as u32) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k as usize {
            cur[j] = cur[j - 1] + 1;
        }
        out.push(cur.clone());
    }
}

fn lhs_vars(spec: &IdentitySpec, env: &Env) -> Result<BTreeSet<VarId>, EvalError> {
    evaluate(&crate::template::VarCollector, &spec.lhs.root, env)
}

pub(super) fn symmetrized(
    spec: &IdentitySpec,
    n: u32,
    params: &BTreeMap<String, i64>,
    cfg: &DsConfig,
) -> Result<GridCheck, VerifyError> {
    let m = n + 1;
    if uses_fixed_lambda(&spec.lhs) {
        return Err(unavailable("the summand references λ outside permutation slots"));
    }
    let deg = Degrees::default();
    let mut terms: Vec<(DegreeMap, FactorSet)> = Vec::new();
    for sigma in perm::enumerate_with_limit(m, cfg.max_m).map_err(DsError::from)? {
        let env = Env::new(n as i64, Some(sigma.image()), params);
        terms.push(evaluate(&deg, &spec.lhs.root, &env)?.parts());
    }
    terms.push(spec.rhs.degrees(n, params)?);

    let lam = lambdas(m);
    let mut common = FactorSet::new();
    for (_, den) in &terms {
        common = max_merge(&common, den);
    }
    for i in 0..lam.len() {
        for j in i + 1..lam.len() {
            let f = (&MultiPoly::var(lam[i]) - &MultiPoly::var(lam[j])).monic();
            let e = common.entry(f).or_insert(0);
            if (*e).is_multiple_of(2) {
                *e += 1;
            }
        }
    }
    if !lam.windows(2).all(|w| flips_sign(&common, w[0], w[1])) {
        return Err(unavailable("common denominator is not antisymmetric in λ"));
    }

    let rhs = spec.rhs.symbolic(n, params)?;
    let bound = lam
        .iter()
        .flat_map(|&v| terms.iter().map(move |(num, den)| (v, num, den)))
        .map(|(v, num, den)| cleared_degree(num, den, &common, v))
        .max()
        .unwrap_or(0);
    if !rhs.is_symmetric(&lam) {
        return Ok(GridCheck {
            degree_bound: bound,
            mismatch: Some(BTreeMap::new()),
        });
    }

    let identity: Vec<u32> = (1..=m).collect();
    let mut vars = lhs_vars(spec, &Env::new(n as i64, Some(&identity), params))?;
    vars.extend(rhs.vars());
    let symbolic_aux = vars.iter().any(|v| !v.is_lambda());
    let problem = DsProblem::new(spec.lhs.clone(), n)
        .kernel_included(true)
        .with_params(params.clone());

    let tuples = combinations(bound + 1, m);
    for shift in 0..MAX_SHIFTS {
        let points: Vec<BTreeMap<VarId, Rational>> = tuples
            .iter()
            .map(|t| {
                lam.iter()
                    .zip(t)
                    .map(|(&v, &i)| (v, rat(shift + 1 + i as i64)))
                    .collect()
            })
            .collect();
        if points.iter().any(|p| vanishes(&common, p)) {
            continue;
        }
        let found = points
            .par_iter()
            .map(|p| -> Result<Option<BTreeMap<VarId, Rational>>, VerifyError> {
                let same = if symbolic_aux {
                    ds_partial(&problem, p, cfg)?.value_eq(&spec.rhs.partial(n, params, p)?)
                } else {
                    ds_eval_with(&problem, p, cfg)? == spec.rhs.numeric(n, params, p)?
                };
                Ok((!same).then(|| p.clone()))
            });
        let results: Result<Vec<_>, VerifyError> = found.collect();
        match results {
            Ok(r) => {
                return Ok(GridCheck {
                    degree_bound: bound,
                    mismatch: r.into_iter().flatten().next(),
                })
            }
            Err(VerifyError::PoleAtPoint) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(unavailable("no pole-free grid found"))
}

pub(super) fn plain(spec: &IdentitySpec, n: u32, params: &BTreeMap<String, i64>) -> Result<GridCheck, VerifyError> {
    let env = Env::new(n as i64, None, params);
    let lhs = evaluate(&Degrees::default(), &spec.lhs.root, &env)?.parts();
    let rhs = spec.rhs.degrees(n, params)?;
    let common = max_merge(&lhs.1, &rhs.1);

    let mut vars = lhs_vars(spec, &env)?;
    vars.extend(spec.rhs.vars(n, params)?);
    let gridded: Vec<(VarId, u32)> = vars
        .into_iter()
        .filter(|v| !v.is_lambda())
        .map(|v| {
            let d = cleared_degree(&lhs.0, &lhs.1, &common, v).max(cleared_degree(&rhs.0, &rhs.1, &common, v));
            (v, d)
        })
        .collect();
    let bound = gridded.iter().map(|&(_, d)| d).max().unwrap_or(0);

    'shift: for shift in 0..MAX_SHIFTS {
        let mut points = vec![BTreeMap::new()];
        for &(v, d) in &gridded {
            points = points
                .into_iter()
                .flat_map(|p: BTreeMap<VarId, Rational>| {
                    (0..=d as i64).map(move |i| {
                        let mut p = p.clone();
                        p.insert(v, rat(shift + i));
                        p
                    })
                })
                .collect();
        }
        if points.iter().any(|p| vanishes(&common, p)) {
            continue;
        }
        for p in points {
            let l = match evaluate(&Exact::partial(&p), &spec.lhs.root, &env) {
                Ok(v) => v.to_ratfunc(),
                Err(EvalError::PoleAtPoint) => continue 'shift,
                Err(e) => return Err(e.into()),
            };
            let r = match spec.rhs.partial(n, params, &p) {
                Ok(v) => v,
                Err(EvalError::PoleAtPoint) => continue 'shift,
                Err(e) => return Err(e.into()),
            };
            if !l.value_eq(&r) {
                return Ok(GridCheck {
                    degree_bound: bound,
                    mismatch: Some(p),
                });
            }
        }
        return Ok(GridCheck {
            degree_bound: bound,
            mismatch: None,
        });
    }
    Err(unavailable("no pole-free grid found"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combination_counts() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert!(combinations(2, 3).is_empty());
        let c = combinations(6, 3);
        assert!(c.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn vandermonde_factors_flip_sign() {
        let lam = lambdas(3);
        let mut common = FactorSet::new();
        for i in 0..3 {
            for j in i + 1..3 {
                common.insert((&MultiPoly::var(lam[i]) - &MultiPoly::var(lam[j])).monic(), 1);
            }
        }
        assert!(flips_sign(&common, lam[0], lam[1]));
        common.insert((&MultiPoly::var(lam[0]) - &MultiPoly::var(VarId::Y)).monic(), 1);
        assert!(!flips_sign(&common, lam[0], lam[1]));
    }
}
