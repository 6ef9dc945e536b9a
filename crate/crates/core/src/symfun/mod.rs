//! Symmetric polynomials, Eulerian numbers, harmonic numbers and q-analogues.

pub mod eulerian;
pub mod partition;
pub mod qanalog;

use num_traits::{One, Zero};
use thiserror::Error;

pub use eulerian::{eulerian_alternating_sum, eulerian_number, eulerian_poly};
pub use partition::{partitions, Partition, PartitionConstraints};
pub use qanalog::{q_binomial, q_factorial};

use crate::exact::{Monomial, MultiPoly, Rational, VarId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymfunError {
    #[error("index {k} exceeds the number of variables {vars}")]
    IndexOutOfRange { k: usize, vars: usize },
    #[error("partition of length {len} needs at least that many variables, got {vars}")]
    LengthExceedsVariables { len: usize, vars: usize },
    #[error("conflicting partition constraints: {0}")]
    ConstraintConflict(String),
    #[error("not a partition: {0:?}")]
    InvalidPartition(Vec<u32>),
}

/// The variables `λ_1, …, λ_m`.
pub fn lambdas(m: u32) -> Vec<VarId> {
    (1..=m).map(VarId::Lambda).collect()
}

/// Elementary symmetric polynomial `e_k`.
pub fn elementary(k: usize, vars: &[VarId]) -> Result<MultiPoly, SymfunError> {
    if k > vars.len() {
        return Err(SymfunError::IndexOutOfRange { k, vars: vars.len() });
    }
    Ok(elementary_all(vars).swap_remove(k))
}

/// `[e_0, …, e_m]` by the recurrence `e_j ← e_j + x·e_{j−1}`.
fn elementary_all(vars: &[VarId]) -> Vec<MultiPoly> {
    let mut e = vec![MultiPoly::zero(); vars.len() + 1];
    e[0] = MultiPoly::one();
    for (i, &v) in vars.iter().enumerate() {
        let x = MultiPoly::var(v);
        for j in (1..=i + 1).rev() {
            let t = &e[j - 1] * &x;
            e[j] += &t;
        }
    }
    e
}

/// Complete homogeneous symmetric polynomial `h_k`.
pub fn complete(k: usize, vars: &[VarId]) -> MultiPoly {
    complete_all(k, vars).swap_remove(k)
}

/// `[h_0, …, h_k]`, adding one variable at a time:
/// `h_j(x_1..x_m) = h_j(x_1..x_{m−1}) + x_m·h_{j−1}(x_1..x_m)`.
fn complete_all(k: usize, vars: &[VarId]) -> Vec<MultiPoly> {
    let mut h = vec![MultiPoly::zero(); k + 1];
    h[0] = MultiPoly::one();
    for &v in vars {
        let x = MultiPoly::var(v);
        for j in 1..=k {
            let t = &h[j - 1] * &x;
            h[j] += &t;
        }
    }
    h
}

/// Power sum `Σ x^m`; `m = 0` gives the number of variables.
pub fn power_sum(m: u32, vars: &[VarId]) -> MultiPoly {
    let mut acc = MultiPoly::zero();
    for &v in vars {
        acc.add_term(Monomial::var_pow(v, m), Rational::one());
    }
    acc
}

/// Monomial symmetric polynomial `m_μ`: every distinct monomial whose
/// exponent multiset is `μ`.
pub fn monomial_sym(mu: &Partition, vars: &[VarId]) -> Result<MultiPoly, SymfunError> {
    if mu.len() > vars.len() {
        return Err(SymfunError::LengthExceedsVariables {
            len: mu.len(),
            vars: vars.len(),
        });
    }
    let mut exps: Vec<u32> = mu.parts().to_vec();
    exps.resize(vars.len(), 0);
    exps.sort_unstable();
    let mut acc = MultiPoly::zero();
    loop {
        let m = Monomial::from_pairs(vars.iter().copied().zip(exps.iter().copied()));
        acc.add_term(m, Rational::one());
        if !next_permutation(&mut exps) {
            break;
        }
    }
    Ok(acc)
}

/// Advances to the next lexicographic arrangement; false at the last one.
fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Schur polynomial by the Jacobi–Trudi determinant `det(h_{μ_i − i + j})`.
pub fn schur(mu: &Partition, vars: &[VarId]) -> Result<MultiPoly, SymfunError> {
    if mu.len() > vars.len() {
        return Err(SymfunError::LengthExceedsVariables {
            len: mu.len(),
            vars: vars.len(),
        });
    }
    let l = mu.len();
    if l == 0 {
        return Ok(MultiPoly::one());
    }
    let top = (mu.parts()[0] as usize) + l;
    let h = complete_all(top, vars);
    let zero = MultiPoly::zero();
    let entry = |i: usize, j: usize| {
        let idx = mu.parts()[i] as i64 - i as i64 + j as i64;
        if idx < 0 || idx as usize >= h.len() {
            &zero
        } else {
            &h[idx as usize]
        }
    };
    Ok(determinant(l, entry))
}

/// Determinant by expansion over column subsets: `dp[S]` is the signed sum
/// over the first `|S|` rows using exactly the columns in `S`.
fn determinant<'a>(l: usize, entry: impl Fn(usize, usize) -> &'a MultiPoly) -> MultiPoly {
    let full = (1usize << l) - 1;
    let mut dp: Vec<Option<MultiPoly>> = vec![None; 1 << l];
    dp[0] = Some(MultiPoly::one());
    for mask in 0..full {
        let Some(cur) = dp[mask].take() else { continue };
        if cur.is_zero() {
            continue;
        }
        let row = mask.count_ones() as usize;
        for col in 0..l {
            if mask & (1 << col) != 0 {
                continue;
            }
            let e = entry(row, col);
            if e.is_zero() {
                continue;
            }
            // sign: parity of the used columns to the right of `col`
            let inversions = (mask >> (col + 1)).count_ones();
            let mut term = &cur * e;
            if inversions % 2 == 1 {
                term = -term;
            }
            let slot = dp[mask | (1 << col)].get_or_insert_with(MultiPoly::zero);
            *slot += &term;
        }
    }
    dp[full].take().unwrap_or_default()
}

/// `H_n = Σ_{k=1}^{n} 1/k`.
pub fn harmonic(n: u32) -> Rational {
    (1..=n).fold(Rational::zero(), |acc, k| acc + Rational::new(1.into(), k.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{frac, rat};
    use std::collections::BTreeMap;
    use VarId::*;

    fn at(p: &MultiPoly, vals: &[(VarId, i64)]) -> Rational {
        let pt: BTreeMap<_, _> = vals.iter().map(|&(v, x)| (v, rat(x))).collect();
        p.eval(&pt).unwrap()
    }

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn elementary_examples() {
        let l = lambdas(3);
        assert_eq!(
            elementary(1, &l[..2]).unwrap(),
            &MultiPoly::var(Lambda(1)) + &MultiPoly::var(Lambda(2))
        );
        let e2 = elementary(2, &l).unwrap();
        assert_eq!(at(&e2, &[(Lambda(1), 1), (Lambda(2), 2), (Lambda(3), 3)]), rat(11));
        assert!(elementary(0, &l).unwrap().is_one());
        assert_eq!(
            elementary(3, &l[..2]),
            Err(SymfunError::IndexOutOfRange { k: 3, vars: 2 })
        );
    }

    #[test]
    fn power_sum_examples() {
        let l = lambdas(3);
        assert_eq!(power_sum(0, &l), MultiPoly::from_int(3));
        assert_eq!(at(&power_sum(2, &l[..2]), &[(Lambda(1), 2), (Lambda(2), 3)]), rat(13));
        assert_eq!(power_sum(1, &l), elementary(1, &l).unwrap());
    }

    #[test]
    fn monomial_examples() {
        let ab = [X(1), X(2)];
        let a = MultiPoly::var(X(1));
        let b = MultiPoly::var(X(2));
        assert_eq!(
            monomial_sym(&part(&[2, 1]), &ab).unwrap(),
            &(&a.pow(2) * &b) + &(&a * &b.pow(2))
        );
        let abc = [X(1), X(2), X(3)];
        let m11 = monomial_sym(&part(&[1, 1]), &abc).unwrap();
        assert_eq!(at(&m11, &[(X(1), 1), (X(2), 2), (X(3), 3)]), rat(11));
        assert_eq!(
            at(&monomial_sym(&part(&[3]), &ab).unwrap(), &[(X(1), 2), (X(2), 3)]),
            rat(35)
        );
        assert!(matches!(
            monomial_sym(&part(&[1, 1, 1]), &ab),
            Err(SymfunError::LengthExceedsVariables { .. })
        ));
    }

    #[test]
    fn schur_examples() {
        let l = lambdas(3);
        assert_eq!(schur(&part(&[1]), &l[..2]).unwrap(), power_sum(1, &l[..2]));
        assert_eq!(schur(&part(&[1, 1]), &l).unwrap(), elementary(2, &l).unwrap());
        assert_eq!(schur(&part(&[2]), &l).unwrap(), complete(2, &l));
        assert!(schur(&Partition::empty(), &l).unwrap().is_one());
    }

    #[test]
    fn harmonic_examples() {
        assert_eq!(harmonic(0), rat(0));
        assert_eq!(harmonic(1), rat(1));
        assert_eq!(harmonic(3), frac(11, 6));
    }
}
