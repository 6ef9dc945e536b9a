use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::exact::rational::binomial;
use crate::exact::{Monomial, MultiPoly, Rational, VarId};

/// Rows `0..=n` of the Eulerian triangle from
/// `A(n,j) = (j+1)·A(n−1,j) + (n−j)·A(n−1,j−1)`, `A(0,0) = 1`.
fn triangle(n: u32) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for m in 1..=n as usize {
        let prev = &rows[m - 1];
        let get = |j: isize| -> BigInt {
            if j < 0 {
                BigInt::zero()
            } else {
                prev.get(j as usize).cloned().unwrap_or_default()
            }
        };
        let row: Vec<BigInt> = (0..m)
            .map(|j| {
                let j = j as isize;
                get(j) * BigInt::from(j + 1) + get(j - 1) * BigInt::from(m as isize - j)
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// Number of permutations of `n` with `j` descents; zero outside
/// `0 ≤ j ≤ max(n−1, 0)`.
pub fn eulerian_number(n: u32, j: i64) -> BigInt {
    if j < 0 {
        return BigInt::zero();
    }
    triangle(n)[n as usize].get(j as usize).cloned().unwrap_or_default()
}

/// `Σ_{i=0}^{j} (−1)^i (j−i)^n C(n+1, i)`, which equals `A(n, j−1)` for `n ≥ 1`.
pub fn eulerian_alternating_sum(n: u32, j: i64) -> BigInt {
    let mut acc = BigInt::zero();
    for i in 0..=j.max(-1) {
        let term = BigInt::from(j - i).pow(n) * binomial(n as i64 + 1, i);
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// `A_n(t) = Σ_j A(n,j) t^j`.
pub fn eulerian_poly(n: u32) -> MultiPoly {
    let rows = triangle(n);
    MultiPoly::from_terms(
        rows[n as usize]
            .iter()
            .enumerate()
            .map(|(j, a)| (Monomial::var_pow(VarId::T, j as u32), Rational::from_integer(a.clone()))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{factorial, rat};
    use std::collections::BTreeMap;

    #[test]
    fn small_values() {
        assert_eq!(eulerian_number(3, 1), BigInt::from(4));
        for n in 0..=6 {
            assert_eq!(eulerian_number(n, 0), BigInt::one());
        }
        let row_sum: BigInt = (0..4).map(|j| eulerian_number(4, j)).sum();
        assert_eq!(row_sum, BigInt::from(24));
        assert_eq!(eulerian_number(3, 3), BigInt::zero());
        assert_eq!(eulerian_number(3, -1), BigInt::zero());
    }

    #[test]
    fn polynomials() {
        let t = MultiPoly::var(VarId::T);
        assert_eq!(eulerian_poly(2), &MultiPoly::one() + &t);
        assert_eq!(eulerian_poly(3), &(&MultiPoly::one() + &t.scale(&rat(4))) + &t.pow(2));
        for n in 1..=7 {
            let at_one = eulerian_poly(n).eval(&BTreeMap::from([(VarId::T, rat(1))])).unwrap();
            assert_eq!(at_one, Rational::from_integer(factorial(n as u64)));
        }
    }
}
