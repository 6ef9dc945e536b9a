use std::collections::BTreeMap;

use divsym::exact::{rat, MultiPoly, Rational, VarId};
use divsym::perm::enumerate;
use divsym::symfun::{
    complete, elementary, eulerian_alternating_sum, eulerian_number, eulerian_poly, harmonic, lambdas, monomial_sym,
    partitions, q_binomial, q_factorial, schur, Partition, PartitionConstraints,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Determinant of a rational matrix by fraction-exact elimination.
fn det(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        let pivot = a[c].clone();
        for row in a.iter_mut().skip(c + 1) {
            let f = &row[c] / &pivot[c];
            for (x, y) in row.iter_mut().zip(&pivot).skip(c) {
                *x -= &f * y;
            }
        }
    }
    d
}

/// Bialternant `a_{μ+δ} / a_δ` at a point with distinct coordinates.
fn bialternant(mu: &[u32], x: &[Rational]) -> Rational {
    let k = x.len();
    let pw = |v: &Rational, e: u32| (0..e).fold(Rational::one(), |acc, _| acc * v);
    let alt =
        |shape: &dyn Fn(usize) -> u32| det((0..k).map(|i| (0..k).map(|j| pw(&x[i], shape(j))).collect()).collect());
    let part = |j: usize| mu.get(j).copied().unwrap_or(0);
    alt(&|j| part(j) + (k - 1 - j) as u32) / alt(&|j| (k - 1 - j) as u32)
}

fn point(vars: &[VarId], x: &[Rational]) -> BTreeMap<VarId, Rational> {
    vars.iter().copied().zip(x.iter().cloned()).collect()
}

#[test]
fn schur_matches_bialternant() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for k in 1..=4u32 {
        let vars = lambdas(k);
        for w in 0..=6 {
            let c = PartitionConstraints {
                max_len: Some(k as usize),
                ..Default::default()
            };
            for mu in partitions(w, &c).unwrap() {
                let s = schur(&mu, &vars).unwrap();
                for _ in 0..5 {
                    let mut x: Vec<Rational> = Vec::new();
                    while x.len() < k as usize {
                        let v = Rational::new(rng.gen_range(-20i64..=20).into(), rng.gen_range(1i64..=5).into());
                        if !x.contains(&v) {
                            x.push(v);
                        }
                    }
                    assert_eq!(
                        s.eval(&point(&vars, &x)).unwrap(),
                        bialternant(mu.parts(), &x),
                        "{mu} in {k} vars"
                    );
                }
            }
        }
    }
}

#[test]
fn schur_of_rows_and_columns() {
    let vars = lambdas(3);
    assert!(schur(&Partition::empty(), &vars).unwrap().is_one());
    for k in 1..=4 {
        assert_eq!(
            schur(&Partition::new(vec![k]).unwrap(), &vars).unwrap(),
            complete(k as usize, &vars)
        );
    }
    for k in 1..=3 {
        let column = Partition::new(vec![1; k]).unwrap();
        assert_eq!(schur(&column, &vars).unwrap(), elementary(k, &vars).unwrap());
    }
    assert!(schur(&Partition::new(vec![1; 4]).unwrap(), &vars).is_err());
}

fn descents(p: &[u32]) -> usize {
    p.windows(2).filter(|w| w[0] > w[1]).count()
}

#[test]
fn eulerian_numbers_count_descents() {
    for n in 1..=8u32 {
        let mut counts = vec![0u64; n as usize];
        for p in enumerate(n).unwrap() {
            counts[descents(p.image())] += 1;
        }
        for (j, &c) in counts.iter().enumerate() {
            assert_eq!(eulerian_number(n, j as i64), BigInt::from(c), "A({n},{j})");
            assert_eq!(
                eulerian_alternating_sum(n, j as i64 + 1),
                BigInt::from(c),
                "alternating A({n},{j})"
            );
        }
        assert!(eulerian_number(n, n as i64).is_zero());
        assert!(eulerian_number(n, -1).is_zero());
    }
}

#[test]
fn eulerian_polynomial_sums_to_factorial() {
    for n in 1..=8u32 {
        let at_one = eulerian_poly(n).eval(&BTreeMap::from([(VarId::T, rat(1))])).unwrap();
        assert_eq!(at_one, rat((1..=n as i64).product()));
    }
}

#[test]
fn monomials_sum_to_complete() {
    let vars = lambdas(3);
    for k in 0..=5u32 {
        let c = PartitionConstraints {
            max_len: Some(3),
            ..Default::default()
        };
        let total = partitions(k, &c)
            .unwrap()
            .iter()
            .fold(MultiPoly::zero(), |acc, mu| &acc + &monomial_sym(mu, &vars).unwrap());
        assert_eq!(total, complete(k as usize, &vars), "k={k}");
    }
}

fn binom(n: i64, k: i64) -> i64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn q_analogues_at_one() {
    let q1 = BTreeMap::from([(VarId::Q, rat(1))]);
    for n in 0..=10i64 {
        for j in -1..=n + 1 {
            let expect = if (0..=n).contains(&j) { binom(n, j) } else { 0 };
            assert_eq!(q_binomial(n, j).eval(&q1).unwrap(), rat(expect), "[{n} {j}]");
        }
        assert_eq!(q_factorial(n as u32).eval(&q1).unwrap(), rat((1..=n).product()));
    }
}

#[test]
fn q_binomial_pascal_rule() {
    // [n,j] = [n-1,j-1] + q^j [n-1,j]
    let q = MultiPoly::var(VarId::Q);
    for n in 1..=8i64 {
        for j in 0..=n {
            let qj = (0..j).fold(MultiPoly::one(), |acc, _| &acc * &q);
            assert_eq!(
                q_binomial(n, j),
                &q_binomial(n - 1, j - 1) + &(&qj * &q_binomial(n - 1, j))
            );
        }
    }
}

#[test]
fn harmonic_numbers() {
    assert_eq!(harmonic(0), rat(0));
    assert_eq!(harmonic(4), Rational::new(25.into(), 12.into()));
}
