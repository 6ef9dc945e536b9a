use std::collections::BTreeMap;

use divsym::exact::{frac, gcd, rat, vandermonde, Monomial, MultiPoly, RatFunc, Rational, VarId};
use proptest::prelude::*;

const VARS: [VarId; 3] = [VarId::Lambda(1), VarId::Lambda(2), VarId::Y];

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((-5i64..=5, 0u32..=2, 0u32..=2, 0u32..=1), 0..4).prop_map(|terms| {
        MultiPoly::from_terms(terms.into_iter().map(|(c, a, b, y)| {
            let m = Monomial::from_pairs([(VARS[0], a), (VARS[1], b), (VARS[2], y)]);
            (m, rat(c))
        }))
    })
}

/// Dense-ish polynomials in four λ's, the shape that symmetrized sums produce.
fn poly4() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((-3i64..=3, prop::collection::vec(0u32..=2, 4)), 1..6).prop_map(|terms| {
        MultiPoly::from_terms(terms.into_iter().map(|(c, e)| {
            let m = Monomial::from_pairs(e.into_iter().enumerate().map(|(i, e)| (VarId::Lambda(i as u32 + 1), e)));
            (m, rat(c))
        }))
    })
}

fn nonzero_poly() -> impl Strategy<Value = MultiPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(), nonzero_poly()).prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
}

fn point() -> impl Strategy<Value = BTreeMap<VarId, Rational>> {
    prop::collection::vec((-30i64..=30, 1i64..=4), 3)
        .prop_map(|v| VARS.iter().zip(v).map(|(&var, (p, q))| (var, frac(p, q))).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalizing_is_idempotent(f in ratfunc()) {
        let once = f.normalized();
        prop_assert_eq!(once.normalized(), once.clone());
        prop_assert_eq!(once, f);
    }

    #[test]
    fn field_laws(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.add(&a.neg()).is_zero());
        if !a.is_zero() {
            prop_assert_eq!(a.mul(&a.recip().unwrap()), RatFunc::one());
        }
    }

    #[test]
    fn gcd_contains_common_factor(a in poly4(), b in poly4(), h in poly4()) {
        prop_assume!(!a.is_zero() && !b.is_zero() && !h.is_zero());
        let (x, y) = (&a * &h, &b * &h);
        let g = gcd(&x, &y);
        prop_assert!(x.try_div_exact(&g).is_some());
        prop_assert!(y.try_div_exact(&g).is_some());
        prop_assert!(g.try_div_exact(&h).is_some());
        prop_assert_eq!(g.leading_coeff(), rat(1));
        // the cofactors are coprime
        let (p, q) = (x.try_div_exact(&g).unwrap(), y.try_div_exact(&g).unwrap());
        prop_assert!(gcd(&p, &q).is_one());
    }

    #[test]
    fn evaluation_commutes_with_arithmetic(f in poly(), g in poly(), pt in point()) {
        let (x, y) = (f.eval(&pt).unwrap(), g.eval(&pt).unwrap());
        prop_assert_eq!((&f + &g).eval(&pt).unwrap(), &x + &y);
        prop_assert_eq!((&f - &g).eval(&pt).unwrap(), &x - &y);
        prop_assert_eq!((&f * &g).eval(&pt).unwrap(), &x * &y);
    }

    #[test]
    fn quotient_evaluation(f in ratfunc(), g in ratfunc(), pt in point()) {
        if let (Ok(x), Ok(y)) = (f.eval(&pt), g.eval(&pt)) {
            prop_assert_eq!(f.add(&g).eval(&pt).unwrap(), &x + &y);
            prop_assert_eq!(f.mul(&g).eval(&pt).unwrap(), &x * &y);
        }
    }
}

#[test]
fn vandermonde_is_antisymmetric() {
    for n in 2..=5 {
        let v = vandermonde(n);
        for i in 1..=n {
            for j in i + 1..=n {
                assert_eq!(
                    v.swap_vars(VarId::Lambda(i), VarId::Lambda(j)),
                    -&v,
                    "n={n} swap {i},{j}"
                );
            }
        }
    }
}

#[test]
fn zero_degree_is_distinct_from_constants() {
    use divsym::exact::Degree;
    assert_eq!(MultiPoly::zero().total_degree(), Degree::NegInfinity);
    assert_eq!(MultiPoly::one().total_degree(), Degree::Finite(0));
    assert!(Degree::NegInfinity < Degree::Finite(0));
}
