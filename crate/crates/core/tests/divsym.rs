use std::collections::BTreeMap;

use divsym::divsym::{classify_prop0, ds_eval, ds_symbolic, DsProblem, Prop0};
use divsym::exact::{frac, rat, Monomial, MultiPoly, RatFunc, Rational, VarId};
use divsym::perm::enumerate;
use divsym::symfun::lambdas;
use divsym::template::{instantiate, parse};
use num_traits::Zero;
use proptest::prelude::*;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A polynomial summand in the slots `L(s(1))..L(s(n+1))`, as template text.
fn summand(n: u32) -> impl Strategy<Value = String> {
    let term = (-4i64..=4, prop::collection::vec(0u32..=2, n as usize + 1));
    prop::collection::vec(term, 1..4).prop_map(|terms| {
        let parts: Vec<String> = terms
            .into_iter()
            .map(|(c, exps)| {
                let mut s = format!("({c})");
                for (i, e) in exps.into_iter().enumerate() {
                    s.push_str(&format!("*L(s({}))^{e}", i + 1));
                }
                s
            })
            .collect();
        parts.join(" + ")
    })
}

fn sized_summand() -> impl Strategy<Value = (u32, String)> {
    (1u32..=3).prop_flat_map(|n| (Just(n), summand(n)))
}

fn ds(src: &str, n: u32) -> RatFunc {
    ds_symbolic(&DsProblem::new(parse(src).unwrap(), n)).unwrap()
}

/// The defining sum, accumulated one permutation at a time in `order`.
fn brute_force(src: &str, n: u32, reversed: bool) -> RatFunc {
    let t = parse(src).unwrap();
    let mut perms: Vec<_> = enumerate(n + 1).unwrap().collect();
    if reversed {
        perms.reverse();
    }
    let mut acc = RatFunc::zero();
    for p in perms {
        let s = p.image();
        let mut term = instantiate(&t, n, s).unwrap();
        for w in s.windows(2) {
            let d = &MultiPoly::var(VarId::Lambda(w[0])) - &MultiPoly::var(VarId::Lambda(w[1]));
            term = term.div(&RatFunc::from_poly(d)).unwrap();
        }
        acc = acc.add(&term);
    }
    acc
}

fn distinct_point(rng: &mut ChaCha8Rng, m: u32) -> BTreeMap<VarId, Rational> {
    sample(rng, 10079, m as usize)
        .into_iter()
        .enumerate()
        .map(|(i, v)| (VarId::Lambda(i as u32 + 1), rat(v as i64 + 1)))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn linear((n, f) in sized_summand(), g in summand(3), a in -5i64..=5, b in 1i64..=4) {
        let g = g.replace("L(s(4))", "L(s(1))").replace("L(s(3))", "L(s(1))");
        let (ca, cb) = (frac(a, 3), frac(7, b));
        let combined = ds(&format!("({a}/3)*({f}) + (7/{b})*({g})"), n);
        prop_assert_eq!(combined, ds(&f, n).scale(&ca).add(&ds(&g, n).scale(&cb)));
    }

    #[test]
    fn symmetric_result((n, f) in sized_summand()) {
        prop_assert!(ds(&f, n).is_symmetric(&lambdas(n + 1)));
    }

    #[test]
    fn summation_order_is_irrelevant((n, f) in sized_summand()) {
        let forward = ds(&f, n);
        prop_assert_eq!(&brute_force(&f, n, true), &forward);
        prop_assert_eq!(&brute_force(&f, n, false), &forward);
    }

    #[test]
    fn pointwise_matches_symbolic((n, f) in sized_summand(), seed in any::<u64>()) {
        let p = DsProblem::new(parse(&f).unwrap(), n);
        let sym = ds_symbolic(&p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..20 {
            let pt = distinct_point(&mut rng, n + 1);
            prop_assert_eq!(ds_eval(&p, &pt).unwrap(), sym.eval(&pt).unwrap());
        }
    }

    #[test]
    fn degree_laws(n in 1u32..=4, exps in prop::collection::vec(0u32..=3, 4), c in 1i64..=5) {
        let exps = &exps[..n as usize];
        let f = MultiPoly::term(
            Monomial::from_pairs(exps.iter().enumerate().map(|(i, &e)| (VarId::Lambda(i as u32 + 1), e))),
            rat(c),
        );
        let deg: u32 = exps.iter().sum();
        // independent value at a point: the S_n sum with kernel 1..n-1
        let pt: BTreeMap<VarId, Rational> = (1..=n).map(|i| (VarId::Lambda(i), rat((i * i + 3) as i64))).collect();
        let mut expected = Rational::zero();
        for s in enumerate(n).unwrap() {
            let s = s.image();
            let mut term = f.rename(|v| match v {
                VarId::Lambda(i) => VarId::Lambda(s[i as usize - 1]),
                other => other,
            }).eval(&pt).unwrap();
            for w in s.windows(2) {
                term /= &pt[&VarId::Lambda(w[0])] - &pt[&VarId::Lambda(w[1])];
            }
            expected += term;
        }
        match classify_prop0(&f, n).unwrap() {
            Prop0::Zero => {
                prop_assert!(deg < n - 1);
                prop_assert!(expected.is_zero());
            }
            Prop0::Constant(v) => {
                prop_assert_eq!(deg, n - 1);
                prop_assert_eq!(v, expected);
            }
            Prop0::HigherDegree(g) => {
                prop_assert!(deg > n - 1);
                prop_assert_eq!(g.eval(&pt).unwrap(), expected);
            }
        }
    }
}

#[test]
fn hand_computed_two_term_sum() {
    // (λ1 − Y)/(λ1 − λ2) + (λ2 − Y)/(λ2 − λ1) = 1
    assert_eq!(ds("L(s(1)) - Y", 1), RatFunc::one());
    assert!(ds("1", 2).is_zero());
}

#[test]
fn leading_coefficient_constant() {
    // degree n - 1 in S_n: the constant is the sum over the kernel of the top monomial
    let l = |i| MultiPoly::var(VarId::Lambda(i));
    assert_eq!(classify_prop0(&(&l(1) * &l(1)), 3).unwrap(), Prop0::Constant(rat(1)));
}
