use std::collections::BTreeMap;

use divsym::exact::RatFunc;
use divsym::perm::enumerate;
use divsym::registry::{registry_list, Rhs};
use divsym::template::{instantiate, instantiate_with, parse, parse_with_params, pretty_print, Template};
use proptest::prelude::*;

fn leaf() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["L(s(1))", "L(s(2))", "L(2)", "Y", "t", "3", "1/2", "x(1)", "n"]).prop_map(String::from)
}

fn bound_leaf() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["L(s(i))", "L(s(i+1))", "x(i)", "i", "Yv(i)"]).prop_map(String::from)
}

fn expr() -> impl Strategy<Value = String> {
    leaf().prop_recursive(3, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a} + {b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a} - {b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a}*{b}")),
            inner.clone().prop_map(|a| format!("({a})^2")),
            inner.clone().prop_map(|a| format!("({a})/(L(s(1)) - L(s(2)))")),
            (bound_leaf(), inner.clone()).prop_map(|(b, a)| format!("sum(i=1..n, {b}*{a})")),
            (bound_leaf(), inner).prop_map(|(b, a)| format!("prod(i=1..n, {b} + {a})")),
        ]
    })
}

fn at(t: &Template, n: u32, sigma: &[u32]) -> RatFunc {
    instantiate(t, n, sigma).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn printing_round_trips(src in expr()) {
        let t = parse(&src).unwrap();
        let again = parse(&pretty_print(&t)).unwrap();
        prop_assert_eq!(&again, &t);
        prop_assert_eq!(pretty_print(&again), pretty_print(&t));
    }

    #[test]
    fn instantiation_is_a_homomorphism(a in expr(), b in expr(), n in 1u32..=3, rank in 0usize..24) {
        let perms: Vec<_> = enumerate(n + 1).unwrap().collect();
        let sigma = perms[rank % perms.len()].image().to_vec();
        let (ta, tb) = (parse(&a).unwrap(), parse(&b).unwrap());
        let sum = parse(&format!("({a}) + ({b})")).unwrap();
        let prod = parse(&format!("({a})*({b})")).unwrap();
        let (fa, fb) = (at(&ta, n, &sigma), at(&tb, n, &sigma));
        prop_assert_eq!(at(&sum, n, &sigma), fa.add(&fb));
        prop_assert_eq!(at(&prod, n, &sigma), fa.mul(&fb));
    }

    #[test]
    fn renaming_a_binder_is_invisible(body in expr(), b in bound_leaf(), n in 1u32..=3) {
        let t = parse(&format!("sum(i=1..n, {b}*({body}))")).unwrap();
        let renamed = Template { root: t.root.rename_binder("i", "u"), params: t.params.clone() };
        prop_assert!(pretty_print(&renamed).contains("u=1..n"));
        let sigma: Vec<u32> = (1..=n + 1).rev().collect();
        prop_assert_eq!(at(&renamed, n, &sigma), at(&t, n, &sigma));
    }
}

#[test]
fn catalog_templates_round_trip() {
    for spec in registry_list() {
        let names = spec.param_names();
        let mut sides = vec![&spec.lhs];
        if let Rhs::Template(t) = &spec.rhs {
            sides.push(t);
        }
        for t in sides {
            let printed = pretty_print(t);
            let again =
                parse_with_params(&printed, &names).unwrap_or_else(|e| panic!("{}: {}", spec.id, e.render(&printed)));
            assert_eq!(&again, t, "{}: {printed}", spec.id);
        }
    }
}

#[test]
fn empty_ranges() {
    let sigma = [1, 2];
    assert!(at(&parse("sum(k=2..1, L(s(k)))").unwrap(), 1, &sigma).is_zero());
    assert_eq!(
        at(&parse("prod(k=1..n-1, L(s(k)))").unwrap(), 1, &sigma),
        RatFunc::one()
    );
}

#[test]
fn parameters_bind_at_instantiation() {
    let t = parse_with_params("L(s(1))^m*binom(n, j)", &["m", "j"]).unwrap();
    let params = BTreeMap::from([("m".to_string(), 2), ("j".to_string(), 1)]);
    let f = instantiate_with(&t, 3, &[2, 1, 3, 4], &params).unwrap();
    assert_eq!(f.to_string(), "3*L(2)^2");
}

#[test]
fn static_and_dynamic_checks() {
    let t = parse("L(s(0))").unwrap();
    assert!(instantiate(&t, 1, &[1, 2]).is_err());
    assert!(parse("prod(k=1..n*n, 1)").is_err());
    assert!(parse("L(1)^Y").is_err());
}
