//! The built-in identities.
//!
//! `K` abbreviates the kernel factor `(L(s(k)) - L(s(k+1)))`; every
//! symmetrized left side is the complete summand, kernel included.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::{IdentitySpec, Kind, ParamSpec, Rhs, Status};
use crate::exact::rational::binomial;
use crate::exact::{MultiPoly, RatFunc, Rational, VarId};
use crate::symfun::{
    elementary, eulerian_number, eulerian_poly, lambdas, monomial_sym, partitions, schur, Partition,
    PartitionConstraints,
};
use crate::template::{parse_range, parse_with_params};

const K: &str = "(L(s(k)) - L(s(k+1)))";

enum Side {
    Text(&'static str),
    Built(&'static str, super::Builder),
}

struct Entry {
    id: &'static str,
    kind: Kind,
    status: Status,
    lhs: &'static str,
    rhs: Side,
    params: &'static [(&'static str, &'static str)],
    min_n: u32,
    independent_of: Option<VarId>,
    notes: &'static str,
}

impl Entry {
    fn new(id: &'static str, status: Status, lhs: &'static str, rhs: Side) -> Self {
        Entry {
            id,
            kind: Kind::Symmetrized,
            status,
            lhs,
            rhs,
            params: &[],
            min_n: 1,
            independent_of: None,
            notes: "",
        }
    }

    fn kind(mut self, k: Kind) -> Self {
        self.kind = k;
        self
    }

    fn params(mut self, p: &'static [(&'static str, &'static str)]) -> Self {
        self.params = p;
        self
    }

    fn min_n(mut self, n: u32) -> Self {
        self.min_n = n;
        self
    }

    fn notes(mut self, s: &'static str) -> Self {
        self.notes = s;
        self
    }

    fn build(self) -> IdentitySpec {
        let names: Vec<&str> = self.params.iter().map(|(n, _)| *n).collect();
        let lhs_text = self.lhs.replace('K', K);
        let parse =
            |src: &str| parse_with_params(src, &names).unwrap_or_else(|e| panic!("{}: {}", self.id, e.render(src)));
        let lhs = parse(&lhs_text);
        let rhs = match self.rhs {
            Side::Text(src) => Rhs::Template(parse(src)),
            Side::Built(describe, build) => Rhs::Builder { describe, build },
        };
        let params = self
            .params
            .iter()
            .map(|(name, range)| {
                let (lo, hi) = parse_range(range, &[] as &[&str]).expect("built-in range");
                ParamSpec {
                    name: name.to_string(),
                    lo,
                    hi,
                }
            })
            .collect();
        IdentitySpec {
            id: self.id.to_string(),
            kind: self.kind,
            status: self.status,
            lhs,
            rhs,
            params,
            min_n: self.min_n,
            independent_of: self.independent_of,
            notes: self.notes.to_string(),
        }
    }
}

fn int(v: BigInt) -> RatFunc {
    RatFunc::constant(Rational::from_integer(v))
}

fn param(params: &BTreeMap<String, i64>, name: &str) -> i64 {
    params[name]
}

fn elementary_top(n: u32, _: &BTreeMap<String, i64>) -> RatFunc {
    RatFunc::from_poly(elementary(n as usize, &lambdas(n + 1)).expect("n <= n + 1"))
}

fn eulerian_next(n: u32, _: &BTreeMap<String, i64>) -> RatFunc {
    RatFunc::from_poly(eulerian_poly(n + 1))
}

/// `(−1)^{C(n+1,2)} C(n, n/2)` for even `n`, zero for odd `n`.
fn central_alternating(n: u32, _: &BTreeMap<String, i64>) -> RatFunc {
    if n % 2 == 1 {
        return RatFunc::zero();
    }
    let c = binomial(n as i64, n as i64 / 2);
    let tri = (n as u64) * (n as u64 + 1) / 2;
    int(if tri.is_multiple_of(2) { c } else { -c })
}

fn eulerian_shifted(n: u32, params: &BTreeMap<String, i64>) -> RatFunc {
    int(eulerian_number(n, param(params, "j") - 1))
}

fn sum_monomials(n: u32, weight: u32, c: &PartitionConstraints) -> MultiPoly {
    let vars = lambdas(n + 1);
    let mut acc = MultiPoly::zero();
    for mu in partitions(weight, c).expect("consistent constraints") {
        acc += &monomial_sym(&mu, &vars).expect("length bounded by variable count");
    }
    acc
}

fn schur_rectangle(n: u32, params: &BTreeMap<String, i64>) -> RatFunc {
    let p = param(params, "p");
    let mu = Partition::from_unsorted(vec![(p - 1).max(0) as u32; n as usize]);
    RatFunc::from_poly(schur(&mu, &lambdas(n + 1)).expect("n parts in n + 1 variables"))
}

fn signed_monomial_sum(n: u32, params: &BTreeMap<String, i64>) -> RatFunc {
    let (p, j) = (param(params, "p"), param(params, "j"));
    let c = PartitionConstraints {
        max_len: Some(n as usize + 1),
        ..Default::default()
    };
    let sum = sum_monomials(n, ((p - 1) * n as i64).max(0) as u32, &c);
    let mut coeff = binomial(n as i64, j - 1);
    if (j - 1) % 2 != 0 {
        coeff = -coeff;
    }
    RatFunc::from_poly(sum.scale(&Rational::from_integer(coeff)))
}

fn long_monomial_sum(n: u32, params: &BTreeMap<String, i64>) -> RatFunc {
    let j = param(params, "j");
    let c = PartitionConstraints {
        min_len: Some(j.max(0) as usize),
        max_len: Some(n as usize + 1),
        ..Default::default()
    };
    RatFunc::from_poly(sum_monomials(n, ((j - 1) * n as i64).max(0) as u32, &c))
}

fn dominated_monomial_sum(n: u32, params: &BTreeMap<String, i64>) -> RatFunc {
    let p = param(params, "p") as u32;
    let bound = Partition::from_unsorted((1..=n).map(|k| p * k - 1).collect());
    let c = PartitionConstraints {
        max_len: Some(n as usize + 1),
        dominated_by: Some(bound.clone()),
        ..Default::default()
    };
    RatFunc::from_poly(sum_monomials(n, bound.weight(), &c))
}

pub(super) fn entries() -> Vec<IdentitySpec> {
    use Kind::*;
    use Side::*;
    use Status::*;
    let list = vec![
        // numerical identities with λ_j = j
        Entry::new("intro1", Proved, "prod(k=1..n, sum(i=1..k, L(s(i)))/K)", Text("fact(n)"))
            .kind(Specialized)
            .notes("prefix sums over adjacent differences, evaluated at λ_j = j"),
        Entry::new(
            "intro2",
            Proved,
            "L(s(1))^m*prod(k=1..n, (L(s(1)) - L(s(k+1)))/K)",
            Text("sum(j=1..n+1, j^m)"),
        )
        .kind(Specialized)
        .params(&[("m", "0..4")])
        .notes("power sums of 1..n+1"),
        Entry::new("intro3", Proved, "sum(k=1..n, sum(i=1..k, L(s(i)))/K)", Text("binom(n+1, 2)*fact(n)"))
            .kind(Specialized)
            .notes("sum form; counts edges of the weak order on S_{n+1}"),
        // symmetrized identities
        Entry::new("lemma1", Proved, "sum(k=1..n, L(s(k))/K)", Text("binom(n+1, 2)*fact(n)")),
        Entry::new("cor2", Proved, "sum(k=1..n, sum(i=1..k, L(s(i)))/K)", Text("binom(n+1, 2)*fact(n)")),
        Entry::new(
            "lemma3",
            Proved,
            "sum(k=1..n, sum(i=1..k, L(s(i))^2)/K)",
            Text("n*sum(i=1..n+1, L(i))*fact(n)"),
        ),
        Entry::new("lemma4a", Proved, "prod(k=1..n, (L(s(k)) - Y)/K)", Text("1")),
        Entry::new("lemma4b", Proved, "prod(k=1..n, (Y - L(s(k+1)))/K)", Text("1")),
        Entry::new(
            "lemma5",
            Proved,
            "1/(L(s(j)) - Y)*prod(k=1..n, 1/K)",
            Text("sign(n+1-j)*binom(n, j-1)*prod(k=1..n+1, 1/(L(k) - Y))"),
        )
        .params(&[("j", "1..n+1")])
        .notes("partial fractions; stated here over S_{n+1}"),
        Entry::new(
            "lemma6",
            Proved,
            "sum(j=1..n, prod(k=1..j-1, (Y - L(j))/(L(k) - L(j)))*prod(k=j+1..n, (Y - L(j))/(L(k) - L(j))))",
            Text("1"),
        )
        .kind(Plain)
        .notes("Lagrange interpolation of a constant"),
        Entry::new("lemma7", Proved, "prod(k=1..n, (L(s(j)) - Y)/K)", Text("sign(j-1)*binom(n, j-1)"))
            .params(&[("j", "1..n+1")]),
        Entry::new("cor8", Proved, "prod(k=1..n, L(s(k))^2/K)", Built("e_n(L(1), ..., L(n+1))", elementary_top)),
        Entry::new("cor9", Proved, "prod(k=1..n, (L(s(1)) - L(s(k+1)) - Y)/K)", Text("n + 1")),
        Entry::new(
            "cor10",
            Proved,
            "sum(j=0..n, sign(j)*binom(Y - 1, j)*binom(Y + n - j, n - j))",
            Text("n + 1"),
        )
        .kind(Plain)
        .notes("binomial convolution, polynomial in Y"),
        Entry::new(
            "cor11",
            Proved,
            "prod(k=1..n, (L(s(1)) + L(s(2)) - L(s(k+1)) - Y)/K)",
            Text("prod(i=1..n+1, 2) - n - 2"),
        ),
        Entry::new(
            "cor12",
            Proved,
            "L(s(1))^m*prod(k=1..n, (L(s(1)) - L(s(k+1)))/K)",
            Text("sum(j=1..n+1, L(j)^m)"),
        )
        .params(&[("m", "0..3")]),
        Entry::new(
            "lemma13",
            Proved,
            "1/(L(s(1)) - Z)*prod(k=1..n, (sum(i=1..k, L(s(i))*x(i)) - Y)/K)",
            Text("prod(k=1..n, Y - sum(i=1..k, x(i))*Z)*prod(k=1..n+1, 1/(L(k) - Z))"),
        ),
        Entry::new(
            "cor14",
            Proved,
            "prod(k=1..n, (sum(i=1..k, L(s(i))*x(i)) - Y)/K)",
            Text("prod(k=1..n, sum(i=1..k, x(i)))"),
        ),
        Entry::new(
            "cor15",
            Proved,
            "L(s(1))*prod(k=1..n, sum(i=1..k, L(s(i)))/K)",
            Text("fact(n)*sum(k=1..n+1, L(k))"),
        ),
        Entry::new(
            "cor16",
            Proved,
            "sum(i=0..n, sign(n-i)*binom(n, i)*prod(l=1..n+1, i + Y))",
            Text("fact(n)*binom(n+1, 2) + fact(n+1)*Y"),
        )
        .kind(Plain)
        .notes("alternating binomial sum of (i+Y)^(n+1); Y plays the shift a"),
        Entry::new(
            "cor17",
            Proved,
            "sum(i=0..n, sign(n-i)*binom(n, i)*prod(l=1..n, i + Y))",
            Text("fact(n)"),
        )
        .kind(Plain)
        .notes("n-th finite difference of (i+Y)^n; Y plays the shift a"),
        Entry::new(
            "lemma18",
            Proved,
            "1/(L(s(n+1)) - Z)*prod(k=1..n, (Y - sum(i=k+1..n+1, L(s(i))))/K)",
            Text("prod(k=1..n, Y - k*Z)*prod(k=1..n+1, 1/(L(k) - Z))"),
        ),
        Entry::new(
            "lemma19",
            Proved,
            "prod(k=1..n, (sum(i=1..k, L(s(i))) - Y)/((L(s(k)) - Y)*K))",
            Text("fact(n)*(1 - sum(i=1..n, 1/i))*(sum(k=1..n+1, L(k)) - Y)/prod(k=1..n+1, L(k) - Y)"),
        )
        .notes("harmonic numbers; denominator read as the product of (L(k) - Y)"),
        Entry::new(
            "lemma20",
            Proved,
            "prod(k=1..n, (L(s(k)) - t*L(s(k+1)))/K)",
            Built("A_{n+1}(t)", eulerian_next),
        )
        .notes("Eulerian polynomial A_{n+1}(t)"),
        Entry::new(
            "cor21a",
            Proved,
            "sum(j=0..n, sign(j)*binom(n, j)*(j + 1)*prod(k=1..n, binom(n+2, 2) - (j + 1)*k))",
            Text("fact(n)*fact(n)*(1 - sum(i=1..n, 1/i))*binom(n+2, 2)"),
        )
        .kind(Plain),
        Entry::new(
            "cor21b",
            Proved,
            "sum(j=0..n, sign(j)*(1 - q)*prod(a=1..n, prod(b=1..a, q))*prod(a=1..j, prod(b=1..a, q))*prod(a=1..j, q)*qbinom(n, j))",
            Text("prod(a=1..n, prod(b=1..a, q))*prod(i=1..n+1, 1 - q)*prod(i=1..n+1, (1 - prod(c=1..i, q))/(1 - q))"),
        )
        .kind(Plain)
        .notes("q-analogue; equals the order of GL(n+1, q) up to the sign (-1)^(n+1)"),
        Entry::new(
            "lemma22",
            Proved,
            "1/((L(s(1)) - Y)*(L(s(n+1)) - Z))*prod(k=1..n, 1/K)",
            Text("prod(k=1..n, Z - Y)*prod(k=1..n+1, 1/((L(k) - Y)*(L(k) - Z)))"),
        ),
        Entry::new(
            "lemma23",
            Proved,
            "prod(k=1..n, (L(s(1)) - t*L(s(n+1)))/K)",
            Text("sum(k=0..n, binom(n, k)^2*prod(c=1..k, t))"),
        )
        .notes("squared binomials; h-vector of the root polytope"),
        Entry::new("cor24a", Proved, "prod(k=1..n, (L(s(1)) - L(s(n+1)))/K)", Text("binom(2*n, n)")),
        Entry::new(
            "cor24b",
            Proved,
            "prod(k=1..n, (L(s(1)) + L(s(n+1)))/K)",
            Built("(-1)^C(n+1,2) * [n even] * C(n, n/2)", central_alternating),
        )
        .notes("the even-n indicator is read as 1 for even n and 0 for odd n"),
        // open problems
        Entry::new(
            "prob1",
            Problem,
            "prod(k=1..n, sum(i=1..j, L(s(i)))/K)",
            Built("A(n, j-1)", eulerian_shifted),
        )
        .params(&[("j", "1..n+1")])
        .notes("Eulerian numbers; the alternating-sum form agrees with A(n, j-1)"),
        Entry::new(
            "prob2",
            Problem,
            "prod(k=1..n, (sum(i=1..k, L(s(i))^2) - Y)/K)",
            Text("prod(k=1..n, sum(i=1..n+1, L(i)))"),
        )
        .notes("right side has no Y; independence of Y is checked and reported"),
        Entry::new("prob3", Problem, "prod(k=1..n, L(s(k))^p/K)", Built("s_((p-1)^n)", schur_rectangle))
            .params(&[("p", "1..3")])
            .notes("Schur function of a rectangle"),
        Entry::new(
            "prob4",
            Problem,
            "prod(k=1..n, L(s(j))^p/K)",
            Built("(-1)^(j-1) C(n, j-1) sum_{mu |- (p-1)n} m_mu", signed_monomial_sum),
        )
        .params(&[("p", "1..3"), ("j", "1..n+1")]),
        Entry::new(
            "prob5",
            Problem,
            "prod(k=1..n, prod(i=1..j, L(s(i)))/K)",
            Built("sum_{mu |- (j-1)n, len(mu) >= j} m_mu", long_monomial_sum),
        )
        .params(&[("j", "1..n+1")]),
        Entry::new(
            "prob6",
            Problem,
            "prod(k=1..n, prod(i=1..k, L(s(i))^p)/K)",
            Built("sum_{mu <= (pn-1, ..., p-1)} m_mu", dominated_monomial_sum),
        )
        .params(&[("p", "1..2")]),
        // generalizations left as exercises
        Entry::new("ex7-1", Exercise, "prod(k=1..n, (L(s(k)) - Yv(k))/K)", Text("1")),
        Entry::new("ex7-2", Exercise, "prod(k=1..n, (1 + L(s(k))*Yv(k))/K)", Text("prod(k=1..n, Yv(k))")),
        Entry::new("ex7-3", Exercise, "prod(k=1..n, (sum(i=1..k, L(s(i))) - Yv(k))/K)", Text("fact(n)")),
        Entry::new(
            "ex7-4",
            Exercise,
            "prod(k=1..n, (sum(i=1..k, L(s(i)))*Yv(k) + 1)/K)",
            Text("fact(n)*prod(k=1..n, Yv(k))"),
        ),
        Entry::new(
            "ex7-5",
            Exercise,
            "(sum(k=1..n, sum(i=1..k, L(s(i)))*x(k)) - Y)/(L(s(n)) - L(s(n+1)))*prod(k=1..n-1, (sum(i=1..k, L(s(i))) - Y)/K)",
            Text("fact(n-1)*sum(k=1..n, k*x(k))"),
        ),
        Entry::new(
            "ex7-6",
            Exercise,
            "prod(k=1..n, (L(s(1)) - t*L(s(2)))/K)",
            Text("prod(k=1..n, 1 - t) - (n + 1)*prod(k=1..n, -t)"),
        ),
        Entry::new(
            "ex7-7",
            Exercise,
            "prod(k=1..n, (L(s(1)) - t*L(s(3)))/K)",
            Text("prod(k=1..n, 1 - t) + (binom(n, 2) - 1)*prod(k=1..n, -t) - n*binom(n+1, 2)*prod(k=1..n-1, -t)"),
        )
        .min_n(2)
        .notes("needs a third slot, so n >= 2"),
    ];
    list.into_iter()
        .map(|e| {
            let independent_of = (e.id == "prob2").then_some(VarId::Y);
            let mut spec = e.build();
            spec.independent_of = independent_of;
            spec
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn central_values() {
        let none = BTreeMap::new();
        let vals: Vec<RatFunc> = (1..=4).map(|n| central_alternating(n, &none)).collect();
        let expect = [0, -2, 0, 6].map(|v| RatFunc::constant(Rational::from_integer(v.into())));
        assert_eq!(vals, expect);
    }

    #[test]
    fn builders_at_small_n() {
        let p = |k: &str, v: i64| BTreeMap::from([(k.to_string(), v)]);
        assert!(schur_rectangle(3, &p("p", 1)).num().is_one());
        assert_eq!(
            eulerian_shifted(3, &p("j", 2)),
            RatFunc::constant(Rational::from_integer(4.into()))
        );
        let both = BTreeMap::from([("p".to_string(), 1), ("j".to_string(), 2)]);
        assert_eq!(
            signed_monomial_sum(2, &both),
            RatFunc::constant(Rational::from_integer((-2).into()))
        );
        assert!(!dominated_monomial_sum(2, &p("p", 1)).is_zero());
        // min length 1 excludes the empty partition of 0
        assert!(long_monomial_sum(2, &p("j", 1)).is_zero());
        // j = 2, n = 2: partitions of 2 with at least 2 parts
        assert_eq!(long_monomial_sum(2, &p("j", 2)).num().num_terms(), 3);
    }
}
