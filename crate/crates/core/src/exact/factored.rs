//! Rational functions kept as products of polynomial factors.
//!
//! Summing many terms whose denominators are products of a few linear forms
//! (the shape of every divided-symmetrization summand) is much cheaper with
//! factored denominators: the common denominator is the multiplicity-wise
//! maximum of the factor multisets, and no gcd is needed until the end.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::gcd::content_in;
use super::poly::{Degree, MultiPoly};
use super::ratfunc::RatFunc;
use super::rational::{pow_u32, Rational};
use super::var::VarId;
use super::ExactError;

/// `coeff · ∏ num_i^{e_i} / ∏ den_j^{f_j}` with monic, non-constant factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factored {
    coeff: Rational,
    num: BTreeMap<MultiPoly, u32>,
    den: BTreeMap<MultiPoly, u32>,
}

impl Factored {
    pub fn zero() -> Self {
        Self::constant(Rational::zero())
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Factored {
            coeff: c,
            num: BTreeMap::new(),
            den: BTreeMap::new(),
        }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        if let Some(c) = p.constant_value() {
            return Self::constant(c);
        }
        let (lc, m) = p.monic_parts();
        let mut num = BTreeMap::new();
        num.insert(m, 1);
        Factored {
            coeff: lc,
            num,
            den: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn numerator_factors(&self) -> impl Iterator<Item = (&MultiPoly, u32)> {
        self.num.iter().map(|(p, e)| (p, *e))
    }

    pub fn denominator_factors(&self) -> impl Iterator<Item = (&MultiPoly, u32)> {
        self.den.iter().map(|(p, e)| (p, *e))
    }

    pub fn constant_value(&self) -> Option<Rational> {
        (self.num.is_empty() && self.den.is_empty()).then(|| self.coeff.clone())
    }

    pub fn mul(&self, rhs: &Factored) -> Factored {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = self.clone();
        out.coeff *= &rhs.coeff;
        for (p, e) in &rhs.num {
            out.push_num(p.clone(), *e);
        }
        for (p, e) in &rhs.den {
            out.push_den(p.clone(), *e);
        }
        out
    }

    fn push_num(&mut self, p: MultiPoly, e: u32) {
        push_cancel(&mut self.num, &mut self.den, p, e);
    }

    fn push_den(&mut self, p: MultiPoly, e: u32) {
        push_cancel(&mut self.den, &mut self.num, p, e);
    }

    pub fn recip(&self) -> Result<Factored, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZeroFunction);
        }
        Ok(Factored {
            coeff: self.coeff.recip(),
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    pub fn div(&self, rhs: &Factored) -> Result<Factored, ExactError> {
        Ok(self.mul(&rhs.recip()?))
    }

    pub fn neg(&self) -> Factored {
        let mut out = self.clone();
        out.coeff = -out.coeff;
        out
    }

    pub fn pow(&self, k: u32) -> Factored {
        if k == 0 {
            return Self::one();
        }
        Factored {
            coeff: pow_u32(&self.coeff, k),
            num: self.num.iter().map(|(p, e)| (p.clone(), e * k)).collect(),
            den: self.den.iter().map(|(p, e)| (p.clone(), e * k)).collect(),
        }
    }

    pub fn add(&self, rhs: &Factored) -> Factored {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        // common numerator factors are pulled out
        let mut common = BTreeMap::new();
        for (p, &e) in &self.num {
            if let Some(&f) = rhs.num.get(p) {
                common.insert(p.clone(), e.min(f));
            }
        }
        let den = max_merge(&self.den, &rhs.den);
        let a = self.cofactor(&common, &den);
        let b = rhs.cofactor(&common, &den);
        let s = &a + &b;
        if s.is_zero() {
            return Self::zero();
        }
        let mut out = Factored::from_poly(s);
        for (p, e) in common {
            out.push_num(p, e);
        }
        for (p, e) in den {
            out.push_den(p, e);
        }
        out
    }

    pub fn sub(&self, rhs: &Factored) -> Factored {
        self.add(&rhs.neg())
    }

    /// Expanded `self · den / common` where `common` divides the numerator
    /// and `den` is a multiple of the denominator.
    fn cofactor(&self, common: &BTreeMap<MultiPoly, u32>, den: &BTreeMap<MultiPoly, u32>) -> MultiPoly {
        let mut acc = MultiPoly::constant(self.coeff.clone());
        for (p, &e) in &self.num {
            let k = e - common.get(p).copied().unwrap_or(0);
            for _ in 0..k {
                acc = &acc * p;
            }
        }
        for (p, &e) in den {
            let k = e - self.den.get(p).copied().unwrap_or(0);
            for _ in 0..k {
                acc = &acc * p;
            }
        }
        acc
    }

    /// Expanded numerator (including the coefficient).
    pub fn expanded_numerator(&self) -> MultiPoly {
        expand(&self.coeff, &self.num)
    }

    pub fn expanded_denominator(&self) -> MultiPoly {
        expand(&Rational::one(), &self.den)
    }

    /// Cancels denominator factors that divide some numerator factor.
    /// Complete whenever every denominator factor is irreducible.
    pub fn reduce(&self) -> Factored {
        if self.is_zero() || self.den.is_empty() {
            return self.clone();
        }
        let mut num: Vec<(MultiPoly, u32)> = self.num.iter().map(|(p, e)| (p.clone(), *e)).collect();
        let mut den = BTreeMap::new();
        let mut coeff = self.coeff.clone();
        for (d, &e) in &self.den {
            let mut left = e;
            let mut i = 0;
            while left > 0 && i < num.len() {
                if num[i].0.total_degree() >= d.total_degree() {
                    if let Some(q) = num[i].0.try_div_exact(d) {
                        // one copy of num[i] becomes q
                        num[i].1 -= 1;
                        let (lc, q) = q.monic_parts();
                        coeff *= lc;
                        let keep_i = num[i].1 > 0;
                        if !q.is_constant() {
                            num.push((q, 1));
                        }
                        left -= 1;
                        if !keep_i {
                            num.remove(i);
                        }
                        continue;
                    }
                }
                i += 1;
            }
            if left > 0 {
                den.insert(d.clone(), left);
            }
        }
        let mut out = Factored {
            coeff,
            num: BTreeMap::new(),
            den,
        };
        for (p, e) in num {
            if e > 0 {
                *out.num.entry(p).or_insert(0) += e;
            }
        }
        out
    }

    /// Converts to a normalized `RatFunc`, skipping the gcd when every
    /// remaining denominator factor is known to be irreducible.
    pub fn to_ratfunc(&self) -> RatFunc {
        if self.is_zero() {
            return RatFunc::zero();
        }
        let r = self.reduce();
        let num = r.expanded_numerator();
        let den = r.expanded_denominator();
        if r.den.keys().all(is_certainly_irreducible) {
            RatFunc::from_coprime_parts(num, den).expect("nonzero denominator")
        } else {
            RatFunc::new(num, den).expect("nonzero denominator")
        }
    }

    pub fn from_ratfunc(r: &RatFunc) -> Factored {
        let mut out = Factored::from_poly(r.num().clone());
        if !r.den().is_one() {
            out.push_den(r.den().clone(), 1);
        }
        out
    }

    /// Exact evaluation at a full assignment.
    pub fn eval(&self, point: &BTreeMap<VarId, Rational>) -> Result<Rational, ExactError> {
        let mut d = Rational::one();
        for (p, &e) in &self.den {
            d *= pow_u32(&p.eval(point)?, e);
        }
        if d.is_zero() {
            return Err(ExactError::PoleAtPoint);
        }
        let mut n = self.coeff.clone();
        for (p, &e) in &self.num {
            n *= pow_u32(&p.eval(point)?, e);
        }
        Ok(n / d)
    }

    /// Maximum total degree of the numerator and of the denominator.
    pub fn degrees(&self) -> (Degree, Degree) {
        let deg = |m: &BTreeMap<MultiPoly, u32>| {
            m.iter().fold(0u32, |acc, (p, e)| match p.total_degree() {
                Degree::Finite(d) => acc + d * e,
                Degree::NegInfinity => acc,
            })
        };
        if self.is_zero() {
            return (Degree::NegInfinity, Degree::Finite(0));
        }
        (Degree::Finite(deg(&self.num)), Degree::Finite(deg(&self.den)))
    }
}

fn push_cancel(into: &mut BTreeMap<MultiPoly, u32>, other: &mut BTreeMap<MultiPoly, u32>, p: MultiPoly, e: u32) {
    if e == 0 {
        return;
    }
    if let Some(f) = other.get_mut(&p) {
        if *f > e {
            *f -= e;
            return;
        }
        let rest = e - *f;
        other.remove(&p);
        if rest > 0 {
            into.insert(p, rest);
        }
        return;
    }
    *into.entry(p).or_insert(0) += e;
}

fn max_merge(a: &BTreeMap<MultiPoly, u32>, b: &BTreeMap<MultiPoly, u32>) -> BTreeMap<MultiPoly, u32> {
    let mut out = a.clone();
    for (p, &e) in b {
        let slot = out.entry(p.clone()).or_insert(0);
        *slot = (*slot).max(e);
    }
    out
}

fn expand(c: &Rational, factors: &BTreeMap<MultiPoly, u32>) -> MultiPoly {
    let mut acc = MultiPoly::constant(c.clone());
    for (p, &e) in factors {
        acc = &acc * &p.pow(e);
    }
    acc
}

/// Sufficient irreducibility test: total degree 1, or degree 1 in some
/// variable with coprime coefficients.
fn is_certainly_irreducible(p: &MultiPoly) -> bool {
    if p.total_degree() == Degree::Finite(1) {
        return true;
    }
    p.vars()
        .into_iter()
        .find(|&v| p.degree_in(v) == 1)
        .is_some_and(|v| content_in(p, v).is_one())
}

/// Running sum with a factored common denominator and an expanded numerator.
///
/// Each added term is brought over the current least common denominator;
/// the result is reduced once at the end by [`Factored::reduce`].
#[derive(Clone, Debug, Default)]
pub struct LazySum {
    num: MultiPoly,
    den: BTreeMap<MultiPoly, u32>,
}

impl LazySum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, t: &Factored) {
        if t.is_zero() {
            return;
        }
        // extend the common denominator by what `t` needs
        for (p, &e) in &t.den {
            let have = self.den.get(p).copied().unwrap_or(0);
            if e > have {
                if !self.num.is_zero() {
                    self.num = &self.num * &p.pow(e - have);
                }
                self.den.insert(p.clone(), e);
            }
        }
        let mut term = MultiPoly::constant(t.coeff.clone());
        for (p, &e) in &t.num {
            term = &term * &p.pow(e);
        }
        for (p, &e) in &self.den {
            let k = e - t.den.get(p).copied().unwrap_or(0);
            if k > 0 {
                term = &term * &p.pow(k);
            }
        }
        self.num += &term;
    }

    /// Merges another partial sum (used to combine parallel chunks).
    pub fn merge(&mut self, other: LazySum) {
        let mut t = Factored::from_poly(other.num);
        if t.is_zero() {
            return;
        }
        for (p, e) in other.den {
            t.push_den(p, e);
        }
        self.add(&t);
    }

    pub fn finish(self) -> Factored {
        let mut out = Factored::from_poly(self.num);
        if out.is_zero() {
            return out;
        }
        for (p, e) in self.den {
            out.push_den(p, e);
        }
        out.reduce()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;
    use VarId::*;

    fn l(i: u32) -> MultiPoly {
        MultiPoly::var(Lambda(i))
    }

    fn inv(p: MultiPoly) -> Factored {
        Factored::one().div(&Factored::from_poly(p)).unwrap()
    }

    #[test]
    fn opposite_factors_share_a_key() {
        let a = Factored::from_poly(l(1)).mul(&inv(&l(1) - &l(2)));
        let b = Factored::from_poly(l(2)).mul(&inv(&l(2) - &l(1)));
        assert_eq!(a.add(&b).to_ratfunc(), RatFunc::one());
    }

    #[test]
    fn lazy_sum_matches_ratfunc_sum() {
        let terms = [
            Factored::from_poly(&l(1) - &MultiPoly::var(Y)).mul(&inv(&l(1) - &l(2))),
            Factored::from_poly(&l(2) - &MultiPoly::var(Y)).mul(&inv(&l(2) - &l(1))),
            inv(&l(1) - &l(3)),
        ];
        let mut s = LazySum::new();
        let mut r = RatFunc::zero();
        for t in &terms {
            s.add(t);
            r = r.add(&t.to_ratfunc());
        }
        assert_eq!(s.finish().to_ratfunc(), r);
    }

    #[test]
    fn reduce_cancels_divisible_numerators() {
        let f = Factored::from_poly(&l(1).pow(2) - &l(2).pow(2)).mul(&inv(&l(1) - &l(2)));
        let r = f.reduce();
        assert_eq!(r.denominator_factors().count(), 0);
        assert_eq!(r.expanded_numerator(), &l(1) + &l(2));
    }

    #[test]
    fn eval_detects_poles() {
        let f = inv(&l(1) - &l(2));
        let pt: BTreeMap<_, _> = [(Lambda(1), rat(2)), (Lambda(2), rat(2))].into();
        assert_eq!(f.eval(&pt), Err(ExactError::PoleAtPoint));
    }
}
