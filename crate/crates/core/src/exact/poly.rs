use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::rational::{pow_u32, Rational};
use super::var::VarId;
use super::ExactError;

/// Total degree of a polynomial. The zero polynomial has degree `NegInfinity`,
/// which sorts below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

/// A sparse multivariate polynomial over `Rational`.
///
/// Terms are kept in a map keyed by monomial; no stored coefficient is zero.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(super::rational::rat(c))
    }

    pub fn var(v: VarId) -> Self {
        Self::term(Monomial::var(v), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        match self.terms.len() {
            0 => true,
            1 => self.terms.keys().next().unwrap().is_one(),
            _ => false,
        }
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Degree {
        match self.leading_term() {
            Some((m, _)) => Degree::Finite(m.degree()),
            None => Degree::NegInfinity,
        }
    }

    pub fn degree_in(&self, v: VarId) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<VarId> {
        self.terms.keys().flat_map(|m| m.iter().map(|p| p.0)).collect()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn add_scaled_shifted(&mut self, other: &MultiPoly, c: &Rational, shift: &Monomial) {
        for (m, a) in &other.terms {
            self.add_term(m.mul(shift), a * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        if k == 0 {
            return MultiPoly::one();
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            return MultiPoly::term(m.pow(k), pow_u32(c, k));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = &acc * self;
        }
        acc
    }

    /// Splits off the leading coefficient: returns `(lc, self / lc)`. The zero
    /// polynomial maps to `(0, 0)`.
    pub fn monic_parts(&self) -> (Rational, MultiPoly) {
        let lc = self.leading_coeff();
        if lc.is_zero() || lc.is_one() {
            return (lc, self.clone());
        }
        let inv = lc.recip();
        (lc, self.scale(&inv))
    }

    pub fn monic(&self) -> MultiPoly {
        self.monic_parts().1
    }

    /// Exact evaluation; every variable of `self` must be bound.
    pub fn eval(&self, point: &BTreeMap<VarId, Rational>) -> Result<Rational, ExactError> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.iter() {
                let x = point.get(&v).ok_or(ExactError::MissingAssignment(v))?;
                t *= pow_u32(x, e);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitutes values for the bound variables and keeps the rest symbolic.
    pub fn substitute(&self, point: &BTreeMap<VarId, Rational>) -> MultiPoly {
        if point.is_empty() {
            return self.clone();
        }
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Vec::new();
            for (v, e) in m.iter() {
                match point.get(&v) {
                    Some(x) => coeff *= pow_u32(x, e),
                    None => rest.push((v, e)),
                }
            }
            out.add_term(Monomial::from_pairs(rest), coeff);
        }
        out
    }

    pub fn rename(&self, f: impl Fn(VarId) -> VarId) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| (m.rename(&f), c.clone())))
    }

    pub fn swap_vars(&self, a: VarId, b: VarId) -> MultiPoly {
        self.rename(|v| {
            if v == a {
                b
            } else if v == b {
                a
            } else {
                v
            }
        })
    }

    /// Exact division: `Some(q)` with `self = q * d`, or `None` when `d` does
    /// not divide `self`.
    pub fn try_div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        let (lm_d, lc_d) = d.leading_term()?;
        if self.is_zero() {
            return Some(MultiPoly::zero());
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let inv = lc_d.recip();
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        while let Some((lm, lc)) = rem.leading_term() {
            let m = lm.div(lm_d)?;
            let c = lc * &inv;
            let neg = -c.clone();
            rem.add_scaled_shifted(d, &neg, &m);
            quot.add_term(m, c);
        }
        Some(quot)
    }

    /// Coefficients of `self` viewed as a univariate polynomial in `v`;
    /// index `i` holds the coefficient of `v^i`.
    pub fn coefficients_in(&self, v: VarId) -> Vec<MultiPoly> {
        let mut out: Vec<MultiPoly> = Vec::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            let e = e as usize;
            if out.len() <= e {
                out.resize_with(e + 1, MultiPoly::zero);
            }
            out[e].add_term(rest, c.clone());
        }
        out
    }

    pub fn from_coefficients_in(v: VarId, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (i, c) in coeffs.iter().enumerate() {
            let shift = Monomial::var_pow(v, i as u32);
            out.add_scaled_shifted(c, &Rational::one(), &shift);
        }
        out
    }

    /// Univariate coefficient list in `v` for a polynomial in `v` alone.
    pub fn univariate_coefficients(&self, v: VarId) -> Option<Vec<Rational>> {
        self.coefficients_in(v)
            .into_iter()
            .map(|c| c.constant_value())
            .collect()
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

/// Renders terms in descending monomial order using the template syntax,
/// e.g. `L(1)^2 - 3/2*L(2)*Y + 1`.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let abs = c.abs();
            let negative = c.is_negative();
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero();
        }
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        if small.terms.len() == 1 {
            let (m, c) = small.terms.iter().next().unwrap();
            return big.mul_monomial(m, c);
        }
        let mut acc: std::collections::HashMap<Monomial, Rational> =
            std::collections::HashMap::with_capacity(big.terms.len() * small.terms.len());
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                let c = ca * cb;
                match acc.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += c;
                    }
                }
            }
        }
        MultiPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(mut self) -> MultiPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &'a MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::rational::{frac, rat};
    use super::*;
    use VarId::*;

    fn l(i: u32) -> MultiPoly {
        MultiPoly::var(Lambda(i))
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&(&l(1) + &l(2)) + &(&l(1) - &l(2)), l(1).scale(&rat(2)));
        assert_eq!((&l(1) - &l(2)) * (&l(1) + &l(2)), &l(1).pow(2) - &l(2).pow(2));
        let f = &l(1).pow(3) + &MultiPoly::var(T);
        assert!((MultiPoly::zero() * &f).is_zero());
    }

    #[test]
    fn evaluation_examples() {
        let p = &l(1).pow(2) - &l(2).pow(2);
        let pt: BTreeMap<_, _> = [(Lambda(1), rat(3)), (Lambda(2), rat(2))].into();
        assert_eq!(p.eval(&pt).unwrap(), rat(5));
        assert_eq!(
            MultiPoly::constant(frac(7, 2)).eval(&BTreeMap::new()).unwrap(),
            frac(7, 2)
        );
        let q = &(&l(1) * &MultiPoly::var(X(1))) - &MultiPoly::var(Y);
        let pt: BTreeMap<_, _> = [(Lambda(1), rat(2)), (X(1), rat(5)), (Y, rat(3))].into();
        assert_eq!(q.eval(&pt).unwrap(), rat(7));
        assert_eq!(
            l(1).eval(&BTreeMap::new()),
            Err(ExactError::MissingAssignment(Lambda(1)))
        );
    }

    #[test]
    fn degree_sentinel() {
        assert_eq!(MultiPoly::zero().total_degree(), Degree::NegInfinity);
        assert_eq!(MultiPoly::one().total_degree(), Degree::Finite(0));
        assert!(Degree::NegInfinity < Degree::Finite(0));
    }

    #[test]
    fn exact_division() {
        let a = &l(1) - &l(2);
        let b = &(&l(1) + &MultiPoly::var(Y)) * &l(3);
        let p = &a * &b;
        assert_eq!(p.try_div_exact(&a), Some(b.clone()));
        assert_eq!(p.try_div_exact(&b), Some(a.clone()));
        assert_eq!(p.try_div_exact(&(&l(1) + &l(2))), None);
        assert_eq!(a.try_div_exact(&MultiPoly::zero()), None);
    }

    #[test]
    fn display_is_descending() {
        let p = &(&l(1).pow(2) - &l(2).scale(&frac(3, 2))) + &MultiPoly::from_int(-1);
        assert_eq!(p.to_string(), "L(1)^2 - 3/2*L(2) - 1");
        assert_eq!(MultiPoly::zero().to_string(), "0");
    }
}
