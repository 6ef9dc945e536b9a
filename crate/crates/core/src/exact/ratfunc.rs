use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::gcd::gcd;
use super::poly::MultiPoly;
use super::rational::Rational;
use super::var::VarId;
use super::ExactError;

/// A reduced quotient `num / den` of polynomials.
///
/// The denominator is nonzero and monic under the monomial order, and
/// `gcd(num, den) = 1`, so two equal values have identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZeroFunction);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.try_div_exact(&g).expect("gcd divides numerator"),
                den.try_div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Self::normalize_sign(num, den)
    }

    fn normalize_sign(num: MultiPoly, den: MultiPoly) -> Self {
        let (lc, den) = den.monic_parts();
        let num = if lc.is_one() { num } else { num.scale(&lc.recip()) };
        RatFunc { num, den }
    }

    /// Builds from parts already known to be coprime; only the sign and
    /// scale of the denominator are normalized.
    pub fn from_coprime_parts(num: MultiPoly, den: MultiPoly) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZeroFunction);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        Ok(Self::normalize_sign(num, den))
    }

    pub fn zero() -> Self {
        Self::from_poly(MultiPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(MultiPoly::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(MultiPoly::constant(c))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RatFunc {
            num: p,
            den: MultiPoly::one(),
        }
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn into_parts(self) -> (MultiPoly, MultiPoly) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&MultiPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    /// The value when `self` is a constant.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    /// Re-normalizes; a no-op on values produced by this type.
    pub fn normalized(&self) -> RatFunc {
        Self::reduce(self.num.clone(), self.den.clone())
    }

    /// Value equality by cross-multiplication, independent of normal form.
    pub fn value_eq(&self, other: &RatFunc) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn add(&self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Self::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        let b = self.den.try_div_exact(&g).expect("gcd divides");
        let d = rhs.den.try_div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &d) + &(&rhs.num * &b);
        Self::reduce(num, &self.den * &d)
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, rhs: &RatFunc) -> RatFunc {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        // cross-cancel so the product needs no further gcd
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let div = |p: &MultiPoly, g: &MultiPoly| {
            if g.is_one() {
                p.clone()
            } else {
                p.try_div_exact(g).expect("gcd divides")
            }
        };
        let num = &div(&self.num, &g1) * &div(&rhs.num, &g2);
        let den = &div(&self.den, &g2) * &div(&rhs.den, &g1);
        Self::normalize_sign(num, den)
    }

    pub fn recip(&self) -> Result<RatFunc, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZeroFunction);
        }
        Ok(Self::normalize_sign(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &RatFunc) -> Result<RatFunc, ExactError> {
        Ok(self.mul(&rhs.recip()?))
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, k: u32) -> RatFunc {
        RatFunc {
            num: self.num.pow(k),
            den: self.den.pow(k),
        }
    }

    /// Exact evaluation; fails if a variable is unbound or the denominator
    /// vanishes.
    pub fn eval(&self, point: &BTreeMap<VarId, Rational>) -> Result<Rational, ExactError> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(ExactError::PoleAtPoint);
        }
        Ok(self.num.eval(point)? / d)
    }

    /// Partial evaluation; unbound variables stay symbolic.
    pub fn substitute(&self, point: &BTreeMap<VarId, Rational>) -> Result<RatFunc, ExactError> {
        let d = self.den.substitute(point);
        if d.is_zero() {
            return Err(ExactError::PoleAtPoint);
        }
        Ok(Self::reduce(self.num.substitute(point), d))
    }

    pub fn rename(&self, f: impl Fn(VarId) -> VarId) -> RatFunc {
        Self::normalize_sign(self.num.rename(&f), self.den.rename(&f))
    }

    pub fn swap_vars(&self, a: VarId, b: VarId) -> RatFunc {
        Self::normalize_sign(self.num.swap_vars(a, b), self.den.swap_vars(a, b))
    }

    /// True iff `self` is invariant under every adjacent transposition of
    /// `vars`; these generate the full symmetric group on `vars`.
    pub fn is_symmetric(&self, vars: &[VarId]) -> bool {
        vars.windows(2).all(|w| self.swap_vars(w[0], w[1]) == *self)
    }

    pub fn vars(&self) -> std::collections::BTreeSet<VarId> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<MultiPoly> for RatFunc {
    fn from(p: MultiPoly) -> Self {
        Self::from_poly(p)
    }
}

impl From<Rational> for RatFunc {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &MultiPoly| p.num_terms() > 1 || p.constant_value().is_none_or(|c| c < Rational::zero());
        let num = if self.num.num_terms() > 1 {
            format!("({})", self.num)
        } else {
            self.num.to_string()
        };
        if wrap(&self.den) {
            write!(f, "{num}/({})", self.den)
        } else {
            write!(f, "{num}/{}", self.den)
        }
    }
}

/// `∏_{1≤i<j≤n} (λ_i − λ_j)`.
pub fn vandermonde(n: u32) -> MultiPoly {
    let mut acc = MultiPoly::one();
    for i in 1..=n {
        for j in i + 1..=n {
            acc = &acc * &(&MultiPoly::var(VarId::Lambda(i)) - &MultiPoly::var(VarId::Lambda(j)));
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::Degree;
    use VarId::*;

    fn l(i: u32) -> MultiPoly {
        MultiPoly::var(Lambda(i))
    }

    fn rf(n: MultiPoly, d: MultiPoly) -> RatFunc {
        RatFunc::new(n, d).unwrap()
    }

    #[test]
    fn antisymmetric_cancellation() {
        let a = rf(MultiPoly::one(), &l(1) - &l(2));
        let b = rf(MultiPoly::one(), &l(2) - &l(1));
        assert!(a.add(&b).is_zero());
    }

    #[test]
    fn two_term_divided_symmetrization() {
        let a = rf(l(1), &l(1) - &l(2));
        let b = rf(l(2), &l(2) - &l(1));
        assert_eq!(a.add(&b), RatFunc::one());
    }

    #[test]
    fn reduces_to_polynomial() {
        let r = rf(&l(1).pow(2) - &l(2).pow(2), &l(1) - &l(2));
        assert!(r.is_polynomial());
        assert_eq!(r.num(), &(&l(1) + &l(2)));
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(
            RatFunc::new(l(1), MultiPoly::zero()),
            Err(ExactError::DivisionByZeroFunction)
        );
        assert_eq!(
            RatFunc::one().div(&RatFunc::zero()),
            Err(ExactError::DivisionByZeroFunction)
        );
    }

    #[test]
    fn denominator_is_monic() {
        let r = rf(l(3), (&l(2) - &l(1)).scale(&crate::exact::rational::rat(2)));
        assert_eq!(r.den().leading_coeff(), Rational::one());
        assert_eq!(r.den(), &(&l(1) - &l(2)));
    }

    #[test]
    fn vandermonde_small() {
        assert!(vandermonde(1).is_one());
        assert_eq!(vandermonde(2), &l(1) - &l(2));
        let v3 = vandermonde(3);
        assert_eq!(v3.total_degree(), Degree::Finite(3));
        assert_eq!(v3, &(&(&l(1) - &l(2)) * &(&l(1) - &l(3))) * &(&l(2) - &l(3)));
    }

    #[test]
    fn symmetry_checks() {
        let vars = [Lambda(1), Lambda(2), Lambda(3)];
        let p = RatFunc::from_poly(&(&l(1) + &l(2)) + &l(3));
        assert!(p.is_symmetric(&vars));
        assert!(!RatFunc::from_poly(&l(1) - &l(2)).is_symmetric(&vars[..2]));
        let e2 = &(&(&l(1) * &l(2)) + &(&l(1) * &l(3))) + &(&l(2) * &l(3));
        assert!(RatFunc::from_poly(e2).is_symmetric(&vars));
    }
}
