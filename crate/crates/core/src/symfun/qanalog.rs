use crate::exact::{Monomial, MultiPoly, Rational, VarId};

fn one_minus_q_pow(i: u32) -> MultiPoly {
    &MultiPoly::one() - &MultiPoly::term(Monomial::var_pow(VarId::Q, i), Rational::from_integer(1.into()))
}

/// Gaussian binomial `[n choose j]_q` as a polynomial in `q`; zero outside
/// `0 ≤ j ≤ n`.
///
/// Uses `∏_{i=1}^{j} (1 − q^{n−j+i}) / (1 − q^i)`, dividing exactly after
/// each factor (each partial product is itself a Gaussian binomial).
pub fn q_binomial(n: i64, j: i64) -> MultiPoly {
    if n < 0 || j < 0 || j > n {
        return MultiPoly::zero();
    }
    let j = j.min(n - j) as u32;
    let n = n as u32;
    let mut acc = MultiPoly::one();
    for i in 1..=j {
        acc = &acc * &one_minus_q_pow(n - j + i);
        acc = acc
            .try_div_exact(&one_minus_q_pow(i))
            .expect("partial products are polynomials");
    }
    acc
}

/// `[n]_q! = ∏_{i=1}^{n} (1 − q^i)/(1 − q)` as a polynomial.
pub fn q_factorial(n: u32) -> MultiPoly {
    let mut acc = MultiPoly::one();
    for i in 1..=n {
        let qi = one_minus_q_pow(i)
            .try_div_exact(&one_minus_q_pow(1))
            .expect("1-q divides");
        acc = &acc * &qi;
    }
    acc
}
