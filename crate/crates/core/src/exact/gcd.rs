//! Multivariate polynomial gcd over the rationals.
//!
//! Univariate inputs use a primitive remainder sequence; several variables
//! are handled by evaluating one of them away and interpolating the gcds of
//! the images. Results are monic, so the gcd is unique.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::poly::MultiPoly;
use super::rational::Rational;
use super::var::VarId;

/// Monic gcd of `a` and `b`; `gcd(0, 0) = 0`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    if a.num_terms() == 1 || b.num_terms() == 1 {
        return MultiPoly::term(monomial_content(a).gcd(&monomial_content(b)), Rational::one());
    }
    let (am, bm) = (a.monic(), b.monic());
    if am == bm {
        return am;
    }
    // cheap exact-division shortcut
    if a.num_terms() >= b.num_terms() {
        if a.try_div_exact(b).is_some() {
            return bm;
        }
    } else if b.try_div_exact(a).is_some() {
        return am;
    }

    let va = a.vars();
    let vb = b.vars();
    if let Some(&v) = va.iter().find(|v| !vb.contains(v)) {
        return gcd(&content_in(a, v), b);
    }
    if let Some(&v) = vb.iter().find(|v| !va.contains(v)) {
        return gcd(a, &content_in(b, v));
    }
    if va.len() == 1 {
        let v = *va.iter().next().expect("one variable");
        let c = gcd(&content_in(a, v), &content_in(b, v));
        return (&c * &primitive_prs(a.clone(), b.clone(), v)).monic();
    }
    interpolated(a, b, &va)
}

/// Dense evaluation/interpolation gcd for two polynomials in the same
/// variables. One variable `y` is eliminated: both inputs are viewed as
/// polynomials in the rest with coefficients in `Q[y]`, their images at
/// `y = α` are gcd'd recursively, and the images are interpolated back.
/// Each image is scaled so its lex-leading coefficient equals
/// `γ(α)`, where `γ` is the gcd of the two leading coefficients; images whose
/// leading monomial is too large come from unlucky points and are skipped.
/// Avoids the coefficient and degree blow-up of pseudo-remainder sequences.
fn interpolated(a: &MultiPoly, b: &MultiPoly, vars: &BTreeSet<VarId>) -> MultiPoly {
    let y = *vars
        .iter()
        .min_by_key(|&&v| (a.degree_in(v).max(b.degree_in(v)), v))
        .expect("non-constant polynomial has a variable");
    let rest: Vec<VarId> = vars.iter().copied().filter(|&v| v != y).collect();
    let (ca, pa) = split_content(a, y);
    let (cb, pb) = split_content(b, y);
    let c = gcd(&ca, &cb);
    if !has_any(&pa, &rest) || !has_any(&pb, &rest) {
        return c.monic();
    }
    let gamma = gcd(&lex_leading(&pa, y, &rest).1, &lex_leading(&pb, y, &rest).1);
    let bound = pa.degree_in(y).min(pb.degree_in(y)) + gamma.degree_in(y);

    let mut lead: Option<Vec<u32>> = None;
    let mut nodes: Vec<Rational> = Vec::new();
    let mut interp = MultiPoly::zero();
    let mut alpha = Rational::zero();
    loop {
        alpha += Rational::one();
        let at = BTreeMap::from([(y, alpha.clone())]);
        let g_at = gamma.substitute(&at).constant_value().expect("univariate");
        if g_at.is_zero() {
            continue;
        }
        let (ea, eb) = (pa.substitute(&at), pb.substitute(&at));
        if lex_key(&lex_leading(&ea, y, &rest).0, &rest) != lex_key(&lex_leading(&pa, y, &rest).0, &rest)
            || lex_key(&lex_leading(&eb, y, &rest).0, &rest) != lex_key(&lex_leading(&pb, y, &rest).0, &rest)
        {
            continue;
        }
        let image = gcd(&ea, &eb);
        if image.is_constant() {
            return c.monic();
        }
        let (m, lc) = lex_leading(&image, y, &rest);
        let key = lex_key(&m, &rest);
        let image = image.scale(&(&g_at / &lc.constant_value().expect("constant")));
        match lead.as_ref().map(|k| key.cmp(k)) {
            Some(Ordering::Greater) => continue,
            Some(Ordering::Equal) => {}
            _ => {
                lead = Some(key);
                nodes.clear();
                interp = MultiPoly::zero();
            }
        }
        // Newton step
        let mut basis = MultiPoly::one();
        let mut weight = Rational::one();
        for x in &nodes {
            basis = &basis * &(&MultiPoly::var(y) - &MultiPoly::constant(x.clone()));
            weight *= &alpha - x;
        }
        let residual = &image - &interp.substitute(&at);
        let settled = residual.is_zero();
        if !settled {
            interp += &(&basis * &residual).scale(&weight.recip());
        }
        nodes.push(alpha.clone());
        if settled || nodes.len() as u32 > bound {
            let candidate = split_content(&interp, y).1;
            if pa.try_div_exact(&candidate).is_some() && pb.try_div_exact(&candidate).is_some() {
                return (&c * &candidate).monic();
            }
        }
    }
}

fn has_any(p: &MultiPoly, vars: &[VarId]) -> bool {
    p.vars().iter().any(|v| vars.contains(v))
}

/// Coefficients of `p` as a polynomial in `rest` over `Q[y]`, keyed by the
/// monomial in `rest`.
fn coefficients_over(p: &MultiPoly, y: VarId) -> BTreeMap<Monomial, MultiPoly> {
    let mut out: BTreeMap<Monomial, MultiPoly> = BTreeMap::new();
    for (m, c) in p.terms() {
        let (e, rest) = m.split_off(y);
        out.entry(rest)
            .or_default()
            .add_term(Monomial::var_pow(y, e), c.clone());
    }
    out
}

/// Content in `Q[y]` and the matching primitive part.
fn split_content(p: &MultiPoly, y: VarId) -> (MultiPoly, MultiPoly) {
    let c = gcd_many(coefficients_over(p, y).values());
    let pp = if c.is_one() {
        p.clone()
    } else {
        p.try_div_exact(&c).expect("content divides")
    };
    (c, pp)
}

fn lex_key(m: &Monomial, rest: &[VarId]) -> Vec<u32> {
    rest.iter().map(|&v| m.exponent(v)).collect()
}

/// Lex-largest monomial in `rest` and its coefficient in `Q[y]`.
fn lex_leading(p: &MultiPoly, y: VarId, rest: &[VarId]) -> (Monomial, MultiPoly) {
    coefficients_over(p, y)
        .into_iter()
        .max_by_key(|(m, _)| lex_key(m, rest))
        .unwrap_or_default()
}

/// Gcd of all monomials occurring in `p`.
fn monomial_content(p: &MultiPoly) -> Monomial {
    let mut it = p.terms().map(|(m, _)| m);
    let first = it.next().cloned().unwrap_or_default();
    it.fold(first, |acc, m| acc.gcd(m))
}

/// Content of `p` with respect to `v`: the monic gcd of its coefficients.
pub fn content_in(p: &MultiPoly, v: VarId) -> MultiPoly {
    let coeffs = p.coefficients_in(v);
    gcd_many(coeffs.iter().filter(|c| !c.is_zero()))
}

/// Monic gcd of a sequence, stopping early once it reaches 1.
pub fn gcd_many<'a, I: IntoIterator<Item = &'a MultiPoly>>(it: I) -> MultiPoly {
    let mut acc = MultiPoly::zero();
    for c in it {
        acc = gcd(&acc, c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn primitive_part(p: &MultiPoly, v: VarId) -> MultiPoly {
    let c = content_in(p, v);
    if c.is_one() {
        p.monic()
    } else {
        p.try_div_exact(&c).expect("content divides").monic()
    }
}

/// Gcd of two polynomials that are primitive with respect to `v`.
fn primitive_prs(a: MultiPoly, b: MultiPoly, v: VarId) -> MultiPoly {
    let (mut f, mut g) = if a.degree_in(v) >= b.degree_in(v) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        if g.is_zero() {
            return primitive_part(&f, v);
        }
        if g.degree_in(v) == 0 {
            return MultiPoly::one();
        }
        let r = pseudo_remainder(&f, &g, v);
        f = g;
        g = if r.is_zero() { r } else { primitive_part(&r, v) };
    }
}

/// Pseudo-remainder of `f` by `g` in `v`, computed on coefficient vectors.
fn pseudo_remainder(f: &MultiPoly, g: &MultiPoly, v: VarId) -> MultiPoly {
    let mut r = f.coefficients_in(v);
    let gc = g.coefficients_in(v);
    let dg = gc.len() - 1;
    let lc = &gc[dg];
    trim(&mut r);
    while !r.is_empty() && r.len() > dg {
        let dr = r.len() - 1;
        let top = r[dr].clone();
        let shift = dr - dg;
        for c in r.iter_mut() {
            *c = &*c * lc;
        }
        for (i, gi) in gc.iter().enumerate() {
            if !gi.is_zero() {
                r[i + shift] -= &(&top * gi);
            }
        }
        debug_assert!(r[dr].is_zero());
        trim(&mut r);
        // keep coefficients small
        if let Some(last) = r.last() {
            let s = last.leading_coeff();
            if !s.is_zero() && !s.is_one() {
                let inv = s.recip();
                for c in r.iter_mut() {
                    *c = c.scale(&inv);
                }
            }
        }
    }
    MultiPoly::from_coefficients_in(v, &r)
}

fn trim(r: &mut Vec<MultiPoly>) {
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
}

/// Least common multiple, monic.
pub fn lcm(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() || b.is_zero() {
        return MultiPoly::zero();
    }
    let g = gcd(a, b);
    (a * &b.try_div_exact(&g).expect("gcd divides")).monic()
}
