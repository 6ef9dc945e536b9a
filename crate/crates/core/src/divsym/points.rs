//! Generic evaluation points: distinct λ values and auxiliary values drawn
//! from a fixed integer range, re-drawn when a denominator vanishes.

use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::Rng;

use super::DsError;
use crate::exact::{rat, Rational, VarId};

/// Values are drawn from `1..=GENERIC_RANGE`.
pub const GENERIC_RANGE: u32 = 10079;

/// Draws after which a persistently singular point is reported.
pub const POLE_RETRIES: u32 = 50;

/// `λ_1..λ_m` distinct, `aux` independent, all uniform on the generic range.
pub fn draw_point<R: Rng>(rng: &mut R, m: u32, aux: &[VarId]) -> BTreeMap<VarId, Rational> {
    let mut point = BTreeMap::new();
    for (i, v) in sample(rng, GENERIC_RANGE as usize, m as usize).into_iter().enumerate() {
        point.insert(VarId::Lambda(i as u32 + 1), rat(v as i64 + 1));
    }
    for &v in aux {
        point.insert(v, rat(rng.gen_range(1..=GENERIC_RANGE) as i64));
    }
    point
}

/// Runs `f` at fresh generic points until it does not hit a pole.
pub fn with_generic_point<R, T, F>(rng: &mut R, m: u32, aux: &[VarId], mut f: F) -> Result<T, DsError>
where
    R: Rng,
    F: FnMut(&BTreeMap<VarId, Rational>) -> Result<T, DsError>,
{
    for _ in 0..POLE_RETRIES {
        let point = draw_point(rng, m, aux);
        match f(&point) {
            Err(DsError::PoleAtPoint) => continue,
            other => return other,
        }
    }
    Err(DsError::PoleAtPoint)
}
