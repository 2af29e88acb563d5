//! Index-raising Hecke operators T₋(m).

use super::form::JacobiFormExpansion;
use crate::error::{Error, Result};
use crate::int::Int;
use crate::lattice::linalg;
use crate::series::{LaurentPoly, PuiseuxSeries};
use crate::Q;
use std::collections::BTreeMap;

fn divisors(m: u64) -> Vec<u64> {
    (1..=m).filter(|a| m.is_multiple_of(*a)).collect()
}

/// Integral q-exponents as plain integers, or an error.
fn integral_levels(s: &PuiseuxSeries) -> Result<Vec<(i64, &LaurentPoly)>> {
    let d = s.q_den();
    s.levels()
        .map(|(n, p)| {
            if n % d == 0 {
                Ok((n / d, p))
            } else {
                Err(Error::NonIntegralExponent)
            }
        })
        .collect()
}

/// `Σ_{a | (N, m)} w(a) c(Nm/a², ℓ/a)` with integer weights `w`.
fn hecke_core<F: Fn(u64) -> Int>(s: &PuiseuxSeries, m: u64, weight_of: F) -> Result<PuiseuxSeries> {
    let levels = integral_levels(s)?;
    let mut out: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
    let prec = s.q_prec() / Q::from_integer(m as i64);
    let bound = prec.ceil().to_integer();
    for a in divisors(m) {
        let w = weight_of(a);
        let a2 = (a * a) as i64;
        for (src, p) in &levels {
            // N = src·a²/m must be an integer divisible by a
            let num = src * a2;
            if num % m as i64 != 0 {
                continue;
            }
            let n = num / m as i64;
            if n % a as i64 != 0 || n >= bound {
                continue;
            }
            let img = p.scale_exponents(a as i32).scale(&w);
            out.entry(n)
                .or_insert_with(|| LaurentPoly::zero(s.rank()))
                .add_assign(&img);
        }
    }
    Ok(PuiseuxSeries::from_levels(
        s.rank(),
        1,
        s.z_den(),
        prec,
        out.into_iter().filter(|(_, p)| !p.is_empty()),
    ))
}

fn integral_weight(phi: &JacobiFormExpansion) -> Result<i64> {
    if !phi.weight.is_integer() {
        return Err(Error::Invalid("Hecke operators need integral weight".into()));
    }
    Ok(phi.weight.to_integer())
}

fn with_index(phi: &JacobiFormExpansion, m: u64, series: PuiseuxSeries) -> JacobiFormExpansion {
    let mut out = phi.with_series(series);
    out.index.gram = linalg::scale(&phi.index.gram, Q::from_integer(m as i64));
    out
}

/// m·T₋(m): coefficient weights (m/a)·a^k, integral for every k ≥ 0.
pub fn hecke_tminus_unnormalized(phi: &JacobiFormExpansion, m: u64) -> Result<JacobiFormExpansion> {
    let k = integral_weight(phi)?;
    if k < 0 {
        return Err(Error::Invalid("negative weight".into()));
    }
    let s = hecke_core(&phi.series, m, |a| Int::from((m / a) as i64) * Int::from(a as i64).pow(k as u32))?;
    Ok(with_index(phi, m, s))
}

/// T₋(m): c'(N, ℓ) = Σ_{a | (N, m)} a^{k−1} c(Nm/a², ℓ/a).
pub fn hecke_tminus(phi: &JacobiFormExpansion, m: u64) -> Result<JacobiFormExpansion> {
    if m == 0 {
        return Err(Error::Invalid("m must be positive".into()));
    }
    let k = integral_weight(phi)?;
    if k >= 1 {
        let s = hecke_core(&phi.series, m, |a| Int::from(a as i64).pow((k - 1) as u32))?;
        return Ok(with_index(phi, m, s));
    }
    let h = hecke_tminus_unnormalized(phi, m)?;
    let mut levels = Vec::new();
    let d = Int::from(m as i64);
    for (n, p) in h.series.levels() {
        let q = p.div_exact_scalar(&d).ok_or(Error::NonIntegralHecke {
            weight: phi.weight.to_string(),
            m,
        })?;
        levels.push((n, q));
    }
    let s = PuiseuxSeries::from_levels(h.rank(), 1, h.series.z_den(), h.series.q_prec(), levels);
    Ok(h.with_series(s))
}
