//! Additive (Gritsenko) lift as a Fourier–Jacobi expansion.

use super::triple::TripleSeries;
use crate::error::{Error, Result};
use crate::jacobi::{hecke_tminus, JacobiFormExpansion};
use crate::Q;
use rayon::prelude::*;

/// `Σ_{m=1}^{xi_max} (φ|T₋(m)) ξ^m` for a form with vanishing constant term.
pub fn gritsenko_lift(phi: &JacobiFormExpansion, q_max: i64, xi_max: u32) -> Result<TripleSeries> {
    let need = Q::from_integer(q_max * xi_max as i64);
    if phi.series.q_prec() <= need {
        return Err(Error::InsufficientPrecision {
            requested: need.to_string(),
            available: phi.series.q_prec().to_string(),
        });
    }
    let zero = vec![Q::from_integer(0); phi.rank()];
    if !phi.series.coefficient(Q::from_integer(0), &zero)?.is_zero() {
        return Err(Error::Invalid(
            "f(0,0) ≠ 0: the Eisenstein layer has rational coefficients".into(),
        ));
    }
    let layers = (1..=xi_max)
        .into_par_iter()
        .map(|m| hecke_tminus(phi, m as u64).map(|h| (m, h.series)))
        .collect::<Result<Vec<_>>>()?;
    TripleSeries::from_layers(phi.rank(), Q::from_integer(q_max), xi_max, layers)
}
