//! Specializations s_x*: 𝔷 ↦ x·z.

use super::form::JacobiFormExpansion;
use crate::error::{Error, Result};
use crate::lattice::{linalg, GramLattice};
use crate::series::Exp;
use crate::Q;
use smallvec::smallvec;

/// Restrict to the line 𝔷 = x·z; ζ^ℓ ↦ ζ^{(ℓ, x)}.
pub fn specialize(phi: &JacobiFormExpansion, x: &[i64]) -> Result<JacobiFormExpansion> {
    if x.len() != phi.rank() {
        return Err(Error::RankMismatch {
            left: phi.rank(),
            right: x.len(),
        });
    }
    if x.iter().all(|v| *v == 0) {
        return Err(Error::Invalid("specialization vector must be nonzero".into()));
    }
    let s = phi.series.map_zeta(1, phi.series.z_den(), |e| {
        let v: i64 = e.iter().zip(x).map(|(a, b)| *a as i64 * b).sum();
        let out: Exp = smallvec![v as i32];
        out
    });
    let xq: Vec<Q> = x.iter().map(|v| Q::from_integer(*v)).collect();
    let m = linalg::bilinear(&phi.index.gram, &xq, &xq);
    Ok(JacobiFormExpansion {
        index: GramLattice { gram: vec![vec![m]] },
        weight: phi.weight,
        eta_character: phi.eta_character,
        series: s,
        claimed_holomorphic: phi.claimed_holomorphic,
        leading_factors: None,
    })
}
