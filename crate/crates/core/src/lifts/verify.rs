//! G(θ_R) = B(ψ_R) coefficient by coefficient within a truncation box.

use super::borcherds::{borcherds_input_from_psi, borcherds_product, exp_form_product, psi_of, BorcherdsInput};
use super::gritsenko::gritsenko_lift;
use super::triple::Comparison;
use crate::error::Result;
use crate::jacobi::{theta_block, theta_r, JacobiFormExpansion};
use crate::lattice::RootSystemSpec;
use crate::Q;
use serde::{Deserialize, Serialize};

/// Source precisions (exclusive bounds) for a (q_max, xi_max) box.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionPlan {
    pub q_max: i64,
    pub xi_max: u32,
    /// θ_R is expanded below q^theta_prec.
    pub theta_prec: i64,
    /// ψ must be known strictly beyond q^psi_needed.
    pub psi_needed: i64,
}

impl PrecisionPlan {
    /// G needs θ below q^{q·ξ + 1}; ψ = −θ|T₋(2)/θ loses half the precision
    /// of θ plus the order of θ, and B reads f(nm, ·) up to
    /// (q_max − 1)(xi_max − 1).
    pub fn new(q_max: i64, xi_max: u32) -> Self {
        let xi = xi_max as i64;
        let psi_needed = (q_max - 1).max(0) * (xi - 1).max(0);
        let theta_prec = (q_max * xi + 1).max(2 * psi_needed + 3);
        PrecisionPlan {
            q_max,
            xi_max,
            theta_prec,
            psi_needed,
        }
    }

    /// Raise θ's precision so ψ is known below at least q^p.
    pub fn with_psi_at_least(mut self, p: i64) -> Self {
        self.theta_prec = self.theta_prec.max(2 * p + 3);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MainIdentityReport {
    pub root_system: String,
    pub q_prec: i64,
    pub xi_prec: u32,
    pub theta_prec: String,
    pub psi_prec: String,
    pub weyl_c: String,
    pub prefactor_is_theta: bool,
    pub exp_form_agrees: bool,
    pub comparison: Comparison,
    pub first_mismatch: Option<super::triple::Mismatch>,
    pub verdict: Verdict,
    pub statement: String,
}

/// θ_R and ψ_R for a plan.
pub fn theta_and_psi(spec: &RootSystemSpec, plan: &PrecisionPlan) -> Result<(JacobiFormExpansion, JacobiFormExpansion)> {
    let theta = theta_r(spec, Q::from_integer(plan.theta_prec))?;
    let psi = psi_of(&theta)?;
    Ok((theta, psi))
}

/// Run the comparison from precomputed θ_R and Borcherds data.
pub fn verify_from_parts(
    spec: &RootSystemSpec,
    plan: &PrecisionPlan,
    theta: &JacobiFormExpansion,
    input: &BorcherdsInput,
) -> Result<MainIdentityReport> {
    let (q, xi) = (plan.q_max, plan.xi_max);
    let (g, b) = rayon::join(|| gritsenko_lift(theta, q, xi), || borcherds_product(input, q, xi));
    let (g, b) = (g?, b?);
    let comparison = g.compare(&b)?;
    let exp_form_agrees = exp_form_product(input, q, xi)?.compare(&b)?.is_equal();
    let prefactor = theta_block(&input.prefactor_block, theta.series.q_prec())?;
    let prefactor_is_theta = prefactor.series.agrees_with(&theta.series)
        && prefactor.series.q_prec() == theta.series.q_prec();
    let ok = comparison.is_equal() && prefactor_is_theta && exp_form_agrees && input.c == Q::from_integer(1);
    Ok(MainIdentityReport {
        root_system: spec.to_string(),
        q_prec: q,
        xi_prec: xi,
        theta_prec: theta.series.q_prec().to_string(),
        psi_prec: input.psi.series.q_prec().to_string(),
        weyl_c: input.c.to_string(),
        prefactor_is_theta,
        exp_form_agrees,
        first_mismatch: comparison.mismatches.first().cloned(),
        comparison,
        verdict: Verdict::from_bool(ok),
        statement: format!("verified to ({q}, {xi})"),
    })
}

pub fn verify_main_identity(spec: &RootSystemSpec, q_max: i64, xi_max: u32) -> Result<MainIdentityReport> {
    let plan = PrecisionPlan::new(q_max, xi_max);
    let (theta, psi) = theta_and_psi(spec, &plan)?;
    let input = borcherds_input_from_psi(psi)?;
    verify_from_parts(spec, &plan, &theta, &input)
}
