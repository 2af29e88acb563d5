//! The θ_R → ψ_R → (G, B) pipeline with caching.

use crate::cache::Cache;
use rootlift::jacobi::{theta_r, JacobiFormExpansion};
use rootlift::lattice::RootSystemSpec;
use rootlift::lifts::{borcherds_input_from_psi, psi_of, verify_from_parts, MainIdentityReport, PrecisionPlan};
use rootlift::series::serialize::SeriesRepr;
use rootlift::series::PuiseuxSeries;
use rootlift::{Result, Q};

pub struct Engine<'a> {
    pub cache: &'a Cache,
}

impl<'a> Engine<'a> {
    pub fn new(cache: &'a Cache) -> Self {
        Engine { cache }
    }

    fn cached_series(&self, kind: &str, root: &str, params: &str) -> Option<PuiseuxSeries> {
        let repr: SeriesRepr = self.cache.load(kind, root, params)?;
        PuiseuxSeries::try_from(&repr).ok()
    }

    /// θ_R below q^prec.
    pub fn theta(&self, spec: &RootSystemSpec, prec: i64) -> Result<JacobiFormExpansion> {
        let root = spec.to_string();
        let params = prec.to_string();
        if let Some(s) = self.cached_series("theta", &root, &params) {
            let shell = theta_r(spec, Q::from_integer(2))?;
            return Ok(JacobiFormExpansion { series: s, ..shell });
        }
        let th = theta_r(spec, Q::from_integer(prec))?;
        self.cache.store("theta", &root, &params, &SeriesRepr::from(&th.series));
        Ok(th)
    }

    /// θ_R and ψ_R = −θ_R|T₋(2)/θ_R, θ_R expanded below q^theta_prec.
    pub fn theta_psi(&self, spec: &RootSystemSpec, theta_prec: i64) -> Result<(JacobiFormExpansion, JacobiFormExpansion)> {
        let root = spec.to_string();
        let params = theta_prec.to_string();
        let theta = self.theta(spec, theta_prec)?;
        if let Some(s) = self.cached_series("psi", &root, &params) {
            let psi = JacobiFormExpansion {
                index: theta.index.clone(),
                weight: Q::from_integer(0),
                eta_character: 0,
                series: s,
                claimed_holomorphic: false,
                leading_factors: None,
            };
            return Ok((theta, psi));
        }
        let psi = psi_of(&theta)?;
        self.cache.store("psi", &root, &params, &SeriesRepr::from(&psi.series));
        Ok((theta, psi))
    }

    pub fn verify(&self, spec: &RootSystemSpec, plan: &PrecisionPlan) -> Result<MainIdentityReport> {
        let root = spec.to_string();
        let params = format!("{},{},{}", plan.q_max, plan.xi_max, plan.theta_prec);
        if let Some(r) = self.cache.load("verify", &root, &params) {
            return Ok(r);
        }
        let (theta, psi) = self.theta_psi(spec, plan.theta_prec)?;
        let input = borcherds_input_from_psi(psi)?;
        let report = verify_from_parts(spec, plan, &theta, &input)?;
        self.cache.store("verify", &root, &params, &report);
        Ok(report)
    }
}
