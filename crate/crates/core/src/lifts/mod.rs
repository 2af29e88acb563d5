//! Gritsenko lifts, Borcherds products and their comparison.

pub mod borcherds;
pub mod divisors;
pub mod eisenstein;
pub mod gritsenko;
pub mod principal;
pub mod tables;
pub mod triple;
pub mod verify;

pub use borcherds::{borcherds_input, borcherds_input_from_psi, borcherds_product, exp_form_product, perturb_psi, psi_of, BorcherdsInput};
pub use eisenstein::{eisenstein_gk, EisensteinSeries};
pub use gritsenko::gritsenko_lift;
pub use triple::{Comparison, Mismatch, TripleRepr, TripleSeries};
pub use verify::{theta_and_psi, verify_from_parts, verify_main_identity, MainIdentityReport, PrecisionPlan, Verdict};
pub use divisors::{divisor_multiplicity, multiplicity_by_class, reflectivity_report, DivisorClass, ReflectivityReport};
pub use principal::{expected_patterns, principal_part_check, Candidate, PrincipalPartReport};
