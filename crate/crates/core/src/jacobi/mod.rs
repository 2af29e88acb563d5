//! Jacobi forms of lattice index.

pub mod decompose;
pub mod form;
pub mod hecke;
pub mod specialize;

pub use decompose::{theta_decompose, VVDecomposition, Violation};
pub use form::{delta, singular_part, theta_block, theta_r, theta_r_spec, JacobiFormExpansion, NormEvaluator, ThetaBlockSpec};
pub use hecke::{hecke_tminus, hecke_tminus_unnormalized};
pub use specialize::specialize;
