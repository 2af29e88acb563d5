//! Truncated series arithmetic.

pub mod laurent;
pub mod puiseux;
pub mod serialize;
pub mod special;

pub use laurent::{Exp, LaurentPoly};
pub use puiseux::{ps_add, ps_exact_div, ps_invert, ps_mul, ps_pow, ps_sub, BinomialFactor, PuiseuxSeries};
pub use special::{eta, eta_power, eta_quotient, jtheta_int, jtheta_linear};
