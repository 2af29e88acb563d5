//! Exact Fourier–Jacobi arithmetic for root-system theta blocks.
//!
//! The crate builds the Jacobi forms θ_R attached to root systems, their
//! Gritsenko lifts and the Borcherds products of `−θ_R|T₋(2)/θ_R`, and
//! compares the two lifts coefficient by coefficient.

pub mod error;
pub mod int;
pub mod series;

pub use error::{Error, Result};
pub use int::Int;

/// Rational exponents and lattice data.
pub type Q = num_rational::Ratio<i64>;
pub mod cyclotomic;
pub mod lattice;
pub mod jacobi;
pub mod lifts;
pub mod weil;
