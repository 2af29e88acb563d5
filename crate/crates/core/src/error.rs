use thiserror::Error;

/// Errors raised by the series, lattice and lift engines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("leading coefficient is not a unit monomial")]
    NonUnitLeading,

    #[error("insufficient precision: requested q^{requested}, series known below q^{available}")]
    InsufficientPrecision { requested: String, available: String },

    #[error("division is not exact at q^{at}: nonzero remainder")]
    InexactDivision { at: String },

    #[error("supplied factorization does not match the divisor's leading coefficient")]
    FactorizationMismatch,

    #[error("missing factorization for exact division")]
    MissingFactorization,

    #[error("illegal root system: {0}")]
    IllegalRootSystem(String),

    #[error("lattice is odd; a discriminant form needs an even lattice")]
    OddLattice,

    #[error("vector is not in the dual lattice")]
    NotInDual,

    #[error("coefficients are not class invariant: {0}")]
    ClassInvariance(String),

    #[error("operation needs integral q-exponents")]
    NonIntegralExponent,

    #[error("Hecke image has non-integral coefficients (weight {weight}, m = {m})")]
    NonIntegralHecke { weight: String, m: u64 },

    #[error("argument {0} is not coprime to the level")]
    NotCoprime(i64),

    #[error("discriminant form has odd signature")]
    OddSignature,

    #[error("Gauss sum does not match any signature residue")]
    MilgramFailure,

    #[error("invariant space could not be certified exactly")]
    CertificationFailed,

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
