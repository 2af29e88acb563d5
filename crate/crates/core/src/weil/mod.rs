//! Weil representations of discriminant forms and their invariants.

pub mod invariants;
pub mod modp;
pub mod rep;
pub mod structure;

pub use invariants::{in_span, invariant_subspace, invariant_subspace_of, is_invariant, InvariantSpace};
pub use rep::{build_weilrep, chi_d, WeilRepData};
pub use structure::{
    split_structure_check, table_structure_check, theta_r_decomposition, SplitStructureReport, TableStructureReport,
};
