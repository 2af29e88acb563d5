//! Root systems, lattices and discriminant forms.

pub mod discriminant;
pub mod enumerate;
pub mod genus;
pub mod gram;
pub mod linalg;
pub mod roots;
pub mod snf;

pub use discriminant::{finite_qf_invariants, order_and_norm, DiscriminantFormData, Elem, FiniteQfInvariants};
pub use genus::{conway_correspondence_check, even_discriminant_form, form_from_symbol, ConwayReport, CONWAY_TABLE};
pub use gram::{coweight_model, dual_lattice, even_sublattice, gram_underline_r, shadow, EvenSublattice, GramLattice, Parity, Shadow};
pub use roots::{build_root_datum, classify_q_order_one, coxeter_h, Family, PositiveRoot, RootDatum, RootSystemSpec};
