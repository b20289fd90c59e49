//! Integer homology of surfaces: lattices with intersection forms, Smith normal
//! form, and the twisted algebra 𝒜.

mod algebra;
mod audit;
mod lattice;
pub mod smith;

pub use algebra::{a_canonicalize, a_canonicalize_exp, AElem};
pub use audit::{lemma_divisibility_audit, AuditOutcome, DivisibilityReport, Hypothesis, Witness};
pub use lattice::{HomClass, Lattice, Z2Class};
pub use smith::{smith_form, SmithForm};
