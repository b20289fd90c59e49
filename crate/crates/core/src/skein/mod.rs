//! Kauffman bracket skein algebras of supported surfaces and their relation
//! to the twisted homology algebra 𝒜.

mod bracket;
mod element;
mod marche;

pub use bracket::{basis_product, bracket, realize_diagram, skein_mul, DEFAULT_CROSSING_CAP};
pub use element::{
    character_act, grade, multicurve_from_json, multicurve_to_json, z2_class, Character, GradedSkein, Skein, TensorElem,
};
pub use marche::{phi, psi, psi_oriented, verify_comm, CommReport, PsiImage};
