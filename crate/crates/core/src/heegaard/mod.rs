//! Genus-1 Heegaard splittings: handle slides, ℤ₂-linking, the mod-4 writhe
//! audit and truncated presentations of K⁰ at fourth roots of unity.

mod audit;
mod data;
mod linking;
mod quotient;
mod slide;

pub use data::{manifold_h1, Color, CurveRef, HeegaardData, ManifoldH1};
pub use slide::{compound_slide, elementary_slide, even_starts, generate_relations, Band, SlideBounds, SlideRelation};
pub use linking::{k0_basis, k0_mul, k0_product, lk2, lk2_classes, lk2_split};
pub use quotient::{
    complexity, quotient_at, relation_row, relation_set, rows_match_under_phi, truncated_quotient, truncation_basis,
    RelationSet, TruncatedQuotient,
};
pub use audit::{
    heegaard_audit, psi_on_relations, writhe_audit_of, writhe_mod4_audit, PsiFailure, PsiRelationReport, WritheAudit,
};
