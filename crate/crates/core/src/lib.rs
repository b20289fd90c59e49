//! Exact computations in Kauffman bracket skein algebras of the disk, torus and
//! once-punctured torus, and in truncated skein modules of genus-1 Heegaard
//! manifolds.

pub mod diagram;
pub mod heegaard;
pub mod error;
pub mod homology;
pub mod json;
pub mod linalg;
pub mod ring;
pub mod skein;

pub use error::{Error, Result};
