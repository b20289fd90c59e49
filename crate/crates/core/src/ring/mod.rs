//! Exact coefficient arithmetic: Gaussian rationals and Laurent polynomials in ζ.

mod gauss;
mod laurent;

pub use gauss::GaussRat;
pub use laurent::LaurentPoly;
