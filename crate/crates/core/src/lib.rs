//! Vector-valued Siegel modular forms of degree 2 from covariants of binary
//! sextics, computed with exact rational arithmetic.
//!
//! The pipeline: theta constants give `chi5` and `chi6_3`; covariants of the
//! universal sextic are pushed through the substitution map `mu` to get
//! Fourier series; exact division by powers of `chi5` removes the diagonal
//! vanishing; Hecke eigenvalues and diagonal restrictions are read off the
//! coefficients and compared against elliptic modular forms.

pub mod covariant;
pub mod dims;
pub mod exact;
pub mod fseries2;
pub mod hecke2;
pub mod qform1;
pub mod siegel;
pub mod suite;
pub mod theta2;

pub use exact::{Rational, SymVector};
pub use fseries2::FSeries2;
pub use siegel::SiegelForm;
