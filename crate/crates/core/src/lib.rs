//! Complex-valued harmonic morphisms built from eigenfamilies of polynomials
//! on R^n, R^n_1, S^{2n+2} and H^{2n+2}, with exact and numeric verification
//! of their defining identities and numerical extraction of the minimal
//! surfaces that appear as their fibers in S^4 and H^4.

pub mod error;
pub mod fibergeo;
pub mod fields;
pub mod morphisms;
pub mod polyexact;
pub mod suite;

pub use error::{Error, Result};
