//! Exact and numerical tools for the twisted Laplacian on R^{2n}.
//!
//! Everything exact lives on the closed class of polynomial-Gaussians
//! p(z, z̄)·e^{−t|z|²/2}: ladder operators, eigenfunctions, inner products,
//! even-p norms and spectral projections are computed in complex-rational
//! arithmetic with π kept symbolic, so closed-form identities are checked
//! by structural equality rather than tolerances. The floating-point side
//! (quadrature, operator-norm estimates, exponent fits, the local
//! dispersive check) is validated against that exact layer.

pub mod asymptotics;
pub mod crat;
pub mod eigen;
pub mod error;
pub mod evaluator;
pub mod exact;
pub mod gaussian;
pub mod multi_index;
pub mod opnorm;
pub mod par;
pub mod poly;
pub mod profile;
pub mod projection;
pub mod quad;
pub mod special;

pub use crat::CRational;
pub use eigen::{build_eigenfunction, build_radial, enumerate_labels, EigenLabel, Eigenfunction};
pub use error::Error;
pub use exact::{gaussian_moment, inner_exact, lp_norm_exact_even, CExact, ExactValue};
pub use gaussian::GaussianFn;
pub use multi_index::MultiIndex;
pub use poly::CPoly;
