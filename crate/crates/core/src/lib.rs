//! A computational laboratory for pure-spinor geometry.
//!
//! The crate builds matrix representations of Clifford algebras, generates
//! null momentum vectors bilinearly from spinors, tests spinor purity,
//! verifies the massless momentum-space field equations, solves the
//! hydrogen spectrum on the momentum 3-sphere by two independent routes,
//! and evaluates the associated geometric constants.
//!
//! Modules:
//!
//! * [`clifford`] - Cl(p,q) representations, chirality, intertwiners.
//! * [`spinor`] - bilinear null vectors, purity, totally null planes.
//! * [`fields`] - Minkowski momenta, the chiral momentum-space equation,
//!   electromagnetic bilinears, Maxwell residuals, mass spheres.
//! * [`fock`] - quadrature grids on S3, Funk-Hecke eigenvalues, the Nystrom
//!   spectrum and the Balmer levels.
//! * [`constants`] - the Wyler fine-structure expression, torus duality and
//!   the Dirac time unit.
//! * [`quadrature`], [`linalg`], [`tol`] - shared numeric support.
//!
//! Everything is deterministic: random sampling takes a caller-provided
//! seeded generator, and construction routines are pure functions of their
//! arguments.

pub mod clifford;
pub mod constants;
pub mod fields;
pub mod fock;
pub mod linalg;
pub mod quadrature;
pub mod spinor;
pub mod tol;

pub use clifford::{build_gamma, main_antiautomorphism, volume_element, weyl_projectors, GammaRep, Signature};
pub use spinor::{
    is_pure, null_plane, purity_codimension, real_null_vector, vector_from_spinors, Chirality,
    Spinor,
};
