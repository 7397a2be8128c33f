//! Centralized numeric tolerances.
//!
//! Every threshold used by the library is defined here so that test code,
//! the CLI and downstream users agree on what "zero" means for each kind
//! of check.

/// Absolute per-entry tolerance for exact algebraic matrix identities
/// (anticommutation relations, intertwiner relations, projector algebra).
///
/// Generator matrices have entries in {0, ±1, ±i} and the identities involve
/// products of at most a dozen unit-magnitude factors, so rounding stays
/// orders of magnitude below this.
pub const ALGEBRA_ABS: f64 = 1e-12;

/// Relative tolerance for accepting a vector as null: |z_a z^a| <= NULL_REL * sum |z_a|^2.
pub const NULL_REL: f64 = 1e-10;

/// Purity acceptance threshold on the normalized constraint residual.
pub const PURE_ACCEPT: f64 = 1e-10;

/// Purity rejection threshold. Residuals between [`PURE_ACCEPT`] and this
/// value land in a hysteresis band and are reported as indeterminate rather
/// than silently classified.
pub const PURE_REJECT: f64 = 1e-6;

/// Relative singular-value cutoff for numerical rank and kernel extraction.
pub const RANK_REL: f64 = 1e-10;

/// Relative singular-value cutoff for Jacobian rank estimates, which involve
/// one extra level of differencing compared to plain kernel extraction.
pub const JACOBIAN_RANK_REL: f64 = 1e-8;

/// Relative tolerance on quadrature identities (total weight of a sphere
/// grid, low-order moments).
pub const QUADRATURE_REL: f64 = 1e-8;

/// Relative agreement required between successive quadrature orders before a
/// kernel eigenvalue is accepted.
pub const FUNK_HECKE_CONVERGENCE_REL: f64 = 1e-10;

/// Default relative spread below which Nystrom eigenvalues are grouped into
/// one degenerate level. Exposed as a CLI flag; coarse grids need a looser
/// value (the measured splitting is documented in the fock module tests).
pub const CLUSTER_SPREAD_REL: f64 = 1e-3;

/// Relative tolerance for the Minkowski/mass-sphere cone membership check.
pub const CONE_REL: f64 = 1e-10;

/// Relative tolerance for Maxwell residuals of fields built from solutions
/// of the massless momentum-space equation.
pub const MAXWELL_REL: f64 = 1e-12;
