//! Momentum-space massless field equations from spinor bilinears.
//!
//! Conventions fixed throughout: metric (+,-,-,-) on indices 0..3 and
//! epsilon_{0123} = +1. The representation is the chiral Cl(1,3) set
//! {sigma_1 (x) 1, -i sigma_2 (x) sigma_j} with gamma_5 = sigma_3 (x) 1.
//!
//! The momentum-space equation `p_mu gamma^mu (1 +/- gamma_5) psi = 0` pins
//! one chiral half of a Dirac spinor; its other half is untouched. The
//! electromagnetic bilinear `F_{mu nu} = psi~ [gamma_mu, gamma_nu](1 +/- g5) psi`
//! pairs the two halves, so the tensors that solve Maxwell's equations come
//! from spinors in the joint kernel of both chiral equations (equivalently
//! of `p_mu gamma^mu`), where each half is the one-dimensional chiral
//! solution family. Spinors of definite chirality give F = 0 identically,
//! and generic single-equation kernel members violate Maxwell; both facts
//! are pinned down in the tests.

use crate::clifford::{GammaRep, Signature};
use crate::linalg::{kernel_basis, max_abs, CMat, CVec, C64, C_ZERO};
use crate::spinor::Chirality;
use crate::tol;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum FieldsError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("not on cone: quadratic form residual {0:.3e} exceeds tolerance")]
    NotOnCone(f64),
}

/// Real four-vector in dimensionless momentum units, metric (+,-,-,-).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MinkowskiVector {
    pub p0: f64,
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
}

impl MinkowskiVector {
    pub fn new(p0: f64, p1: f64, p2: f64, p3: f64) -> Self {
        Self { p0, p1, p2, p3 }
    }

    pub fn components(&self) -> [f64; 4] {
        [self.p0, self.p1, self.p2, self.p3]
    }

    /// Minkowski norm p_mu p^mu with (+,-,-,-).
    pub fn norm_squared(&self) -> f64 {
        self.p0 * self.p0 - self.p1 * self.p1 - self.p2 * self.p2 - self.p3 * self.p3
    }

    pub fn euclidean_scale(&self) -> f64 {
        self.components().iter().map(|x| x * x).sum()
    }

    pub fn is_null(&self) -> bool {
        self.norm_squared().abs() <= tol::CONE_REL * self.euclidean_scale()
    }

    pub fn is_zero(&self) -> bool {
        self.euclidean_scale() == 0.0
    }
}

/// Antisymmetric complex field tensor F_{mu nu}.
#[derive(Debug, Clone)]
pub struct FieldTensor {
    pub f: CMat, // 4 x 4
}

impl FieldTensor {
    pub fn max_abs(&self) -> f64 {
        max_abs(&self.f)
    }

    pub fn antisymmetry_error(&self) -> f64 {
        max_abs(&(&self.f + self.f.transpose()))
    }

    /// Matrix rank at the standard relative cutoff.
    pub fn rank(&self) -> usize {
        crate::linalg::rank(&self.f, tol::RANK_REL)
    }
}

/// Split of a higher-dimensional null vector into Minkowski and internal
/// parts, with the invariant mass-sphere radius.
#[derive(Debug, Clone, Serialize)]
pub struct MassSphereDecomposition {
    pub minkowski_part: MinkowskiVector,
    pub extra_components: Vec<f64>,
    pub m_n: f64,
    /// Orientation sign s in `s * p_mu p^mu = M^2`.
    pub orientation: i8,
    /// Residual |s * p.p - M^2| relative to the input scale.
    pub residual: f64,
}

const PAULI_DIM: usize = 2;

fn pauli_matrices() -> [CMat; 4] {
    let i = C64::new(0.0, 1.0);
    let one = C64::new(1.0, 0.0);
    [
        CMat::identity(2, 2),
        CMat::from_row_slice(2, 2, &[C_ZERO, one, one, C_ZERO]),
        CMat::from_row_slice(2, 2, &[C_ZERO, -i, i, C_ZERO]),
        CMat::from_row_slice(2, 2, &[one, C_ZERO, C_ZERO, -one]),
    ]
}

/// Null momentum p_mu = phi^dagger sigma_mu phi from a two-component spinor.
///
/// The output is null identically and has p0 = |phi|^2 > 0.
pub fn pauli_bilinear(phi: &[C64; 2]) -> Result<MinkowskiVector, FieldsError> {
    let norm2 = phi[0].norm_sqr() + phi[1].norm_sqr();
    if norm2 == 0.0 {
        return Err(FieldsError::InvalidArgument("zero spinor".into()));
    }
    let sigma = pauli_matrices();
    let mut p = [0.0f64; 4];
    for (mu, s) in sigma.iter().enumerate() {
        let mut val = C_ZERO;
        for i in 0..PAULI_DIM {
            for j in 0..PAULI_DIM {
                val += phi[i].conj() * s[(i, j)] * phi[j];
            }
        }
        p[mu] = val.re;
    }
    Ok(MinkowskiVector::new(p[0], p[1], p[2], p[3]))
}

/// Decompose the rank-one matrix phi (x) B psi (with the two-component
/// pairing B = -i sigma_2) into z_0 + z_j sigma^j by trace projection.
///
/// The matrix determinant equals z_0^2 - z_1^2 - z_2^2 - z_3^2 and vanishes
/// because the outer product has rank one, so z is null identically.
pub fn matrix_decomposition(
    phi: &[C64; 2],
    psi: &[C64; 2],
) -> crate::spinor::BilinearVector {
    // row covector psi^t B with B = -i sigma_2 = [[0,-1],[1,0]]
    let row = [psi[1], -psi[0]];
    let mut z_mat = CMat::zeros(2, 2);
    for i in 0..2 {
        for j in 0..2 {
            z_mat[(i, j)] = phi[i] * row[j];
        }
    }
    let sigma = pauli_matrices();
    let half = C64::new(0.5, 0.0);
    let mut comps = CVec::zeros(4);
    for (mu, s) in sigma.iter().enumerate() {
        let tr = (s * &z_mat).trace();
        comps[mu] = half * tr;
    }
    crate::spinor::BilinearVector {
        components: comps,
        signature: Signature::new(1, 3),
    }
}

fn require_minkowski_rep(rep: &GammaRep) -> Result<(), FieldsError> {
    if rep.signature != Signature::new(1, 3) {
        return Err(FieldsError::SignatureMismatch(format!(
            "expected Cl(1,3), got Cl({},{})",
            rep.signature.positive, rep.signature.negative
        )));
    }
    Ok(())
}

/// Feynman-slash contraction p^mu gamma_mu.
pub fn momentum_slash(rep: &GammaRep, p: &MinkowskiVector) -> CMat {
    let comps = p.components();
    let mut m = CMat::zeros(4, 4);
    for (mu, g) in rep.generators.iter().enumerate() {
        m += g.map(|z| C64::new(comps[mu], 0.0) * z);
    }
    m
}

/// Solution spaces of the momentum-space equation p_mu gamma^mu (1 +/- g5) psi = 0.
#[derive(Debug, Clone)]
pub struct WeylKernel {
    /// Basis of the full kernel (includes the unconstrained opposite-chirality
    /// subspace).
    pub full: Vec<CVec>,
    /// Basis of the chiral content: solutions of definite requested chirality.
    /// One-dimensional exactly when p is null.
    pub chiral: Vec<CVec>,
}

/// Kernel of the chiral operator for momentum `p` and the requested sign.
pub fn weyl_operator_kernel(
    rep: &GammaRep,
    p: &MinkowskiVector,
    chirality: Chirality,
) -> Result<WeylKernel, FieldsError> {
    require_minkowski_rep(rep)?;
    if p.is_zero() {
        return Err(FieldsError::InvalidArgument("zero momentum".into()));
    }
    let sign = match chirality {
        Chirality::Plus => 1.0,
        Chirality::Minus => -1.0,
        Chirality::None => {
            return Err(FieldsError::InvalidArgument(
                "kernel needs a definite chirality".into(),
            ))
        }
    };
    let d = rep.spinor_dim();
    let id = CMat::identity(d, d);
    let w = rep.chirality_operator();
    let proj = &id + w.map(|z| C64::new(sign, 0.0) * z);
    let slash = momentum_slash(rep, p);
    let op = &slash * &proj;
    let full = kernel_basis(&op, tol::RANK_REL);

    // chiral content: stack the operator with the complementary projector so
    // only definite-chirality solutions survive
    let anti = &id - w.map(|z| C64::new(sign, 0.0) * z);
    let mut stacked = CMat::zeros(2 * d, d);
    for i in 0..d {
        for j in 0..d {
            stacked[(i, j)] = op[(i, j)];
            stacked[(d + i, j)] = anti[(i, j)];
        }
    }
    let chiral = kernel_basis(&stacked, tol::RANK_REL);
    Ok(WeylKernel { full, chiral })
}

/// Joint kernel of both chiral equations, i.e. the kernel of p^mu gamma_mu.
/// Two-dimensional for null p; its elements produce Maxwell tensors.
pub fn massless_dirac_kernel(
    rep: &GammaRep,
    p: &MinkowskiVector,
) -> Result<Vec<CVec>, FieldsError> {
    require_minkowski_rep(rep)?;
    if p.is_zero() {
        return Err(FieldsError::InvalidArgument("zero momentum".into()));
    }
    Ok(kernel_basis(&momentum_slash(rep, p), tol::RANK_REL))
}

/// Electromagnetic bilinear F_{mu nu} = psi~ [gamma_mu, gamma_nu](1 +/- g5) psi
/// with psi~ = psi^dagger gamma_0. Antisymmetric by construction.
pub fn em_tensor(
    rep: &GammaRep,
    psi: &CVec,
    chirality: Chirality,
) -> Result<FieldTensor, FieldsError> {
    require_minkowski_rep(rep)?;
    let sign = match chirality {
        Chirality::Plus => 1.0,
        Chirality::Minus => -1.0,
        Chirality::None => {
            return Err(FieldsError::InvalidArgument(
                "tensor needs a definite chirality sign".into(),
            ))
        }
    };
    let d = rep.spinor_dim();
    let id = CMat::identity(d, d);
    let proj = &id + rep.chirality_operator().map(|z| C64::new(sign, 0.0) * z);
    let g0 = &rep.generators[0];
    let tilde: CVec = (g0.adjoint() * psi).map(|z| z.conj());
    let mut f = CMat::zeros(4, 4);
    for mu in 0..4 {
        for nu in 0..mu {
            let comm = &rep.generators[mu] * &rep.generators[nu]
                - &rep.generators[nu] * &rep.generators[mu];
            let v = (&comm * &proj) * psi;
            let val: C64 = tilde.iter().zip(v.iter()).map(|(x, y)| x * y).sum();
            f[(mu, nu)] = val;
            f[(nu, mu)] = -val;
        }
    }
    Ok(FieldTensor { f })
}

const ETA: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

fn levi_civita(a: usize, b: usize, c: usize, d: usize) -> f64 {
    let perm = [a, b, c, d];
    let mut sign = 1.0;
    for i in 0..4 {
        for j in (i + 1)..4 {
            if perm[i] == perm[j] {
                return 0.0;
            }
            if perm[i] > perm[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Maxwell residuals r1^nu = p_mu F+^{mu nu} and
/// r2_lambda = eps_{lambda rho mu nu} p^rho F-^{mu nu}.
///
/// Both vanish when the tensors come from a joint-kernel solution at
/// momentum p.
#[allow(clippy::needless_range_loop)] // tensor contractions read as indices
pub fn maxwell_residual(
    p: &MinkowskiVector,
    f_plus: &FieldTensor,
    f_minus: &FieldTensor,
) -> (CVec, CVec) {
    let pc = p.components();
    let p_lower: Vec<f64> = (0..4).map(|m| ETA[m] * pc[m]).collect();
    let raise = |f: &CMat, mu: usize, nu: usize| -> C64 {
        C64::new(ETA[mu] * ETA[nu], 0.0) * f[(mu, nu)]
    };
    let mut r1 = CVec::zeros(4);
    for nu in 0..4 {
        let mut acc = C_ZERO;
        for mu in 0..4 {
            acc += C64::new(p_lower[mu], 0.0) * raise(&f_plus.f, mu, nu);
        }
        r1[nu] = acc;
    }
    let mut r2 = CVec::zeros(4);
    for lam in 0..4 {
        let mut acc = C_ZERO;
        for rho in 0..4 {
            for mu in 0..4 {
                for nu in 0..4 {
                    let eps = levi_civita(lam, rho, mu, nu);
                    if eps != 0.0 {
                        acc += C64::new(eps * pc[rho], 0.0) * raise(&f_minus.f, mu, nu);
                    }
                }
            }
        }
        r2[lam] = acc;
    }
    (r1, r2)
}

/// Split a full-dimensional real null vector (length 2n+2, lorentzian with
/// the first component timelike) into its Minkowski part and the internal
/// components spanning the invariant mass sphere.
pub fn mass_sphere(
    components: &[f64],
    orientation: i8,
) -> Result<MassSphereDecomposition, FieldsError> {
    if components.len() < 4 || !components.len().is_multiple_of(2) {
        return Err(FieldsError::InvalidArgument(format!(
            "expected an even length of at least 4, got {}",
            components.len()
        )));
    }
    if orientation != 1 && orientation != -1 {
        return Err(FieldsError::InvalidArgument(
            "orientation must be +1 or -1".into(),
        ));
    }
    let scale: f64 = components.iter().map(|x| x * x).sum();
    if scale == 0.0 {
        return Err(FieldsError::InvalidArgument("zero vector".into()));
    }
    let full_form = components[0] * components[0]
        - components[1..].iter().map(|x| x * x).sum::<f64>();
    if full_form.abs() > tol::CONE_REL * scale {
        return Err(FieldsError::NotOnCone(full_form.abs() / scale));
    }
    let minkowski_part =
        MinkowskiVector::new(components[0], components[1], components[2], components[3]);
    let extra_components: Vec<f64> = components[4..].to_vec();
    let m2: f64 = extra_components.iter().map(|x| x * x).sum();
    let m_n = m2.sqrt();
    // +: p.p with (+,-,-,-) equals M^2; -: p.p with (-,+,+,+) equals -M^2.
    let signed_form = f64::from(orientation) * minkowski_part.norm_squared();
    let residual = (signed_form - m2).abs() / scale;
    if residual > tol::CONE_REL {
        return Err(FieldsError::NotOnCone(residual));
    }
    Ok(MassSphereDecomposition {
        minkowski_part,
        extra_components,
        m_n,
        orientation,
        residual,
    })
}
