//! Pure-spinor geometry: bilinear null vectors, purity tests, totally null
//! planes and real null momenta from lorentzian bilinears.
//!
//! The purity test is a single dense check. With the pairing B of the
//! representation, the vector bilinear of two spinors is
//! `z_a = phi^t B gamma_a psi`, and its quadratic form factors through the
//! symmetric constraint matrix
//!
//! ```text
//!   M(psi) = sum_a eta^aa (B gamma_a psi)(B gamma_a psi)^t,
//!   z_a z^a = phi^t M(psi) phi.
//! ```
//!
//! `z` is null for *every* companion `phi` exactly when `M(psi) = 0`, which
//! is the classical characterization of a pure spinor reduced to one
//! Frobenius-norm residual.

use crate::clifford::GammaRep;
use crate::linalg::{kernel_basis, max_abs_vec, rank, CMat, CVec, C64, C_ONE};
use crate::tol;
use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SpinorError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("chirality required: purity is defined for Weyl spinors")]
    ChiralityRequired,
    #[error("purity indeterminate: residual {residual:.3e} lies in the hysteresis band ({lo:.0e}, {hi:.0e})")]
    Indeterminate { residual: f64, lo: f64, hi: f64 },
    #[error("degenerate orbit: could not generate a valid pure-spinor sample")]
    DegenerateOrbit,
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
}

/// Chirality tag of a spinor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Chirality {
    Plus,
    Minus,
    None,
}

/// A complex spinor, optionally tagged with a verified chirality.
#[derive(Debug, Clone)]
pub struct Spinor {
    pub components: CVec,
    pub chirality: Chirality,
}

impl Spinor {
    /// Untagged spinor.
    pub fn new(components: CVec) -> Self {
        Self {
            components,
            chirality: Chirality::None,
        }
    }

    /// Tagged chiral spinor; verifies the complementary projector kills it.
    pub fn chiral(
        rep: &GammaRep,
        components: CVec,
        chirality: Chirality,
    ) -> Result<Self, SpinorError> {
        if components.len() != rep.spinor_dim() {
            return Err(SpinorError::InvalidArgument(
                "spinor dimension does not match representation".into(),
            ));
        }
        let w = rep.chirality_operator();
        let sign = match chirality {
            Chirality::Plus => 1.0,
            Chirality::Minus => -1.0,
            Chirality::None => {
                return Err(SpinorError::InvalidArgument(
                    "chiral constructor needs a definite chirality".into(),
                ))
            }
        };
        let residual = &components - (w * &components).map(|z| Complex::new(sign, 0.0) * z);
        let scale = components.norm().max(1.0);
        if max_abs_vec(&residual) > tol::ALGEBRA_ABS * scale {
            return Err(SpinorError::InvalidArgument(
                "components are not an eigenvector of the chirality operator".into(),
            ));
        }
        Ok(Self {
            components,
            chirality,
        })
    }

    pub fn norm(&self) -> f64 {
        self.components.norm()
    }

    pub fn is_zero(&self) -> bool {
        self.norm() == 0.0
    }
}

/// A complex vector with an attached metric signature.
#[derive(Debug, Clone)]
pub struct BilinearVector {
    pub components: CVec,
    pub signature: crate::clifford::Signature,
}

impl BilinearVector {
    /// Complex quadratic form z_a z^a = sum_a eta_aa z_a^2.
    pub fn quadratic_form(&self) -> C64 {
        self.components
            .iter()
            .enumerate()
            .map(|(a, z)| Complex::new(self.signature.eta(a), 0.0) * z * z)
            .sum()
    }

    /// Positive scale sum_a |z_a|^2 used for relative nullness.
    pub fn magnitude_squared(&self) -> f64 {
        self.components.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Null within the relative tolerance [`tol::NULL_REL`].
    pub fn is_null(&self) -> bool {
        self.quadratic_form().norm() <= tol::NULL_REL * self.magnitude_squared()
    }

    /// Symmetric eta-bilinear product with another vector.
    pub fn bilinear_with(&self, other: &BilinearVector) -> C64 {
        self.components
            .iter()
            .zip(other.components.iter())
            .enumerate()
            .map(|(a, (x, y))| Complex::new(self.signature.eta(a), 0.0) * x * y)
            .sum()
    }
}

/// Outcome of the purity test.
#[derive(Debug, Clone, Serialize)]
pub struct PurityReport {
    pub is_pure: bool,
    /// Frobenius norm of the constraint matrix of the unit-normalized spinor.
    pub residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub codimension_estimate: Option<usize>,
    pub accept_threshold: f64,
    pub reject_threshold: f64,
}

/// Bilinear vector z_a = phi^t B gamma_a psi from a pair of spinors.
pub fn vector_from_spinors(
    rep: &GammaRep,
    phi: &Spinor,
    psi: &Spinor,
) -> Result<BilinearVector, SpinorError> {
    let d = rep.spinor_dim();
    if phi.components.len() != d || psi.components.len() != d {
        return Err(SpinorError::InvalidArgument(
            "spinor dimension does not match representation".into(),
        ));
    }
    let pairing = rep.pairing();
    let mut z = CVec::zeros(rep.vector_dim());
    for (a, g) in rep.generators.iter().enumerate() {
        let gpsi = pairing * (g * &psi.components);
        z[a] = phi.components.iter().zip(gpsi.iter()).map(|(x, y)| x * y).sum();
    }
    Ok(BilinearVector {
        components: z,
        signature: rep.signature,
    })
}

/// Symmetric constraint matrix M(psi); vanishes exactly on pure spinors.
pub fn constraint_matrix(rep: &GammaRep, psi: &CVec) -> CMat {
    let d = rep.spinor_dim();
    let pairing = rep.pairing();
    let mut m = CMat::zeros(d, d);
    for (a, g) in rep.generators.iter().enumerate() {
        let v = pairing * (g * psi);
        let eta = Complex::new(rep.signature.eta(a), 0.0);
        for i in 0..d {
            for j in 0..d {
                m[(i, j)] += eta * v[i] * v[j];
            }
        }
    }
    m
}

/// Purity test for a nonzero Weyl spinor.
///
/// The residual is scale invariant: the spinor is normalized to unit norm
/// before the constraint matrix is formed (M is quadratic in psi, so this is
/// the Frobenius norm of M divided by the square of the spinor norm).
/// Residuals inside the (accept, reject) hysteresis band return an explicit
/// indeterminate error instead of a silent classification.
pub fn is_pure(rep: &GammaRep, psi: &Spinor) -> Result<PurityReport, SpinorError> {
    is_pure_with(rep, psi, tol::PURE_ACCEPT, tol::PURE_REJECT)
}

/// [`is_pure`] with caller-supplied acceptance and rejection thresholds.
pub fn is_pure_with(
    rep: &GammaRep,
    psi: &Spinor,
    accept: f64,
    reject: f64,
) -> Result<PurityReport, SpinorError> {
    if !(accept > 0.0 && reject >= accept) {
        return Err(SpinorError::InvalidArgument(
            "thresholds must satisfy 0 < accept <= reject".into(),
        ));
    }
    if psi.is_zero() {
        return Err(SpinorError::InvalidArgument("zero spinor".into()));
    }
    if psi.chirality == Chirality::None {
        return Err(SpinorError::ChiralityRequired);
    }
    let unit = psi.components.map(|z| z / Complex::new(psi.norm(), 0.0));
    let m = constraint_matrix(rep, &unit);
    let residual = crate::linalg::fro_norm(&m);
    if residual > accept && residual < reject {
        return Err(SpinorError::Indeterminate {
            residual,
            lo: accept,
            hi: reject,
        });
    }
    Ok(PurityReport {
        is_pure: residual <= accept,
        residual,
        codimension_estimate: None,
        accept_threshold: accept,
        reject_threshold: reject,
    })
}

/// Orthonormal basis of the chiral subspace of the given sign.
fn chiral_basis(rep: &GammaRep, chirality: Chirality) -> Vec<CVec> {
    let w = rep.chirality_operator();
    let d = rep.spinor_dim();
    let sign = if chirality == Chirality::Plus { 1.0 } else { -1.0 };
    // The canonical construction has a diagonal chirality operator; fall back
    // to projector column extraction for imported representations.
    let diagonal = (0..d).all(|i| {
        (0..d).all(|j| i == j || w[(i, j)].norm() < tol::ALGEBRA_ABS)
    });
    if diagonal {
        (0..d)
            .filter(|&i| (w[(i, i)].re - sign).abs() < tol::ALGEBRA_ABS)
            .map(|i| {
                let mut e = CVec::zeros(d);
                e[i] = C_ONE;
                e
            })
            .collect()
    } else {
        let half = Complex::new(0.5, 0.0);
        let p = (CMat::identity(d, d) + w.map(|z| Complex::new(sign, 0.0) * z)).map(|z| half * z);
        let svd = p.svd(true, false);
        let u = svd.u.expect("svd requested u");
        (0..d)
            .filter(|&i| svd.singular_values[i] > 0.5)
            .map(|i| CVec::from_iterator(d, u.column(i).iter().cloned()))
            .collect()
    }
}

/// Draw a random spinor of definite chirality (complex gaussian components
/// in the chiral subspace, normalized).
pub fn random_chiral_spinor<R: Rng>(rep: &GammaRep, chirality: Chirality, rng: &mut R) -> Spinor {
    let basis = chiral_basis(rep, chirality);
    let d = rep.spinor_dim();
    let mut v = CVec::zeros(d);
    for b in &basis {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        let c = Complex::new(re, im);
        v += b.map(|z| c * z);
    }
    let n = v.norm();
    Spinor {
        components: v.map(|z| z / Complex::new(n, 0.0)),
        chirality,
    }
}

/// A random invertible even element of the Clifford group: the product of
/// two vectors normalized to unit quadratic form.
pub fn even_group_element<R: Rng>(rep: &GammaRep, rng: &mut R) -> CMat {
    let d = rep.spinor_dim();
    let mut out = CMat::identity(d, d);
    for _ in 0..2 {
        loop {
            let v: Vec<C64> = (0..rep.vector_dim())
                .map(|_| {
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = rng.sample(StandardNormal);
                    Complex::new(re, im)
                })
                .collect();
            let q: C64 = v
                .iter()
                .enumerate()
                .map(|(a, z)| Complex::new(rep.signature.eta(a), 0.0) * z * z)
                .sum();
            let scale: f64 = v.iter().map(|z| z.norm_sqr()).sum();
            if q.norm() < 0.2 * scale {
                continue; // too close to the null cone to normalize stably
            }
            let s = q.sqrt();
            let mut m = CMat::zeros(d, d);
            for (a, g) in rep.generators.iter().enumerate() {
                m += g.map(|z| (v[a] / s) * z);
            }
            out = &out * m;
            break;
        }
    }
    out
}

/// The first basis spinor of the requested chirality. Pure in the canonical
/// representations for every supported n.
pub fn basis_chiral_spinor(rep: &GammaRep, chirality: Chirality) -> Spinor {
    let basis = chiral_basis(rep, chirality);
    Spinor {
        components: basis[0].clone(),
        chirality,
    }
}

/// Random pure spinor: the orbit of a basis pure spinor under random even
/// Clifford group elements. Purity of each sample is re-verified.
pub fn random_pure_spinor<R: Rng>(
    rep: &GammaRep,
    chirality: Chirality,
    rng: &mut R,
) -> Result<Spinor, SpinorError> {
    let seed = basis_chiral_spinor(rep, chirality);
    for _ in 0..20 {
        let g = even_group_element(rep, rng);
        let v = &g * &seed.components;
        let n = v.norm();
        if n < 1e-8 {
            continue;
        }
        let candidate = Spinor {
            components: v.map(|z| z / Complex::new(n, 0.0)),
            chirality,
        };
        // even elements preserve chirality, but verify both tags honestly
        if let Ok(report) = is_pure(rep, &candidate) {
            if report.is_pure {
                return Ok(candidate);
            }
        }
    }
    Err(SpinorError::DegenerateOrbit)
}

/// Codimension estimate of the pure-spinor variety inside the chiral space.
#[derive(Debug, Clone, Serialize)]
pub struct CodimensionReport {
    /// Modal numerical Jacobian rank across the samples.
    pub modal_rank: usize,
    pub ranks: Vec<usize>,
    /// Number of bilinear constraint equations quoted in the literature for
    /// n = 4, 5, 6 (1, 10, 64); these count equations, not independent ones.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quoted_equation_count: Option<u64>,
}

/// Estimate the codimension of the pure-spinor variety by the numerical rank
/// of the Jacobian of psi -> M(psi) at sampled pure spinors.
pub fn purity_codimension<R: Rng>(
    rep: &GammaRep,
    samples: usize,
    rng: &mut R,
) -> Result<CodimensionReport, SpinorError> {
    if samples == 0 {
        return Err(SpinorError::InvalidArgument("need at least one sample".into()));
    }
    let d = rep.spinor_dim();
    let basis = chiral_basis(rep, Chirality::Plus);
    let pairing = rep.pairing();
    let mut ranks = Vec::with_capacity(samples);
    for _ in 0..samples {
        let psi = random_pure_spinor(rep, Chirality::Plus, rng)?;
        // columns: directional derivative of M along each chiral basis vector
        let mut jac = CMat::zeros(d * d, basis.len());
        let gpsi: Vec<CVec> = rep
            .generators
            .iter()
            .map(|g| pairing * (g * &psi.components))
            .collect();
        for (col, delta) in basis.iter().enumerate() {
            let mut dm = CMat::zeros(d, d);
            for (a, g) in rep.generators.iter().enumerate() {
                let gd = pairing * (g * delta);
                let eta = Complex::new(rep.signature.eta(a), 0.0);
                for i in 0..d {
                    for j in 0..d {
                        dm[(i, j)] += eta * (gd[i] * gpsi[a][j] + gpsi[a][i] * gd[j]);
                    }
                }
            }
            for i in 0..d {
                for j in 0..d {
                    jac[(i * d + j, col)] = dm[(i, j)];
                }
            }
        }
        ranks.push(rank(&jac, tol::JACOBIAN_RANK_REL));
    }
    let mut counts = std::collections::BTreeMap::new();
    for &r in &ranks {
        *counts.entry(r).or_insert(0usize) += 1;
    }
    let modal_rank = counts
        .into_iter()
        .max_by_key(|&(r, c)| (c, std::cmp::Reverse(r)))
        .map(|(r, _)| r)
        .unwrap();
    let quoted = match rep.n {
        4 => Some(1),
        5 => Some(10),
        6 => Some(64),
        _ => None,
    };
    Ok(CodimensionReport {
        modal_rank,
        ranks,
        quoted_equation_count: quoted,
    })
}

/// Basis of the totally null plane {z : z^a gamma_a psi = 0}.
///
/// All kernel vectors are automatically null and mutually eta-orthogonal
/// (if z and z' annihilate psi then 2 (z.z') psi = 0); the SVD basis is
/// returned after certifying total nullity. The dimension equals n exactly
/// when psi is pure.
pub fn null_plane(rep: &GammaRep, psi: &Spinor) -> Result<Vec<BilinearVector>, SpinorError> {
    if psi.is_zero() {
        return Err(SpinorError::InvalidArgument("zero spinor".into()));
    }
    if psi.components.len() != rep.spinor_dim() {
        return Err(SpinorError::InvalidArgument(
            "spinor dimension does not match representation".into(),
        ));
    }
    let d = rep.spinor_dim();
    let unit = psi.components.map(|z| z / Complex::new(psi.norm(), 0.0));
    let mut a = CMat::zeros(d, rep.vector_dim());
    for (col, g) in rep.generators.iter().enumerate() {
        let v = g * &unit;
        for i in 0..d {
            a[(i, col)] = v[i];
        }
    }
    let basis = kernel_basis(&a, tol::RANK_REL);
    let plane: Vec<BilinearVector> = basis
        .into_iter()
        .map(|components| BilinearVector {
            components,
            signature: rep.signature,
        })
        .collect();
    for (i, u) in plane.iter().enumerate() {
        for v in plane.iter().skip(i) {
            let prod = u.bilinear_with(v).norm();
            if prod > tol::NULL_REL {
                return Err(SpinorError::InvalidArgument(format!(
                    "kernel basis failed total-nullity certification: |<u,v>| = {prod:.3e}"
                )));
            }
        }
    }
    Ok(plane)
}

/// Real null momentum p_a = psi^dagger gamma_t gamma_a psi for a lorentzian
/// representation with timelike generator gamma_t.
pub fn real_null_vector(rep: &GammaRep, psi: &Spinor) -> Result<BilinearVector, SpinorError> {
    let t = rep.timelike_generator().ok_or_else(|| {
        SpinorError::SignatureMismatch(format!(
            "({},{}) is not lorentzian",
            rep.signature.positive, rep.signature.negative
        ))
    })?;
    if psi.is_zero() {
        return Err(SpinorError::InvalidArgument("zero spinor".into()));
    }
    if psi.components.len() != rep.spinor_dim() {
        return Err(SpinorError::InvalidArgument(
            "spinor dimension does not match representation".into(),
        ));
    }
    let tilde: CVec = (t.adjoint() * &psi.components).map(|z| z.conj());
    let norm2 = psi.norm() * psi.norm();
    let mut comps = CVec::zeros(rep.vector_dim());
    for (a, g) in rep.generators.iter().enumerate() {
        let val: C64 = tilde
            .iter()
            .zip((g * &psi.components).iter())
            .map(|(x, y)| x * y)
            .sum();
        if val.im.abs() > tol::ALGEBRA_ABS * norm2.max(1.0) {
            return Err(SpinorError::SignatureMismatch(format!(
                "bilinear component {a} has imaginary part {:.3e}",
                val.im
            )));
        }
        comps[a] = Complex::new(val.re, 0.0);
    }
    Ok(BilinearVector {
        components: comps,
        signature: rep.signature,
    })
}
