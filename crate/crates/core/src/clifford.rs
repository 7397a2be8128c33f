//! Matrix representations of Clifford algebras Cl(p,q).
//!
//! The construction is the recursive Pauli tensor-product scheme: Cl(2)
//! is generated by {sigma_1, sigma_2}, and Cl(2n+2) is generated from the
//! Cl(2n) generators g_1..g_{2n} together with their normalized volume
//! element w as
//!
//! ```text
//!   { sigma_1 (x) 1,  sigma_2 (x) g_1, ..., sigma_2 (x) g_{2n}, sigma_2 (x) w }
//! ```
//!
//! which reproduces the four-dimensional set {sigma_1 (x) 1, sigma_2 (x) sigma_j}
//! in the lorentzian case once the spatial directions pick up their -i
//! factors. Negative-signature directions multiply the euclidean generator
//! by -i so that the anticommutation relations close on diag(+1..+1,-1..-1).
//!
//! Alongside the generators the representation carries:
//!
//! * the raw volume element `gamma_1 ... gamma_2n` and its square sign,
//! * the chirality operator (volume element normalized to square to +1),
//! * the transposition intertwiner `B` with `B gamma_a = gamma_a^t B`,
//! * the spinor pairing `B_pair = B * chirality`, which satisfies
//!   `B_pair gamma_a = -gamma_a^t B_pair` and is the bilinear form the
//!   spinor module uses (it equals -i sigma_2 for Cl(2), the two-component
//!   pairing familiar from the Pauli algebra),
//! * the conjugation operator `C` with `C gamma_a = conj(gamma_a) C`.

use crate::linalg::{kron, max_abs, CMat, C_I, C_ONE, C_ZERO};
use crate::tol;
use num_complex::Complex;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum CliffordError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported size: n = {0} is outside 1..=6")]
    UnsupportedSize(usize),
    #[error("representation inconsistent: {0}")]
    RepresentationInconsistent(String),
    #[error("volume element squares to -identity; normalization required")]
    NormalizationRequired,
}

/// Metric signature (p, q): p positive directions followed by q negative ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
}

impl Signature {
    pub fn new(positive: usize, negative: usize) -> Self {
        Self { positive, negative }
    }

    pub fn dim(&self) -> usize {
        self.positive + self.negative
    }

    /// Metric coefficient eta_aa for direction `a` (+1 then -1 blocks).
    pub fn eta(&self, a: usize) -> f64 {
        if a < self.positive {
            1.0
        } else {
            -1.0
        }
    }

    /// Lorentzian means exactly one direction has the minority sign.
    pub fn is_lorentzian(&self) -> bool {
        self.dim() >= 2 && (self.positive == 1 || self.negative == 1)
    }

    /// Index of the timelike generator: the lone positive direction in a
    /// mostly-minus metric, or the lone negative one in a mostly-plus metric.
    pub fn timelike_index(&self) -> Option<usize> {
        if !self.is_lorentzian() {
            return None;
        }
        if self.positive == 1 {
            Some(0)
        } else {
            Some(self.dim() - 1)
        }
    }
}

/// A complete matrix representation of Cl(p,q) with p + q = 2n.
#[derive(Debug, Clone)]
pub struct GammaRep {
    pub n: usize,
    pub signature: Signature,
    /// 2n generator matrices, each spinor_dim x spinor_dim.
    pub generators: Vec<CMat>,
    /// Raw product gamma_1 gamma_2 ... gamma_2n.
    pub volume: CMat,
    /// Sign s with volume^2 = s * identity.
    pub volume_square_sign: i8,
    /// Volume element normalized (by a phase in {1, -1, i, -i}) to square to
    /// +identity, with the leading nonzero entry made positive.
    pub chirality: CMat,
    /// Transposition intertwiner: B gamma_a = gamma_a^t B.
    pub b_intertwiner: CMat,
    /// Spinor pairing B * chirality: pairs opposite-transposition behaviour,
    /// B_pair gamma_a = -gamma_a^t B_pair. Equals -i sigma_2 at n = 1.
    pub b_pairing: CMat,
    /// Conjugation operator: C gamma_a = conj(gamma_a) C.
    pub conjugation: CMat,
}

fn pauli(k: usize) -> CMat {
    match k {
        1 => CMat::from_row_slice(2, 2, &[C_ZERO, C_ONE, C_ONE, C_ZERO]),
        2 => CMat::from_row_slice(2, 2, &[C_ZERO, -C_I, C_I, C_ZERO]),
        3 => CMat::from_row_slice(2, 2, &[C_ONE, C_ZERO, C_ZERO, -C_ONE]),
        _ => unreachable!(),
    }
}

fn identity(d: usize) -> CMat {
    CMat::identity(d, d)
}

/// Phase-normalize a volume element so it squares to +identity and its
/// first nonzero entry (row-major) is positive real (or positive imaginary
/// when the real part vanishes). Returns an error when the square is not
/// proportional to the identity at all.
fn normalize_volume(v: &CMat) -> Result<(CMat, i8), CliffordError> {
    let d = v.nrows();
    let v2 = v * v;
    let sign = if max_abs(&(&v2 - identity(d))) < tol::ALGEBRA_ABS {
        1i8
    } else if max_abs(&(&v2 + identity(d))) < tol::ALGEBRA_ABS {
        -1i8
    } else {
        return Err(CliffordError::RepresentationInconsistent(
            "volume element square is not proportional to the identity".into(),
        ));
    };
    let candidates: [Complex<f64>; 2] = if sign == 1 {
        [C_ONE, -C_ONE]
    } else {
        [C_I, -C_I]
    };
    for c in candidates {
        let w = v.map(|z| c * z);
        // first nonzero entry, scanning rows
        let lead = (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .map(|(i, j)| w[(i, j)])
            .find(|z| z.norm() > tol::ALGEBRA_ABS)
            .unwrap_or(C_ZERO);
        if lead.re > tol::ALGEBRA_ABS || (lead.re.abs() <= tol::ALGEBRA_ABS && lead.im > 0.0) {
            return Ok((w, sign));
        }
    }
    unreachable!("one of the two phases always has a positive leading entry")
}

/// Euclidean generator set for Cl(2n), built recursively.
fn euclidean_generators(n: usize) -> Vec<CMat> {
    if n == 1 {
        return vec![pauli(1), pauli(2)];
    }
    let prev = euclidean_generators(n - 1);
    let d = prev[0].nrows();
    let mut vol = prev[0].clone();
    for g in &prev[1..] {
        vol = &vol * g;
    }
    let (w, _) = normalize_volume(&vol).expect("euclidean volume squares to +/-1");
    let mut gens = vec![kron(&pauli(1), &identity(d))];
    let s2 = pauli(2);
    for g in prev.iter().chain(std::iter::once(&w)) {
        gens.push(kron(&s2, g));
    }
    gens
}

/// Whether a matrix is entrywise symmetric (+1) or antisymmetric (-1) under
/// transposition; `None` if neither.
fn transpose_parity(m: &CMat) -> Option<i8> {
    let t = m.transpose();
    if max_abs(&(&t - m)) < tol::ALGEBRA_ABS {
        Some(1)
    } else if max_abs(&(&t + m)) < tol::ALGEBRA_ABS {
        Some(-1)
    } else {
        None
    }
}

/// Reality parity: gamma conjugate = +/- gamma.
fn conjugation_parity(m: &CMat) -> Option<i8> {
    let c = m.conjugate();
    if max_abs(&(&c - m)) < tol::ALGEBRA_ABS {
        Some(1)
    } else if max_abs(&(&c + m)) < tol::ALGEBRA_ABS {
        Some(-1)
    } else {
        None
    }
}

/// Ordered product of the generators whose parity matches `select`.
///
/// Both intertwiners (B for transposition, C for conjugation) are products
/// of the generators on which the relevant involution acts with one fixed
/// sign: if the minus set has even cardinality the product over it works,
/// otherwise the product over the plus set does.
fn intertwiner_product(
    generators: &[CMat],
    parity: impl Fn(&CMat) -> Option<i8>,
) -> Result<CMat, CliffordError> {
    let d = generators[0].nrows();
    let mut minus = Vec::new();
    let mut plus = Vec::new();
    for g in generators {
        match parity(g) {
            Some(1) => plus.push(g),
            Some(-1) => minus.push(g),
            _ => {
                return Err(CliffordError::RepresentationInconsistent(
                    "generator has no definite involution parity".into(),
                ))
            }
        }
    }
    let chosen = if minus.len() % 2 == 0 { minus } else { plus };
    let mut b = identity(d);
    for g in chosen {
        b = &b * g;
    }
    Ok(b)
}

/// Build the canonical representation of Cl(p,q), p + q = 2n, n in 1..=6.
///
/// Deterministic: identical arguments produce bit-identical matrices.
pub fn build_gamma(n: usize, signature: Signature) -> Result<GammaRep, CliffordError> {
    if n == 0 || n > 6 {
        return Err(CliffordError::UnsupportedSize(n));
    }
    if signature.dim() != 2 * n {
        return Err(CliffordError::InvalidArgument(format!(
            "signature ({},{}) has dimension {}, expected 2n = {}",
            signature.positive,
            signature.negative,
            signature.dim(),
            2 * n
        )));
    }
    let euclid = euclidean_generators(n);
    let generators: Vec<CMat> = euclid
        .iter()
        .enumerate()
        .map(|(a, g)| {
            if signature.eta(a) > 0.0 {
                g.clone()
            } else {
                g.map(|z| -C_I * z)
            }
        })
        .collect();

    let mut volume = generators[0].clone();
    for g in &generators[1..] {
        volume = &volume * g;
    }
    let (chirality, volume_square_sign) = normalize_volume(&volume)?;

    // B is signature independent: scalar -i factors pass through the
    // transposition relation, so it is built from the euclidean matrices.
    let b_intertwiner = intertwiner_product(&euclid, transpose_parity)?;
    let b_pairing = &b_intertwiner * &chirality;
    let conjugation = intertwiner_product(&generators, conjugation_parity)?;

    let rep = GammaRep {
        n,
        signature,
        generators,
        volume,
        volume_square_sign,
        chirality,
        b_intertwiner,
        b_pairing,
        conjugation,
    };
    debug_assert!(rep.validate().is_ok());
    Ok(rep)
}

/// Idempotent chiral projectors P_plus, P_minus = (1 +/- chirality)/2.
pub fn weyl_projectors(rep: &GammaRep) -> (CMat, CMat) {
    let d = rep.spinor_dim();
    let half = Complex::new(0.5, 0.0);
    let p_plus = (identity(d) + &rep.chirality).map(|z| half * z);
    let p_minus = (identity(d) - &rep.chirality).map(|z| half * z);
    (p_plus, p_minus)
}

/// Projectors built directly from a volume element, refusing to proceed
/// when it squares to -identity (the phase normalization must be applied
/// first; [`weyl_projectors`] does this automatically).
pub fn weyl_projectors_raw(volume: &CMat) -> Result<(CMat, CMat), CliffordError> {
    let d = volume.nrows();
    let v2 = volume * volume;
    if max_abs(&(&v2 + identity(d))) < tol::ALGEBRA_ABS {
        return Err(CliffordError::NormalizationRequired);
    }
    if max_abs(&(&v2 - identity(d))) > tol::ALGEBRA_ABS {
        return Err(CliffordError::RepresentationInconsistent(
            "volume element square is not proportional to the identity".into(),
        ));
    }
    let half = Complex::new(0.5, 0.0);
    Ok((
        (identity(d) + volume).map(|z| half * z),
        (identity(d) - volume).map(|z| half * z),
    ))
}

/// The transposition intertwiner of the representation.
///
/// The joint solution space of `B gamma_a = gamma_a^t B` is one-dimensional
/// (Schur), so the stored product construction is the unique answer up to
/// scale; its entries already have unit maximum magnitude.
pub fn main_antiautomorphism(rep: &GammaRep) -> CMat {
    rep.b_intertwiner.clone()
}

/// Raw volume element gamma_1 ... gamma_2n.
pub fn volume_element(rep: &GammaRep) -> CMat {
    rep.volume.clone()
}

impl GammaRep {
    pub fn spinor_dim(&self) -> usize {
        1 << self.n
    }

    pub fn vector_dim(&self) -> usize {
        2 * self.n
    }

    /// Chirality operator (normalized volume element).
    pub fn chirality_operator(&self) -> &CMat {
        &self.chirality
    }

    /// The bilinear spinor pairing used for vector bilinears and purity.
    pub fn pairing(&self) -> &CMat {
        &self.b_pairing
    }

    /// Timelike generator for lorentzian signatures.
    pub fn timelike_generator(&self) -> Option<&CMat> {
        self.signature.timelike_index().map(|i| &self.generators[i])
    }

    /// Maximum violation of the defining anticommutation relations.
    pub fn anticommutation_error(&self) -> f64 {
        let d = self.spinor_dim();
        let mut worst = 0.0f64;
        for a in 0..self.vector_dim() {
            for b in 0..self.vector_dim() {
                let anti = &self.generators[a] * &self.generators[b]
                    + &self.generators[b] * &self.generators[a];
                let target = if a == b {
                    identity(d).map(|z| Complex::new(2.0 * self.signature.eta(a), 0.0) * z)
                } else {
                    CMat::zeros(d, d)
                };
                worst = worst.max(max_abs(&(anti - target)));
            }
        }
        worst
    }

    /// Check every structural invariant; used by tests and by JSON import.
    pub fn validate(&self) -> Result<(), CliffordError> {
        let d = self.spinor_dim();
        if self.generators.len() != self.vector_dim() {
            return Err(CliffordError::RepresentationInconsistent(
                "wrong generator count".into(),
            ));
        }
        let err = self.anticommutation_error();
        if err > tol::ALGEBRA_ABS {
            return Err(CliffordError::RepresentationInconsistent(format!(
                "anticommutation violated by {err:.3e}"
            )));
        }
        for g in &self.generators {
            let anti = &self.volume * g + g * &self.volume;
            if max_abs(&anti) > tol::ALGEBRA_ABS {
                return Err(CliffordError::RepresentationInconsistent(
                    "volume element does not anticommute with a generator".into(),
                ));
            }
        }
        let w2 = &self.chirality * &self.chirality;
        if max_abs(&(w2 - identity(d))) > tol::ALGEBRA_ABS {
            return Err(CliffordError::RepresentationInconsistent(
                "chirality operator does not square to identity".into(),
            ));
        }
        for g in &self.generators {
            let lhs = &self.b_intertwiner * g;
            let rhs = g.transpose() * &self.b_intertwiner;
            if max_abs(&(lhs - rhs)) > tol::ALGEBRA_ABS {
                return Err(CliffordError::RepresentationInconsistent(
                    "B does not intertwine transposition".into(),
                ));
            }
            let lhs = &self.conjugation * g;
            let rhs = g.conjugate() * &self.conjugation;
            if max_abs(&(lhs - rhs)) > tol::ALGEBRA_ABS {
                return Err(CliffordError::RepresentationInconsistent(
                    "C does not intertwine conjugation".into(),
                ));
            }
        }
        Ok(())
    }

    /// Serialize to the interchange JSON layout (row-major `[re, im]` pairs).
    pub fn to_json(&self) -> Value {
        fn mat(m: &CMat) -> Value {
            // row-major flattening
            let entries: Vec<Value> = (0..m.nrows())
                .flat_map(|i| (0..m.ncols()).map(move |j| (i, j)))
                .map(|(i, j)| json!([m[(i, j)].re, m[(i, j)].im]))
                .collect();
            Value::Array(entries)
        }
        json!({
            "n": self.n,
            "signature": [self.signature.positive, self.signature.negative],
            "spinor_dim": self.spinor_dim(),
            "generators": self.generators.iter().map(mat).collect::<Vec<_>>(),
            "volume_element": mat(&self.volume),
            "volume_square_sign": self.volume_square_sign,
            "chirality": mat(&self.chirality),
            "B": mat(&self.b_intertwiner),
            "B_pairing": mat(&self.b_pairing),
            "C": mat(&self.conjugation),
        })
    }

    /// Rebuild from the interchange JSON layout, re-validating all invariants.
    pub fn from_json(v: &Value) -> Result<Self, CliffordError> {
        let bad = |m: &str| CliffordError::InvalidArgument(m.to_string());
        let n = v["n"].as_u64().ok_or_else(|| bad("missing n"))? as usize;
        let sig = v["signature"]
            .as_array()
            .ok_or_else(|| bad("missing signature"))?;
        if sig.len() != 2 {
            return Err(bad("signature must be [p, q]"));
        }
        let signature = Signature::new(
            sig[0].as_u64().ok_or_else(|| bad("bad signature"))? as usize,
            sig[1].as_u64().ok_or_else(|| bad("bad signature"))? as usize,
        );
        let d = 1usize << n;
        let mat = |val: &Value| -> Result<CMat, CliffordError> {
            let arr = val.as_array().ok_or_else(|| bad("matrix must be array"))?;
            if arr.len() != d * d {
                return Err(bad("matrix entry count mismatch"));
            }
            let mut m = CMat::zeros(d, d);
            for (k, e) in arr.iter().enumerate() {
                let pair = e.as_array().ok_or_else(|| bad("entry must be [re, im]"))?;
                let re = pair[0].as_f64().ok_or_else(|| bad("entry re"))?;
                let im = pair[1].as_f64().ok_or_else(|| bad("entry im"))?;
                m[(k / d, k % d)] = Complex::new(re, im);
            }
            Ok(m)
        };
        let generators = v["generators"]
            .as_array()
            .ok_or_else(|| bad("missing generators"))?
            .iter()
            .map(&mat)
            .collect::<Result<Vec<_>, _>>()?;
        let volume = mat(&v["volume_element"])?;
        let (chirality, volume_square_sign) = normalize_volume(&volume)?;
        let rep = GammaRep {
            n,
            signature,
            generators,
            volume,
            volume_square_sign,
            chirality,
            b_intertwiner: mat(&v["B"])?,
            b_pairing: mat(&v["B_pairing"])?,
            conjugation: mat(&v["C"])?,
        };
        rep.validate()?;
        Ok(rep)
    }
}
