//! Geometric constants: the Wyler fine-structure expression, the torus
//! time-energy duality and the Dirac elementary time unit.
//!
//! Physical scales (Planck constant, rest energies, the age of the
//! universe) are always inputs; only the classical-domain volumes are
//! fixed here, and they are surfaced in the result so alternative volume
//! conventions can be swapped in.

use serde::Serialize;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ConstantsError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Volumes entering the fine-structure expression.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct VolumeInputs {
    /// Five-dimensional Lie ball (bounded symmetric domain) volume
    /// V(D5) = pi^5 / (2^4 5!).
    pub v_d5: f64,
    /// Four-sphere volume V(S4) = 8 pi^2 / 3.
    pub v_s4: f64,
    /// Shilov boundary volume V(Q5) = 8 pi^3 / 3.
    pub v_q5: f64,
}

/// Result of evaluating alpha = 8 pi V(D5)^{1/4} / (V(S4) V(Q5)).
#[derive(Debug, Clone, Serialize)]
pub struct WylerResult {
    pub alpha: f64,
    pub inverse_alpha: f64,
    pub volume_inputs: VolumeInputs,
    /// The value printed in the source literature, 137.0608, which differs
    /// from the evaluation of the same closed-form volumes (137.03608...);
    /// reported instead of silently corrected.
    pub printed_inverse_alpha: f64,
    /// |inverse_alpha - printed_inverse_alpha|.
    pub printed_discrepancy: f64,
}

/// Literature-printed value of 1/alpha for the same formula.
pub const PRINTED_INVERSE_ALPHA: f64 = 137.0608;

/// Evaluate the fine-structure expression from the closed-form volumes.
///
/// Bit-identical across calls: every input is a compile-time constant
/// expression in pi.
pub fn wyler_alpha() -> WylerResult {
    let volume_inputs = VolumeInputs {
        v_d5: PI.powi(5) / (16.0 * 120.0),
        v_s4: 8.0 * PI * PI / 3.0,
        v_q5: 8.0 * PI.powi(3) / 3.0,
    };
    let alpha = 8.0 * PI * volume_inputs.v_d5.powf(0.25)
        / (volume_inputs.v_s4 * volume_inputs.v_q5);
    let inverse_alpha = 1.0 / alpha;
    WylerResult {
        alpha,
        inverse_alpha,
        volume_inputs,
        printed_inverse_alpha: PRINTED_INVERSE_ALPHA,
        printed_discrepancy: (inverse_alpha - PRINTED_INVERSE_ALPHA).abs(),
    }
}

/// Relative deviation of the geometric alpha from a supplied measured value.
pub fn wyler_deviation(measured_alpha: f64) -> Result<f64, ConstantsError> {
    if measured_alpha <= 0.0 {
        return Err(ConstantsError::InvalidArgument(
            "measured alpha must be positive".into(),
        ));
    }
    Ok((wyler_alpha().alpha - measured_alpha).abs() / measured_alpha)
}

/// Elementary time unit Delta t = h / (M c^2). Units follow the inputs
/// (J s with J, or eV s with eV).
pub fn dirac_time_unit(rest_energy: f64, h: f64) -> Result<f64, ConstantsError> {
    if rest_energy <= 0.0 || h <= 0.0 {
        return Err(ConstantsError::InvalidArgument(
            "rest energy and action must be positive".into(),
        ));
    }
    Ok(h / rest_energy)
}

/// Discrete time-energy lattice on the phase-space torus.
#[derive(Debug, Clone, Serialize)]
pub struct TorusLattice {
    /// Half the vertex count of the inscribed polygons.
    pub n: u64,
    /// Time-circle radius.
    pub t_radius: f64,
    /// Time lattice spacing Delta t = pi T / N.
    pub delta_t: f64,
    /// Energy lattice spacing from the discrete Fourier pairing,
    /// Delta E = h / (2 N Delta t).
    pub delta_e: f64,
    /// Energy-circle radius N Delta E.
    pub energy_radius: f64,
}

/// Duality report: the implemented discrete-Fourier convention gives
/// Delta t * (N Delta E) = h / 2, while the asserted identity is
/// Delta t * Mc^2 = h; the convention ratio records the factor instead of
/// hiding it.
#[derive(Debug, Clone, Serialize)]
pub struct TorusDuality {
    pub lattice: TorusLattice,
    /// Delta t times the energy radius.
    pub product: f64,
    /// product / h under the implemented DFT convention (= 1/2).
    pub convention_ratio: f64,
    /// The product the source text asserts (= h).
    pub asserted_product: f64,
}

/// Inscribe 2N-vertex polygons in the time and energy circles and report the
/// conjugate lattice data.
pub fn torus_duality(n: u64, t_radius: f64, h: f64) -> Result<TorusDuality, ConstantsError> {
    if n < 1 {
        return Err(ConstantsError::InvalidArgument("N must be at least 1".into()));
    }
    if t_radius <= 0.0 || h <= 0.0 {
        return Err(ConstantsError::InvalidArgument(
            "radius and action must be positive".into(),
        ));
    }
    let delta_t = PI * t_radius / n as f64;
    let delta_e = h / (2.0 * n as f64 * delta_t);
    let energy_radius = n as f64 * delta_e;
    let product = delta_t * energy_radius;
    Ok(TorusDuality {
        lattice: TorusLattice {
            n,
            t_radius,
            delta_t,
            delta_e,
            energy_radius,
        },
        product,
        convention_ratio: product / h,
        asserted_product: h,
    })
}

/// Ratio of a cosmological age to an elementary time unit.
pub fn cosmic_ratio(age: f64, delta_t: f64) -> Result<f64, ConstantsError> {
    if age <= 0.0 || delta_t <= 0.0 {
        return Err(ConstantsError::InvalidArgument(
            "age and time unit must be positive".into(),
        ));
    }
    Ok(age / delta_t)
}
