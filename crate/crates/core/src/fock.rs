//! The momentum-space hydrogen problem on the unit 3-sphere.
//!
//! The stationary-state equation is an eigenvalue problem for the zonal
//! kernel 1/(u - u')^2 = 1/(2(1 - u.u')) on S3, solved by two independent
//! routes:
//!
//! * a Funk-Hecke reduction to one-dimensional integrals of Chebyshev-U
//!   (Gegenbauer alpha = 1) polynomials against the singular weight, which
//!   gives lambda_n = 2 pi^2 / n with degeneracy n^2, and
//! * a direct Nystrom discretization on a product quadrature grid whose
//!   eigenvalue clusters converge to the same spectrum.
//!
//! The quantization condition (alpha / V(S3)) (mc / p0) lambda_n = 1 then
//! produces p0 = alpha m c / n and the Balmer levels
//! E_n = -(alpha^2 / 2) mc^2 / n^2.
//!
//! Diagonal treatment of the Nystrom matrix: `Puncture` zeroes the diagonal
//! and carries an O(h) downward bias (h = grid spacing); `Mollify(eps)`
//! replaces the kernel by 1/((u-u')^2 + eps^2); `SubtractConstant` uses the
//! singularity subtraction K f = integral K (f - f(u)) + lambda_1 f(u),
//! which is exact on constants (the n = 1 eigenfunction) because
//! integral 1/(u-u')^2 du' = 2 pi^2 on S3, and restores fast convergence.
//! The bias of the first two treatments is quantified against the
//! Funk-Hecke oracle in the tests.

use crate::linalg::RMat;
use crate::quadrature::{chebyshev_u, gauss_chebyshev2, gauss_legendre, GaussRule};
use crate::tol;
use serde::Serialize;
use std::f64::consts::PI;
use thiserror::Error;

/// Volume of the unit 3-sphere.
pub const V_S3: f64 = 2.0 * PI * PI;

#[derive(Debug, Error, PartialEq)]
pub enum FockError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("accuracy not reached: {0}")]
    AccuracyNotReached(String),
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
    #[error("clustering ambiguous: {0}")]
    ClusteringAmbiguous(String),
}

/// Product quadrature grid on the unit 3-sphere.
///
/// Hyperspherical coordinates (chi, theta, phi) with measure
/// sin^2(chi) sin(theta) d chi d theta d phi: Gauss-Chebyshev (second kind)
/// in cos(chi), Gauss-Legendre in cos(theta), uniform in phi.
#[derive(Debug, Clone)]
pub struct SphereGridS3 {
    pub nodes: Vec<[f64; 4]>,
    pub weights: Vec<f64>,
    pub orders: (usize, usize, usize),
}

impl SphereGridS3 {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn integrate(&self, f: impl Fn(&[f64; 4]) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(u, &w)| w * f(u))
            .sum()
    }

    /// Rotate every node by a 4x4 orthogonal matrix (spectrum diagnostics).
    pub fn rotated(&self, q: &RMat) -> SphereGridS3 {
        let nodes = self
            .nodes
            .iter()
            .map(|u| {
                let mut v = [0.0f64; 4];
                for (i, vi) in v.iter_mut().enumerate() {
                    *vi = (0..4).map(|j| q[(i, j)] * u[j]).sum();
                }
                v
            })
            .collect();
        SphereGridS3 {
            nodes,
            weights: self.weights.clone(),
            orders: self.orders,
        }
    }
}

/// Build the product grid; every order must be at least 2.
pub fn build_s3_grid(
    order_chi: usize,
    order_theta: usize,
    order_phi: usize,
) -> Result<SphereGridS3, FockError> {
    for (name, o) in [
        ("chi", order_chi),
        ("theta", order_theta),
        ("phi", order_phi),
    ] {
        if o < 2 {
            return Err(FockError::InvalidArgument(format!(
                "order {name} = {o} is below the minimum of 2"
            )));
        }
    }
    let chi: GaussRule = gauss_chebyshev2(order_chi);
    let theta: GaussRule = gauss_legendre(order_theta);
    let nphi = order_phi as f64;
    let mut nodes = Vec::with_capacity(order_chi * order_theta * order_phi);
    let mut weights = Vec::with_capacity(nodes.capacity());
    for (xc, wc) in chi.nodes.iter().zip(&chi.weights) {
        let sin_chi = (1.0 - xc * xc).max(0.0).sqrt();
        for (xt, wt) in theta.nodes.iter().zip(&theta.weights) {
            let sin_theta = (1.0 - xt * xt).max(0.0).sqrt();
            for k in 0..order_phi {
                let phi = 2.0 * PI * k as f64 / nphi;
                nodes.push([
                    sin_chi * sin_theta * phi.cos(),
                    sin_chi * sin_theta * phi.sin(),
                    sin_chi * xt,
                    *xc,
                ]);
                weights.push(wc * wt * 2.0 * PI / nphi);
            }
        }
    }
    Ok(SphereGridS3 {
        nodes,
        weights,
        orders: (order_chi, order_theta, order_phi),
    })
}

/// Funk-Hecke eigenvalues of the kernel 1/(u-u')^2 on principal levels
/// 1..=n_max.
///
/// In the zonal variable t = u.u' the kernel is 1/(2(1-t)) and its
/// eigenvalue on degree-(n-1) harmonics is
///
/// ```text
///   lambda_n = (4 pi / n) * integral  U_{n-1}(t)/2 * sqrt(1-t^2)/(1-t) dt
///            = (2 pi / n) * integral  U_{n-1}(t) sqrt((1+t)/(1-t)) dt,
/// ```
///
/// evaluated with the singularity-adapted third-kind Chebyshev rule (the
/// integrand's endpoint singularity is exactly the rule's weight). The
/// closed form of the integral is pi for every degree, so lambda_n
/// converges to 2 pi^2 / n once the rule resolves the polynomial degree.
pub fn funk_hecke_eigenvalues(n_max: usize, quad_order: usize) -> Result<Vec<f64>, FockError> {
    if n_max < 1 {
        return Err(FockError::InvalidArgument("n_max must be at least 1".into()));
    }
    if quad_order < 2 {
        return Err(FockError::InvalidArgument("quadrature order too small".into()));
    }
    let eval = |order: usize| -> Vec<f64> {
        let rule = crate::quadrature::gauss_chebyshev3(order);
        (1..=n_max)
            .map(|n| 2.0 * PI / n as f64 * rule.integrate(|t| chebyshev_u(n - 1, t)))
            .collect()
    };
    let coarse = eval(quad_order);
    let fine = eval(quad_order + 8);
    for (n, (a, b)) in coarse.iter().zip(&fine).enumerate() {
        let rel = (a - b).abs() / b.abs().max(f64::MIN_POSITIVE);
        if rel > tol::FUNK_HECKE_CONVERGENCE_REL {
            return Err(FockError::AccuracyNotReached(format!(
                "level {}: successive-order change {rel:.3e} exceeds {:.0e}; raise the quadrature order",
                n + 1,
                tol::FUNK_HECKE_CONVERGENCE_REL
            )));
        }
    }
    Ok(fine)
}

/// Dimension of the degree-(n-1) hyperspherical harmonics on S3.
pub fn harmonic_degeneracy(n: usize) -> usize {
    n * n
}

/// Diagonal treatment for the singular Nystrom kernel matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regularization {
    /// Zero diagonal; O(h) downward bias, kept for bias quantification.
    Puncture,
    /// Kernel 1/((u-u')^2 + eps^2) including the diagonal.
    Mollify(f64),
    /// Singularity subtraction using the exact row integral 2 pi^2.
    SubtractConstant,
}

/// One degenerate eigenvalue cluster of the spectrum.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumLevel {
    #[serde(rename = "n")]
    pub principal_n: usize,
    pub lambda: f64,
    pub degeneracy: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p0: Option<f64>,
    #[serde(rename = "E", skip_serializing_if = "Option::is_none")]
    pub energy: Option<f64>,
}

/// Spectrum with its provenance route.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumResult {
    pub levels: Vec<SpectrumLevel>,
    pub route: String,
    /// Relative spread used to group eigenvalues into clusters, when the
    /// spectrum came from the Nystrom route.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cluster_spread: Option<f64>,
}

/// Assemble the symmetric weighted kernel matrix
/// K_ij = sqrt(w_i w_j) / (u_i - u_j)^2 with the chosen diagonal treatment.
pub fn assemble_kernel_matrix(grid: &SphereGridS3, reg: Regularization) -> RMat {
    let n = grid.len();
    let mut k = RMat::zeros(n, n);
    let sw: Vec<f64> = grid.weights.iter().map(|w| w.sqrt()).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            let d2: f64 = (0..4)
                .map(|c| (grid.nodes[i][c] - grid.nodes[j][c]).powi(2))
                .sum();
            let val = match reg {
                Regularization::Mollify(eps) => sw[i] * sw[j] / (d2 + eps * eps),
                _ => sw[i] * sw[j] / d2,
            };
            k[(i, j)] = val;
            k[(j, i)] = val;
        }
    }
    match reg {
        Regularization::Puncture => {}
        Regularization::Mollify(eps) => {
            for i in 0..n {
                k[(i, i)] = grid.weights[i] / (eps * eps);
            }
        }
        Regularization::SubtractConstant => {
            // diagonal absorbs the missing singular mass so that the constant
            // vector (sqrt(w_i)) is an exact eigenvector with eigenvalue 2 pi^2;
            // sum_j w_j K(u_i,u_j) = k_ij sw_j / sw_i in symmetrized entries
            for i in 0..n {
                let row_mass: f64 = (0..n)
                    .filter(|&j| j != i)
                    .map(|j| k[(i, j)] * sw[j] / sw[i])
                    .sum();
                k[(i, i)] = V_S3 - row_mass;
            }
        }
    }
    k
}

/// Nystrom spectrum: eigenvalue clusters of the discretized kernel.
pub fn nystrom_spectrum(
    grid: &SphereGridS3,
    n_levels: usize,
    reg: Regularization,
    cluster_spread: f64,
) -> Result<SpectrumResult, FockError> {
    if n_levels < 1 {
        return Err(FockError::InvalidArgument("n_levels must be at least 1".into()));
    }
    if grid.is_empty() {
        return Err(FockError::InvalidArgument("empty grid".into()));
    }
    if (grid.total_weight() - V_S3).abs() > tol::QUADRATURE_REL * V_S3 {
        return Err(FockError::InvalidArgument(
            "grid total weight is not the volume of S3".into(),
        ));
    }
    let k = assemble_kernel_matrix(grid, reg);
    let eigs = crate::linalg::symmetric_eigenvalues_desc(&k);
    if eigs.iter().any(|e| !e.is_finite()) {
        return Err(FockError::NumericalFailure(
            "eigensolver produced non-finite values".into(),
        ));
    }
    let mut levels = Vec::with_capacity(n_levels);
    let mut idx = 0usize;
    for level in 1..=n_levels {
        if idx >= eigs.len() {
            return Err(FockError::NumericalFailure(format!(
                "grid too small: ran out of eigenvalues at level {level}"
            )));
        }
        let top = eigs[idx];
        let mut end = idx + 1;
        while end < eigs.len() && (top - eigs[end]) <= cluster_spread * top.abs() {
            end += 1;
        }
        // ambiguity: the next eigenvalue outside the cluster must sit well
        // clear of the spread threshold, otherwise the grouping (and hence
        // the reported degeneracy) depends on the exact threshold value
        if end < eigs.len() {
            let gap = (eigs[end - 1] - eigs[end]) / top.abs().max(f64::MIN_POSITIVE);
            if gap <= 3.0 * cluster_spread {
                return Err(FockError::ClusteringAmbiguous(format!(
                    "level {level}: boundary gap {gap:.3e} is within 3x the spread threshold \
                     {cluster_spread:.1e}; adjust the threshold or refine the grid"
                )));
            }
        }
        let members = &eigs[idx..end];
        let lambda = members.iter().sum::<f64>() / members.len() as f64;
        levels.push(SpectrumLevel {
            principal_n: level,
            lambda,
            degeneracy: members.len(),
            p0: None,
            energy: None,
        });
        idx = end;
    }
    Ok(SpectrumResult {
        levels,
        route: "nystrom".into(),
        cluster_spread: Some(cluster_spread),
    })
}

/// Attach physical scales to a spectrum: p0 = alpha m c / n (in units of mc)
/// and E_n = -(alpha^2 / 2) mc^2 / n^2, taking the principal number from the
/// cluster index.
pub fn attach_energies(spectrum: &mut SpectrumResult, alpha: f64, mc2: f64) {
    for level in &mut spectrum.levels {
        let n = level.principal_n as f64;
        level.p0 = Some(alpha / n);
        level.energy = Some(-(alpha * alpha) / 2.0 * mc2 / (n * n));
    }
}

/// Balmer spectrum from the quantization condition, with exact degeneracies.
pub fn hydrogen_levels(alpha: f64, mc2: f64, n_max: usize) -> Result<SpectrumResult, FockError> {
    if !(0.0 < alpha && alpha < 1.0) {
        return Err(FockError::InvalidArgument(format!(
            "alpha = {alpha} outside (0, 1)"
        )));
    }
    if mc2 <= 0.0 {
        return Err(FockError::InvalidArgument("mc^2 must be positive".into()));
    }
    if n_max < 1 {
        return Err(FockError::InvalidArgument("n_max must be at least 1".into()));
    }
    let levels = (1..=n_max)
        .map(|n| {
            let nf = n as f64;
            SpectrumLevel {
                principal_n: n,
                lambda: V_S3 / nf,
                degeneracy: harmonic_degeneracy(n),
                p0: Some(alpha / nf),
                energy: Some(-(alpha * alpha) / 2.0 * mc2 / (nf * nf)),
            }
        })
        .collect();
    Ok(SpectrumResult {
        levels,
        route: "funk-hecke".into(),
        cluster_spread: None,
    })
}

/// Residual of the quantization condition |(alpha / 2 pi^2)(mc/p0) lambda - 1|.
pub fn fock_condition_residual(lambda: f64, alpha: f64, mc_over_p0: f64) -> f64 {
    (alpha / V_S3 * mc_over_p0 * lambda - 1.0).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_total_weight_is_sphere_volume() {
        for orders in [(2, 2, 2), (6, 5, 8), (10, 10, 12)] {
            let g = build_s3_grid(orders.0, orders.1, orders.2).unwrap();
            assert!((g.total_weight() - V_S3).abs() < 1e-10 * V_S3);
            for u in &g.nodes {
                let r: f64 = u.iter().map(|x| x * x).sum();
                assert!((r - 1.0).abs() < 1e-12);
            }
            assert!(g.weights.iter().all(|&w| w > 0.0));
        }
    }

    #[test]
    fn grid_rejects_tiny_orders() {
        assert!(build_s3_grid(1, 4, 4).is_err());
        assert!(build_s3_grid(4, 1, 4).is_err());
        assert!(build_s3_grid(4, 4, 1).is_err());
    }

    #[test]
    fn grid_kills_odd_harmonic_and_matches_second_moment() {
        let g = build_s3_grid(8, 8, 10).unwrap();
        // degree-1 harmonic u_4 integrates to zero
        let m1 = g.integrate(|u| u[3]);
        assert!(m1.abs() < 1e-10);
        // second moment of u.e over the sphere is 1/4 of the volume
        for e in [[1.0, 0.0, 0.0, 0.0], [0.0, 0.5, 0.5, std::f64::consts::FRAC_1_SQRT_2]] {
            let nrm: f64 = e.iter().map(|x| x * x).sum::<f64>().sqrt();
            let m2 = g.integrate(|u| {
                let d: f64 = u.iter().zip(&e).map(|(a, b)| a * b / nrm).sum();
                d * d
            });
            assert!((m2 - V_S3 / 4.0).abs() < 1e-8 * V_S3);
        }
    }

    #[test]
    fn funk_hecke_matches_closed_form() {
        let lambdas = funk_hecke_eigenvalues(6, 32).unwrap();
        for (i, l) in lambdas.iter().enumerate() {
            let n = (i + 1) as f64;
            assert!(
                (l - V_S3 / n).abs() <= 1e-10 * (V_S3 / n),
                "lambda_{} = {l}",
                i + 1
            );
        }
        // ratio law lambda_1 / lambda_n = n
        for (i, l) in lambdas.iter().enumerate() {
            let n = (i + 1) as f64;
            assert!((lambdas[0] / l - n).abs() < 1e-8);
        }
    }

    #[test]
    fn funk_hecke_flags_insufficient_order() {
        // order 2 cannot integrate U_11 exactly; the convergence check trips
        let err = funk_hecke_eigenvalues(12, 2).unwrap_err();
        assert!(matches!(err, FockError::AccuracyNotReached(_)));
    }

    #[test]
    fn degeneracies_are_squares() {
        assert_eq!(
            (1..=6).map(harmonic_degeneracy).collect::<Vec<_>>(),
            vec![1, 4, 9, 16, 25, 36]
        );
    }

    #[test]
    fn kernel_matrix_is_symmetric() {
        let g = build_s3_grid(4, 4, 5).unwrap();
        for reg in [
            Regularization::Puncture,
            Regularization::Mollify(0.3),
            Regularization::SubtractConstant,
        ] {
            let k = assemble_kernel_matrix(&g, reg);
            let asym = (&k - k.transpose()).iter().map(|x| x.abs()).fold(0.0, f64::max);
            assert_eq!(asym, 0.0);
        }
    }

    #[test]
    fn subtracted_kernel_reproduces_constant_eigenvalue_exactly() {
        let g = build_s3_grid(6, 6, 8).unwrap();
        let k = assemble_kernel_matrix(&g, Regularization::SubtractConstant);
        let sw = nalgebra::DVector::<f64>::from_iterator(
            g.len(),
            g.weights.iter().map(|w| w.sqrt()),
        );
        let kv = &k * &sw;
        let rayleigh = sw.dot(&kv) / sw.dot(&sw);
        assert!((rayleigh - V_S3).abs() < 1e-10 * V_S3);
    }

    #[test]
    fn nystrom_clusters_match_oracle_on_moderate_grid() {
        let g = build_s3_grid(10, 10, 12).unwrap();
        let spec = nystrom_spectrum(&g, 2, Regularization::SubtractConstant, 5e-3).unwrap();
        assert_eq!(spec.levels[0].degeneracy, 1);
        assert!((spec.levels[0].lambda - V_S3).abs() < 0.01 * V_S3);
        assert_eq!(spec.levels[1].degeneracy, 4);
        assert!((spec.levels[1].lambda - V_S3 / 2.0).abs() < 0.01 * V_S3 / 2.0);
    }

    #[test]
    fn puncture_bias_is_negative_and_shrinks_with_refinement() {
        let coarse = build_s3_grid(6, 6, 8).unwrap();
        let fine = build_s3_grid(10, 10, 12).unwrap();
        let lam = |g: &SphereGridS3| {
            let k = assemble_kernel_matrix(g, Regularization::Puncture);
            crate::linalg::symmetric_eigenvalues_desc(&k)[0]
        };
        let (lc, lf) = (lam(&coarse), lam(&fine));
        assert!(lc < V_S3 && lf < V_S3, "puncture biases the spectrum down");
        assert!((V_S3 - lf) < (V_S3 - lc), "bias shrinks as the grid refines");
    }

    #[test]
    fn mollify_bias_is_monotone_in_epsilon() {
        // large eps over-smooths (low), small eps leaves an under-resolved
        // diagonal spike (high); the top eigenvalue decreases monotonically
        // with eps and brackets the oracle along the way
        let g = build_s3_grid(8, 8, 10).unwrap();
        let top = |reg| {
            let k = assemble_kernel_matrix(&g, reg);
            crate::linalg::symmetric_eigenvalues_desc(&k)[0]
        };
        let t1 = top(Regularization::Mollify(0.1));
        let t3 = top(Regularization::Mollify(0.3));
        let t5 = top(Regularization::Mollify(0.5));
        assert!(t1 > t3 && t3 > t5);
        for t in [t1, t3, t5] {
            assert!((t - V_S3).abs() < 0.5 * V_S3, "top = {t}");
        }
        assert!(t1 > V_S3 && t5 < V_S3, "the family brackets the oracle");
    }

    #[test]
    fn nystrom_spectrum_rotation_invariant() {
        let g = build_s3_grid(5, 5, 6).unwrap();
        // a fixed orthogonal rotation: Givens in the (0,3) and (1,2) planes
        let mut q = RMat::identity(4, 4);
        let (c0, s0) = (0.8f64, 0.6f64);
        q[(0, 0)] = c0;
        q[(0, 3)] = -s0;
        q[(3, 0)] = s0;
        q[(3, 3)] = c0;
        let spec_a = nystrom_spectrum(&g, 2, Regularization::SubtractConstant, 3e-2).unwrap();
        let spec_b =
            nystrom_spectrum(&g.rotated(&q), 2, Regularization::SubtractConstant, 3e-2).unwrap();
        for (a, b) in spec_a.levels.iter().zip(&spec_b.levels) {
            assert!((a.lambda - b.lambda).abs() <= 1e-10 * a.lambda.abs());
            assert_eq!(a.degeneracy, b.degeneracy);
        }
    }

    #[test]
    fn clustering_ambiguity_is_reported() {
        // a spread threshold so large that the gap test cannot separate
        // level boundaries triggers the explicit error
        let g = build_s3_grid(5, 5, 6).unwrap();
        let res = nystrom_spectrum(&g, 2, Regularization::SubtractConstant, 0.4);
        assert!(matches!(res.unwrap_err(), FockError::ClusteringAmbiguous(_)));
    }

    #[test]
    fn hydrogen_levels_balmer_values() {
        let alpha = 7.2973525693e-3;
        let mc2 = 510_998.95; // eV
        let spec = hydrogen_levels(alpha, mc2, 4).unwrap();
        let e1 = spec.levels[0].energy.unwrap();
        assert!((e1 - (-13.605_693)).abs() < 1e-3);
        // E_1 / E_4 = 16
        let e4 = spec.levels[3].energy.unwrap();
        assert!((e1 / e4 - 16.0).abs() < 1e-12);
        // degeneracies and p0 scaling
        assert_eq!(spec.levels[2].degeneracy, 9);
        assert!((spec.levels[1].p0.unwrap() - alpha / 2.0).abs() < 1e-18);
    }

    #[test]
    fn hydrogen_ground_state_insensitive_to_alpha_route() {
        // the geometric alpha is within 6e-7 of the measured value, so the
        // ground-state energy moves by about twice that, well under 3e-5
        let measured = 7.2973525693e-3;
        let geometric = crate::constants::wyler_alpha().alpha;
        let mc2 = 510_998.95;
        let e_meas = hydrogen_levels(measured, mc2, 1).unwrap().levels[0]
            .energy
            .unwrap();
        let e_geom = hydrogen_levels(geometric, mc2, 1).unwrap().levels[0]
            .energy
            .unwrap();
        assert!(((e_geom - e_meas) / e_meas).abs() <= 3e-5);
    }

    #[test]
    fn hydrogen_levels_rejects_bad_inputs() {
        assert!(hydrogen_levels(0.0, 1.0, 3).is_err());
        assert!(hydrogen_levels(1.5, 1.0, 3).is_err());
        assert!(hydrogen_levels(0.01, -1.0, 3).is_err());
        assert!(hydrogen_levels(0.01, 1.0, 0).is_err());
    }

    #[test]
    fn fock_condition_residual_vanishes_at_quantized_momenta() {
        let alpha = 7.2973525693e-3;
        assert!(fock_condition_residual(V_S3, alpha, 1.0 / alpha) < 1e-14);
        assert!(fock_condition_residual(V_S3 / 2.0, alpha, 2.0 / alpha) < 1e-14);
        let half_off = fock_condition_residual(V_S3, alpha, 1.0 / (2.0 * alpha));
        assert!((half_off - 0.5).abs() < 1e-14);
    }
}
