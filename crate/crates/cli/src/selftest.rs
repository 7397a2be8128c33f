//! Built-in invariant suite: a fast, named subset of the acceptance checks
//! so a deployed binary can vouch for itself.

use crate::report::PhysicalConstants;
use crate::CliError;
use rand::Rng;
use rand_chacha::ChaCha12Rng;
use serde_json::{json, Value};
use spinlab_core::clifford::{build_gamma, Signature};
use spinlab_core::constants::{torus_duality, wyler_alpha};
use spinlab_core::fields::{em_tensor, massless_dirac_kernel, maxwell_residual, MinkowskiVector};
use spinlab_core::fock::{
    build_s3_grid, funk_hecke_eigenvalues, hydrogen_levels, nystrom_spectrum, Regularization,
    V_S3,
};
use spinlab_core::linalg::{max_abs_vec, CVec, C64};
use spinlab_core::spinor::{
    is_pure, null_plane, random_chiral_spinor, random_pure_spinor, vector_from_spinors,
    Chirality, Spinor,
};

struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn gauss_c64(rng: &mut ChaCha12Rng) -> C64 {
    let re: f64 = rng.sample(rand_distr::StandardNormal);
    let im: f64 = rng.sample(rand_distr::StandardNormal);
    C64::new(re, im)
}

pub fn run(
    quick: bool,
    constants: Result<PhysicalConstants, CliError>,
    rng: &mut ChaCha12Rng,
) -> (Value, usize) {
    let mut checks: Vec<Check> = Vec::new();

    // -- algebra ---------------------------------------------------------
    let n_top = if quick { 3 } else { 5 };
    let mut worst = 0.0f64;
    for n in 1..=n_top {
        for sig in [Signature::new(2 * n, 0), Signature::new(1, 2 * n - 1)] {
            match build_gamma(n, sig) {
                Ok(rep) => worst = worst.max(rep.anticommutation_error()),
                Err(e) => {
                    worst = f64::INFINITY;
                    checks.push(Check {
                        name: "anticommutation",
                        pass: false,
                        detail: format!("build failed: {e}"),
                    });
                }
            }
        }
    }
    if worst.is_finite() {
        checks.push(Check {
            name: "anticommutation",
            pass: worst <= 1e-12,
            detail: format!("n <= {n_top}, both signatures, max error {worst:.2e}"),
        });
    }

    // -- proposition 1 forward -------------------------------------------
    let (pure_n_top, n_samples) = if quick { (3, 10) } else { (5, 20) };
    let mut worst_rel = 0.0f64;
    for n in 1..=pure_n_top {
        let rep = build_gamma(n, Signature::new(2 * n, 0)).unwrap();
        for _ in 0..n_samples {
            let psi = if n <= 3 {
                random_chiral_spinor(&rep, Chirality::Plus, rng)
            } else {
                match random_pure_spinor(&rep, Chirality::Plus, rng) {
                    Ok(s) => s,
                    Err(e) => {
                        checks.push(Check {
                            name: "proposition1-forward",
                            pass: false,
                            detail: format!("orbit sampling failed: {e}"),
                        });
                        continue;
                    }
                }
            };
            for _ in 0..n_samples {
                let phi = Spinor::new(CVec::from_fn(rep.spinor_dim(), |_, _| gauss_c64(rng)));
                let z = vector_from_spinors(&rep, &phi, &psi).unwrap();
                let rel = z.quadratic_form().norm() / z.magnitude_squared().max(f64::MIN_POSITIVE);
                worst_rel = worst_rel.max(rel);
            }
        }
    }
    checks.push(Check {
        name: "proposition1-forward",
        pass: worst_rel <= 1e-10,
        detail: format!("n <= {pure_n_top}, worst |z.z|/|z|^2 = {worst_rel:.2e}"),
    });

    // -- purity separation -------------------------------------------------
    let rep4 = build_gamma(4, Signature::new(8, 0)).unwrap();
    let samples = if quick { 5 } else { 20 };
    let mut max_pure: f64 = 0.0;
    let mut min_nonpure = f64::INFINITY;
    for _ in 0..samples {
        if let Ok(p) = random_pure_spinor(&rep4, Chirality::Plus, rng) {
            max_pure = max_pure.max(is_pure(&rep4, &p).unwrap().residual);
        }
        let q = random_chiral_spinor(&rep4, Chirality::Plus, rng);
        min_nonpure = min_nonpure.min(is_pure(&rep4, &q).unwrap().residual);
    }
    let separation = min_nonpure / max_pure.max(f64::MIN_POSITIVE);
    checks.push(Check {
        name: "purity-separation",
        pass: separation >= 1e4,
        detail: format!("pure <= {max_pure:.2e}, non-pure >= {min_nonpure:.2e}"),
    });

    // -- null plane dimension ----------------------------------------------
    let mut plane_ok = true;
    let mut plane_detail = String::new();
    for n in 2..=(if quick { 3 } else { 4 }) {
        let rep = build_gamma(n, Signature::new(2 * n, 0)).unwrap();
        let psi = if n <= 3 {
            random_chiral_spinor(&rep, Chirality::Plus, rng)
        } else {
            random_pure_spinor(&rep, Chirality::Plus, rng).unwrap()
        };
        let dim = null_plane(&rep, &psi).unwrap().len();
        plane_ok &= dim == n;
        plane_detail.push_str(&format!("n={n}: {dim}; "));
    }
    checks.push(Check {
        name: "null-plane-dimension",
        pass: plane_ok,
        detail: plane_detail,
    });

    // -- maxwell residual ---------------------------------------------------
    let rep_mink = build_gamma(2, Signature::new(1, 3)).unwrap();
    let momenta = if quick { 5 } else { 20 };
    let mut worst_maxwell = 0.0f64;
    for _ in 0..momenta {
        let v: [f64; 3] = [
            rng.sample(rand_distr::StandardNormal),
            rng.sample(rand_distr::StandardNormal),
            rng.sample(rand_distr::StandardNormal),
        ];
        let e = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        let p = MinkowskiVector::new(e, v[0], v[1], v[2]);
        let kernel = massless_dirac_kernel(&rep_mink, &p).unwrap();
        let psi = &kernel[0] * gauss_c64(rng) + &kernel[1] * gauss_c64(rng);
        let f_plus = em_tensor(&rep_mink, &psi, Chirality::Plus).unwrap();
        let f_minus = em_tensor(&rep_mink, &psi, Chirality::Minus).unwrap();
        let (r1, r2) = maxwell_residual(&p, &f_plus, &f_minus);
        let scale = f_plus.max_abs().max(f_minus.max_abs()) * p.euclidean_scale().sqrt();
        worst_maxwell = worst_maxwell
            .max(max_abs_vec(&r1).max(max_abs_vec(&r2)) / scale.max(f64::MIN_POSITIVE));
    }
    checks.push(Check {
        name: "maxwell-residual",
        pass: worst_maxwell <= 1e-12,
        detail: format!("worst normalized residual {worst_maxwell:.2e} over {momenta} momenta"),
    });

    // -- Funk-Hecke oracle ---------------------------------------------------
    match funk_hecke_eigenvalues(6, 48) {
        Ok(lambdas) => {
            let worst = lambdas
                .iter()
                .enumerate()
                .map(|(i, l)| (l - V_S3 / (i as f64 + 1.0)).abs() / (V_S3 / (i as f64 + 1.0)))
                .fold(0.0f64, f64::max);
            checks.push(Check {
                name: "fock-funk-hecke",
                pass: worst <= 1e-8,
                detail: format!("worst relative error {worst:.2e} for n <= 6"),
            });
        }
        Err(e) => checks.push(Check {
            name: "fock-funk-hecke",
            pass: false,
            detail: e.to_string(),
        }),
    }

    // -- Nystrom agreement ----------------------------------------------------
    let (orders, spread, lam_tol) = if quick {
        ((6, 6, 8), 2e-2, 0.05)
    } else {
        ((10, 10, 12), 5e-3, 0.01)
    };
    let nystrom_check = (|| -> Result<Check, String> {
        let grid = build_s3_grid(orders.0, orders.1, orders.2).map_err(|e| e.to_string())?;
        let spec = nystrom_spectrum(&grid, 2, Regularization::SubtractConstant, spread)
            .map_err(|e| e.to_string())?;
        let mut worst = 0.0f64;
        for (k, level) in spec.levels.iter().enumerate() {
            let target = V_S3 / (k + 1) as f64;
            worst = worst.max((level.lambda - target).abs() / target);
        }
        let degs: Vec<usize> = spec.levels.iter().map(|l| l.degeneracy).collect();
        Ok(Check {
            name: "fock-agreement",
            pass: worst <= lam_tol && degs == vec![1, 4],
            detail: format!(
                "grid {:?}: worst eigenvalue error {worst:.2e} (tol {lam_tol}), degeneracies {degs:?}",
                orders
            ),
        })
    })();
    checks.push(nystrom_check.unwrap_or_else(|e| Check {
        name: "fock-agreement",
        pass: false,
        detail: e,
    }));

    // -- Wyler constant ----------------------------------------------------
    let w = wyler_alpha();
    checks.push(Check {
        name: "wyler-alpha",
        pass: (w.inverse_alpha - 137.036).abs() <= 0.001 && w.printed_discrepancy > 0.01,
        detail: format!(
            "1/alpha = {:.5}, printed {} flagged",
            w.inverse_alpha, w.printed_inverse_alpha
        ),
    });

    // -- torus duality -------------------------------------------------------
    let duality = torus_duality(16, 1.0, 1.0).unwrap();
    let lattice_exact =
        (duality.lattice.delta_t * 16.0 - std::f64::consts::PI).abs() < 1e-12;
    checks.push(Check {
        name: "torus-duality",
        pass: lattice_exact && (duality.convention_ratio - 0.5).abs() < 1e-12,
        detail: format!("delta_t * N = pi T, convention ratio {}", duality.convention_ratio),
    });

    // -- constants-dependent checks -----------------------------------------
    match constants {
        Ok(c) => {
            checks.push(Check {
                name: "constants-file",
                pass: true,
                detail: "validated".into(),
            });
            let spec = hydrogen_levels(c.fine_structure_alpha, c.electron_mc2_ev, 2).unwrap();
            let e1 = spec.levels[0].energy.unwrap();
            checks.push(Check {
                name: "balmer-levels",
                pass: (e1 + 13.6057).abs() <= 0.001,
                detail: format!("E_1 = {e1:.5} eV"),
            });
            let dt = c.planck_h_js / (c.proton_mc2_ev * c.elementary_charge_c);
            checks.push(Check {
                name: "dirac-unit",
                pass: (dt - 4.4e-24).abs() / 4.4e-24 <= 0.01,
                detail: format!("proton delta_t = {dt:.3e} s"),
            });
        }
        Err(e) => {
            checks.push(Check {
                name: "constants-file",
                pass: false,
                detail: e.message,
            });
            for name in ["balmer-levels", "dirac-unit"] {
                checks.push(Check {
                    name,
                    pass: false,
                    detail: "skipped: constants file invalid".into(),
                });
            }
        }
    }

    let failed = checks.iter().filter(|c| !c.pass).count();
    let result = json!({
        "mode": if quick { "quick" } else { "full" },
        "checks": checks
            .iter()
            .map(|c| json!({"name": c.name, "pass": c.pass, "detail": c.detail}))
            .collect::<Vec<_>>(),
        "passed": checks.len() - failed,
        "failed": failed,
    });
    (result, failed)
}
