//! Subcommand handlers: thin adapters from parsed arguments to the library
//! calls, producing JSON payloads (and CSV tables where they exist).

use crate::report::PhysicalConstants;
use crate::{
    ChiralityArg, Cli, CliError, CliffordCmd, Command, ConstCmd, FieldsArgs, FockCmd,
    FockSolveArgs, SpinorCmd, SpinorSampleArgs,
};
use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde_json::{json, Value};
use spinlab_core::clifford::{build_gamma, CliffordError, GammaRep, Signature};
use spinlab_core::constants::{
    cosmic_ratio, dirac_time_unit, torus_duality, wyler_alpha, wyler_deviation, ConstantsError,
};
use spinlab_core::fields::{
    em_tensor, massless_dirac_kernel, maxwell_residual, weyl_operator_kernel, FieldsError,
    MinkowskiVector,
};
use spinlab_core::fock::{
    attach_energies, build_s3_grid, funk_hecke_eigenvalues, harmonic_degeneracy, hydrogen_levels,
    nystrom_spectrum, FockError, Regularization, SpectrumResult, V_S3,
};
use spinlab_core::linalg::{CVec, C64};
use spinlab_core::spinor::{
    basis_chiral_spinor, is_pure_with, null_plane, purity_codimension, random_chiral_spinor,
    random_pure_spinor, vector_from_spinors, Chirality, Spinor, SpinorError,
};
use spinlab_core::tol;

pub struct Outcome {
    pub result: Value,
    pub warnings: Vec<String>,
    pub csv: Option<String>,
    pub failed_checks: usize,
}

impl Outcome {
    fn of(result: Value) -> Self {
        Outcome {
            result,
            warnings: Vec::new(),
            csv: None,
            failed_checks: 0,
        }
    }
}

impl From<CliffordError> for CliError {
    fn from(e: CliffordError) -> Self {
        match e {
            CliffordError::InvalidArgument(_) | CliffordError::UnsupportedSize(_) => {
                CliError::invalid(e.to_string())
            }
            _ => CliError::numerical(e.to_string()),
        }
    }
}

impl From<SpinorError> for CliError {
    fn from(e: SpinorError) -> Self {
        match e {
            SpinorError::InvalidArgument(_)
            | SpinorError::ChiralityRequired
            | SpinorError::SignatureMismatch(_) => CliError::invalid(e.to_string()),
            _ => CliError::numerical(e.to_string()),
        }
    }
}

impl From<FieldsError> for CliError {
    fn from(e: FieldsError) -> Self {
        match e {
            FieldsError::InvalidArgument(_) | FieldsError::SignatureMismatch(_) => {
                CliError::invalid(e.to_string())
            }
            FieldsError::NotOnCone(_) => CliError::numerical(e.to_string()),
        }
    }
}

impl From<FockError> for CliError {
    fn from(e: FockError) -> Self {
        match e {
            FockError::InvalidArgument(_) => CliError::invalid(e.to_string()),
            _ => CliError::numerical(e.to_string()),
        }
    }
}

impl From<ConstantsError> for CliError {
    fn from(e: ConstantsError) -> Self {
        CliError::invalid(e.to_string())
    }
}

fn c_json(z: &C64) -> Value {
    json!([z.re, z.im])
}

fn cvec_json(v: &CVec) -> Value {
    Value::Array(v.iter().map(c_json).collect())
}

fn parse_pair(s: &str, what: &str) -> Result<(usize, usize), CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(CliError::invalid(format!("{what}: expected two comma-separated integers")));
    }
    let a = parts[0].trim().parse().map_err(|_| CliError::invalid(format!("{what}: bad integer")))?;
    let b = parts[1].trim().parse().map_err(|_| CliError::invalid(format!("{what}: bad integer")))?;
    Ok((a, b))
}

fn parse_triple(s: &str, what: &str) -> Result<(usize, usize, usize), CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(CliError::invalid(format!("{what}: expected three comma-separated integers")));
    }
    let mut vals = [0usize; 3];
    for (slot, p) in vals.iter_mut().zip(&parts) {
        *slot = p.trim().parse().map_err(|_| CliError::invalid(format!("{what}: bad integer")))?;
    }
    Ok((vals[0], vals[1], vals[2]))
}

fn parse_momentum(s: &str) -> Result<MinkowskiVector, CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(CliError::invalid("--p: expected four comma-separated numbers"));
    }
    let mut vals = [0.0f64; 4];
    for (slot, p) in vals.iter_mut().zip(&parts) {
        *slot = p.trim().parse().map_err(|_| CliError::invalid("--p: bad number"))?;
    }
    Ok(MinkowskiVector::new(vals[0], vals[1], vals[2], vals[3]))
}

fn signature_for(n: usize, sig: &Option<String>) -> Result<Signature, CliError> {
    match sig {
        Some(s) => {
            let (p, q) = parse_pair(s, "--sig")?;
            Ok(Signature::new(p, q))
        }
        None => Ok(Signature::new(2 * n, 0)),
    }
}

fn chirality(arg: ChiralityArg) -> Chirality {
    match arg {
        ChiralityArg::Plus => Chirality::Plus,
        ChiralityArg::Minus => Chirality::Minus,
    }
}

pub fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    let mut rng = ChaCha12Rng::seed_from_u64(cli.seed);
    match &cli.command {
        Command::Clifford { cmd } => match cmd {
            CliffordCmd::Build { n, sig } => {
                let (p, q) = parse_pair(sig, "--sig")?;
                let rep = build_gamma(*n, Signature::new(p, q))?;
                Ok(Outcome::of(json!({
                    "representation": rep.to_json(),
                    "anticommutation_error": rep.anticommutation_error(),
                    "tolerance": tol::ALGEBRA_ABS,
                })))
            }
        },
        Command::Spinor { cmd } => match cmd {
            SpinorCmd::CheckPure(args) => {
                let rep = build_gamma(args.n, signature_for(args.n, &args.sig)?)?;
                let chi = chirality(args.chirality);
                let (psi, source) = if args.basis {
                    (basis_chiral_spinor(&rep, chi), "basis")
                } else if args.pure {
                    (random_pure_spinor(&rep, chi, &mut rng)?, "pure-orbit")
                } else {
                    (random_chiral_spinor(&rep, chi, &mut rng), "random-chiral")
                };
                let mut purity = is_pure_with(&rep, &psi, args.pure_accept, args.pure_reject)?;
                let mut codim = Value::Null;
                if let Some(samples) = args.codimension {
                    let rpt = purity_codimension(&rep, samples, &mut rng)?;
                    purity.codimension_estimate = Some(rpt.modal_rank);
                    codim = serde_json::to_value(&rpt).expect("serializable");
                }
                let mut result = json!({
                    "n": args.n,
                    "sample": source,
                    "chirality": chi,
                    "spinor": cvec_json(&psi.components),
                    "purity": serde_json::to_value(&purity).expect("serializable"),
                });
                if !codim.is_null() {
                    result["codimension"] = codim;
                }
                Ok(Outcome::of(result))
            }
            SpinorCmd::Bilinear(args) => {
                let rep = build_gamma(args.n, signature_for(args.n, &args.sig)?)?;
                let chi = chirality(args.chirality);
                let psi = sample_spinor(&rep, args, chi, &mut rng)?;
                let phi = Spinor::new(CVec::from_fn(rep.spinor_dim(), |_, _| {
                    gauss_c64(&mut rng)
                }));
                let z = vector_from_spinors(&rep, &phi, &psi)?;
                Ok(Outcome::of(json!({
                    "n": args.n,
                    "signature": [rep.signature.positive, rep.signature.negative],
                    "psi_pure_sample": args.pure,
                    "z": cvec_json(&z.components),
                    "quadratic_form": c_json(&z.quadratic_form()),
                    "magnitude_squared": z.magnitude_squared(),
                    "is_null": z.is_null(),
                    "null_tolerance": tol::NULL_REL,
                })))
            }
            SpinorCmd::NullPlane(args) => {
                let rep = build_gamma(args.n, signature_for(args.n, &args.sig)?)?;
                let chi = chirality(args.chirality);
                let psi = sample_spinor(&rep, args, chi, &mut rng)?;
                let plane = null_plane(&rep, &psi)?;
                let mut worst_pair = 0.0f64;
                for (i, u) in plane.iter().enumerate() {
                    for v in plane.iter().skip(i) {
                        worst_pair = worst_pair.max(u.bilinear_with(v).norm());
                    }
                }
                Ok(Outcome::of(json!({
                    "n": args.n,
                    "dimension": plane.len(),
                    "maximal": plane.len() == args.n,
                    "basis": plane.iter().map(|v| cvec_json(&v.components)).collect::<Vec<_>>(),
                    "worst_pairwise_product": worst_pair,
                    "null_tolerance": tol::NULL_REL,
                })))
            }
        },
        Command::Fields(args) => fields_command(args, &mut rng),
        Command::Fock { cmd } => match cmd {
            FockCmd::Solve(args) => fock_solve(cli, args),
            FockCmd::Eigenvalues { n_max, quad } => {
                let lambdas = funk_hecke_eigenvalues(*n_max, *quad)?;
                let levels: Vec<Value> = lambdas
                    .iter()
                    .enumerate()
                    .map(|(i, l)| {
                        json!({
                            "n": i + 1,
                            "lambda": l,
                            "degeneracy": harmonic_degeneracy(i + 1),
                        })
                    })
                    .collect();
                let mut csv = String::from("n,lambda,degeneracy\n");
                for (i, l) in lambdas.iter().enumerate() {
                    csv.push_str(&format!("{},{},{}\n", i + 1, l, harmonic_degeneracy(i + 1)));
                }
                let mut outcome = Outcome::of(json!({
                    "levels": levels,
                    "route": "funk-hecke",
                    "quad_order": quad,
                    "convergence_tolerance": tol::FUNK_HECKE_CONVERGENCE_REL,
                }));
                outcome.csv = Some(csv);
                Ok(outcome)
            }
        },
        Command::Constants { cmd } => constants_command(cli, cmd),
        Command::Selftest { quick } => {
            let constants = PhysicalConstants::load(cli);
            let (result, failed) = crate::selftest::run(*quick, constants, &mut rng);
            let mut outcome = Outcome::of(result);
            outcome.failed_checks = failed;
            Ok(outcome)
        }
    }
}

fn gauss_c64(rng: &mut ChaCha12Rng) -> C64 {
    use rand::Rng;
    let re: f64 = rng.sample(rand_distr::StandardNormal);
    let im: f64 = rng.sample(rand_distr::StandardNormal);
    Complex::new(re, im)
}

fn sample_spinor(
    rep: &GammaRep,
    args: &SpinorSampleArgs,
    chi: Chirality,
    rng: &mut ChaCha12Rng,
) -> Result<Spinor, CliError> {
    if args.pure {
        Ok(random_pure_spinor(rep, chi, rng)?)
    } else {
        Ok(random_chiral_spinor(rep, chi, rng))
    }
}

fn fields_command(args: &FieldsArgs, rng: &mut ChaCha12Rng) -> Result<Outcome, CliError> {
    let p = parse_momentum(&args.p)?;
    let rep = build_gamma(2, Signature::new(1, 3))?;
    let chi = chirality(args.chirality);
    let kernel = weyl_operator_kernel(&rep, &p, chi)?;
    let joint = massless_dirac_kernel(&rep, &p)?;
    let mut warnings = Vec::new();
    let (maxwell, psi_json) = if joint.len() == 2 {
        let psi = &joint[0] * gauss_c64(rng) + &joint[1] * gauss_c64(rng);
        let f_plus = em_tensor(&rep, &psi, Chirality::Plus)?;
        let f_minus = em_tensor(&rep, &psi, Chirality::Minus)?;
        let (r1, r2) = maxwell_residual(&p, &f_plus, &f_minus);
        let scale = f_plus.max_abs().max(f_minus.max_abs()) * p.euclidean_scale().sqrt();
        let max_r = spinlab_core::linalg::max_abs_vec(&r1)
            .max(spinlab_core::linalg::max_abs_vec(&r2));
        (
            json!({
                "f_plus": matrix_json(&f_plus.f),
                "f_minus": matrix_json(&f_minus.f),
                "r1": cvec_json(&r1),
                "r2": cvec_json(&r2),
                "max_abs_residual": max_r,
                "normalized_residual": max_r / scale.max(f64::MIN_POSITIVE),
                "tolerance": tol::MAXWELL_REL,
            }),
            cvec_json(&psi),
        )
    } else {
        warnings.push(
            "momentum is not null: no joint solutions, Maxwell residual pipeline skipped".into(),
        );
        (Value::Null, Value::Null)
    };
    let mut result = json!({
        "p": p.components(),
        "p_norm_squared": p.norm_squared(),
        "p_is_null": p.is_null(),
        "chirality": chi,
        "full_kernel_dimension": kernel.full.len(),
        "chiral_kernel_dimension": kernel.chiral.len(),
        "chiral_solutions": kernel.chiral.iter().map(cvec_json).collect::<Vec<_>>(),
        "joint_kernel_dimension": joint.len(),
    });
    if !maxwell.is_null() {
        result["maxwell"] = maxwell;
        result["solution_sample"] = psi_json;
    }
    Ok(Outcome {
        result,
        warnings,
        csv: None,
        failed_checks: 0,
    })
}

fn matrix_json(m: &spinlab_core::linalg::CMat) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| Value::Array((0..m.ncols()).map(|j| c_json(&m[(i, j)])).collect()))
            .collect(),
    )
}

fn resolve_alpha(choice: &str, constants: &PhysicalConstants) -> Result<(f64, String), CliError> {
    match choice {
        "measured" => Ok((constants.fine_structure_alpha, "measured".into())),
        "wyler" => Ok((wyler_alpha().alpha, "wyler".into())),
        value => {
            let v: f64 = value
                .parse()
                .map_err(|_| CliError::invalid("--alpha: expected measured, wyler or a number"))?;
            Ok((v, "explicit".into()))
        }
    }
}

fn parse_regularization(s: &str) -> Result<Regularization, CliError> {
    if s == "puncture" {
        Ok(Regularization::Puncture)
    } else if s == "subtract" {
        Ok(Regularization::SubtractConstant)
    } else if let Some(eps) = s.strip_prefix("mollify:") {
        let e: f64 = eps
            .parse()
            .map_err(|_| CliError::invalid("--reg mollify:EPS needs a numeric EPS"))?;
        if e <= 0.0 {
            return Err(CliError::invalid("--reg mollify:EPS needs EPS > 0"));
        }
        Ok(Regularization::Mollify(e))
    } else {
        Err(CliError::invalid(
            "--reg: expected puncture, mollify:EPS or subtract",
        ))
    }
}

fn spectrum_csv(spec: &SpectrumResult) -> String {
    let mut csv = String::from("n,lambda,degeneracy,p0,E\n");
    for level in &spec.levels {
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            level.principal_n,
            level.lambda,
            level.degeneracy,
            level.p0.map_or(String::new(), |v| v.to_string()),
            level.energy.map_or(String::new(), |v| v.to_string()),
        ));
    }
    csv
}

fn fock_solve(cli: &Cli, args: &FockSolveArgs) -> Result<Outcome, CliError> {
    let constants = PhysicalConstants::load(cli)?;
    let (alpha, alpha_source) = resolve_alpha(&args.alpha, &constants)?;
    let mc2 = args.mc2_ev.unwrap_or(constants.electron_mc2_ev);
    let mut warnings = Vec::new();
    let spec = match args.route.as_str() {
        "funk-hecke" => hydrogen_levels(alpha, mc2, args.levels)?,
        "nystrom" => {
            let (a, b, c) = parse_triple(&args.grid, "--grid")?;
            let grid = build_s3_grid(a, b, c)?;
            if grid.len() > 10_000 {
                warnings.push(format!(
                    "grid has {} nodes: the dense eigensolve is O(N^3) in time and O(N^2) \
                     in memory; 2000-6000 nodes already give sub-percent eigenvalues",
                    grid.len()
                ));
            }
            let reg = parse_regularization(&args.reg)?;
            if reg == Regularization::Puncture {
                warnings.push(
                    "puncture regularization carries an O(grid-spacing) downward bias; \
                     use subtract for oracle-grade eigenvalues"
                        .into(),
                );
            }
            let mut spec = nystrom_spectrum(&grid, args.levels, reg, args.cluster_spread)?;
            attach_energies(&mut spec, alpha, mc2);
            spec
        }
        other => {
            return Err(CliError::invalid(format!(
                "--route: expected nystrom or funk-hecke, got {other}"
            )))
        }
    };
    let csv = spectrum_csv(&spec);
    let mut result = serde_json::to_value(&spec).expect("serializable");
    result["alpha"] = json!(alpha);
    result["alpha_source"] = json!(alpha_source);
    result["mc2_ev"] = json!(mc2);
    result["oracle_lambda_1"] = json!(V_S3);
    Ok(Outcome {
        result,
        warnings,
        csv: Some(csv),
        failed_checks: 0,
    })
}

fn constants_command(cli: &Cli, cmd: &ConstCmd) -> Result<Outcome, CliError> {
    let constants = PhysicalConstants::load(cli)?;
    match cmd {
        ConstCmd::Wyler => {
            let w = wyler_alpha();
            let deviation = wyler_deviation(constants.fine_structure_alpha)?;
            let mut result = serde_json::to_value(&w).expect("serializable");
            result["measured_alpha"] = json!(constants.fine_structure_alpha);
            result["relative_deviation_from_measured"] = json!(deviation);
            Ok(Outcome {
                result,
                warnings: vec![format!(
                    "the literature prints 1/alpha = {}, while the same closed-form volumes \
                     evaluate to {:.5}; the printed value is reported, not corrected",
                    w.printed_inverse_alpha, w.inverse_alpha
                )],
                csv: None,
                failed_checks: 0,
            })
        }
        ConstCmd::Dirac { mass_ev } => {
            let rest_j = mass_ev * constants.elementary_charge_c;
            let dt = dirac_time_unit(rest_j, constants.planck_h_js)?;
            Ok(Outcome::of(json!({
                "rest_energy_ev": mass_ev,
                "rest_energy_j": rest_j,
                "planck_h_js": constants.planck_h_js,
                "delta_t_s": dt,
            })))
        }
        ConstCmd::Torus { n, t, h } => {
            let h_val = h.unwrap_or(constants.planck_h_js);
            let duality = torus_duality(*n, *t, h_val)?;
            let result = serde_json::to_value(&duality).expect("serializable");
            Ok(Outcome {
                result,
                warnings: vec![format!(
                    "implemented DFT convention gives delta_t * energy_radius = h/2 \
                     (ratio {}), not the asserted h; the factor is reported, not hidden",
                    duality.convention_ratio
                )],
                csv: None,
                failed_checks: 0,
            })
        }
        ConstCmd::Ratio {
            age,
            delta_t,
            mass_ev,
        } => {
            let dt = match (delta_t, mass_ev) {
                (Some(dt), None) => *dt,
                (None, Some(ev)) => {
                    dirac_time_unit(ev * constants.elementary_charge_c, constants.planck_h_js)?
                }
                (None, None) => dirac_time_unit(
                    constants.proton_mc2_ev * constants.elementary_charge_c,
                    constants.planck_h_js,
                )?,
                _ => unreachable!("clap conflicts prevent both"),
            };
            let ratio = cosmic_ratio(*age, dt)?;
            Ok(Outcome::of(json!({
                "age_s": age,
                "delta_t_s": dt,
                "ratio": ratio,
            })))
        }
    }
}
