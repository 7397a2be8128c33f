//! Command-line front end: every library module exposed as a subcommand
//! with machine-readable output, a fixed random seed, and a self-test
//! runner.
//!
//! Contract: identical invocations (including `--seed`) produce byte
//! identical output. Results go to stdout, diagnostics to stderr. Exit
//! codes: 0 success, 2 invalid arguments, 3 numerical failure or a failed
//! self-test check. Timing is opt-in (`--timing`) because it would break
//! byte determinism.

mod commands;
mod report;
mod selftest;

pub use report::{Envelope, PhysicalConstants};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID_ARGS: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "spinlab",
    version,
    about = "Pure-spinor geometry laboratory: Clifford algebras, null bilinears, momentum-space spectra"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Seed for every random sampling operation.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Emit JSON (default).
    #[arg(long, global = true, conflicts_with_all = ["csv", "text"])]
    pub json: bool,

    /// Emit CSV (fock spectra and eigenvalue tables only).
    #[arg(long, global = true, conflicts_with_all = ["json", "text"])]
    pub csv: bool,

    /// Emit human-readable text.
    #[arg(long, global = true, conflicts_with_all = ["json", "csv"])]
    pub text: bool,

    /// Write the report to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Physical-constants file overriding the bundled reference values.
    #[arg(long, global = true, env = "SPINLAB_CONSTANTS", value_name = "PATH")]
    pub constants: Option<PathBuf>,

    /// Include wall-clock timing in the report (breaks byte determinism).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Clifford algebra representations.
    Clifford {
        #[command(subcommand)]
        cmd: CliffordCmd,
    },
    /// Spinor bilinears, purity and null planes.
    Spinor {
        #[command(subcommand)]
        cmd: SpinorCmd,
    },
    /// Momentum-space field equations and Maxwell residuals.
    Fields(FieldsArgs),
    /// The hydrogen spectrum on the momentum 3-sphere.
    Fock {
        #[command(subcommand)]
        cmd: FockCmd,
    },
    /// Geometric constants.
    #[command(name = "const")]
    Constants {
        #[command(subcommand)]
        cmd: ConstCmd,
    },
    /// Run the built-in invariant suite.
    Selftest {
        /// Reduced sample counts and grid sizes.
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum CliffordCmd {
    /// Build the canonical representation of Cl(p,q).
    Build {
        /// Half the vector-space dimension (spinors have 2^n components).
        #[arg(long)]
        n: usize,
        /// Signature as P,Q with P + Q = 2n.
        #[arg(long, value_name = "P,Q")]
        sig: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum SpinorCmd {
    /// Purity test of a sampled spinor.
    CheckPure(CheckPureArgs),
    /// Bilinear null vector of a sampled spinor pair.
    Bilinear(SpinorSampleArgs),
    /// Totally null plane of a sampled spinor.
    NullPlane(SpinorSampleArgs),
}

#[derive(Args, Debug)]
pub struct CheckPureArgs {
    #[arg(long)]
    pub n: usize,
    /// Signature P,Q; defaults to the euclidean 2n,0.
    #[arg(long, value_name = "P,Q")]
    pub sig: Option<String>,
    /// Sample a random chiral spinor (default).
    #[arg(long, conflicts_with_all = ["basis", "pure"])]
    pub random: bool,
    /// Use the first chiral basis spinor.
    #[arg(long, conflicts_with_all = ["random", "pure"])]
    pub basis: bool,
    /// Sample from the pure-spinor orbit.
    #[arg(long, conflicts_with_all = ["random", "basis"])]
    pub pure: bool,
    #[arg(long, value_enum, default_value_t = ChiralityArg::Plus)]
    pub chirality: ChiralityArg,
    /// Also estimate the variety codimension from this many orbit samples.
    #[arg(long, value_name = "SAMPLES")]
    pub codimension: Option<usize>,
    /// Purity acceptance threshold override.
    #[arg(long, default_value_t = spinlab_core::tol::PURE_ACCEPT)]
    pub pure_accept: f64,
    /// Purity rejection threshold override.
    #[arg(long, default_value_t = spinlab_core::tol::PURE_REJECT)]
    pub pure_reject: f64,
}

#[derive(Args, Debug)]
pub struct SpinorSampleArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_name = "P,Q")]
    pub sig: Option<String>,
    /// Sample from the pure-spinor orbit instead of the chiral gaussian.
    #[arg(long)]
    pub pure: bool,
    #[arg(long, value_enum, default_value_t = ChiralityArg::Plus)]
    pub chirality: ChiralityArg,
}

#[derive(Args, Debug)]
pub struct FieldsArgs {
    /// Momentum components P0,P1,P2,P3 (metric +,-,-,-).
    #[arg(long, value_name = "P0,P1,P2,P3")]
    pub p: String,
    #[arg(long, value_enum, default_value_t = ChiralityArg::Plus)]
    pub chirality: ChiralityArg,
}

#[derive(clap::ValueEnum, Clone, Copy, Debug, PartialEq)]
pub enum ChiralityArg {
    Plus,
    Minus,
}

#[derive(Subcommand, Debug)]
pub enum FockCmd {
    /// Solve for the lowest eigenvalue clusters.
    Solve(FockSolveArgs),
    /// Funk-Hecke kernel eigenvalues.
    Eigenvalues {
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        /// Quadrature order for the zonal integrals.
        #[arg(long, default_value_t = 48)]
        quad: usize,
    },
}

#[derive(Args, Debug)]
pub struct FockSolveArgs {
    /// Number of eigenvalue levels.
    #[arg(long, default_value_t = 3)]
    pub levels: usize,
    /// Route: "nystrom" or "funk-hecke".
    #[arg(long, default_value = "nystrom")]
    pub route: String,
    /// Grid orders CHI,THETA,PHI for the Nystrom route.
    #[arg(long, value_name = "O1,O2,O3", default_value = "12,12,14")]
    pub grid: String,
    /// Diagonal treatment: puncture | mollify:EPS | subtract.
    #[arg(long, default_value = "subtract")]
    pub reg: String,
    /// Fine-structure constant: measured | wyler | a numeric value.
    #[arg(long, default_value = "measured")]
    pub alpha: String,
    /// Rest energy scale in eV (defaults to the electron value from the
    /// constants file).
    #[arg(long, value_name = "EV")]
    pub mc2_ev: Option<f64>,
    /// Relative spread for grouping eigenvalues into degenerate levels.
    /// Coarse grids split exact degeneracies by up to about a percent, so
    /// the default is looser than the asymptotic splitting.
    #[arg(long, default_value_t = 2e-2)]
    pub cluster_spread: f64,
}

#[derive(Subcommand, Debug)]
pub enum ConstCmd {
    /// Fine-structure constant from classical-domain volumes.
    Wyler,
    /// Elementary time unit h / (M c^2).
    Dirac {
        /// Rest energy in eV.
        #[arg(long, value_name = "EV")]
        mass_ev: f64,
    },
    /// Discrete time-energy lattice duality on the phase-space torus.
    Torus {
        /// Half the polygon vertex count.
        #[arg(long)]
        n: u64,
        /// Time-circle radius in seconds.
        #[arg(long)]
        t: f64,
        /// Action constant override (defaults to Planck h from the
        /// constants file).
        #[arg(long, value_name = "JS")]
        h: Option<f64>,
    },
    /// Ratio of an age to an elementary time unit.
    Ratio {
        /// Age in seconds.
        #[arg(long)]
        age: f64,
        /// Elementary time unit in seconds.
        #[arg(long, conflicts_with = "mass_ev")]
        delta_t: Option<f64>,
        /// Or derive the unit from a rest energy in eV.
        #[arg(long, value_name = "EV", conflicts_with = "delta_t")]
        mass_ev: Option<f64>,
    },
}

/// Output format resolved from the flags.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl Cli {
    pub fn format(&self) -> Format {
        if self.csv {
            Format::Csv
        } else if self.text {
            Format::Text
        } else {
            Format::Json
        }
    }
}

/// Run the CLI on the given argument vector, capturing output streams.
/// Returns the process exit code.
pub fn run(argv: &[String], stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // help and version requests are successes, usage errors are not
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INVALID_ARGS,
            };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = stdout.write_all(rendered.as_bytes());
            } else {
                let _ = stderr.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let started = std::time::Instant::now();
    match commands::dispatch(&cli) {
        Ok(outcome) => {
            let timing_ms = cli.timing.then(|| started.elapsed().as_secs_f64() * 1e3);
            let envelope = report::Envelope::new(argv, &cli, outcome.result, outcome.warnings, timing_ms);
            let bytes = match cli.format() {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&envelope).expect("serializable");
                    s.push('\n');
                    s.into_bytes()
                }
                Format::Csv => match outcome.csv {
                    Some(csv) => csv.into_bytes(),
                    None => {
                        let _ = writeln!(stderr, "error: this subcommand has no CSV form");
                        return EXIT_INVALID_ARGS;
                    }
                },
                Format::Text => report::render_text(&envelope).into_bytes(),
            };
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &bytes) {
                    let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                    return EXIT_NUMERICAL;
                }
            } else {
                let _ = stdout.write_all(&bytes);
            }
            if outcome.failed_checks > 0 {
                let _ = writeln!(
                    stderr,
                    "error: {} self-test check(s) failed",
                    outcome.failed_checks
                );
                return EXIT_NUMERICAL;
            }
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            e.code
        }
    }
}

/// A command failure with its process exit code.
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INVALID_ARGS,
            message: message.into(),
        }
    }

    pub fn numerical(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_NUMERICAL,
            message: message.into(),
        }
    }
}
