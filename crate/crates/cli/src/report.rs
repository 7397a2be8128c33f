//! Report envelope, physical-constants file handling and text rendering.

use crate::{Cli, CliError, Format};
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Reference physical constants. Always loaded from data, never compiled
/// into formulas: the bundled file is the default and `--constants` (or the
/// `SPINLAB_CONSTANTS` environment variable) overrides it.
#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct PhysicalConstants {
    pub planck_h_js: f64,
    pub elementary_charge_c: f64,
    pub electron_mc2_ev: f64,
    pub proton_mc2_ev: f64,
    pub fine_structure_alpha: f64,
    pub universe_age_s: f64,
}

impl PhysicalConstants {
    /// The bundled reference values (shipped in-repo at crates/cli/data/).
    pub const BUNDLED: &'static str = include_str!("../data/constants.json");

    pub fn load(cli: &Cli) -> Result<Self, CliError> {
        let text = match &cli.constants {
            Some(path) => std::fs::read_to_string(path).map_err(|e| {
                CliError::numerical(format!("constants file {}: {e}", path.display()))
            })?,
            None => Self::BUNDLED.to_string(),
        };
        let parsed: PhysicalConstants = serde_json::from_str(&text)
            .map_err(|e| CliError::numerical(format!("constants file invalid: {e}")))?;
        parsed.validate().map_err(CliError::numerical)?;
        Ok(parsed)
    }

    pub fn validate(&self) -> Result<(), String> {
        let fields = [
            ("planck_h_js", self.planck_h_js),
            ("elementary_charge_c", self.elementary_charge_c),
            ("electron_mc2_ev", self.electron_mc2_ev),
            ("proton_mc2_ev", self.proton_mc2_ev),
            ("fine_structure_alpha", self.fine_structure_alpha),
            ("universe_age_s", self.universe_age_s),
        ];
        for (name, v) in fields {
            if !v.is_finite() || v <= 0.0 {
                return Err(format!("constants file: {name} = {v} is not a positive finite number"));
            }
        }
        if self.fine_structure_alpha >= 1.0 {
            return Err("constants file: fine_structure_alpha must be below 1".into());
        }
        Ok(())
    }
}

/// Envelope wrapping every report: version, configuration echo, warnings
/// and the payload. Timing is optional so that default output stays byte
/// deterministic.
#[derive(Debug, Serialize)]
pub struct Envelope {
    pub version: &'static str,
    pub config: ConfigEcho,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct ConfigEcho {
    pub argv: Vec<String>,
    pub seed: u64,
    pub format: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constants_path: Option<String>,
}

impl Envelope {
    pub fn new(
        argv: &[String],
        cli: &Cli,
        result: Value,
        warnings: Vec<String>,
        timing_ms: Option<f64>,
    ) -> Self {
        Envelope {
            version: env!("CARGO_PKG_VERSION"),
            config: ConfigEcho {
                argv: argv.iter().skip(1).cloned().collect(),
                seed: cli.seed,
                format: match cli.format() {
                    Format::Json => "json".into(),
                    Format::Csv => "csv".into(),
                    Format::Text => "text".into(),
                },
                constants_path: cli
                    .constants
                    .as_ref()
                    .map(|p| p.display().to_string()),
            },
            warnings,
            result,
            timing_ms,
        }
    }
}

/// Flat `key = value` text rendering of the envelope payload.
pub fn render_text(envelope: &Envelope) -> String {
    let mut out = String::new();
    out.push_str(&format!("spinlab {}\n", envelope.version));
    for w in &envelope.warnings {
        out.push_str(&format!("warning: {w}\n"));
    }
    render_value("result", &envelope.result, &mut out);
    if let Some(t) = envelope.timing_ms {
        out.push_str(&format!("timing_ms = {t}\n"));
    }
    out
}

fn render_value(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                render_value(&format!("{prefix}.{k}"), val, out);
            }
        }
        Value::Array(items) => {
            if items.iter().all(|i| !i.is_object() && !i.is_array()) && items.len() <= 16 {
                let inline: Vec<String> = items.iter().map(render_scalar).collect();
                out.push_str(&format!("{prefix} = [{}]\n", inline.join(", ")));
            } else {
                for (i, item) in items.iter().enumerate() {
                    render_value(&format!("{prefix}[{i}]"), item, out);
                }
            }
        }
        scalar => out.push_str(&format!("{prefix} = {}\n", render_scalar(scalar))),
    }
}

fn render_scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
