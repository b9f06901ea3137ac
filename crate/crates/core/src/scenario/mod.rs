//! JSON scenarios, runs and CSV/JSON artifacts.
//!
//! A scenario file names a `kind`, optional `constants` overrides, a
//! kind-specific `parameters` object, an `output` block and a `seed`. Unknown
//! keys are rejected and every physical parameter is checked against the
//! owning module before anything runs.

mod output;
mod params;
mod run;
mod suite;

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;
use thiserror::Error;

use crate::constants::PhysicalConstants;

pub use output::{format_sig12, write_csv};
pub use params::{
    CausalityParams, MetricParams, Parameters, PdeParams, SlitParams, WaveParams, WorldlineParams,
};
pub use run::{harmonic_null_mode, run, standing_wave_run, traveling_profile, Assertion, RunReport, RATIO_BAND};
pub use suite::{default_suite, verify_all, SuiteReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScenarioKind {
    Worldline,
    Wave,
    Slit,
    Pde,
    Metric,
    Causality,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 6] = [
        ScenarioKind::Worldline,
        ScenarioKind::Wave,
        ScenarioKind::Slit,
        ScenarioKind::Pde,
        ScenarioKind::Metric,
        ScenarioKind::Causality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::Worldline => "worldline",
            ScenarioKind::Wave => "wave",
            ScenarioKind::Slit => "slit",
            ScenarioKind::Pde => "pde",
            ScenarioKind::Metric => "metric",
            ScenarioKind::Causality => "causality",
        }
    }
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("invalid `{field}`: {constraint}")]
    Validation { field: String, constraint: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{context}: {source}")]
    Numerical {
        context: String,
        #[source]
        source: crate::Error,
    },
}

impl ScenarioError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            ScenarioError::Numerical { .. } => 1,
            _ => 2,
        }
    }

    pub(crate) fn validation(field: impl Into<String>, constraint: impl Into<String>) -> Self {
        ScenarioError::Validation {
            field: field.into(),
            constraint: constraint.into(),
        }
    }

    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        ScenarioError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub(crate) fn numerical(context: impl Into<String>, source: crate::Error) -> Self {
        ScenarioError::Numerical {
            context: context.into(),
            source,
        }
    }
}

pub type ScenarioResult<T> = std::result::Result<T, ScenarioError>;

/// Unit overrides; missing values fall back to natural units.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantsConfig {
    pub hbar: Option<f64>,
    pub c: Option<f64>,
}

impl ConstantsConfig {
    pub fn resolve(&self) -> ScenarioResult<PhysicalConstants> {
        let hbar = self.hbar.unwrap_or(1.0);
        let c = self.c.unwrap_or(1.0);
        PhysicalConstants::new(hbar, c).map_err(|e| {
            let field = if !(hbar.is_finite() && hbar > 0.0) { "constants.hbar" } else { "constants.c" };
            ScenarioError::validation(field, e.to_string())
        })
    }
}

/// Where artifacts go, relative to the output root.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    /// Subdirectory; defaults to the scenario kind.
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub format: OutputFormat,
}

/// Gridded data goes to CSV and the run report to JSON.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    #[default]
    CsvJson,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scenario {
    pub kind: ScenarioKind,
    pub constants: PhysicalConstants,
    pub parameters: Parameters,
    pub output: OutputConfig,
    pub seed: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario<'a> {
    kind: ScenarioKind,
    #[serde(default)]
    constants: ConstantsConfig,
    #[serde(borrow, default)]
    parameters: Option<&'a RawValue>,
    #[serde(default)]
    output: OutputConfig,
    #[serde(default)]
    seed: u64,
}

impl Scenario {
    /// Built-in defaults for `kind` in natural units.
    pub fn with_defaults(kind: ScenarioKind) -> Self {
        Self {
            kind,
            constants: PhysicalConstants::natural(),
            parameters: Parameters::defaults(kind),
            output: OutputConfig::default(),
            seed: 0,
        }
    }

    /// Output directory under `root`.
    pub fn output_dir(&self, root: &Path) -> PathBuf {
        match &self.output.path {
            Some(p) => root.join(p),
            None => root.join(self.kind.name()),
        }
    }

    /// Override the primary resolution knob of the kind.
    pub fn set_resolution(&mut self, n: usize) -> ScenarioResult<()> {
        self.parameters.set_resolution(n);
        self.parameters.validate(&self.constants)
    }

    /// The fully resolved scenario as JSON, defaults included.
    pub fn echo(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("scenario serializes")
    }
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(offset, |nl| offset - nl - 1) + 1;
    (line, column)
}

fn parse_error(e: &serde_json::Error) -> ScenarioError {
    ScenarioError::Parse {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    }
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

/// Parse and validate a scenario document.
pub fn load_scenario(text: &str) -> ScenarioResult<Scenario> {
    let raw: RawScenario<'_> = serde_json::from_str(text).map_err(|e| parse_error(&e))?;
    let constants = raw.constants.resolve()?;
    let parameters = match raw.parameters {
        None => Parameters::defaults(raw.kind),
        Some(rv) => {
            let snippet = rv.get();
            Parameters::parse(raw.kind, snippet).map_err(|e| {
                // report positions in the full document
                let base = snippet.as_ptr() as usize - text.as_ptr() as usize;
                let (bl, bc) = line_col(text, base);
                let (line, column) = if e.line() <= 1 {
                    (bl, bc + e.column().saturating_sub(1))
                } else {
                    (bl + e.line() - 1, e.column())
                };
                ScenarioError::Parse {
                    line,
                    column,
                    message: format!("parameters: {}", strip_position(&e.to_string())),
                }
            })?
        }
    };
    parameters.validate(&constants)?;
    if let Some(p) = &raw.output.path {
        if p.is_absolute() || p.components().any(|c| matches!(c, std::path::Component::ParentDir)) {
            return Err(ScenarioError::validation(
                "output.path",
                "must be a relative path inside the output root",
            ));
        }
    }
    Ok(Scenario {
        kind: raw.kind,
        constants,
        parameters,
        output: raw.output,
        seed: raw.seed,
    })
}

pub fn load_scenario_file(path: &Path) -> ScenarioResult<Scenario> {
    let text = std::fs::read_to_string(path).map_err(|e| ScenarioError::io(path, e))?;
    load_scenario(&text)
}
