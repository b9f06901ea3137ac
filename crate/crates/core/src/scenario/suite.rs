use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::output::{create_dir, write_json};
use super::params::{Parameters, SlitParams, WorldlineParams};
use super::{run, Assertion, RunReport, Scenario, ScenarioKind, ScenarioResult};
use crate::constants::PhysicalConstants;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteEntry {
    pub name: String,
    pub kind: ScenarioKind,
    pub pass: bool,
    pub assertions: usize,
    pub failures: Vec<Assertion>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub runs: Vec<SuiteEntry>,
    pub pass: bool,
    #[serde(skip)]
    pub reports: Vec<RunReport>,
}

fn named(mut scn: Scenario, name: &str, seed: u64) -> (String, Scenario) {
    scn.output.path = Some(PathBuf::from(name));
    scn.seed = seed;
    (name.to_string(), scn)
}

fn worldline(u: [f64; 3], constants: PhysicalConstants) -> Scenario {
    Scenario {
        constants,
        parameters: Parameters::Worldline(WorldlineParams {
            u: u.map(|x| x * constants.c()),
            ..WorldlineParams::default()
        }),
        ..Scenario::with_defaults(ScenarioKind::Worldline)
    }
}

fn slit(slit_x: f64, slit_sep: f64, screen_x: f64, lambda: f64) -> Scenario {
    Scenario {
        parameters: Parameters::Slit(SlitParams {
            slit_x,
            slit_sep,
            screen_x,
            lambda: Some(lambda),
            deltas: (0..8).map(|i| i as f64 * PI / 4.0).collect(),
            ..SlitParams::default()
        }),
        ..Scenario::with_defaults(ScenarioKind::Slit)
    }
}

/// The built-in scenarios run by [`verify_all`], with their directory names.
pub fn default_suite(seed: u64) -> Vec<(String, Scenario)> {
    let natural = PhysicalConstants::natural();
    let scaled = PhysicalConstants::new(0.5, 3.0).expect("valid constants");
    vec![
        named(worldline([0.6, 0.0, 0.0], natural), "worldline_x", seed),
        named(worldline([0.03, -0.04, 0.0], natural), "worldline_slow", seed),
        named(worldline([0.5, 0.5, 0.6], scaled), "worldline_fast_scaled", seed),
        named(Scenario::with_defaults(ScenarioKind::Wave), "wave", seed),
        named(slit(1.0, 1.0, 11.0, 0.1), "slit_near", seed),
        named(slit(0.0, 2.0, 40.0, 0.2), "slit_wide", seed),
        named(slit(2.0, 0.5, 6.0, 0.05), "slit_close", seed),
        named(Scenario::with_defaults(ScenarioKind::Pde), "pde", seed),
        named(Scenario::with_defaults(ScenarioKind::Metric), "metric", seed),
        named(Scenario::with_defaults(ScenarioKind::Causality), "causality", seed),
    ]
}

/// Run the built-in suite under `root` and write `summary.json`.
pub fn verify_all(root: &Path, seed: u64) -> ScenarioResult<SuiteReport> {
    create_dir(root)?;
    let mut runs = Vec::new();
    let mut reports = Vec::new();
    for (name, scn) in default_suite(seed) {
        let report = run(&scn, root)?;
        runs.push(SuiteEntry {
            name,
            kind: scn.kind,
            pass: report.pass,
            assertions: report.assertions.len(),
            failures: report.failures().cloned().collect(),
        });
        reports.push(report);
    }
    let suite = SuiteReport {
        seed,
        pass: runs.iter().all(|r| r.pass),
        runs,
        reports,
    };
    write_json(&root.join("summary.json"), &suite)?;
    Ok(suite)
}
