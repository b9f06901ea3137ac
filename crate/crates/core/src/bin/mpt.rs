use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mpt_core::scenario::{self, RunReport, Scenario, ScenarioError, ScenarioKind};

#[derive(Parser)]
#[command(name = "mpt", version, about = "Run multi-proper-time model scenarios")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Scenario file (JSON). Built-in defaults when omitted.
    #[arg(long, global = true)]
    scenario: Option<PathBuf>,

    /// Output root directory.
    #[arg(long, global = true, env = "MPT_OUT_DIR", default_value = "mpt-out")]
    out: PathBuf,

    /// Overrides the scenario seed.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Overrides the main grid size or sample count.
    #[arg(long, global = true)]
    resolution: Option<usize>,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    Worldline,
    Wave,
    Slit,
    Pde,
    Metric,
    Causality,
    /// Run every built-in scenario
    VerifyAll,
}

fn print_report(name: &str, report: &RunReport) {
    for a in &report.assertions {
        println!("{} {name}/{}: {}", if a.pass { "PASS" } else { "FAIL" }, a.name, a.detail);
    }
    println!("{name}: {} in {:.3} s", if report.pass { "pass" } else { "FAIL" }, report.wall_time.as_secs_f64());
}

fn run_one(cli: &Cli, kind: ScenarioKind) -> Result<bool, ScenarioError> {
    let mut scn = match &cli.scenario {
        Some(path) => scenario::load_scenario_file(path)?,
        None => Scenario::with_defaults(kind),
    };
    if scn.kind != kind {
        return Err(ScenarioError::Validation {
            field: "kind".into(),
            constraint: format!("scenario is `{}` but subcommand is `{kind}`", scn.kind),
        });
    }
    if let Some(seed) = cli.seed {
        scn.seed = seed;
    }
    if let Some(n) = cli.resolution {
        scn.set_resolution(n)?;
    }
    let report = scenario::run(&scn, &cli.out)?;
    print_report(kind.name(), &report);
    println!("artifacts in {}", scn.output_dir(&cli.out).display());
    Ok(report.pass)
}

fn verify_all(cli: &Cli) -> Result<bool, ScenarioError> {
    if cli.scenario.is_some() || cli.resolution.is_some() {
        return Err(ScenarioError::Validation {
            field: "verify-all".into(),
            constraint: "runs the built-in suite; --scenario and --resolution do not apply".into(),
        });
    }
    let suite = scenario::verify_all(&cli.out, cli.seed.unwrap_or(0))?;
    for (entry, report) in suite.runs.iter().zip(&suite.reports) {
        print_report(&entry.name, report);
    }
    println!("summary in {}", cli.out.join("summary.json").display());
    Ok(suite.pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Worldline => run_one(&cli, ScenarioKind::Worldline),
        Command::Wave => run_one(&cli, ScenarioKind::Wave),
        Command::Slit => run_one(&cli, ScenarioKind::Slit),
        Command::Pde => run_one(&cli, ScenarioKind::Pde),
        Command::Metric => run_one(&cli, ScenarioKind::Metric),
        Command::Causality => run_one(&cli, ScenarioKind::Causality),
        Command::VerifyAll => verify_all(&cli),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
