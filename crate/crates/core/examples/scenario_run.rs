//! Load a JSON scenario, run it and inspect the report, as the `mpt` binary does.
//!
//! Run with `cargo run --release --example scenario_run [scenario.json]`.

use std::path::PathBuf;

use mpt_core::scenario::{load_scenario, load_scenario_file, run};

const INLINE: &str = r#"{
  "kind": "slit",
  "parameters": { "slit_sep": 0.8, "screen_x": 21.0, "lambda": 0.05, "deltas": [0.0, 1.5707963267948966] },
  "output": { "path": "example-slit" }
}"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let scn = match std::env::args().nth(1) {
        Some(path) => load_scenario_file(&PathBuf::from(path))?,
        None => load_scenario(INLINE)?,
    };
    println!("resolved scenario:\n{}", serde_json::to_string_pretty(&scn.echo())?);

    let root = std::env::temp_dir().join("mpt-example");
    let report = run(&scn, &root)?;
    for a in &report.assertions {
        println!("{} {}: {}", if a.pass { "PASS" } else { "FAIL" }, a.name, a.detail);
    }
    println!("wrote {:?} to {}", report.outputs, scn.output_dir(&root).display());
    Ok(())
}
