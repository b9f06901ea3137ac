//! Allowed screen points against intensity maxima for a double slit, with
//! the slit-2 loop phase δ swept over a full turn.
//!
//! Run with `cargo run --release --example double_slit`.

use std::f64::consts::PI;

use mpt_core::grid::UniformGrid;
use mpt_core::interference::{allowed_points, intensity_at, verify_consistency, SlitScenario};

fn main() -> mpt_core::Result<()> {
    let lambda = 0.1;
    let grid = UniformGrid::with_max_step(-5.0, 5.0, lambda / 50.0)?;
    let base = SlitScenario::new(1.0, 1.0, 11.0, 0.0, lambda)?;
    println!("far-field fringe spacing ≈ {:.4}", base.far_field_spacing());

    println!("\n  δ/π  points  max dev/step  I(0)");
    for i in 0..8 {
        let scn = base.with_delta(i as f64 * PI / 4.0);
        let report = verify_consistency(&scn, None, &grid)?;
        println!(
            "{:5.2}  {:6}  {:12.3}  {:.4}",
            i as f64 / 4.0,
            report.matches.len(),
            report.max_deviation / grid.step(),
            intensity_at(&scn, 0.0)
        );
        assert!(report.pass);
    }

    let scn = base.with_delta(PI / 2.0);
    println!("\nδ = π/2, allowed points near the axis:");
    for p in allowed_points(&scn, Some(-2..=2), -4.0, 4.0)?.points {
        println!("  n = {:2}  y = {:9.6}  I = {:.12}", p.n, p.screen_y, intensity_at(&scn, p.screen_y));
    }
    Ok(())
}
