//! The six-dimensional metric and finite-difference wave-equation residuals
//! for on-shell and off-shell plane waves.
//!
//! Run with `cargo run --example metric6d`.

use mpt_core::kinematics::ParticleState;
use mpt_core::metric6d::{box6_residual, build_metric, klein_gordon_residual, plane_wave_6d, MINKOWSKI};
use mpt_core::phase_loops::PlaneWave;
use mpt_core::PhysicalConstants;

fn main() -> mpt_core::Result<()> {
    let metric = build_metric(MINKOWSKI, |x| 1.0 + 0.1 * x[0].sin())?;
    let pt = [0.5, 0.0, 0.0, 0.0, 0.0, 0.0];
    println!("ĝ44 at x0 = 0.5: {:.6}, ĝ55 = {}", metric.g44(&pt), metric.g55());
    println!("ds² for a unit x4 step: {:.6}", metric.line_element(&pt, &[0.0, 0.0, 0.0, 0.0, 1.0, 0.0]));

    let k = PhysicalConstants::natural();
    let state = ParticleState::along_x(1.0, 0.6, k)?;
    let on = PlaneWave::from_state(&state, 0.0)?;
    let off = PlaneWave::off_shell(2.0 * on.energy(), on.momentum(), k, 0.0);
    println!("\nKG residual: on-shell {}, off-shell {}", klein_gordon_residual(&on, 1.0), klein_gordon_residual(&off, 1.0));

    let (psi_on, psi_off) = (plane_wave_6d(&on, 1.0), plane_wave_6d(&off, 1.0));
    let origin = [0.0; 6];
    println!("\n     h      on-shell □₆ψ   off-shell □₆ψ");
    for h in [0.2, 0.1, 0.05, 0.025, 1e-3] {
        println!("{h:8.3}  {:14.6e}  {:14.8}", box6_residual(&psi_on, &origin, h), box6_residual(&psi_off, &origin, h));
    }
    println!("expected off-shell limit: {}", -klein_gordon_residual(&off, 1.0));
    Ok(())
}
