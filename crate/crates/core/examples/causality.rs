//! Happens-before verdicts on the (τ, σ) plane, a world-line switch after a
//! momentum kick, and the JSON-lines event log.
//!
//! Run with `cargo run --example causality`.

use mpt_core::causality::{collapse_worldline, event_log_jsonl, precedes, MptEvent};
use mpt_core::kinematics::{ParticleState, Vec3};
use mpt_core::PhysicalConstants;

fn main() -> mpt_core::Result<()> {
    let k = PhysicalConstants::natural();
    let state = ParticleState::along_x(1.0, 0.6, k)?;
    let events = vec![
        MptEvent::new("emit", &state, 0.0, 0.0)?,
        MptEvent::new("tau-step", &state, 1.0, 0.0)?,
        MptEvent::new("sigma-step", &state, 0.0, 1.0)?,
        MptEvent::new("both", &state, 1.0, 1.0)?,
        MptEvent::new("mixed", &state, 2.0, -1.0)?,
    ];
    for a in &events {
        for b in &events {
            if a.label() < b.label() {
                println!("{:>10} vs {:<10} {:?}", a.label(), b.label(), precedes(a, b)?);
            }
        }
    }
    print!("\n{}", event_log_jsonl(&events)?);

    let rest = ParticleState::along_x(1.0, 0.0, k)?;
    let kicked = collapse_worldline(&rest, Vec3::new(0.75, 0.0, 0.0))?;
    println!("\nrest + kick p = 0.75 → u = {:.6}", kicked.velocity()[0]);
    Ok(())
}
