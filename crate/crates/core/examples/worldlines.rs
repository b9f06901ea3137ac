//! Proper-time world lines of a particle at 0.6c and the de Broglie closure.
//!
//! Run with `cargo run --example worldlines`.

use mpt_core::kinematics::{
    de_broglie, gamma_sigma, gamma_u, loop_proper_time, momentum_energy, sigma_speed_scalar, worldline_position,
    worldline_slopes, ParticleState, ProperTimePoint, SpacetimePoint,
};
use mpt_core::PhysicalConstants;

fn main() -> mpt_core::Result<()> {
    let state = ParticleState::along_x(1.0, 0.6, PhysicalConstants::natural())?;
    let me = momentum_energy(&state)?;
    let db = de_broglie(&state)?;
    println!("γ_u = {}  v = {}  γ_σ = {}", gamma_u(&state)?, sigma_speed_scalar(&state)?, gamma_sigma(&state)?);
    println!("p = {}  E = {}  λ = {}  T = {}", me.momentum[0], me.energy, db.wavelength, db.period);

    let (slope_tau, slope_sigma) = worldline_slopes(&state)?;
    println!("slopes dx/d(ct): τ line {slope_tau}, σ line {slope_sigma}, product {}", slope_tau * slope_sigma);

    println!("\n   tau  sigma        t        x");
    for (tau, sigma) in [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (2.0, -1.0)] {
        let p = worldline_position(&state, &ProperTimePoint::new(tau, sigma, 0.0), &SpacetimePoint::origin())?;
        println!("{tau:6.2} {sigma:6.2} {:8.4} {:8.4}", p.t, p.x[0]);
    }

    // one turn of the phase loop along τ, back to t = 0 along σ
    let tau = loop_proper_time(&state);
    let sigma = -gamma_u(&state)? * tau / gamma_sigma(&state)?;
    let end = worldline_position(&state, &ProperTimePoint::new(tau, sigma, 0.0), &SpacetimePoint::origin())?;
    println!("\nafter one loop: t = {:.3e}, |Δx| = {}, λ = {}", end.t, end.x.norm(), db.wavelength);
    Ok(())
}
