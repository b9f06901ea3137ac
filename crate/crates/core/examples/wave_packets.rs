//! Gaussian packets built from plane-wave loops, their detection density and
//! the uncertainty product for a range of widths.
//!
//! Run with `cargo run --release --example wave_packets`.

use mpt_core::kinematics::{ParticleState, SpacetimePoint};
use mpt_core::phase_loops::{detection_probability, uncertainty_product, x4_of, x5_of, GaussianPacket, PlaneWave};
use mpt_core::PhysicalConstants;

fn main() -> mpt_core::Result<()> {
    let k = PhysicalConstants::natural();
    let state = ParticleState::along_x(1.0, 0.6, k)?;
    let wave = PlaneWave::from_state(&state, 0.0)?;
    let pt = SpacetimePoint::on_axis(0.7, 0.2);
    let (x4, x5) = (x4_of(&wave, &pt), x5_of(&wave, &pt));
    println!("x4 = {:.6}  x5 = {:.6}  x4·x5 = {:.3}", x4.value(), x5.value(), x4.value() * x5.value());

    println!("\n  Δp        Δx        Δx·Δp");
    for spread in [0.125, 0.25, 0.5, 1.0, 2.0, 4.0] {
        let gp = GaussianPacket::new(1.0, 0.5, spread, k);
        let domain = gp.domain(2001)?;
        let packet = gp.build()?.normalized(&domain)?;
        let u = uncertainty_product(&packet, &domain)?;
        println!(
            "{spread:6.3}  {:8.5}  {:.10}",
            u.dx.value().unwrap_or(f64::INFINITY),
            u.product.unwrap_or(f64::INFINITY)
        );
    }

    let gp = GaussianPacket::new(1.0, 0.5, 1.0, k);
    let domain = gp.domain(401)?;
    let packet = gp.build()?.normalized(&domain)?;
    println!("\ndensity of the Δp = 1 packet at t = 0:");
    for x in [-1.0, -0.5, 0.0, 0.5, 1.0] {
        let p = detection_probability(&packet, &domain.point(x))?;
        println!("  x = {x:5.2}  P = {p:.6}  {}", "#".repeat((p * 60.0) as usize));
    }
    Ok(())
}
