//! Leapfrog evolution of the string-type wave equation on the φ loop:
//! convergence, energy, exact transport at unit Courant number and the
//! constraints of an analytic null mode.
//!
//! Run with `cargo run --release --example string_wave`.

use std::f64::consts::TAU;

use mpt_core::convergence::{error_ratios, observed_order};
use mpt_core::scenario::{harmonic_null_mode, standing_wave_run, traveling_profile};
use mpt_core::string_dynamics::{
    analytic_mode_field, constraint_residuals, evolve_wave, lagrangian_density, relative_energy_drift, SheetField,
    NULL_POLARIZATION,
};
use mpt_core::PhysicalConstants;

fn main() -> mpt_core::Result<()> {
    let xd = [2.0, 1.0, 0.0, 0.0];
    let xp = [0.0, 0.0, 1.0, 0.0];
    println!("L(ẋ, x′) = {}", lagrangian_density(&xd, &xp, 1.0)?);

    println!("\nstanding wave cos τ cos φ, hτ = hφ/2");
    let mut errors = Vec::new();
    for n in [32, 64, 128, 256] {
        let (field, err) = standing_wave_run(n, 0.5, 1.0)?;
        println!("  n_phi = {n:4}  max error {err:.4e}  energy drift {:.2e}", relative_energy_drift(&field));
        errors.push(err);
    }
    for (i, r) in error_ratios(&errors).iter().enumerate() {
        println!("  ratio {r:.4}  order {:.4}", observed_order(errors[i], errors[i + 1], 2.0));
    }

    let n = 64;
    let h = TAU / n as f64;
    let field = evolve_wave(SheetField::from_fn(2, n, 0.0, h, traveling_profile)?, n)?;
    let last = field.n_tau() - 1;
    let exact = traveling_profile(field.tau(last), field.phi(5));
    println!("\nunit Courant, one loop: x(φ₅) = {:.15}  exact {:.15}", field.at(last, 5)[1], exact[1]);

    let k = PhysicalConstants::natural();
    for n in [32, 64, 128] {
        let h_tau = TAU / n as f64 / 2.0;
        let mode = analytic_mode_field(1.0, &k, NULL_POLARIZATION, 5, n, h_tau)?;
        let mixed = SheetField::from_fn(5, n, 0.0, h_tau, harmonic_null_mode)?;
        println!(
            "constraints n = {n:3}: cosine mode {:.1e}, mixed-harmonic mode {:.4e}",
            constraint_residuals(&mode).max(),
            constraint_residuals(&mixed).max()
        );
    }
    Ok(())
}
