//! Library results checked against independent closed forms.

use std::f64::consts::{PI, TAU};

use approx::assert_relative_eq;
use mpt_core::interference::{allowed_points, intensity_at, path_difference, SlitScenario};
use mpt_core::kinematics::{de_broglie, momentum_energy, ParticleState, Vec3};
use mpt_core::metric6d::{box6_residual, plane_wave_6d, BOX6_SIGNATURE};
use mpt_core::phase_loops::{uncertainty_product, GaussianPacket, PlaneWave};
use mpt_core::scenario::{harmonic_null_mode, standing_wave_run};
use mpt_core::string_dynamics::{constraint_residuals, SheetField};
use mpt_core::PhysicalConstants;
use num_complex::Complex64;

#[test]
fn de_broglie_at_six_tenths_c() {
    let s = ParticleState::along_x(1.0, 0.6, PhysicalConstants::natural()).unwrap();
    let db = de_broglie(&s).unwrap();
    // γ = 5/4, p = 3/4, E = 5/4
    assert_relative_eq!(db.wavelength, TAU / 0.75, max_relative = 1e-15);
    assert_relative_eq!(db.period, TAU / 1.25, max_relative = 1e-15);
    assert_relative_eq!(db.wavelength, 8.377580409572781, max_relative = 1e-15);
    assert_relative_eq!(db.period, 5.026548245743669, max_relative = 1e-15);
}

#[test]
fn si_electron_wavelength() {
    let k = PhysicalConstants::si();
    let m_e = 9.1093837015e-31;
    let s = ParticleState::along_x(m_e, 1e6, k).unwrap();
    let beta2: f64 = (1e6 / 299_792_458.0f64).powi(2);
    let p = m_e * 1e6 / (1.0 - beta2).sqrt();
    let h = TAU * 1.054_571_817e-34;
    assert_relative_eq!(de_broglie(&s).unwrap().wavelength, h / p, max_relative = 1e-12);
    assert_relative_eq!(de_broglie(&s).unwrap().wavelength, 7.273854632185342e-10, max_relative = 1e-12);
}

#[test]
fn intensity_matches_two_path_sum() {
    for (d, sep, screen, lambda) in [(1.0, 1.0, 11.0, 0.1), (0.0, 2.0, 40.0, 0.2), (2.0, 0.5, 6.0, 0.05)] {
        for i in 0..8 {
            let delta = i as f64 * PI / 4.0;
            let scn = SlitScenario::new(d, sep, screen, delta, lambda).unwrap();
            for j in 0..41 {
                let y = -5.0 + 0.25 * j as f64;
                let dx = screen - d;
                let l1 = ((y - sep / 2.0).powi(2) + dx * dx).sqrt();
                let l2 = ((y + sep / 2.0).powi(2) + dx * dx).sqrt();
                let psi = Complex64::from_polar(1.0, -TAU * l1 / lambda)
                    + Complex64::from_polar(1.0, delta - TAU * l2 / lambda);
                assert!((intensity_at(&scn, y) - psi.norm_sqr()).abs() < 1e-9, "d={d} δ={delta} y={y}");
            }
        }
    }
}

#[test]
fn path_difference_frozen() {
    let scn = SlitScenario::new(0.0, 1.0, 10.0, 0.0, 0.1).unwrap();
    assert_relative_eq!(path_difference(&scn, 1.0), 102.25f64.sqrt() - 100.25f64.sqrt(), max_relative = 1e-14);
    assert_relative_eq!(path_difference(&scn, 1.0), 0.09938201082794862, max_relative = 1e-14);
}

#[test]
fn central_allowed_point_by_symmetry() {
    // δ = 0: ΔL(0) = 0, so order 0 sits exactly on the axis
    let scn = SlitScenario::new(1.0, 1.0, 11.0, 0.0, 0.1).unwrap();
    let pts = allowed_points(&scn, Some(0..=0), -1.0, 1.0).unwrap();
    assert!(pts.points[0].screen_y.abs() < 1e-10 * 0.1);
    // far-field estimate y ≈ nλD/s for the first order
    let first = allowed_points(&scn, Some(1..=1), 0.0, 5.0).unwrap().points[0].screen_y;
    assert!((first - 1.0).abs() < 0.01, "{first}");
}

#[test]
fn gaussian_comb_spreads() {
    let k = PhysicalConstants::natural();
    for spread in [0.25, 0.5, 2.0] {
        let gp = GaussianPacket::new(1.0, 0.5, spread, k);
        let domain = gp.domain(2001).unwrap();
        let packet = gp.build().unwrap().normalized(&domain).unwrap();
        let u = uncertainty_product(&packet, &domain).unwrap();
        // sampled Gaussian weights exp(−q²/2Δp²) at spacing 0.08Δp out to ±8Δp
        let dq = 8.0 * spread / 100.0;
        let (mut w, mut w2) = (0.0, 0.0);
        for kk in -100..=100 {
            let q = kk as f64 * dq;
            let a2 = (-q * q / (2.0 * spread * spread)).exp();
            w += a2;
            w2 += a2 * q * q;
        }
        assert_relative_eq!(u.dp, (w2 / w).sqrt(), max_relative = 1e-12);
        assert_relative_eq!(u.dx.value().unwrap(), 0.5 / spread, max_relative = 1e-9);
        assert_relative_eq!(u.product.unwrap(), 0.5, max_relative = 1e-9);
    }
}

/// Discrete frequency of the leapfrog cosine mode: `cos(ω hτ) = 1 − r²(1 − cos hφ)`.
fn leapfrog_mode_error(n_phi: usize, courant: f64) -> f64 {
    let h_phi = TAU / n_phi as f64;
    let h_tau = courant * h_phi;
    let omega = (1.0 - courant * courant * (1.0 - h_phi.cos())).acos() / h_tau;
    let steps = (TAU / h_tau).round() as usize;
    (0..=steps)
        .map(|i| {
            let tau = i as f64 * h_tau;
            ((omega * tau).cos() - tau.cos()).abs()
        })
        .fold(0.0, f64::max)
}

#[test]
fn standing_wave_error_matches_discrete_dispersion() {
    let frozen = [(64, 0.0014505166986939488), (128, 0.00036254837435800713), (256, 9.063203764822503e-5)];
    for (n, value) in frozen {
        let (_, err) = standing_wave_run(n, 0.5, 1.0).unwrap();
        let oracle = leapfrog_mode_error(n, 0.5);
        assert!((err - oracle).abs() < 1e-12, "n={n}: {err} vs {oracle}");
        assert_relative_eq!(err, value, max_relative = 1e-9);
    }
}

#[test]
fn box6_matches_exact_difference_quotient() {
    let k = PhysicalConstants::natural();
    let s = ParticleState::along_x(1.0, 0.6, k).unwrap();
    let me = momentum_energy(&s).unwrap();
    let w = PlaneWave::from_state(&s, 0.0).unwrap();
    let psi = plane_wave_6d(&w, 1.0);
    // wavenumbers along (x0, x1, x2, x3, x4, x5)
    let kv = [me.energy, me.momentum[0], 0.0, 0.0, 0.0, 1.0];
    for (h, frozen) in [(0.2, 0.0037382966680377097), (0.1, 0.0009367678191596338), (0.05, 0.0002343292273110364)] {
        let exact: f64 = BOX6_SIGNATURE
            .iter()
            .zip(kv)
            .map(|(s, k)| s * 2.0 * ((k * h).cos() - 1.0) / (h * h))
            .sum();
        let got = box6_residual(&psi, &[0.0; 6], h);
        assert!((got - exact).abs() < 1e-10, "h={h}");
        assert_relative_eq!(got, frozen, max_relative = 1e-8);
        // leading term h²/12 Σ s k⁴
        let lead: f64 = BOX6_SIGNATURE.iter().zip(kv).map(|(s, k)| s * k.powi(4)).sum::<f64>() * h * h / 12.0;
        assert_relative_eq!(got, lead, max_relative = 0.05);
    }
    assert_eq!(me.momentum, Vec3::new(0.75, 0.0, 0.0));
}

#[test]
fn harmonic_null_mode_is_exact_solution() {
    // null tangent and wave equation hold analytically
    let h = 1e-4;
    for i in 0..20 {
        let (tau, phi) = (0.3 * i as f64, 0.7 * i as f64);
        let f = |t: f64, p: f64| harmonic_null_mode(t, p);
        let d_tau: Vec<f64> = (0..4).map(|a| (f(tau + h, phi)[a] - f(tau - h, phi)[a]) / (2.0 * h)).collect();
        let null = d_tau[0].powi(2) - d_tau[1].powi(2) - d_tau[2].powi(2) - d_tau[3].powi(2);
        assert!(null.abs() < 1e-7, "{null}");
    }
    let coarse = SheetField::from_fn(5, 64, 0.0, TAU / 128.0, harmonic_null_mode).unwrap();
    let fine = SheetField::from_fn(5, 128, 0.0, TAU / 256.0, harmonic_null_mode).unwrap();
    let (a, b) = (constraint_residuals(&coarse).max(), constraint_residuals(&fine).max());
    assert_relative_eq!(a / b, 3.9755227165130282, max_relative = 1e-6);
}
