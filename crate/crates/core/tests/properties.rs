use std::f64::consts::TAU;

use mpt_core::causality::{collapse_worldline, precedes, MptEvent, OrderVerdict};
use mpt_core::interference::{intensity_at, path_difference, SlitScenario};
use mpt_core::kinematics::{
    gamma_sigma, gamma_u, momentum_energy, wrap_angle, worldline_position, worldline_slopes, ParticleState,
    ProperTimePoint, SpacetimePoint, Vec3,
};
use mpt_core::phase_loops::{x4_of, x5_of, PlaneWave};
use mpt_core::string_dynamics::lagrangian_density;
use mpt_core::PhysicalConstants;
use proptest::prelude::*;

fn constants() -> impl Strategy<Value = PhysicalConstants> {
    (0.1f64..10.0, 0.5f64..5.0).prop_map(|(hbar, c)| PhysicalConstants::new(hbar, c).unwrap())
}

/// Massive moving state with `|u|/c` in `[0.01, 0.99]`.
fn state() -> impl Strategy<Value = ParticleState> {
    (constants(), 0.1f64..10.0, 0.01f64..0.99, -1.0f64..1.0, 0.0..TAU).prop_map(|(k, m0, beta, z, az)| {
        let rho = (1.0 - z * z).sqrt();
        let dir = Vec3::new(rho * az.cos(), rho * az.sin(), z);
        ParticleState::massive(m0, dir * (beta * k.c()), k).unwrap()
    })
}

fn four_vector() -> impl Strategy<Value = [f64; 4]> {
    prop::array::uniform4(-3.0f64..3.0)
}

proptest! {
    #[test]
    fn mass_shell(s in state()) {
        let me = momentum_energy(&s).unwrap();
        let c = s.constants().c();
        let lhs = me.energy.powi(2) - me.momentum.norm_squared() * c * c;
        let rhs = (s.m0() * c * c).powi(2);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * me.energy.powi(2));
    }

    #[test]
    fn tau_and_sigma_lines_orthogonal(s in state()) {
        let (a, b) = worldline_slopes(&s).unwrap();
        prop_assert!((a * b - 1.0).abs() < 1e-12);
        prop_assert!(gamma_u(&s).unwrap() >= 1.0);
        prop_assert!(gamma_sigma(&s).unwrap() > 0.0);
    }

    #[test]
    fn t_monotone_in_both_proper_times(
        s in state(),
        tau in -10.0f64..10.0,
        sigma in -10.0f64..10.0,
        dt in 0.0f64..1.0,
        ds in 0.0f64..1.0,
    ) {
        prop_assume!(dt > 0.0 || ds > 0.0);
        let o = SpacetimePoint::origin();
        let a = worldline_position(&s, &ProperTimePoint::new(tau, sigma, 0.0), &o).unwrap();
        let b = worldline_position(&s, &ProperTimePoint::new(tau + dt, sigma + ds, 0.0), &o).unwrap();
        prop_assert!(b.t > a.t);
    }

    #[test]
    fn loop_coordinates_conjugate_and_unit(
        s in state(),
        t in -50.0f64..50.0,
        x in prop::array::uniform3(-50.0f64..50.0),
        phase0 in 0.0..TAU,
    ) {
        let w = PlaneWave::from_state(&s, phase0).unwrap();
        let pt = SpacetimePoint::new(t, Vec3::from(x));
        let (x4, x5) = (x4_of(&w, &pt).value(), x5_of(&w, &pt).value());
        prop_assert!((x4.norm() - 1.0).abs() < 1e-12);
        prop_assert!((x5.norm() - 1.0).abs() < 1e-12);
        prop_assert!((x5 - x4.conj()).norm() < 1e-12);
        prop_assert!((x4 * x5 - 1.0).norm() < 1e-12);
    }

    #[test]
    fn phase_periodic_in_energy_period(s in state(), t in -5.0f64..5.0, x in -5.0f64..5.0) {
        let w = PlaneWave::from_state(&s, 0.0).unwrap();
        let period = s.constants().h() / w.energy();
        let a = x4_of(&w, &SpacetimePoint::on_axis(t, x)).value();
        let b = x4_of(&w, &SpacetimePoint::on_axis(t + period, x)).value();
        let scale = 1.0 + w.phase(&SpacetimePoint::on_axis(t, x)).abs();
        prop_assert!((a - b).norm() < 1e-12 * scale);
    }

    #[test]
    fn wrapped_angles_in_range(a in -1e6f64..1e6) {
        let w = wrap_angle(a);
        prop_assert!((0.0..TAU).contains(&w));
        prop_assert!(((a - w) / TAU - ((a - w) / TAU).round()).abs() < 1e-6);
    }

    #[test]
    fn path_difference_odd(
        d in 0.0f64..5.0,
        sep in 0.1f64..3.0,
        gap in 1.0f64..100.0,
        y in -20.0f64..20.0,
    ) {
        let scn = SlitScenario::new(d, sep, d + gap, 0.0, 0.1).unwrap();
        let (a, b) = (path_difference(&scn, y), path_difference(&scn, -y));
        prop_assert!((a + b).abs() <= 1e-12 * (1.0 + a.abs()));
        prop_assert!(a.abs() <= sep + 1e-12);
    }

    #[test]
    fn intensity_bounded_and_mirror_symmetric(
        sep in 0.1f64..3.0,
        gap in 1.0f64..100.0,
        delta in 0.0..TAU,
        lambda in 0.01f64..1.0,
        y in -20.0f64..20.0,
    ) {
        let scn = SlitScenario::new(0.5, sep, 0.5 + gap, delta, lambda).unwrap();
        let i = intensity_at(&scn, y);
        prop_assert!((0.0..=4.0 + 1e-12).contains(&i));
        let mirrored = intensity_at(&scn.with_delta(-delta), -y);
        prop_assert!((i - mirrored).abs() < 1e-9);
    }

    #[test]
    fn lagrangian_homogeneous_of_degree_one(
        xd in four_vector(),
        xp in four_vector(),
        lambda in -4.0f64..4.0,
        m in 0.1f64..5.0,
    ) {
        if let Ok(l) = lagrangian_density(&xd, &xp, m) {
            let scaled = xd.map(|v| v * lambda);
            let ls = lagrangian_density(&scaled, &xp, m).unwrap_or(f64::NAN);
            prop_assert!((ls - lambda.abs() * l).abs() <= 1e-9 * (1.0 + l.abs() * lambda.abs()));
            let swapped = lagrangian_density(&xp, &xd, m).unwrap();
            prop_assert!((swapped - l).abs() <= 1e-9 * (1.0 + l.abs()));
        }
    }

    #[test]
    fn happens_before_is_a_strict_partial_order(
        s in state(),
        coords in prop::array::uniform3((-3i32..3, -3i32..3)),
    ) {
        let ev: Vec<MptEvent> = coords
            .iter()
            .map(|&(a, b)| MptEvent::new("e", &s, a as f64 * 0.5, b as f64 * 0.5).unwrap())
            .collect();
        let before = |i: usize, j: usize| precedes(&ev[i], &ev[j]).unwrap() == OrderVerdict::Before;
        for i in 0..3 {
            prop_assert!(!before(i, i));
            for j in 0..3 {
                if before(i, j) {
                    prop_assert!(!before(j, i));
                    prop_assert!(ev[i].t() < ev[j].t());
                    prop_assert_eq!(precedes(&ev[j], &ev[i]).unwrap(), OrderVerdict::After);
                }
                for l in 0..3 {
                    if before(i, j) && before(j, l) {
                        prop_assert!(before(i, l));
                    }
                }
            }
        }
    }

    #[test]
    fn mixed_orderings_indeterminate(
        s in state(),
        tau in -5.0f64..5.0,
        sigma in -5.0f64..5.0,
        dt in 1e-9f64..5.0,
        ds in 1e-9f64..5.0,
    ) {
        let a = MptEvent::new("a", &s, tau, sigma).unwrap();
        let b = MptEvent::new("b", &s, tau + dt, sigma - ds).unwrap();
        prop_assert_eq!(precedes(&a, &b).unwrap(), OrderVerdict::Indeterminate);
        prop_assert_eq!(precedes(&b, &a).unwrap(), OrderVerdict::Indeterminate);
    }

    #[test]
    fn collapse_adds_momentum_on_shell(s in state(), dp in prop::array::uniform3(-1.0f64..1.0)) {
        let dp = Vec3::from(dp) * (s.m0() * s.constants().c());
        let target = momentum_energy(&s).unwrap().momentum + dp;
        let moved = collapse_worldline(&s, dp).unwrap();
        prop_assert!(moved.speed() < s.constants().c());
        let got = momentum_energy(&moved).unwrap().momentum;
        let scale = target.norm().max(s.m0() * s.constants().c());
        prop_assert!((got - target).norm() <= 1e-11 * scale);
    }
}
