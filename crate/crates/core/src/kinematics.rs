//! World-line kinematics of a free particle under two proper times.
//!
//! Motion along `τ` is ordinary relativistic motion with velocity `u`. Motion
//! along `σ` is orthogonal to it in the Minkowski plane and runs at the phase
//! speed `v = c²/|u|`. Both contribute to the observable time:
//!
//! ```text
//! t = γ_u τ + γ_σ σ            γ_u = 1/√(1 − u²/c²)
//! x = γ_u u τ + γ_σ v û σ      γ_σ = 1/√(v²/c² − 1)
//! ```
//!
//! `γ_σ` is the real value left after removing the imaginary unit from
//! `1/√(1 − v²/c²)` for `v > c`.

use std::f64::consts::TAU;

use nalgebra::Vector3;
use serde::Serialize;

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};

pub type Vec3 = Vector3<f64>;

/// Wrap an angle into `[0, 2π)`.
pub fn wrap_angle(angle: f64) -> f64 {
    let w = angle.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if w >= TAU {
        0.0
    } else {
        w
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParticleState {
    m0: f64,
    u: Vec3,
    constants: PhysicalConstants,
}

impl ParticleState {
    /// A particle with rest mass `m0 > 0` and `|u| < c`.
    pub fn massive(m0: f64, u: Vec3, constants: PhysicalConstants) -> Result<Self> {
        if !(m0.is_finite() && m0 > 0.0) {
            return Err(Error::invalid("m0", format!("massive particle needs m0 > 0, got {m0}")));
        }
        if !u.iter().all(|c| c.is_finite()) {
            return Err(Error::invalid("u", "velocity must be finite"));
        }
        let speed = u.norm();
        if speed >= constants.c() {
            return Err(Error::SpeedExceedsC {
                speed,
                c: constants.c(),
            });
        }
        Ok(Self { m0, u, constants })
    }

    /// Massive particle moving along the x axis.
    pub fn along_x(m0: f64, speed: f64, constants: PhysicalConstants) -> Result<Self> {
        Self::massive(m0, Vec3::new(speed, 0.0, 0.0), constants)
    }

    /// A massless particle moving at `c` along `direction`.
    pub fn massless(direction: Vec3, constants: PhysicalConstants) -> Result<Self> {
        let n = direction.norm();
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::invalid("u", "massless direction must be nonzero"));
        }
        Ok(Self {
            m0: 0.0,
            u: direction * (constants.c() / n),
            constants,
        })
    }

    pub fn m0(&self) -> f64 {
        self.m0
    }

    pub fn velocity(&self) -> Vec3 {
        self.u
    }

    pub fn speed(&self) -> f64 {
        self.u.norm()
    }

    pub fn constants(&self) -> &PhysicalConstants {
        &self.constants
    }

    pub fn is_massless(&self) -> bool {
        self.m0 == 0.0
    }
}

/// Location on the three proper times. `phi` is kept in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProperTimePoint {
    pub tau: f64,
    pub sigma: f64,
    phi: f64,
}

impl ProperTimePoint {
    pub fn new(tau: f64, sigma: f64, phi: f64) -> Self {
        Self {
            tau,
            sigma,
            phi: wrap_angle(phi),
        }
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpacetimePoint {
    pub t: f64,
    pub x: Vec3,
}

impl SpacetimePoint {
    pub fn new(t: f64, x: Vec3) -> Self {
        Self { t, x }
    }

    pub fn origin() -> Self {
        Self {
            t: 0.0,
            x: Vec3::zeros(),
        }
    }

    /// Point on the x axis.
    pub fn on_axis(t: f64, x: f64) -> Self {
        Self {
            t,
            x: Vec3::new(x, 0.0, 0.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentumEnergy {
    pub momentum: Vec3,
    pub energy: f64,
}

/// de Broglie periodicities. Axes with zero momentum carry `f64::INFINITY`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeBroglie {
    /// `h/|p|`
    pub wavelength: f64,
    /// `h/p_i` per axis
    pub axis_wavelengths: [f64; 3],
    /// `h/E`
    pub period: f64,
}

impl DeBroglie {
    pub fn is_unbounded(&self) -> bool {
        self.wavelength.is_infinite()
    }

    pub fn unbounded_axes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..3).filter(|&i| self.axis_wavelengths[i].is_infinite())
    }
}

/// Lorentz factor `1/√(1 − u²/c²)`.
pub fn gamma_u(state: &ParticleState) -> Result<f64> {
    let c = state.constants.c();
    let speed = state.speed();
    if speed >= c {
        return Err(Error::TimelikeGammaUndefined { speed, c });
    }
    let beta = speed / c;
    Ok(1.0 / (1.0 - beta * beta).sqrt())
}

/// `p = γ m0 u`, `E = γ m0 c²`.
pub fn momentum_energy(state: &ParticleState) -> Result<MomentumEnergy> {
    let gamma = gamma_u(state)?;
    let m = gamma * state.m0;
    let c = state.constants.c();
    Ok(MomentumEnergy {
        momentum: state.u * m,
        energy: m * c * c,
    })
}

/// Componentwise σ-speed `v_i = c²/u_i`.
pub fn sigma_speed(state: &ParticleState) -> Result<Vec3> {
    let c2 = state.constants.c().powi(2);
    let mut v = Vec3::zeros();
    for (axis, &ui) in state.u.iter().enumerate() {
        if ui == 0.0 {
            return Err(Error::SigmaSpeedSingular { axis });
        }
        v[axis] = c2 / ui;
    }
    Ok(v)
}

/// Scalar σ-speed `v = c²/|u|`, the form used for motion along `û`.
pub fn sigma_speed_scalar(state: &ParticleState) -> Result<f64> {
    let speed = state.speed();
    if speed == 0.0 {
        return Err(Error::SigmaSpeedSingular { axis: 0 });
    }
    Ok(state.constants.c().powi(2) / speed)
}

/// `γ_σ = 1/√(v²/c² − 1)`; equal to `γ_u u / c`.
pub fn gamma_sigma(state: &ParticleState) -> Result<f64> {
    let ratio = sigma_speed_scalar(state)? / state.constants.c();
    Ok(1.0 / (ratio * ratio - 1.0).sqrt())
}

/// Position reached after advancing `pt.tau` along the `τ` world line and
/// `pt.sigma` along the `σ` world line, starting from `origin`.
pub fn worldline_position(
    state: &ParticleState,
    pt: &ProperTimePoint,
    origin: &SpacetimePoint,
) -> Result<SpacetimePoint> {
    let gu = gamma_u(state)?;
    let v = sigma_speed_scalar(state)?;
    let gs = gamma_sigma(state)?;
    let u_hat = state.u / state.speed();
    let t = gu * pt.tau + gs * pt.sigma + origin.t;
    let x = state.u * (gu * pt.tau) + u_hat * (gs * v * pt.sigma) + origin.x;
    Ok(SpacetimePoint { t, x })
}

/// Slopes `dx/d(ct)` of the `τ` and `σ` world lines in the `(ct, x)` plane.
pub fn worldline_slopes(state: &ParticleState) -> Result<(f64, f64)> {
    let c = state.constants.c();
    let v = sigma_speed_scalar(state)?;
    Ok((state.speed() / c, v / c))
}

pub fn de_broglie(state: &ParticleState) -> Result<DeBroglie> {
    let me = momentum_energy(state)?;
    let h = state.constants.h();
    let p = me.momentum.norm();
    let inv = |q: f64| if q == 0.0 { f64::INFINITY } else { h / q };
    Ok(DeBroglie {
        wavelength: inv(p),
        axis_wavelengths: [inv(me.momentum[0]), inv(me.momentum[1]), inv(me.momentum[2])],
        period: h / me.energy,
    })
}

/// Proper time `τ` for one full turn of the phase loop: `m0 c² τ / ħ = 2π`.
pub fn loop_proper_time(state: &ParticleState) -> f64 {
    let k = state.constants;
    TAU * k.hbar() / (state.m0 * k.c() * k.c())
}

#[cfg(test)]
mod tests {
    use approx::assert_relative_eq;

    use super::*;

    fn nat(speed: f64) -> ParticleState {
        ParticleState::along_x(1.0, speed, PhysicalConstants::natural()).unwrap()
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma_u(&nat(0.0)).unwrap(), 1.0);
        assert_relative_eq!(gamma_u(&nat(0.6)).unwrap(), 1.25, max_relative = 1e-15);
        assert_relative_eq!(gamma_u(&nat(0.8)).unwrap(), 5.0 / 3.0, max_relative = 1e-15);
    }

    #[test]
    fn gamma_rejects_light_speed() {
        let photon = ParticleState::massless(Vec3::x(), PhysicalConstants::natural()).unwrap();
        assert!(matches!(gamma_u(&photon), Err(Error::TimelikeGammaUndefined { .. })));
    }

    #[test]
    fn massive_rejects_superluminal() {
        let err = ParticleState::along_x(1.0, 1.2, PhysicalConstants::natural()).unwrap_err();
        assert!(err.to_string().contains("speed exceeds c"));
    }

    #[test]
    fn momentum_energy_examples() {
        let rest = momentum_energy(&nat(0.0)).unwrap();
        assert_eq!(rest.momentum, Vec3::zeros());
        assert_eq!(rest.energy, 1.0);
        let moving = momentum_energy(&nat(0.6)).unwrap();
        assert_relative_eq!(moving.momentum[0], 0.75, max_relative = 1e-15);
        assert_relative_eq!(moving.energy, 1.25, max_relative = 1e-15);
    }

    #[test]
    fn sigma_speed_examples() {
        assert_relative_eq!(sigma_speed_scalar(&nat(0.5)).unwrap(), 2.0);
        assert_relative_eq!(sigma_speed_scalar(&nat(0.1)).unwrap(), 10.0, max_relative = 1e-15);
        let photon = ParticleState::massless(Vec3::x(), PhysicalConstants::natural()).unwrap();
        assert_eq!(sigma_speed_scalar(&photon).unwrap(), 1.0);
        assert!(matches!(
            sigma_speed_scalar(&nat(0.0)),
            Err(Error::SigmaSpeedSingular { .. })
        ));
        // componentwise form is singular when any component vanishes
        assert!(matches!(sigma_speed(&nat(0.5)), Err(Error::SigmaSpeedSingular { axis: 1 })));
        let k = PhysicalConstants::natural();
        let s = ParticleState::massive(1.0, Vec3::new(0.5, 0.25, -0.2), k).unwrap();
        let v = sigma_speed(&s).unwrap();
        for i in 0..3 {
            assert_relative_eq!(v[i] * s.velocity()[i], 1.0, max_relative = 1e-15);
        }
    }

    #[test]
    fn worldline_examples() {
        let s = nat(0.6);
        let o = SpacetimePoint::origin();
        assert_eq!(worldline_position(&s, &ProperTimePoint::new(0.0, 0.0, 0.0), &o).unwrap(), o);

        let p = worldline_position(&s, &ProperTimePoint::new(1.0, 0.0, 0.0), &o).unwrap();
        assert_relative_eq!(p.t, 1.25, max_relative = 1e-15);
        assert_relative_eq!(p.x[0], 0.75, max_relative = 1e-15);

        // v = 5/3, γ_σ = 0.75, σ displacement runs at +v along û
        let p = worldline_position(&s, &ProperTimePoint::new(0.0, 1.0, 0.0), &o).unwrap();
        assert_relative_eq!(p.t, 0.75, max_relative = 1e-15);
        assert_relative_eq!(p.x[0], 1.25, max_relative = 1e-15);
    }

    #[test]
    fn worldline_respects_origin() {
        let s = nat(0.3);
        let o = SpacetimePoint::new(2.0, Vec3::new(1.0, -1.0, 0.5));
        let p = worldline_position(&s, &ProperTimePoint::new(0.0, 0.0, 1.0), &o).unwrap();
        assert_eq!(p, o);
    }

    #[test]
    fn slopes_are_orthogonal() {
        for speed in [0.05, 0.3, 0.6, 0.95] {
            let (tau_slope, sigma_slope) = worldline_slopes(&nat(speed)).unwrap();
            assert_relative_eq!(tau_slope * sigma_slope, 1.0, max_relative = 1e-15);
        }
    }

    #[test]
    fn de_broglie_examples() {
        let d = de_broglie(&nat(0.6)).unwrap();
        assert_relative_eq!(d.wavelength, 8.377_580_409_572_781, max_relative = 1e-14);
        assert_relative_eq!(d.period, 5.026_548_245_743_669, max_relative = 1e-14);
        assert_eq!(d.unbounded_axes().collect::<Vec<_>>(), vec![1, 2]);

        let rest = de_broglie(&nat(0.0)).unwrap();
        assert!(rest.is_unbounded());
        assert_relative_eq!(rest.period, TAU);
    }

    #[test]
    fn wrap_angle_range() {
        assert_eq!(wrap_angle(TAU), 0.0);
        assert_eq!(wrap_angle(-1e-300), 0.0);
        assert_relative_eq!(wrap_angle(-0.5), TAU - 0.5);
        let pt = ProperTimePoint::new(0.0, 0.0, 7.0);
        assert_relative_eq!(pt.phi(), 7.0 - TAU);
    }
}
