//! Six-dimensional metric and finite-difference wave-equation residuals.
//!
//! The line element is `ds² = g_αβ dx^α dx^β + ψ² dx₄² − dx₅²`. A spinless
//! free particle's wave function satisfies `∂_A ∂^A ψ = 0` over all six
//! coordinates; for a wave independent of `x₄` and oscillating in `x₅` at
//! `m0 c/ħ` this is the Klein-Gordon dispersion relation.

use nalgebra::Matrix4;

use crate::error::{Error, Result};
use crate::phase_loops::PlaneWave;

/// Coordinates `(x₀ = ct, x₁, x₂, x₃, x₄, x₅)`.
pub type SixVector = [f64; 6];

/// Flat signature used by [`box6_residual`], with `ψ ≡ 1` in the `x₄` slot.
pub const BOX6_SIGNATURE: SixVector = [1.0, -1.0, -1.0, -1.0, 1.0, -1.0];

pub const MINKOWSKI: [[f64; 4]; 4] = [
    [1.0, 0.0, 0.0, 0.0],
    [0.0, -1.0, 0.0, 0.0],
    [0.0, 0.0, -1.0, 0.0],
    [0.0, 0.0, 0.0, -1.0],
];

/// Default finite-difference step in natural units.
pub const DEFAULT_STEP: f64 = 1e-3;

type ScalarField = dyn Fn(&SixVector) -> f64 + Send + Sync;

pub struct Metric6 {
    g4: Matrix4<f64>,
    psi: Box<ScalarField>,
}

impl std::fmt::Debug for Metric6 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Metric6").field("g4", &self.g4).finish_non_exhaustive()
    }
}

/// Assemble the block-diagonal metric from a 4-metric and the field `ψ`.
pub fn build_metric<F>(g4: [[f64; 4]; 4], psi: F) -> Result<Metric6>
where
    F: Fn(&SixVector) -> f64 + Send + Sync + 'static,
{
    let g = Matrix4::from_fn(|i, j| g4[i][j]);
    let scale = g.amax();
    if !(scale.is_finite() && scale > 0.0) {
        return Err(Error::contract("4-metric must be finite and nonzero"));
    }
    if (g - g.transpose()).amax() > 1e-12 * scale {
        return Err(Error::contract("4-metric is not symmetric"));
    }
    if g.determinant().abs() <= 1e-12 * scale.powi(4) {
        return Err(Error::contract("4-metric is singular"));
    }
    Ok(Metric6 {
        g4: g,
        psi: Box::new(psi),
    })
}

impl Metric6 {
    pub fn g4(&self) -> &Matrix4<f64> {
        &self.g4
    }

    /// `ĝ₄₄ = ψ²` at `pt`.
    pub fn g44(&self, pt: &SixVector) -> f64 {
        (self.psi)(pt).powi(2)
    }

    pub fn g55(&self) -> f64 {
        -1.0
    }

    /// Full 6×6 components at `pt`.
    pub fn components(&self, pt: &SixVector) -> [[f64; 6]; 6] {
        let mut out = [[0.0; 6]; 6];
        for i in 0..4 {
            for j in 0..4 {
                out[i][j] = self.g4[(i, j)];
            }
        }
        out[4][4] = self.g44(pt);
        out[5][5] = self.g55();
        out
    }

    /// `ds²` for displacement `dx` at `pt`.
    pub fn line_element(&self, pt: &SixVector, dx: &SixVector) -> f64 {
        let g = self.components(pt);
        (0..6)
            .flat_map(|i| (0..6).map(move |j| (i, j)))
            .map(|(i, j)| g[i][j] * dx[i] * dx[j])
            .sum()
    }
}

/// Central-difference `Σ_A s_A ∂_A² ψ` at `pt` with step `h`.
pub fn box6_residual<F>(psi: F, pt: &SixVector, h: f64) -> f64
where
    F: Fn(&SixVector) -> f64,
{
    let centre = psi(pt);
    let mut total = 0.0;
    for (axis, sign) in BOX6_SIGNATURE.iter().enumerate() {
        let mut fwd = *pt;
        let mut back = *pt;
        fwd[axis] += h;
        back[axis] -= h;
        total += sign * (psi(&fwd) - 2.0 * centre + psi(&back));
    }
    total / (h * h)
}

/// `cos((E x₀/c − p·x − m0 c x₅)/ħ + phase0)`, independent of `x₄`.
pub fn plane_wave_6d(wave: &PlaneWave, m0: f64) -> impl Fn(&SixVector) -> f64 + Send + Sync + 'static {
    let k = *wave.constants();
    let (c, hbar) = (k.c(), k.hbar());
    let omega = wave.energy() / (c * hbar);
    let kvec = wave.momentum() / hbar;
    let k5 = m0 * c / hbar;
    let phase0 = wave.phase0();
    move |x: &SixVector| {
        (omega * x[0] - kvec[0] * x[1] - kvec[1] * x[2] - kvec[2] * x[3] - k5 * x[5] + phase0).cos()
    }
}

/// `(E² − p²c² − m0²c⁴)/(ħc)²`; zero exactly on the mass shell.
pub fn klein_gordon_residual(wave: &PlaneWave, m0: f64) -> f64 {
    let k = wave.constants();
    let c = k.c();
    let e2 = wave.energy().powi(2);
    let p2c2 = wave.momentum().norm_squared() * c * c;
    let m2c4 = (m0 * c * c).powi(2);
    (e2 - p2c2 - m2c4) / (k.hbar() * c).powi(2)
}

#[cfg(test)]
mod tests {
    use approx::assert_relative_eq;

    use super::*;
    use crate::constants::PhysicalConstants;
    use crate::kinematics::{ParticleState, Vec3};

    fn flat(psi: f64) -> Metric6 {
        build_metric(MINKOWSKI, move |_| psi).unwrap()
    }

    #[test]
    fn unit_blocks() {
        let g = flat(1.0);
        let pt = [0.0; 6];
        let eps = 1e-3;
        assert_relative_eq!(g.line_element(&pt, &[0.0, 0.0, 0.0, 0.0, eps, 0.0]), eps * eps);
        assert_relative_eq!(g.line_element(&pt, &[0.0, 0.0, 0.0, 0.0, 0.0, eps]), -eps * eps);
    }

    #[test]
    fn psi_enters_squared() {
        let g = flat(3.0);
        assert_eq!(g.g44(&[0.0; 6]), 9.0);
        assert_eq!(g.line_element(&[0.0; 6], &[0.0, 0.0, 0.0, 0.0, 1.0, 0.0]), 9.0);
    }

    #[test]
    fn block_diagonal() {
        let g = flat(2.0);
        let c = g.components(&[0.1; 6]);
        for i in 0..6 {
            for j in 0..6 {
                let same_block = (i < 4 && j < 4) || i == j;
                if !same_block {
                    assert_eq!(c[i][j], 0.0);
                }
            }
        }
        assert_eq!(g.g55(), -1.0);
    }

    #[test]
    fn rejects_bad_g4() {
        let mut asym = MINKOWSKI;
        asym[0][1] = 0.5;
        assert!(build_metric(asym, |_| 1.0).is_err());
        let mut singular = MINKOWSKI;
        singular[3][3] = 0.0;
        assert!(build_metric(singular, |_| 1.0).is_err());
    }

    #[test]
    fn constant_field_residual_is_zero() {
        assert_eq!(box6_residual(|_| 4.2, &[0.3; 6], 1e-3), 0.0);
    }

    #[test]
    fn klein_gordon_examples() {
        let k = PhysicalConstants::natural();
        let s = ParticleState::along_x(1.0, 0.6, k).unwrap();
        let w = PlaneWave::from_state(&s, 0.0).unwrap();
        assert!(klein_gordon_residual(&w, 1.0).abs() < 1e-12);

        let doubled = PlaneWave::off_shell(2.0 * w.energy(), w.momentum(), k, 0.0);
        assert_relative_eq!(klein_gordon_residual(&doubled, 1.0), 3.0 * 1.25 * 1.25, max_relative = 1e-14);

        let photon = PlaneWave::off_shell(2.0, Vec3::new(0.0, 2.0, 0.0), k, 0.0);
        assert_eq!(klein_gordon_residual(&photon, 0.0), 0.0);
    }
}
