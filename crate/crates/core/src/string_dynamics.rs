//! String-type sheet `x_α(τ, φ)`: Lagrangian, constraints and wave dynamics.
//!
//! With the constraints `ẋ·x′ = 0` and `ẋ·ẋ + x′·x′ = 0` the equations of
//! motion reduce to `ẍ_α = x″_α`, which [`evolve_wave`] integrates with a
//! second-order leapfrog scheme on a grid periodic in `φ`.
//!
//! Dot products use the Minkowski signature `(+, −, −, −)`.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};

pub type FourVector = [f64; 4];

const METRIC: FourVector = [1.0, -1.0, -1.0, -1.0];

/// Constraint residual above which the reduction to `ẍ = x″` is not trusted.
pub const CONSTRAINT_THRESHOLD: f64 = 1e-6;

/// A null polarisation; modes along it satisfy both constraints.
pub const NULL_POLARIZATION: FourVector = [1.0, 1.0, 0.0, 0.0];

pub fn minkowski_dot(a: &FourVector, b: &FourVector) -> f64 {
    (0..4).map(|i| METRIC[i] * a[i] * b[i]).sum()
}

/// `L = −(m/2) √((ẋ·x′)² − (ẋ·ẋ)(x′·x′))`.
pub fn lagrangian_density(xdot: &FourVector, xprime: &FourVector, m: f64) -> Result<f64> {
    let cross = minkowski_dot(xdot, xprime);
    let radicand = cross * cross - minkowski_dot(xdot, xdot) * minkowski_dot(xprime, xprime);
    if radicand < 0.0 {
        return Err(Error::NonTimesheet { radicand });
    }
    Ok(-0.5 * m * radicand.sqrt())
}

/// Samples of `x_α(τ, φ)` on `τ = τ0 + i·hτ`, `φ = j·2π/n_phi`.
#[derive(Debug, Clone, PartialEq)]
pub struct SheetField {
    tau0: f64,
    h_tau: f64,
    n_phi: usize,
    rows: Vec<Vec<FourVector>>,
}

impl SheetField {
    /// Sample `f(τ, φ)` on `n_tau` rows.
    pub fn from_fn<F>(n_tau: usize, n_phi: usize, tau0: f64, h_tau: f64, f: F) -> Result<Self>
    where
        F: Fn(f64, f64) -> FourVector,
    {
        Self::check_dims(n_phi, h_tau)?;
        if n_tau == 0 {
            return Err(Error::invalid("n_tau", "need at least one row"));
        }
        let h_phi = TAU / n_phi as f64;
        let rows = (0..n_tau)
            .map(|i| {
                let tau = tau0 + i as f64 * h_tau;
                (0..n_phi).map(|j| f(tau, j as f64 * h_phi)).collect()
            })
            .collect();
        Ok(Self {
            tau0,
            h_tau,
            n_phi,
            rows,
        })
    }

    /// Two starting rows from position and velocity at `τ = 0`, using a
    /// second-order Taylor step `x¹ = x⁰ + hτ ẋ⁰ + (hτ²/2) x⁰″`.
    pub fn from_initial_data<P, V>(n_phi: usize, h_tau: f64, position: P, velocity: V) -> Result<Self>
    where
        P: Fn(f64) -> FourVector,
        V: Fn(f64) -> FourVector,
    {
        Self::check_dims(n_phi, h_tau)?;
        let h_phi = TAU / n_phi as f64;
        let r2 = (h_tau / h_phi).powi(2);
        let first: Vec<FourVector> = (0..n_phi).map(|j| position(j as f64 * h_phi)).collect();
        let second = (0..n_phi)
            .map(|j| {
                let v = velocity(j as f64 * h_phi);
                let (l, c, r) = (&first[(j + n_phi - 1) % n_phi], &first[j], &first[(j + 1) % n_phi]);
                let mut out = [0.0; 4];
                for a in 0..4 {
                    out[a] = c[a] + h_tau * v[a] + 0.5 * r2 * (l[a] - 2.0 * c[a] + r[a]);
                }
                out
            })
            .collect();
        Ok(Self {
            tau0: 0.0,
            h_tau,
            n_phi,
            rows: vec![first, second],
        })
    }

    fn check_dims(n_phi: usize, h_tau: f64) -> Result<()> {
        if n_phi < 3 {
            return Err(Error::invalid("n_phi", format!("need at least 3 φ samples, got {n_phi}")));
        }
        if !(h_tau.is_finite() && h_tau > 0.0) {
            return Err(Error::invalid("h_tau", format!("must be > 0, got {h_tau}")));
        }
        Ok(())
    }

    pub fn n_tau(&self) -> usize {
        self.rows.len()
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    pub fn h_tau(&self) -> f64 {
        self.h_tau
    }

    pub fn h_phi(&self) -> f64 {
        TAU / self.n_phi as f64
    }

    pub fn tau(&self, i: usize) -> f64 {
        self.tau0 + i as f64 * self.h_tau
    }

    pub fn phi(&self, j: usize) -> f64 {
        j as f64 * self.h_phi()
    }

    pub fn at(&self, i: usize, j: usize) -> &FourVector {
        &self.rows[i][j]
    }

    pub fn row(&self, i: usize) -> &[FourVector] {
        &self.rows[i]
    }

    pub fn last_row(&self) -> &[FourVector] {
        self.rows.last().expect("field has rows")
    }

    fn left(&self, j: usize) -> usize {
        (j + self.n_phi - 1) % self.n_phi
    }

    fn right(&self, j: usize) -> usize {
        (j + 1) % self.n_phi
    }

    /// Central `(ẋ, x′)` at an interior row.
    fn derivatives(&self, i: usize, j: usize) -> (FourVector, FourVector) {
        let (ht, hp) = (self.h_tau, self.h_phi());
        let (next, prev) = (&self.rows[i + 1][j], &self.rows[i - 1][j]);
        let (r, l) = (&self.rows[i][self.right(j)], &self.rows[i][self.left(j)]);
        let mut xdot = [0.0; 4];
        let mut xprime = [0.0; 4];
        for a in 0..4 {
            xdot[a] = (next[a] - prev[a]) / (2.0 * ht);
            xprime[a] = (r[a] - l[a]) / (2.0 * hp);
        }
        (xdot, xprime)
    }

    /// `E_d = Σ_j Σ_α (ẋ_α² + x′_α²) hφ` at interior row `i`.
    pub fn energy(&self, i: usize) -> f64 {
        assert!(i >= 1 && i + 1 < self.n_tau(), "energy needs an interior row");
        let hp = self.h_phi();
        (0..self.n_phi)
            .map(|j| {
                let (xd, xp) = self.derivatives(i, j);
                (0..4).map(|a| xd[a] * xd[a] + xp[a] * xp[a]).sum::<f64>()
            })
            .sum::<f64>()
            * hp
    }

    /// Energies of all interior rows.
    pub fn energy_history(&self) -> Vec<f64> {
        (1..self.n_tau().saturating_sub(1)).map(|i| self.energy(i)).collect()
    }
}

/// `max |E_i − E_1| / E_1` over the interior rows.
pub fn relative_energy_drift(field: &SheetField) -> f64 {
    let history = field.energy_history();
    let Some(&e0) = history.first() else {
        return 0.0;
    };
    history.iter().map(|e| (e - e0).abs()).fold(0.0, f64::max) / e0.abs()
}

/// Advance `steps` rows with the leapfrog update
/// `xⁿ⁺¹ = 2xⁿ − xⁿ⁻¹ + (hτ/hφ)² (xⁿ_{j+1} − 2xⁿ_j + xⁿ_{j−1})`.
pub fn evolve_wave(mut field: SheetField, steps: usize) -> Result<SheetField> {
    let (h_tau, h_phi) = (field.h_tau, field.h_phi());
    if h_tau > h_phi {
        return Err(Error::Unstable { h_tau, h_phi });
    }
    if field.n_tau() < 2 {
        return Err(Error::contract("leapfrog needs two initial rows"));
    }
    let n = field.n_phi;
    let r2 = (h_tau / h_phi).powi(2);
    field.rows.reserve(steps);
    for step in 0..steps {
        let k = field.rows.len();
        let (prev, cur) = (&field.rows[k - 2], &field.rows[k - 1]);
        let mut next = vec![[0.0; 4]; n];
        for j in 0..n {
            let (l, c, r, p) = (&cur[(j + n - 1) % n], &cur[j], &cur[(j + 1) % n], &prev[j]);
            for a in 0..4 {
                next[j][a] = if r2 == 1.0 {
                    l[a] + r[a] - p[a]
                } else {
                    2.0 * c[a] - p[a] + r2 * (l[a] - 2.0 * c[a] + r[a])
                };
            }
        }
        if next.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { step });
        }
        field.rows.push(next);
    }
    Ok(field)
}

/// Constraint residuals on the interior rows.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstraintResidual {
    /// `ẋ·x′`
    pub r1: Vec<Vec<f64>>,
    /// `ẋ·ẋ + x′·x′`
    pub r2: Vec<Vec<f64>>,
    /// `ẋ·x + x′·x′`, the constraint as literally printed
    pub r2_literal: Vec<Vec<f64>>,
}

fn max_abs(grid: &[Vec<f64>]) -> f64 {
    grid.iter().flatten().map(|v| v.abs()).fold(0.0, f64::max)
}

impl ConstraintResidual {
    pub fn max_r1(&self) -> f64 {
        max_abs(&self.r1)
    }

    pub fn max_r2(&self) -> f64 {
        max_abs(&self.r2)
    }

    pub fn max_r2_literal(&self) -> f64 {
        max_abs(&self.r2_literal)
    }

    pub fn max(&self) -> f64 {
        self.max_r1().max(self.max_r2())
    }
}

pub fn constraint_residuals(field: &SheetField) -> ConstraintResidual {
    let interior = 1..field.n_tau().saturating_sub(1);
    let mut out = ConstraintResidual {
        r1: Vec::new(),
        r2: Vec::new(),
        r2_literal: Vec::new(),
    };
    for i in interior {
        let mut r1 = Vec::with_capacity(field.n_phi);
        let mut r2 = Vec::with_capacity(field.n_phi);
        let mut lit = Vec::with_capacity(field.n_phi);
        for j in 0..field.n_phi {
            let (xd, xp) = field.derivatives(i, j);
            let x = field.at(i, j);
            let pp = minkowski_dot(&xp, &xp);
            r1.push(minkowski_dot(&xd, &xp));
            r2.push(minkowski_dot(&xd, &xd) + pp);
            lit.push(minkowski_dot(&xd, x) + pp);
        }
        out.r1.push(r1);
        out.r2.push(r2);
        out.r2_literal.push(lit);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EomResidual {
    /// `ẍ − x″` on the interior rows.
    pub values: Vec<Vec<FourVector>>,
    pub max_abs: f64,
    /// Largest constraint residual of the same field.
    pub constraint_max: f64,
    /// Whether the constraints hold well enough for `ẍ = x″` to be the
    /// equation of motion.
    pub reduction_valid: bool,
}

/// Discrete `ẍ − x″` with three-point second differences.
pub fn eom_residual(field: &SheetField) -> EomResidual {
    let (ht2, hp2) = (field.h_tau.powi(2), field.h_phi().powi(2));
    let mut values = Vec::new();
    let mut worst: f64 = 0.0;
    for i in 1..field.n_tau().saturating_sub(1) {
        let row: Vec<FourVector> = (0..field.n_phi)
            .map(|j| {
                let (p, c, n) = (field.at(i - 1, j), field.at(i, j), field.at(i + 1, j));
                let (l, r) = (field.at(i, field.left(j)), field.at(i, field.right(j)));
                let mut out = [0.0; 4];
                for a in 0..4 {
                    out[a] = (n[a] - 2.0 * c[a] + p[a]) / ht2 - (r[a] - 2.0 * c[a] + l[a]) / hp2;
                    worst = worst.max(out[a].abs());
                }
                out
            })
            .collect();
        values.push(row);
    }
    let constraint_max = constraint_residuals(field).max();
    EomResidual {
        values,
        max_abs: worst,
        constraint_max,
        reduction_valid: constraint_max < CONSTRAINT_THRESHOLD,
    }
}

/// Loop wavenumber `m0 c²/ħ` of the sheet mode.
pub fn mode_wavenumber(m0: f64, constants: &PhysicalConstants) -> f64 {
    m0 * constants.c().powi(2) / constants.hbar()
}

/// Real representative `cos(k(τ − φ))` of the sheet mode, `k = m0 c²/ħ`.
/// Equals one on the reality locus `φ = τ`.
pub fn analytic_mode(m0: f64, tau: f64, phi: f64, constants: &PhysicalConstants) -> f64 {
    (mode_wavenumber(m0, constants) * (tau - phi)).cos()
}

/// Sheet field `x_α = a_α cos(k(τ − φ))` for polarisation `a`.
///
/// Periodicity in `φ` requires the wavenumber to be an integer.
pub fn analytic_mode_field(
    m0: f64,
    constants: &PhysicalConstants,
    polarization: FourVector,
    n_tau: usize,
    n_phi: usize,
    h_tau: f64,
) -> Result<SheetField> {
    let k = mode_wavenumber(m0, constants);
    if (k - k.round()).abs() > 1e-12 || k.round() == 0.0 {
        return Err(Error::invalid(
            "m0",
            format!("mode wavenumber m0 c²/ħ = {k} must be a nonzero integer on a periodic φ grid"),
        ));
    }
    SheetField::from_fn(n_tau, n_phi, 0.0, h_tau, |tau, phi| {
        let v = analytic_mode(m0, tau, phi, constants);
        polarization.map(|a| a * v)
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use approx::{assert_abs_diff_eq, assert_relative_eq};

    use super::*;

    #[test]
    fn lagrangian_examples() {
        assert_eq!(lagrangian_density(&[1.0, 1.0, 0.0, 0.0], &[1.0, 1.0, 0.0, 0.0], 3.0).unwrap(), 0.0);
        let l = lagrangian_density(&[1.0, 0.0, 0.0, 0.0], &[0.0, 1.0, 0.0, 0.0], 2.0).unwrap();
        assert_eq!(l, -1.0);
    }

    #[test]
    fn lagrangian_rejects_negative_radicand() {
        // two spacelike orthogonal tangents: radicand = −(−1)(−1) = −1
        let err = lagrangian_density(&[0.0, 1.0, 0.0, 0.0], &[0.0, 0.0, 1.0, 0.0], 1.0).unwrap_err();
        assert_eq!(err, Error::NonTimesheet { radicand: -1.0 });
        assert!(err.to_string().contains("non-timesheet configuration"));
    }

    #[test]
    fn mode_examples() {
        let k = PhysicalConstants::natural();
        assert_eq!(analytic_mode(1.0, 0.7, 0.7, &k), 1.0);
        assert_relative_eq!(analytic_mode(1.0, PI, 0.0, &k), -1.0);
    }

    #[test]
    fn constant_field_has_no_residuals() {
        let f = SheetField::from_fn(5, 16, 0.0, 0.1, |_, _| [2.0, -1.0, 0.5, 3.0]).unwrap();
        let c = constraint_residuals(&f);
        assert_eq!(c.max(), 0.0);
        assert_eq!(eom_residual(&f).max_abs, 0.0);
    }

    #[test]
    fn linear_in_tau_has_zero_eom_residual() {
        let f = SheetField::from_fn(6, 32, 0.0, 0.1, |t, _| [0.3 * t, -2.0 * t, t, 0.0]).unwrap();
        assert!(eom_residual(&f).max_abs < 1e-12);
    }

    #[test]
    fn random_smooth_field_violates_constraints() {
        let f = SheetField::from_fn(6, 32, 0.0, 0.1, |t, p| {
            [t.sin() + p.cos(), (2.0 * p).sin() * t, p.cos() * t.cos(), 0.4 * t]
        })
        .unwrap();
        assert!(constraint_residuals(&f).max() > 1e-2);
    }

    #[test]
    fn null_mode_satisfies_constraints() {
        let k = PhysicalConstants::natural();
        let f = analytic_mode_field(1.0, &k, NULL_POLARIZATION, 8, 64, 0.05).unwrap();
        let c = constraint_residuals(&f);
        assert!(c.max() < 1e-12);
        // the literal reading ẋ·x + x′·x′ is not satisfied by the same mode
        let spacelike = analytic_mode_field(1.0, &k, [0.0, 1.0, 0.0, 0.0], 8, 64, 0.05).unwrap();
        assert!(constraint_residuals(&spacelike).max() > 1e-2);
    }

    #[test]
    fn mode_field_needs_integer_wavenumber() {
        let k = PhysicalConstants::natural();
        assert!(analytic_mode_field(1.5, &k, NULL_POLARIZATION, 4, 16, 0.1).is_err());
    }

    #[test]
    fn evolve_rejects_large_courant() {
        let f = SheetField::from_initial_data(16, 0.5, |_| [0.0; 4], |_| [0.0; 4]).unwrap();
        assert!(matches!(evolve_wave(f, 3), Err(Error::Unstable { .. })));
    }

    #[test]
    fn evolve_flags_non_finite() {
        let f = SheetField::from_fn(2, 16, 0.0, 0.1, |_, p| [if p == 0.0 { f64::NAN } else { 0.0 }; 4]).unwrap();
        assert_eq!(evolve_wave(f, 3).unwrap_err(), Error::NonFinite { step: 0 });
    }

    #[test]
    fn zero_field_stays_zero() {
        let f = SheetField::from_initial_data(32, 0.1, |_| [0.0; 4], |_| [0.0; 4]).unwrap();
        let out = evolve_wave(f, 50).unwrap();
        assert_eq!(out.n_tau(), 52);
        assert!(out.last_row().iter().flatten().all(|&v| v == 0.0));
    }

    #[test]
    fn evolved_field_solves_discrete_wave_equation() {
        let n = 64;
        let h = TAU / n as f64;
        let f = SheetField::from_initial_data(n, 0.5 * h, |p| [0.0, p.cos(), 0.0, 0.0], |_| [0.0; 4]).unwrap();
        let out = evolve_wave(f, 40).unwrap();
        let res = eom_residual(&out);
        assert!(res.max_abs < 1e-9, "{}", res.max_abs);
        // a single transverse component is not a constrained sheet
        assert!(!res.reduction_valid);
    }

    #[test]
    fn energy_of_standing_wave_is_pi() {
        let n = 256;
        let h = TAU / n as f64;
        let f = SheetField::from_initial_data(n, 0.5 * h, |p| [0.0, p.cos(), 0.0, 0.0], |_| [0.0; 4]).unwrap();
        let out = evolve_wave(f, 20).unwrap();
        assert_abs_diff_eq!(out.energy(1), PI, epsilon = 1e-3);
    }
}
