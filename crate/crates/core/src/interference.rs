//! Double-slit phase matching.
//!
//! Slits sit at `S₁ = (d, y/2)` and `S₂ = (d, −y/2)`, the screen at `x = S`.
//! The loop phase at `S₂` leads `S₁` by `δ`. A screen point is reachable when
//! both paths arrive with the same loop coordinates, which happens when
//!
//! ```text
//! ΔL = |P − S₂| − |P − S₁| = (n + δ/2π) λ
//! ```
//!
//! [`allowed_points`] solves that rule by bisection; [`intensity_pattern`]
//! evaluates `|ψ₁ + e^{iδ}ψ₂|²` with `ψⱼ = e^{−i2πLⱼ/λ}` as an independent check.

use std::f64::consts::TAU;
use std::ops::RangeInclusive;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::UniformGrid;
use crate::kinematics::wrap_angle;

/// Bisection stops once the bracket is narrower than this fraction of `λ`.
pub const ROOT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SlitScenario {
    slit_x: f64,
    slit_sep: f64,
    screen_x: f64,
    delta: f64,
    lambda: f64,
}

impl SlitScenario {
    pub fn new(slit_x: f64, slit_sep: f64, screen_x: f64, delta: f64, lambda: f64) -> Result<Self> {
        let finite = [slit_x, slit_sep, screen_x, delta, lambda].iter().all(|v| v.is_finite());
        if !finite {
            return Err(Error::invalid("slit", "all parameters must be finite"));
        }
        if slit_x < 0.0 {
            return Err(Error::invalid("slit_x", format!("must be ≥ 0, got {slit_x}")));
        }
        if screen_x <= slit_x {
            return Err(Error::invalid("screen_x", format!("screen must lie beyond the slits ({screen_x} ≤ {slit_x})")));
        }
        if slit_sep <= 0.0 {
            return Err(Error::invalid("slit_sep", format!("must be > 0, got {slit_sep}")));
        }
        if lambda <= 0.0 {
            return Err(Error::invalid("lambda", format!("must be > 0, got {lambda}")));
        }
        Ok(Self {
            slit_x,
            slit_sep,
            screen_x,
            delta: wrap_angle(delta),
            lambda,
        })
    }

    pub fn slit_x(&self) -> f64 {
        self.slit_x
    }

    pub fn slit_sep(&self) -> f64 {
        self.slit_sep
    }

    pub fn screen_x(&self) -> f64 {
        self.screen_x
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn with_delta(&self, delta: f64) -> Self {
        Self {
            delta: wrap_angle(delta),
            ..*self
        }
    }

    pub fn with_lambda(&self, lambda: f64) -> Result<Self> {
        Self::new(self.slit_x, self.slit_sep, self.screen_x, self.delta, lambda)
    }

    /// Small-angle fringe spacing `λ(S − d)/y`.
    pub fn far_field_spacing(&self) -> f64 {
        self.lambda * (self.screen_x - self.slit_x) / self.slit_sep
    }

    /// `ΔL` target for fringe `n`.
    pub fn target(&self, n: i64) -> f64 {
        (n as f64 + self.delta / TAU) * self.lambda
    }
}

/// Euclidean path lengths `(|P − S₁|, |P − S₂|)` for `P = (S, screen_y)`.
pub fn path_lengths(scn: &SlitScenario, screen_y: f64) -> (f64, f64) {
    let dx = scn.screen_x - scn.slit_x;
    let half = 0.5 * scn.slit_sep;
    ((screen_y - half).hypot(dx), (screen_y + half).hypot(dx))
}

/// `|P − S₂| − |P − S₁|`.
pub fn path_difference(scn: &SlitScenario, screen_y: f64) -> f64 {
    let (l1, l2) = path_lengths(scn, screen_y);
    l2 - l1
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AllowedPoint {
    pub n: i64,
    pub screen_y: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AllowedPoints {
    /// Sorted by `screen_y`.
    pub points: Vec<AllowedPoint>,
    /// Orders with no solution inside the span.
    pub missing: Vec<i64>,
}

/// Fringe orders whose targets fall inside `ΔL([lo, hi])`.
pub fn orders_in_span(scn: &SlitScenario, lo: f64, hi: f64) -> RangeInclusive<i64> {
    let shift = scn.delta / TAU;
    let first = (path_difference(scn, lo) / scn.lambda - shift).ceil() as i64;
    let last = (path_difference(scn, hi) / scn.lambda - shift).floor() as i64;
    first..=last
}

const MONOTONE_SAMPLES: usize = 257;

/// Screen positions in `[lo, hi]` where `ΔL = (n + δ/2π)λ`, for each `n` in
/// `orders` (all orders in the span when `None`).
pub fn allowed_points(
    scn: &SlitScenario,
    orders: Option<RangeInclusive<i64>>,
    lo: f64,
    hi: f64,
) -> Result<AllowedPoints> {
    if !(hi > lo) {
        return Err(Error::invalid("span", format!("need lo < hi, got [{lo}, {hi}]")));
    }
    let probe = UniformGrid::new(lo, hi, MONOTONE_SAMPLES)?;
    let samples: Vec<f64> = probe.positions().map(|y| path_difference(scn, y)).collect();
    if samples.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::contract("path difference is not monotone over the screen span"));
    }
    let (f_lo, f_hi) = (path_difference(scn, lo), path_difference(scn, hi));
    let orders = orders.unwrap_or_else(|| orders_in_span(scn, lo, hi));
    let tol = ROOT_TOL * scn.lambda;

    let mut points = Vec::new();
    let mut missing = Vec::new();
    for n in orders {
        let target = scn.target(n);
        if target < f_lo || target > f_hi {
            missing.push(n);
            continue;
        }
        let (mut a, mut b) = (lo, hi);
        while b - a > tol {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            if path_difference(scn, mid) < target {
                a = mid;
            } else {
                b = mid;
            }
        }
        points.push(AllowedPoint {
            n,
            screen_y: 0.5 * (a + b),
        });
    }
    points.sort_by(|p, q| p.screen_y.total_cmp(&q.screen_y));
    Ok(AllowedPoints { points, missing })
}

/// `|ψ₁ + e^{iδ}ψ₂|²` at one screen position, in `[0, 4]`.
pub fn intensity_at(scn: &SlitScenario, screen_y: f64) -> f64 {
    // global phase e^{−i2πL₁/λ} dropped; only ΔL matters
    let rel = scn.delta - TAU * path_difference(scn, screen_y) / scn.lambda;
    (Complex64::new(1.0, 0.0) + Complex64::from_polar(1.0, rel)).norm_sqr()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FringePattern {
    pub screen_ys: Vec<f64>,
    pub intensity: Vec<f64>,
    /// Interior samples that are local maxima of `intensity`.
    pub maxima: Vec<f64>,
}

pub fn intensity_pattern(scn: &SlitScenario, grid: &UniformGrid) -> FringePattern {
    let screen_ys: Vec<f64> = grid.positions().collect();
    let intensity: Vec<f64> = screen_ys.iter().map(|&y| intensity_at(scn, y)).collect();
    let maxima = (1..intensity.len() - 1)
        .filter(|&i| intensity[i] > intensity[i - 1] && intensity[i] >= intensity[i + 1])
        .map(|i| screen_ys[i])
        .collect();
    FringePattern {
        screen_ys,
        intensity,
        maxima,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FringeMatch {
    pub n: i64,
    pub allowed_y: f64,
    pub maximum_y: Option<f64>,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConsistencyReport {
    pub grid_step: f64,
    pub matches: Vec<FringeMatch>,
    pub max_deviation: f64,
    /// Orders whose allowed point has no maximum within one grid step.
    pub failures: Vec<i64>,
    /// Interior maxima with no allowed point within one grid step.
    pub unexplained_maxima: Vec<f64>,
    pub pass: bool,
}

/// Cross-check [`allowed_points`] against the maxima of [`intensity_pattern`].
///
/// Allowed points are searched one step inside the grid ends. With
/// `orders = None` the check runs both ways: every interior maximum must also
/// sit within one step of an allowed point.
pub fn verify_consistency(
    scn: &SlitScenario,
    orders: Option<RangeInclusive<i64>>,
    grid: &UniformGrid,
) -> Result<ConsistencyReport> {
    let step = grid.step();
    let two_way = orders.is_none();
    let allowed = allowed_points(scn, orders, grid.start() + step, grid.end() - step)?;
    let pattern = intensity_pattern(scn, grid);

    let nearest = |y: f64, set: &mut dyn Iterator<Item = f64>| {
        set.map(|m| (m, (m - y).abs()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
    };

    let mut matches = Vec::with_capacity(allowed.points.len());
    let mut failures = Vec::new();
    for p in &allowed.points {
        let best = nearest(p.screen_y, &mut pattern.maxima.iter().copied());
        let deviation = best.map_or(f64::INFINITY, |b| b.1);
        if deviation > step {
            failures.push(p.n);
        }
        matches.push(FringeMatch {
            n: p.n,
            allowed_y: p.screen_y,
            maximum_y: best.map(|b| b.0),
            deviation,
        });
    }

    let mut unexplained_maxima = Vec::new();
    if two_way {
        let inner = (grid.start() + 2.0 * step)..=(grid.end() - 2.0 * step);
        for &m in pattern.maxima.iter().filter(|m| inner.contains(m)) {
            let best = nearest(m, &mut allowed.points.iter().map(|p| p.screen_y));
            if best.map_or(true, |b| b.1 > step) {
                unexplained_maxima.push(m);
            }
        }
    }

    let max_deviation = matches.iter().map(|m| m.deviation).fold(0.0, f64::max);
    let pass = failures.is_empty() && unexplained_maxima.is_empty();
    Ok(ConsistencyReport {
        grid_step: step,
        matches,
        max_deviation,
        failures,
        unexplained_maxima,
        pass,
    })
}
