//! Uniform 1-D sample grids and trapezoidal quadrature.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `points` equally spaced samples covering `[start, end]` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UniformGrid {
    start: f64,
    end: f64,
    points: usize,
}

impl UniformGrid {
    pub fn new(start: f64, end: f64, points: usize) -> Result<Self> {
        if !(start.is_finite() && end.is_finite() && end > start) {
            return Err(Error::invalid("grid", format!("need finite start < end, got [{start}, {end}]")));
        }
        if points < 3 {
            return Err(Error::invalid("grid", format!("need at least 3 points, got {points}")));
        }
        Ok(Self { start, end, points })
    }

    /// Grid symmetric about zero.
    pub fn symmetric(half_width: f64, points: usize) -> Result<Self> {
        Self::new(-half_width, half_width, points)
    }

    /// Grid whose step does not exceed `max_step`.
    pub fn with_max_step(start: f64, end: f64, max_step: f64) -> Result<Self> {
        if !(max_step > 0.0) {
            return Err(Error::invalid("grid", "step must be positive"));
        }
        let intervals = ((end - start) / max_step).ceil() as usize;
        Self::new(start, end, intervals.max(2) + 1)
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn end(&self) -> f64 {
        self.end
    }

    pub fn len(&self) -> usize {
        self.points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn step(&self) -> f64 {
        (self.end - self.start) / (self.points - 1) as f64
    }

    pub fn at(&self, i: usize) -> f64 {
        if i + 1 == self.points {
            self.end
        } else {
            self.start + i as f64 * self.step()
        }
    }

    pub fn positions(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.points).map(move |i| self.at(i))
    }

    /// Trapezoidal rule over samples taken at [`positions`](Self::positions).
    pub fn trapezoid(&self, values: &[f64]) -> f64 {
        assert_eq!(values.len(), self.points, "sample count must match grid");
        let interior: f64 = values[1..self.points - 1].iter().sum();
        self.step() * (interior + 0.5 * (values[0] + values[self.points - 1]))
    }
}

#[cfg(test)]
mod tests {
    use approx::assert_relative_eq;

    use super::*;

    #[test]
    fn endpoints_exact() {
        let g = UniformGrid::new(-1.0, 3.0, 11).unwrap();
        assert_eq!(g.at(0), -1.0);
        assert_eq!(g.at(10), 3.0);
        assert_relative_eq!(g.step(), 0.4);
    }

    #[test]
    fn trapezoid_is_exact_for_linear() {
        let g = UniformGrid::new(0.0, 2.0, 5).unwrap();
        let v: Vec<f64> = g.positions().map(|x| 3.0 * x + 1.0).collect();
        assert_relative_eq!(g.trapezoid(&v), 8.0, max_relative = 1e-15);
    }

    #[test]
    fn max_step_respected() {
        let g = UniformGrid::with_max_step(-1.0, 1.0, 0.03).unwrap();
        assert!(g.step() <= 0.03);
    }

    #[test]
    fn rejects_bad_bounds() {
        assert!(UniformGrid::new(1.0, 1.0, 10).is_err());
        assert!(UniformGrid::new(0.0, 1.0, 2).is_err());
    }
}
