//! Physical constants context shared by every module.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::error::{Error, Result};

/// Reduced Planck constant in J·s.
pub const SI_HBAR: f64 = 1.054_571_817e-34;
/// Speed of light in m/s.
pub const SI_C: f64 = 299_792_458.0;

/// `ħ`, `c` and the derived `h = 2πħ`.
///
/// `h` is only ever computed in [`PhysicalConstants::new`], so every module
/// sees the same value bit for bit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalConstants {
    hbar: f64,
    c: f64,
    h: f64,
}

impl PhysicalConstants {
    pub fn new(hbar: f64, c: f64) -> Result<Self> {
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(Error::invalid("hbar", format!("must be finite and > 0, got {hbar}")));
        }
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::invalid("c", format!("must be finite and > 0, got {c}")));
        }
        Ok(Self {
            hbar,
            c,
            h: TAU * hbar,
        })
    }

    /// ħ = c = 1.
    pub fn natural() -> Self {
        Self {
            hbar: 1.0,
            c: 1.0,
            h: TAU,
        }
    }

    pub fn si() -> Self {
        Self::new(SI_HBAR, SI_C).expect("SI constants are valid")
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn h(&self) -> f64 {
        self.h
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::natural()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_is_two_pi_hbar() {
        let k = PhysicalConstants::new(0.37, 2.0).unwrap();
        assert_eq!(k.h(), TAU * 0.37);
        assert_eq!(PhysicalConstants::natural().h(), TAU);
        assert_eq!(PhysicalConstants::si().h(), TAU * SI_HBAR);
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(PhysicalConstants::new(0.0, 1.0).is_err());
        assert!(PhysicalConstants::new(1.0, -1.0).is_err());
        assert!(PhysicalConstants::new(f64::NAN, 1.0).is_err());
    }
}
