//! Numerical model of a point particle moving under several proper times.
//!
//! - [`kinematics`]: world lines under `τ` and `σ`, de Broglie periodicities
//! - [`phase_loops`]: loop coordinates, plane waves, packets, detection densities
//! - [`interference`]: double-slit allowed points and intensity patterns
//! - [`string_dynamics`]: string-type Lagrangian, constraints, leapfrog evolver
//! - [`metric6d`]: six-dimensional metric and wave-equation residuals
//! - [`causality`]: universal time, happens-before order, world-line switch
//! - [`scenario`]: JSON scenarios, runs and CSV/JSON artifacts
//!
//! All quantities default to natural units (`ħ = c = 1`).

pub mod causality;
pub mod constants;
pub mod convergence;
pub mod error;
pub mod grid;
pub mod kinematics;
pub mod metric6d;
pub mod interference;
pub mod phase_loops;
pub mod scenario;
pub mod string_dynamics;

pub use constants::PhysicalConstants;
pub use error::{Error, Result};
