//! Event ordering on the `(τ, σ)` proper-time plane.
//!
//! Both proper times advance the universal time `t = γ_u τ + γ_σ σ`, so
//! componentwise dominance in `(τ, σ)` implies order in `t`. Pairs whose `τ`
//! and `σ` orderings disagree get no order at all. An interaction moves the
//! particle onto a new `τ` world line through [`collapse_worldline`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kinematics::{gamma_sigma, gamma_u, momentum_energy, worldline_position, ParticleState, ProperTimePoint, SpacetimePoint, Vec3};

/// `t(τ, σ)` with the origin at zero.
pub fn universal_time(state: &ParticleState, tau: f64, sigma: f64) -> Result<f64> {
    let pt = ProperTimePoint::new(tau, sigma, 0.0);
    Ok(worldline_position(state, &pt, &SpacetimePoint::origin())?.t)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MptEvent {
    label: String,
    tau: f64,
    sigma: f64,
    #[serde(skip)]
    state: ParticleState,
    t: f64,
}

impl MptEvent {
    pub fn new(label: impl Into<String>, state: &ParticleState, tau: f64, sigma: f64) -> Result<Self> {
        Ok(Self {
            label: label.into(),
            tau,
            sigma,
            state: *state,
            t: universal_time(state, tau, sigma)?,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn state(&self) -> &ParticleState {
        &self.state
    }

    /// Universal time of the event.
    pub fn t(&self) -> f64 {
        self.t
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum OrderVerdict {
    Before,
    After,
    Concurrent,
    /// `τ` and `σ` orderings disagree.
    Indeterminate,
}

pub fn precedes(e1: &MptEvent, e2: &MptEvent) -> Result<OrderVerdict> {
    if e1.state != e2.state {
        return Err(Error::contract(format!(
            "events `{}` and `{}` lie on different particle states",
            e1.label, e2.label
        )));
    }
    let (dt, ds) = (e2.tau - e1.tau, e2.sigma - e1.sigma);
    let verdict = if dt == 0.0 && ds == 0.0 {
        OrderVerdict::Concurrent
    } else if dt >= 0.0 && ds >= 0.0 {
        OrderVerdict::Before
    } else if dt <= 0.0 && ds <= 0.0 {
        OrderVerdict::After
    } else {
        OrderVerdict::Indeterminate
    };
    if matches!(verdict, OrderVerdict::Before | OrderVerdict::After) {
        // same sign as t2 − t1, free of cancellation in t itself
        let lapse = gamma_u(&e1.state)? * dt + gamma_sigma(&e1.state)? * ds;
        let ordered = match verdict {
            OrderVerdict::Before => lapse > 0.0,
            _ => lapse < 0.0,
        };
        assert!(ordered, "verdict {verdict:?} disagrees with universal time");
    }
    Ok(verdict)
}

/// Continue on a new world line after a momentum kick `dp`.
///
/// The velocity is recovered from `u = p c²/E`, `E = √(p²c² + m0²c⁴)`.
pub fn collapse_worldline(state: &ParticleState, dp: Vec3) -> Result<ParticleState> {
    if state.is_massless() {
        return Err(Error::contract("world-line switch is defined for massive particles only"));
    }
    let k = *state.constants();
    let c = k.c();
    let p = momentum_energy(state)?.momentum + dp;
    let energy = (p.norm_squared() * c * c + (state.m0() * c * c).powi(2)).sqrt();
    let u = p * (c * c / energy);
    assert!(u.norm() < c, "momentum inversion produced |u| ≥ c");
    ParticleState::massive(state.m0(), u, k)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EventRecord<'a> {
    pub label: &'a str,
    pub tau: f64,
    pub sigma: f64,
    pub t: f64,
    /// Labels of events this one happens before.
    pub before: Vec<&'a str>,
}

/// One JSON object per line, with happens-before edges.
pub fn event_log_jsonl(events: &[MptEvent]) -> Result<String> {
    let mut out = String::new();
    for e in events {
        let mut before = Vec::new();
        for other in events {
            if precedes(e, other)? == OrderVerdict::Before {
                before.push(other.label.as_str());
            }
        }
        let record = EventRecord {
            label: &e.label,
            tau: e.tau,
            sigma: e.sigma,
            t: e.t,
            before,
        };
        out.push_str(&serde_json::to_string(&record).expect("event record serializes"));
        out.push('\n');
    }
    Ok(out)
}
