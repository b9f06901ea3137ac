use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{ScenarioError, ScenarioKind, ScenarioResult};
use crate::constants::PhysicalConstants;
use crate::error::Error;
use crate::interference::SlitScenario;
use crate::kinematics::{sigma_speed_scalar, ParticleState, Vec3};
use crate::phase_loops::GaussianPacket;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Parameters {
    Worldline(WorldlineParams),
    Wave(WaveParams),
    Slit(SlitParams),
    Pde(PdeParams),
    Metric(MetricParams),
    Causality(CausalityParams),
}

impl Parameters {
    pub fn defaults(kind: ScenarioKind) -> Self {
        match kind {
            ScenarioKind::Worldline => Parameters::Worldline(WorldlineParams::default()),
            ScenarioKind::Wave => Parameters::Wave(WaveParams::default()),
            ScenarioKind::Slit => Parameters::Slit(SlitParams::default()),
            ScenarioKind::Pde => Parameters::Pde(PdeParams::default()),
            ScenarioKind::Metric => Parameters::Metric(MetricParams::default()),
            ScenarioKind::Causality => Parameters::Causality(CausalityParams::default()),
        }
    }

    pub(crate) fn parse(kind: ScenarioKind, text: &str) -> serde_json::Result<Self> {
        Ok(match kind {
            ScenarioKind::Worldline => Parameters::Worldline(serde_json::from_str(text)?),
            ScenarioKind::Wave => Parameters::Wave(serde_json::from_str(text)?),
            ScenarioKind::Slit => {
                let mut p: SlitParams = serde_json::from_str(text)?;
                if p.lambda.is_none() && p.particle.is_none() {
                    p.lambda = Some(DEFAULT_LAMBDA);
                }
                Parameters::Slit(p)
            }
            ScenarioKind::Pde => Parameters::Pde(serde_json::from_str(text)?),
            ScenarioKind::Metric => Parameters::Metric(serde_json::from_str(text)?),
            ScenarioKind::Causality => Parameters::Causality(serde_json::from_str(text)?),
        })
    }

    pub fn kind(&self) -> ScenarioKind {
        match self {
            Parameters::Worldline(_) => ScenarioKind::Worldline,
            Parameters::Wave(_) => ScenarioKind::Wave,
            Parameters::Slit(_) => ScenarioKind::Slit,
            Parameters::Pde(_) => ScenarioKind::Pde,
            Parameters::Metric(_) => ScenarioKind::Metric,
            Parameters::Causality(_) => ScenarioKind::Causality,
        }
    }

    /// Scale the main grid or sample count. The metric kind has none.
    pub(crate) fn set_resolution(&mut self, n: usize) {
        match self {
            Parameters::Worldline(p) => p.samples = n,
            Parameters::Wave(p) => p.points = n,
            Parameters::Slit(p) => p.step_fraction = n as f64,
            Parameters::Pde(p) => p.base_n_phi = n,
            Parameters::Metric(_) => {}
            Parameters::Causality(p) => {
                p.pairs = n;
                p.triples = n;
            }
        }
    }

    pub fn validate(&self, k: &PhysicalConstants) -> ScenarioResult<()> {
        match self {
            Parameters::Worldline(p) => p.validate(k),
            Parameters::Wave(p) => p.validate(k),
            Parameters::Slit(p) => p.validate(k),
            Parameters::Pde(p) => p.validate(k),
            Parameters::Metric(p) => p.validate(k),
            Parameters::Causality(p) => p.validate(),
        }
    }
}

fn field(name: &str) -> String {
    format!("parameters.{name}")
}

fn module_error(name: &str, e: Error) -> ScenarioError {
    ScenarioError::validation(field(name), e.to_string())
}

fn require(ok: bool, name: &str, constraint: impl Into<String>) -> ScenarioResult<()> {
    if ok {
        Ok(())
    } else {
        Err(ScenarioError::validation(field(name), constraint))
    }
}

fn positive(v: f64, name: &str) -> ScenarioResult<()> {
    require(v.is_finite() && v > 0.0, name, format!("must be finite and > 0, got {v}"))
}

fn span(s: [f64; 2], name: &str) -> ScenarioResult<()> {
    require(
        s[0].is_finite() && s[1].is_finite() && s[0] < s[1],
        name,
        format!("need finite lo < hi, got [{}, {}]", s[0], s[1]),
    )
}

/// Massive state with the field blamed on failure named `u_field`.
pub(crate) fn massive_state(m0: f64, u: [f64; 3], k: &PhysicalConstants, u_field: &str) -> ScenarioResult<ParticleState> {
    positive(m0, "m0")?;
    let state = ParticleState::massive(m0, Vec3::from(u), *k).map_err(|e| module_error(u_field, e))?;
    sigma_speed_scalar(&state).map_err(|e| module_error(u_field, e))?;
    Ok(state)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct WorldlineParams {
    pub m0: f64,
    pub u: [f64; 3],
    pub tau_span: [f64; 2],
    pub sigma_span: [f64; 2],
    /// Samples per proper-time axis.
    pub samples: usize,
}

impl Default for WorldlineParams {
    fn default() -> Self {
        Self {
            m0: 1.0,
            u: [0.6, 0.0, 0.0],
            tau_span: [-1.0, 1.0],
            sigma_span: [-1.0, 1.0],
            samples: 21,
        }
    }
}

impl WorldlineParams {
    pub fn state(&self, k: &PhysicalConstants) -> ScenarioResult<ParticleState> {
        massive_state(self.m0, self.u, k, "u")
    }

    fn validate(&self, k: &PhysicalConstants) -> ScenarioResult<()> {
        self.state(k)?;
        span(self.tau_span, "tau_span")?;
        span(self.sigma_span, "sigma_span")?;
        require(self.samples >= 2, "samples", "need at least 2")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct WaveParams {
    pub m0: f64,
    pub center_momentum: f64,
    /// Momentum spreads `Δp`, one packet each.
    pub spreads: Vec<f64>,
    /// Position samples per packet.
    pub points: usize,
    pub half_components: usize,
    pub span_sigmas: f64,
}

impl Default for WaveParams {
    fn default() -> Self {
        Self {
            m0: 1.0,
            center_momentum: 0.5,
            spreads: vec![0.125, 0.25, 0.5, 1.0, 2.0, 4.0],
            points: 2001,
            half_components: 100,
            span_sigmas: 8.0,
        }
    }
}

impl WaveParams {
    pub fn packet(&self, spread: f64, k: &PhysicalConstants) -> GaussianPacket {
        GaussianPacket {
            half_components: self.half_components,
            span_sigmas: self.span_sigmas,
            ..GaussianPacket::new(self.m0, self.center_momentum, spread, *k)
        }
    }

    fn validate(&self, k: &PhysicalConstants) -> ScenarioResult<()> {
        positive(self.m0, "m0")?;
        require(self.center_momentum.is_finite(), "center_momentum", "must be finite")?;
        require(!self.spreads.is_empty(), "spreads", "need at least one spread")?;
        for &s in &self.spreads {
            positive(s, "spreads")?;
        }
        positive(self.span_sigmas, "span_sigmas")?;
        require(self.half_components >= 1, "half_components", "need at least 1")?;
        require(self.points >= 3, "points", "need at least 3")?;
        self.packet(self.spreads[0], k)
            .domain(self.points)
            .map_err(|e| module_error("points", e))?;
        Ok(())
    }
}

pub const DEFAULT_LAMBDA: f64 = 0.1;

/// Source of the wavelength when `lambda` is absent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParticleSource {
    pub m0: f64,
    pub u: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SlitParams {
    pub slit_x: f64,
    pub slit_sep: f64,
    pub screen_x: f64,
    /// Missing together with `particle` means [`DEFAULT_LAMBDA`].
    #[serde(default)]
    pub lambda: Option<f64>,
    pub particle: Option<ParticleSource>,
    /// Slit-2 loop phase offsets, one pattern each.
    pub deltas: Vec<f64>,
    /// Screen positions span `[−half_width, half_width]`.
    pub half_width: f64,
    /// Grid step is at most `λ / step_fraction`.
    pub step_fraction: f64,
}

impl Default for SlitParams {
    fn default() -> Self {
        Self {
            slit_x: 1.0,
            slit_sep: 1.0,
            screen_x: 11.0,
            lambda: Some(DEFAULT_LAMBDA),
            particle: None,
            deltas: vec![0.0, PI],
            half_width: 5.0,
            step_fraction: 50.0,
        }
    }
}

impl SlitParams {
    pub fn wavelength(&self, k: &PhysicalConstants) -> ScenarioResult<f64> {
        match (self.lambda, &self.particle) {
            (Some(l), None) => Ok(l),
            (None, Some(src)) => {
                let state = massive_state(src.m0, src.u, k, "particle.u")?;
                let db = crate::kinematics::de_broglie(&state).map_err(|e| module_error("particle", e))?;
                Ok(db.wavelength)
            }
            _ => Err(ScenarioError::validation(
                field("lambda"),
                "give exactly one of `lambda` and `particle`",
            )),
        }
    }

    pub fn slit(&self, delta: f64, k: &PhysicalConstants) -> ScenarioResult<SlitScenario> {
        let lambda = self.wavelength(k)?;
        SlitScenario::new(self.slit_x, self.slit_sep, self.screen_x, delta, lambda).map_err(|e| match e {
            Error::InvalidParameter { field: f, reason } => ScenarioError::validation(field(f), reason),
            other => module_error("slit", other),
        })
    }

    fn validate(&self, k: &PhysicalConstants) -> ScenarioResult<()> {
        require(!self.deltas.is_empty(), "deltas", "need at least one δ")?;
        for &d in &self.deltas {
            require(d.is_finite(), "deltas", "must be finite")?;
            self.slit(d, k)?;
        }
        positive(self.half_width, "half_width")?;
        require(
            self.step_fraction.is_finite() && self.step_fraction >= 1.0,
            "step_fraction",
            format!("must be ≥ 1, got {}", self.step_fraction),
        )?;
        let lambda = self.wavelength(k)?;
        let points = 2.0 * self.half_width * self.step_fraction / lambda;
        require(points <= 5e7, "step_fraction", format!("screen grid would need {points:.0} points"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PdeParams {
    /// Coarsest `φ` resolution of the refinement sequence.
    pub base_n_phi: usize,
    /// Number of resolutions, each doubling the last.
    pub levels: usize,
    /// `hτ / hφ` for the standing-wave runs.
    pub courant: f64,
    /// Evolution horizon in units of `2π`.
    pub periods: f64,
    pub energy_n_phi: usize,
    pub traveling_n_phi: usize,
    /// Loop mass of the analytic sheet mode.
    pub mode_m0: f64,
}

impl Default for PdeParams {
    fn default() -> Self {
        Self {
            base_n_phi: 64,
            levels: 3,
            courant: 0.5,
            periods: 1.0,
            energy_n_phi: 256,
            traveling_n_phi: 64,
            mode_m0: 1.0,
        }
    }
}

impl PdeParams {
    fn validate(&self, k: &PhysicalConstants) -> ScenarioResult<()> {
        require(self.base_n_phi >= 8, "base_n_phi", "need at least 8")?;
        require(self.levels >= 2, "levels", "need at least 2 resolutions")?;
        require(
            self.base_n_phi.checked_shl(self.levels as u32 - 1).is_some_and(|n| n <= 1 << 14),
            "levels",
            "finest resolution exceeds 16384 cells",
        )?;
        require(
            self.courant.is_finite() && self.courant > 0.0 && self.courant <= 1.0,
            "courant",
            format!("leapfrog needs 0 < hτ/hφ ≤ 1, got {}", self.courant),
        )?;
        positive(self.periods, "periods")?;
        require(self.periods <= 64.0, "periods", "at most 64")?;
        require(self.energy_n_phi >= 8, "energy_n_phi", "need at least 8")?;
        require(self.traveling_n_phi >= 8, "traveling_n_phi", "need at least 8")?;
        positive(self.mode_m0, "mode_m0")?;
        let wn = crate::string_dynamics::mode_wavenumber(self.mode_m0, k);
        require(
            wn.round() != 0.0 && (wn - wn.round()).abs() <= 1e-12,
            "mode_m0",
            format!("mode wavenumber m0 c²/ħ = {wn} must be a nonzero integer"),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MetricParams {
    pub m0: f64,
    pub momentum: [f64; 3],
    /// Off-shell wave uses this multiple of the on-shell energy.
    pub off_shell_factor: f64,
    /// Decreasing finite-difference steps for the order estimate.
    pub steps: Vec<f64>,
    pub check_step: f64,
    pub point: [f64; 6],
}

impl Default for MetricParams {
    fn default() -> Self {
        Self {
            m0: 1.0,
            momentum: [0.75, 0.0, 0.0],
            off_shell_factor: 2.0,
            steps: vec![0.2, 0.1, 0.05],
            check_step: 1e-3,
            point: [0.0; 6],
        }
    }
}

impl MetricParams {
    fn validate(&self, k: &PhysicalConstants) -> ScenarioResult<()> {
        positive(self.m0, "m0")?;
        require(self.momentum.iter().all(|p| p.is_finite()), "momentum", "must be finite")?;
        positive(self.off_shell_factor, "off_shell_factor")?;
        require(self.off_shell_factor != 1.0, "off_shell_factor", "must differ from 1")?;
        require(self.steps.len() >= 2, "steps", "need at least 2 steps")?;
        for &h in &self.steps {
            positive(h, "steps")?;
        }
        require(
            self.steps.windows(2).all(|w| w[1] < w[0]),
            "steps",
            "must be strictly decreasing",
        )?;
        positive(self.check_step, "check_step")?;
        require(self.point.iter().all(|x| x.is_finite()), "point", "must be finite")?;
        crate::phase_loops::PlaneWave::on_shell(self.m0, self.on_shell_energy(k), Vec3::from(self.momentum), *k, 0.0)
            .map_err(|e| module_error("momentum", e))?;
        Ok(())
    }

    pub fn on_shell_energy(&self, k: &PhysicalConstants) -> f64 {
        let c = k.c();
        let p2 = Vec3::from(self.momentum).norm_squared();
        (p2 * c * c + (self.m0 * c * c).powi(2)).sqrt()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CausalityParams {
    pub m0: f64,
    /// Range of `|u|/c` for sampled states.
    pub speed_range: [f64; 2],
    pub pairs: usize,
    pub triples: usize,
    /// Events are drawn from `[−extent, extent]²` in `(τ, σ)`.
    pub extent: f64,
    /// Half the draws snap to this lattice so ties occur; 0 disables.
    pub lattice: f64,
    /// Largest momentum kick per collapse check, in units of `m0 c`.
    pub max_kick: f64,
    /// Events written to the log.
    pub log_events: usize,
}

impl Default for CausalityParams {
    fn default() -> Self {
        Self {
            m0: 1.0,
            speed_range: [0.05, 0.95],
            pairs: 10_000,
            triples: 10_000,
            extent: 5.0,
            lattice: 0.5,
            max_kick: 1.0,
            log_events: 16,
        }
    }
}

impl CausalityParams {
    fn validate(&self) -> ScenarioResult<()> {
        positive(self.m0, "m0")?;
        let [lo, hi] = self.speed_range;
        require(
            lo > 0.0 && lo <= hi && hi < 1.0,
            "speed_range",
            if hi >= 1.0 {
                format!("speed exceeds c: need 0 < lo ≤ hi < 1, got [{lo}, {hi}]")
            } else {
                format!("need 0 < lo ≤ hi < 1, got [{lo}, {hi}]")
            },
        )?;
        require(self.pairs >= 1, "pairs", "need at least 1")?;
        require(self.triples >= 1, "triples", "need at least 1")?;
        positive(self.extent, "extent")?;
        require(self.lattice.is_finite() && self.lattice >= 0.0, "lattice", "must be ≥ 0")?;
        require(self.max_kick.is_finite() && self.max_kick >= 0.0, "max_kick", "must be ≥ 0")?;
        require(self.log_events <= 1000, "log_events", "at most 1000")
    }
}
