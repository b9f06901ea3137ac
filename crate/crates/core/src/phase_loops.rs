//! Loop coordinates `x₄`, `x₅`, plane waves and detection probabilities.
//!
//! A free particle circles the unit loop `x₄ = e^{iφ}` with `φ = m0 c² τ / ħ`.
//! Along its world line this is the plane wave `e^{i(Et − p·x)/ħ}`; the `x₅`
//! loop runs the opposite way. The chance of meeting the particle at a point
//! is the product of the two loop matches, `ψψ*`.
//!
//! Superpositions are finite sums of plane waves. Densities are normalised
//! with the trapezoidal rule over a 1-D detection domain on the x axis.

use num_complex::Complex64;
use serde::Serialize;

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::grid::UniformGrid;
use crate::kinematics::{momentum_energy, wrap_angle, ParticleState, SpacetimePoint, Vec3};

/// Relative tolerance of the on-shell check at construction.
pub const ON_SHELL_TOL: f64 = 1e-12;
/// Tail mass above which an expectation is flagged as truncated.
pub const TAIL_MASS_WARN: f64 = 1e-6;

/// Loop phase `m0 c² τ / ħ` wrapped to `[0, 2π)`.
pub fn phi_of_tau(m0: f64, tau: f64, constants: &PhysicalConstants) -> f64 {
    let c = constants.c();
    wrap_angle(m0 * c * c * tau / constants.hbar())
}

/// Point on the unit loop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoopCoordinate(Complex64);

impl LoopCoordinate {
    pub fn from_angle(angle: f64) -> Self {
        Self(Complex64::from_polar(1.0, angle))
    }

    pub fn value(&self) -> Complex64 {
        self.0
    }

    pub fn angle(&self) -> f64 {
        self.0.arg()
    }

    pub fn conj(&self) -> Self {
        Self(self.0.conj())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlaneWave {
    energy: f64,
    momentum: Vec3,
    phase0: f64,
    constants: PhysicalConstants,
}

impl PlaneWave {
    /// The wave carried by a massive particle state.
    pub fn from_state(state: &ParticleState, phase0: f64) -> Result<Self> {
        let me = momentum_energy(state)?;
        Ok(Self {
            energy: me.energy,
            momentum: me.momentum,
            phase0,
            constants: *state.constants(),
        })
    }

    /// Wave with explicit `(E, p)`, checked against the mass shell of `m0`.
    pub fn on_shell(
        m0: f64,
        energy: f64,
        momentum: Vec3,
        constants: PhysicalConstants,
        phase0: f64,
    ) -> Result<Self> {
        let c = constants.c();
        let lhs = energy * energy - momentum.norm_squared() * c * c;
        let rhs = (m0 * c * c).powi(2);
        let scale = (energy * energy).max(f64::MIN_POSITIVE);
        if (lhs - rhs).abs() > ON_SHELL_TOL * scale {
            return Err(Error::contract(format!(
                "plane wave off shell: E² − p²c² = {lhs}, m0²c⁴ = {rhs}"
            )));
        }
        Ok(Self::off_shell(energy, momentum, constants, phase0))
    }

    /// Wave with arbitrary `(E, p)`; no mass-shell check.
    pub fn off_shell(energy: f64, momentum: Vec3, constants: PhysicalConstants, phase0: f64) -> Self {
        Self {
            energy,
            momentum,
            phase0,
            constants,
        }
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn momentum(&self) -> Vec3 {
        self.momentum
    }

    pub fn phase0(&self) -> f64 {
        self.phase0
    }

    pub fn constants(&self) -> &PhysicalConstants {
        &self.constants
    }

    /// `(E t − p·x)/ħ + phase0`, unwrapped.
    pub fn phase(&self, pt: &SpacetimePoint) -> f64 {
        (self.energy * pt.t - self.momentum.dot(&pt.x)) / self.constants.hbar() + self.phase0
    }
}

pub fn x4_of(wave: &PlaneWave, pt: &SpacetimePoint) -> LoopCoordinate {
    LoopCoordinate::from_angle(wave.phase(pt))
}

pub fn x5_of(wave: &PlaneWave, pt: &SpacetimePoint) -> LoopCoordinate {
    LoopCoordinate::from_angle(-wave.phase(pt))
}

/// Time slice `t` of the x axis, sampled on `grid`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DetectionDomain {
    pub t: f64,
    pub grid: UniformGrid,
}

impl DetectionDomain {
    pub fn new(t: f64, grid: UniformGrid) -> Self {
        Self { t, grid }
    }

    pub fn point(&self, x: f64) -> SpacetimePoint {
        SpacetimePoint::on_axis(self.t, x)
    }

    pub fn points(&self) -> impl Iterator<Item = SpacetimePoint> + '_ {
        self.grid.positions().map(move |x| self.point(x))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WavePacket {
    components: Vec<(Complex64, PlaneWave)>,
    normalized_on: Option<DetectionDomain>,
}

/// Sum of amplitude-weighted plane waves.
pub fn superpose(waves: Vec<(Complex64, PlaneWave)>) -> Result<WavePacket> {
    if waves.is_empty() {
        return Err(Error::contract("cannot superpose an empty list of waves"));
    }
    Ok(WavePacket {
        components: waves,
        normalized_on: None,
    })
}

impl WavePacket {
    pub fn components(&self) -> &[(Complex64, PlaneWave)] {
        &self.components
    }

    pub fn normalized_on(&self) -> Option<&DetectionDomain> {
        self.normalized_on.as_ref()
    }

    /// `Ψ = Σ a_n x₄(ψ_n)`.
    pub fn psi(&self, pt: &SpacetimePoint) -> Complex64 {
        self.components
            .iter()
            .map(|(a, w)| a * x4_of(w, pt).value())
            .sum()
    }

    /// `Σ a_n* x₅(ψ_n)`, the `x₅` loop sum. Equals `Ψ*`.
    pub fn psi_x5(&self, pt: &SpacetimePoint) -> Complex64 {
        self.components
            .iter()
            .map(|(a, w)| a.conj() * x5_of(w, pt).value())
            .sum()
    }

    /// `|Ψ|²` without any normalisation requirement.
    pub fn density(&self, pt: &SpacetimePoint) -> f64 {
        self.psi(pt).norm_sqr()
    }

    pub fn densities(&self, domain: &DetectionDomain) -> Vec<f64> {
        domain.points().map(|p| self.density(&p)).collect()
    }

    /// `∫|Ψ|²` over the domain.
    pub fn norm_on(&self, domain: &DetectionDomain) -> f64 {
        domain.grid.trapezoid(&self.densities(domain))
    }

    /// Rescale amplitudes so that `∫|Ψ|² = 1` over `domain`.
    pub fn normalized(mut self, domain: &DetectionDomain) -> Result<Self> {
        let norm = self.norm_on(domain);
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::contract(format!("packet has no mass on the domain (∫|Ψ|² = {norm})")));
        }
        let scale = 1.0 / norm.sqrt();
        for (a, _) in &mut self.components {
            *a *= scale;
        }
        self.normalized_on = Some(*domain);
        Ok(self)
    }

    fn require_normalized(&self) -> Result<&DetectionDomain> {
        self.normalized_on
            .as_ref()
            .ok_or_else(|| Error::contract("packet is not normalized over a detection domain"))
    }
}

/// `P = ΨΨ*` at `pt` for a normalised packet.
pub fn detection_probability(packet: &WavePacket, pt: &SpacetimePoint) -> Result<f64> {
    packet.require_normalized()?;
    let p = packet.psi(pt) * packet.psi_x5(pt);
    Ok(p.re.max(0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Expectation {
    pub value: f64,
    /// Probability mass near the grid edges plus any mass missing from the grid.
    pub tail_mass: f64,
    /// Set when `tail_mass` exceeds [`TAIL_MASS_WARN`].
    pub truncated: bool,
}

/// Fraction of the grid at each end counted as tail.
const TAIL_BAND: usize = 16;

fn tail_mass(grid: &UniformGrid, density: &[f64], total: f64) -> f64 {
    let n = grid.len();
    let band = (n / TAIL_BAND).max(1);
    let h = grid.step();
    let edge: f64 = density[..band].iter().chain(&density[n - band..]).sum::<f64>() * h;
    edge.max((1.0 - total).abs())
}

/// `⟨F⟩ = ∫ F(x) |Ψ(x)|² dx` on the domain's grid.
pub fn expectation<F>(packet: &WavePacket, observable: F, domain: &DetectionDomain) -> Result<Expectation>
where
    F: Fn(f64) -> f64,
{
    packet.require_normalized()?;
    let density = packet.densities(domain);
    Ok(expectation_from_density(&domain.grid, &density, observable))
}

fn expectation_from_density<F>(grid: &UniformGrid, density: &[f64], observable: F) -> Expectation
where
    F: Fn(f64) -> f64,
{
    let total = grid.trapezoid(density);
    let weighted: Vec<f64> = grid
        .positions()
        .zip(density)
        .map(|(x, d)| observable(x) * d)
        .collect();
    let tail = tail_mass(grid, density, total);
    Expectation {
        value: grid.trapezoid(&weighted),
        tail_mass: tail,
        truncated: tail > TAIL_MASS_WARN,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Spread {
    Bounded(f64),
    /// Fixed momentum: the particle is spread over all space.
    Unbounded,
}

impl Spread {
    pub fn value(&self) -> Option<f64> {
        match self {
            Spread::Bounded(v) => Some(*v),
            Spread::Unbounded => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Uncertainty {
    pub dx: Spread,
    pub dp: f64,
    /// `Δx·Δp`, absent when `Δx` is unbounded.
    pub product: Option<f64>,
    pub mean_x: f64,
    pub truncated: bool,
}

/// `Δx` from the position density on the domain, `Δp` from the
/// `|a|²`-weighted spread of the component momenta along x.
pub fn uncertainty_product(packet: &WavePacket, domain: &DetectionDomain) -> Result<Uncertainty> {
    packet.require_normalized()?;

    // merge components sharing a momentum before weighting
    let mut modes: Vec<(f64, Complex64)> = Vec::new();
    for (a, w) in &packet.components {
        let p = w.momentum()[0];
        match modes.iter_mut().find(|(q, _)| *q == p) {
            Some((_, amp)) => *amp += a,
            None => modes.push((p, *a)),
        }
    }
    let weight: f64 = modes.iter().map(|(_, a)| a.norm_sqr()).sum();
    let mean_p = modes.iter().map(|(p, a)| p * a.norm_sqr()).sum::<f64>() / weight;
    let var_p = modes
        .iter()
        .map(|(p, a)| (p - mean_p).powi(2) * a.norm_sqr())
        .sum::<f64>()
        / weight;
    let dp = var_p.max(0.0).sqrt();

    let density = packet.densities(domain);
    let mean = expectation_from_density(&domain.grid, &density, |x| x);
    if modes.len() == 1 {
        return Ok(Uncertainty {
            dx: Spread::Unbounded,
            dp: 0.0,
            product: None,
            mean_x: mean.value,
            truncated: true,
        });
    }
    let var = expectation_from_density(&domain.grid, &density, |x| (x - mean.value).powi(2));
    let dx = var.value.max(0.0).sqrt();
    Ok(Uncertainty {
        dx: Spread::Bounded(dx),
        dp,
        product: Some(dx * dp),
        mean_x: mean.value,
        truncated: mean.truncated,
    })
}

/// Discrete Gaussian comb of plane waves along x, centred on `x = 0` at `t = 0`.
///
/// Component momenta are `p0 + k δp` for `|k| ≤ half_components`, spanning
/// `±span_sigmas` momentum standard deviations, with real amplitudes
/// `exp(−(p − p0)²/(4 Δp²))`. The resulting position width is `ħ/(2Δp)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussianPacket {
    pub m0: f64,
    pub center_momentum: f64,
    pub momentum_spread: f64,
    pub half_components: usize,
    pub span_sigmas: f64,
    pub constants: PhysicalConstants,
}

impl GaussianPacket {
    pub fn new(m0: f64, center_momentum: f64, momentum_spread: f64, constants: PhysicalConstants) -> Self {
        Self {
            m0,
            center_momentum,
            momentum_spread,
            half_components: 100,
            span_sigmas: 8.0,
            constants,
        }
    }

    /// Minimum-uncertainty position width `ħ/(2Δp)`.
    pub fn position_width(&self) -> f64 {
        self.constants.hbar() / (2.0 * self.momentum_spread)
    }

    /// Domain at `t = 0` spanning `±span_sigmas` position widths.
    pub fn domain(&self, points: usize) -> Result<DetectionDomain> {
        let grid = UniformGrid::symmetric(self.span_sigmas * self.position_width(), points)?;
        Ok(DetectionDomain::new(0.0, grid))
    }

    pub fn build(&self) -> Result<WavePacket> {
        if !(self.momentum_spread > 0.0) {
            return Err(Error::invalid("momentum_spread", "must be > 0"));
        }
        if self.half_components == 0 {
            return Err(Error::invalid("half_components", "must be > 0"));
        }
        if !(self.m0 > 0.0) {
            return Err(Error::invalid("m0", "must be > 0"));
        }
        let c = self.constants.c();
        let k_max = self.half_components as i64;
        let dp = self.span_sigmas * self.momentum_spread / k_max as f64;
        let waves = (-k_max..=k_max)
            .map(|k| {
                let offset = k as f64 * dp;
                let p = self.center_momentum + offset;
                let energy = ((p * c).powi(2) + (self.m0 * c * c).powi(2)).sqrt();
                let amp = (-offset * offset / (4.0 * self.momentum_spread.powi(2))).exp();
                let wave = PlaneWave::off_shell(energy, Vec3::new(p, 0.0, 0.0), self.constants, 0.0);
                (Complex64::new(amp, 0.0), wave)
            })
            .collect();
        superpose(waves)
    }
}

/// Transverse electromagnetic plane wave with real fields
/// `E = E0 cos(k·x − ωt)`, `B = B0 cos(k·x − ωt)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhotonWave {
    e0: Vec3,
    b0: Vec3,
    omega: f64,
    k: Vec3,
}

const TRANSVERSE_TOL: f64 = 1e-12;

impl PhotonWave {
    pub fn new(e0: Vec3, b0: Vec3, omega: f64, k: Vec3) -> Result<Self> {
        let orthogonal = |a: &Vec3, b: &Vec3| a.dot(b).abs() <= TRANSVERSE_TOL * a.norm() * b.norm();
        if !orthogonal(&e0, &k) || !orthogonal(&b0, &k) || !orthogonal(&e0, &b0) {
            return Err(Error::contract("photon fields must satisfy E0 ⊥ B0 ⊥ k"));
        }
        Ok(Self { e0, b0, omega, k })
    }

    pub fn phase(&self, pt: &SpacetimePoint) -> f64 {
        self.k.dot(&pt.x) - self.omega * pt.t
    }

    /// `S = E × B` at `pt`.
    pub fn poynting(&self, pt: &SpacetimePoint) -> Vec3 {
        let osc = self.phase(pt).cos();
        (self.e0 * osc).cross(&(self.b0 * osc))
    }
}

/// Unnormalised photon detection density `|E × B|`.
pub fn photon_probability(photon: &PhotonWave, pt: &SpacetimePoint) -> f64 {
    photon.poynting(pt).norm()
}
