use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};
use std::path::Path;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::output::{create_dir, write_csv, write_json, write_text};
use super::params::{CausalityParams, MetricParams, Parameters, PdeParams, SlitParams, WaveParams, WorldlineParams};
use super::{Scenario, ScenarioError, ScenarioKind, ScenarioResult};
use crate::causality::{collapse_worldline, event_log_jsonl, precedes, MptEvent, OrderVerdict};
use crate::constants::PhysicalConstants;
use crate::convergence::{error_ratios, observed_order};
use crate::grid::UniformGrid;
use crate::interference::{allowed_points, intensity_at, intensity_pattern, verify_consistency};
use crate::kinematics::{
    de_broglie, gamma_sigma, gamma_u, loop_proper_time, momentum_energy, sigma_speed_scalar, worldline_position,
    worldline_slopes, ParticleState, ProperTimePoint, SpacetimePoint, Vec3,
};
use crate::metric6d::{box6_residual, klein_gordon_residual, plane_wave_6d};
use crate::phase_loops::{detection_probability, phi_of_tau, uncertainty_product, x4_of, x5_of, PlaneWave};
use crate::string_dynamics::{
    analytic_mode_field, constraint_residuals, evolve_wave, relative_energy_drift, FourVector, SheetField,
    NULL_POLARIZATION,
};

/// Accepted band for the error ratio of a second-order scheme under halving.
pub const RATIO_BAND: (f64, f64) = (3.6, 4.4);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Assertion {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub kind: ScenarioKind,
    pub scenario: serde_json::Value,
    pub metrics: BTreeMap<String, f64>,
    pub assertions: Vec<Assertion>,
    pub pass: bool,
    /// Files written, relative to the run directory.
    pub outputs: Vec<String>,
    /// Kept out of `report.json` so repeated runs stay byte-identical.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl RunReport {
    pub fn failures(&self) -> impl Iterator<Item = &Assertion> {
        self.assertions.iter().filter(|a| !a.pass)
    }
}

struct Recorder {
    metrics: BTreeMap<String, f64>,
    assertions: Vec<Assertion>,
    outputs: Vec<String>,
}

impl Recorder {
    fn new() -> Self {
        Self {
            metrics: BTreeMap::new(),
            assertions: Vec::new(),
            outputs: Vec::new(),
        }
    }

    fn metric(&mut self, name: impl Into<String>, value: f64) {
        self.metrics.insert(name.into(), value);
    }

    fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.assertions.push(Assertion {
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }

    /// `value ≤ bound`, with the numbers in the detail.
    fn at_most(&mut self, name: impl Into<String>, value: f64, bound: f64) {
        self.check(name, value <= bound, format!("{value:.3e} <= {bound:.1e}"));
    }

    fn in_band(&mut self, name: impl Into<String>, value: f64, (lo, hi): (f64, f64)) {
        self.check(name, (lo..=hi).contains(&value), format!("{value:.4} in [{lo}, {hi}]"));
    }

    fn output(&mut self, name: &str) {
        self.outputs.push(name.to_string());
    }
}

fn num(context: &str) -> impl Fn(crate::Error) -> ScenarioError + '_ {
    move |e| ScenarioError::numerical(context, e)
}

/// Execute `scn`, writing artifacts under its output directory in `root`.
pub fn run(scn: &Scenario, root: &Path) -> ScenarioResult<RunReport> {
    let started = Instant::now();
    if scn.parameters.kind() != scn.kind {
        return Err(ScenarioError::validation(
            "parameters",
            format!("parameters are for `{}`, scenario kind is `{}`", scn.parameters.kind(), scn.kind),
        ));
    }
    scn.parameters.validate(&scn.constants)?;
    let dir = scn.output_dir(root);
    create_dir(&dir)?;
    let mut rec = Recorder::new();
    let k = &scn.constants;
    match &scn.parameters {
        Parameters::Worldline(p) => run_worldline(p, k, &dir, &mut rec)?,
        Parameters::Wave(p) => run_wave(p, k, &dir, &mut rec)?,
        Parameters::Slit(p) => run_slit(p, k, &dir, &mut rec)?,
        Parameters::Pde(p) => run_pde(p, k, &dir, &mut rec)?,
        Parameters::Metric(p) => run_metric(p, k, &dir, &mut rec)?,
        Parameters::Causality(p) => run_causality(p, k, scn.seed, &dir, &mut rec)?,
    }
    rec.output("report.json");
    let pass = rec.assertions.iter().all(|a| a.pass);
    let report = RunReport {
        kind: scn.kind,
        scenario: scn.echo(),
        metrics: rec.metrics,
        assertions: rec.assertions,
        pass,
        outputs: rec.outputs,
        wall_time: started.elapsed(),
    };
    write_json(&dir.join("report.json"), &report)?;
    Ok(report)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn run_worldline(p: &WorldlineParams, k: &PhysicalConstants, dir: &Path, rec: &mut Recorder) -> ScenarioResult<()> {
    let ctx = num("worldline");
    let state = p.state(k)?;
    let c = k.c();
    let gu = gamma_u(&state).map_err(&ctx)?;
    let gs = gamma_sigma(&state).map_err(&ctx)?;
    let v = sigma_speed_scalar(&state).map_err(&ctx)?;
    let me = momentum_energy(&state).map_err(&ctx)?;
    let db = de_broglie(&state).map_err(&ctx)?;
    let (su, sv) = worldline_slopes(&state).map_err(&ctx)?;
    let pmag = me.momentum.norm();

    let shell = rel(me.energy.powi(2) - (pmag * c).powi(2), (p.m0 * c * c).powi(2));
    let lambda_p = rel(db.wavelength * pmag, k.h());
    let period_e = rel(db.period * me.energy, k.h());

    // one phase loop along τ, then back along σ to the same universal time
    let tau_loop = loop_proper_time(&state);
    let sigma_back = -gu * tau_loop / gs;
    let end = worldline_position(&state, &ProperTimePoint::new(tau_loop, sigma_back, 0.0), &SpacetimePoint::origin())
        .map_err(&ctx)?;
    let closure = rel(end.x.norm(), db.wavelength);
    let phi = phi_of_tau(p.m0, tau_loop, k);
    let phase_closure = phi.min(TAU - phi);

    for (name, value) in [
        ("gamma_u", gu),
        ("gamma_sigma", gs),
        ("sigma_speed", v),
        ("energy", me.energy),
        ("momentum", pmag),
        ("wavelength", db.wavelength),
        ("period", db.period),
        ("loop_proper_time", tau_loop),
        ("closure_t", end.t),
        ("mass_shell_rel_error", shell),
        ("lambda_p_rel_error", lambda_p),
        ("period_e_rel_error", period_e),
        ("closure_rel_error", closure),
        ("slope_product", su * sv),
    ] {
        rec.metric(name, value);
    }
    rec.at_most("mass_shell", shell, 1e-12);
    rec.at_most("wavelength_times_momentum", lambda_p, 1e-12);
    rec.at_most("period_times_energy", period_e, 1e-12);
    rec.at_most("loop_closure", closure, 1e-10);
    rec.at_most("loop_phase_closure", phase_closure, 1e-12);
    rec.at_most("orthogonal_slopes", (su * sv - 1.0).abs(), 1e-12);

    let taus = UniformGrid::new(p.tau_span[0], p.tau_span[1], p.samples.max(3)).map_err(&ctx)?;
    let sigmas = UniformGrid::new(p.sigma_span[0], p.sigma_span[1], p.samples.max(3)).map_err(&ctx)?;
    let mut rows = Vec::with_capacity(taus.len() * sigmas.len());
    let mut monotone = true;
    for tau in taus.positions() {
        let mut last_t = f64::NEG_INFINITY;
        for sigma in sigmas.positions() {
            let x = worldline_position(&state, &ProperTimePoint::new(tau, sigma, 0.0), &SpacetimePoint::origin())
                .map_err(&ctx)?;
            monotone &= x.t > last_t;
            last_t = x.t;
            rows.push(vec![tau, sigma, x.t, x.x[0], x.x[1], x.x[2]]);
        }
    }
    rec.check("t_increases_along_sigma", monotone, "t strictly increasing in σ at fixed τ");
    write_csv(&dir.join("worldline.csv"), &["tau", "sigma", "t", "x", "y", "z"], rows)?;
    rec.output("worldline.csv");
    Ok(())
}

fn run_wave(p: &WaveParams, k: &PhysicalConstants, dir: &Path, rec: &mut Recorder) -> ScenarioResult<()> {
    let ctx = num("wave");
    let floor = 0.5 * k.hbar();
    let mut density_rows = Vec::new();
    let mut summary_rows = Vec::new();
    let mut products = Vec::new();
    let mut worst_norm: f64 = 0.0;
    let mut worst_unit: f64 = 0.0;
    let mut worst_conj: f64 = 0.0;
    let mut min_density = f64::INFINITY;
    let mut any_truncated = false;

    for (i, &spread) in p.spreads.iter().enumerate() {
        let gp = p.packet(spread, k);
        let domain = gp.domain(p.points).map_err(&ctx)?;
        let packet = gp.build().map_err(&ctx)?.normalized(&domain).map_err(&ctx)?;

        let mut probs = Vec::with_capacity(domain.grid.len());
        for (x, pt) in domain.grid.positions().zip(domain.points()) {
            let prob = detection_probability(&packet, &pt).map_err(&ctx)?;
            min_density = min_density.min(prob);
            probs.push(prob);
            density_rows.push(vec![spread, x, prob]);
        }
        worst_norm = worst_norm.max((domain.grid.trapezoid(&probs) - 1.0).abs());

        // loop identities on a coarse subset of points and every component
        for pt in domain.points().step_by((domain.grid.len() / 16).max(1)) {
            for (_, wave) in packet.components() {
                let (x4, x5) = (x4_of(wave, &pt).value(), x5_of(wave, &pt).value());
                worst_unit = worst_unit.max((x4.norm() - 1.0).abs()).max((x5.norm() - 1.0).abs());
                worst_conj = worst_conj.max((x5 - x4.conj()).norm());
            }
            worst_conj = worst_conj.max((packet.psi_x5(&pt) - packet.psi(&pt).conj()).norm());
        }

        let u = uncertainty_product(&packet, &domain).map_err(&ctx)?;
        let dx = u.dx.value().unwrap_or(f64::INFINITY);
        let product = u.product.unwrap_or(f64::INFINITY);
        any_truncated |= u.truncated;
        rec.metric(format!("packet{i}.dx"), dx);
        rec.metric(format!("packet{i}.dp"), u.dp);
        rec.metric(format!("packet{i}.product"), product);
        products.push(product);
        summary_rows.push(vec![spread, gp.position_width(), dx, u.dp, product]);
    }

    let min_product = products.iter().copied().fold(f64::INFINITY, f64::min);
    let floor_ratio = min_product / floor;
    rec.metric("min_product_over_floor", floor_ratio);
    rec.metric("normalization_error", worst_norm);
    rec.metric("unit_loop_error", worst_unit);
    rec.metric("conjugation_error", worst_conj);
    rec.metric("min_density", min_density);

    let bound = floor * (1.0 - 1e-3);
    rec.check(
        "uncertainty_floor",
        products.iter().all(|&q| q >= bound),
        format!("min Δx·Δp = {min_product:.6e} >= {bound:.6e}"),
    );
    rec.at_most("minimum_packet_near_floor", (floor_ratio - 1.0).abs(), 0.02);
    rec.at_most("normalization", worst_norm, 1e-8);
    rec.at_most("unit_loop", worst_unit, 1e-12);
    rec.at_most("x5_is_conjugate", worst_conj, 1e-12);
    rec.check("density_nonnegative", min_density >= 0.0, format!("min P = {min_density:.3e}"));
    rec.check("domain_holds_packet", !any_truncated, "tail mass below warning level");

    write_csv(&dir.join("packets.csv"), &["momentum_spread", "x", "probability"], density_rows)?;
    write_csv(
        &dir.join("uncertainty.csv"),
        &["momentum_spread", "position_width", "dx", "dp", "product"],
        summary_rows,
    )?;
    rec.output("packets.csv");
    rec.output("uncertainty.csv");
    Ok(())
}

fn run_slit(p: &SlitParams, k: &PhysicalConstants, dir: &Path, rec: &mut Recorder) -> ScenarioResult<()> {
    let ctx = num("slit");
    let lambda = p.wavelength(k)?;
    let grid = UniformGrid::with_max_step(-p.half_width, p.half_width, lambda / p.step_fraction).map_err(&ctx)?;
    let h = grid.step();
    rec.metric("lambda", lambda);
    rec.metric("grid_step", h);

    let mut fringe_rows = Vec::new();
    let mut allowed_rows = Vec::new();
    for (i, &delta) in p.deltas.iter().enumerate() {
        let scn = p.slit(delta, k)?;
        let report = verify_consistency(&scn, None, &grid).map_err(&ctx)?;
        rec.metric(format!("delta{i}.max_deviation"), report.max_deviation);
        rec.metric(format!("delta{i}.allowed_points"), report.matches.len() as f64);
        rec.check(
            format!("delta{i}.consistency"),
            report.pass && !report.matches.is_empty(),
            format!(
                "{} allowed points, max deviation {:.3e} <= step {h:.3e}, {} unmatched, {} unexplained maxima",
                report.matches.len(),
                report.max_deviation,
                report.failures.len(),
                report.unexplained_maxima.len()
            ),
        );
        for m in &report.matches {
            allowed_rows.push(vec![delta, m.n as f64, m.allowed_y, m.maximum_y.unwrap_or(f64::NAN), m.deviation]);
        }

        let allowed = allowed_points(&scn, None, grid.start() + h, grid.end() - h).map_err(&ctx)?;
        let peak_error = allowed
            .points
            .iter()
            .map(|a| (intensity_at(&scn, a.screen_y) - 4.0).abs())
            .fold(0.0, f64::max);
        rec.at_most(format!("delta{i}.allowed_points_are_peaks"), peak_error, 1e-9);

        if (scn.delta() - PI).abs() < 1e-12 && p.slit_sep > 0.0 {
            rec.at_most(format!("delta{i}.central_suppression"), intensity_at(&scn, 0.0), 1e-9);
        }

        let pattern = intensity_pattern(&scn, &grid);
        fringe_rows.extend(
            pattern
                .screen_ys
                .iter()
                .zip(&pattern.intensity)
                .map(|(&y, &intensity)| vec![delta, y, intensity]),
        );
    }
    write_csv(&dir.join("fringe.csv"), &["delta", "screen_y", "intensity"], fringe_rows)?;
    write_csv(
        &dir.join("allowed.csv"),
        &["delta", "n", "allowed_y", "maximum_y", "deviation"],
        allowed_rows,
    )?;
    rec.output("fringe.csv");
    rec.output("allowed.csv");
    Ok(())
}

/// Null mode mixing the first and third harmonics of `θ = τ − φ`.
pub fn harmonic_null_mode(tau: f64, phi: f64) -> FourVector {
    let th = tau - phi;
    [
        -th.cos(),
        th.cos() / 2.0 - (3.0 * th).cos() / 6.0,
        th.sin() / 2.0 - (3.0 * th).sin() / 6.0,
        0.0,
    ]
}

/// Right-moving profile used for the unit-Courant transport check.
pub fn traveling_profile(tau: f64, phi: f64) -> FourVector {
    let th = phi - tau;
    [0.0, th.cos() + 0.5 * (2.0 * th).sin(), (3.0 * th).cos(), 0.25 * (5.0 * th).sin()]
}

/// Leapfrog run of the standing wave `x₁ = cos τ cos φ` over `periods` loops.
/// Returns the field and the max error over every row.
pub fn standing_wave_run(n_phi: usize, courant: f64, periods: f64) -> crate::Result<(SheetField, f64)> {
    let h_phi = TAU / n_phi as f64;
    let h_tau = courant * h_phi;
    let steps = (periods * TAU / h_tau).round() as usize;
    let field = SheetField::from_initial_data(n_phi, h_tau, |phi| [0.0, phi.cos(), 0.0, 0.0], |_| [0.0; 4])?;
    let field = evolve_wave(field, steps.saturating_sub(1))?;
    let mut err: f64 = 0.0;
    for i in 0..field.n_tau() {
        let tau = field.tau(i);
        for j in 0..n_phi {
            err = err.max((field.at(i, j)[1] - tau.cos() * field.phi(j).cos()).abs());
        }
    }
    Ok((field, err))
}

fn run_pde(p: &PdeParams, k: &PhysicalConstants, dir: &Path, rec: &mut Recorder) -> ScenarioResult<()> {
    let ctx = num("pde");
    let resolutions: Vec<usize> = (0..p.levels).map(|l| p.base_n_phi << l).collect();

    let mut errors = Vec::new();
    let mut conv_rows = Vec::new();
    let mut finest = None;
    for &n in &resolutions {
        let (field, err) = standing_wave_run(n, p.courant, p.periods).map_err(&ctx)?;
        rec.metric(format!("standing.n{n}.max_error"), err);
        conv_rows.push(vec![n as f64, field.h_phi(), field.h_tau(), err]);
        errors.push(err);
        finest = Some(field);
    }
    for (i, ratio) in error_ratios(&errors).into_iter().enumerate() {
        let (a, b) = (resolutions[i], resolutions[i + 1]);
        rec.metric(format!("standing.ratio_{a}_{b}"), ratio);
        rec.metric(format!("standing.order_{a}_{b}"), observed_order(errors[i], errors[i + 1], 2.0));
        rec.in_band(format!("standing.error_ratio_{a}_{b}"), ratio, RATIO_BAND);
    }

    let (energy_field, _) = standing_wave_run(p.energy_n_phi, p.courant, p.periods).map_err(&ctx)?;
    let drift = relative_energy_drift(&energy_field);
    rec.metric("energy_drift", drift);
    rec.at_most(format!("energy_drift_n{}", p.energy_n_phi), drift, 1e-3);

    // unit Courant number with exact first two rows
    let n = p.traveling_n_phi;
    let h = TAU / n as f64;
    let start = SheetField::from_fn(2, n, 0.0, h, traveling_profile).map_err(&ctx)?;
    let moved = evolve_wave(start, n).map_err(&ctx)?;
    let mut transport: f64 = 0.0;
    for i in 0..moved.n_tau() {
        for j in 0..n {
            let exact = traveling_profile(moved.tau(i), moved.phi(j));
            for a in 0..4 {
                transport = transport.max((moved.at(i, j)[a] - exact[a]).abs());
            }
        }
    }
    rec.metric("traveling_max_error", transport);
    rec.at_most("unit_courant_transport", transport, 1e-12);

    // constraints of sampled exact null modes
    let pair = [p.base_n_phi, 2 * p.base_n_phi];
    let mut harmonic = Vec::new();
    for &n in &pair {
        let h_phi = TAU / n as f64;
        let h_tau = p.courant * h_phi;
        let mode = analytic_mode_field(p.mode_m0, k, NULL_POLARIZATION, 5, n, h_tau).map_err(&ctx)?;
        let cr = constraint_residuals(&mode);
        rec.metric(format!("mode.n{n}.constraint_max"), cr.max());
        rec.metric(format!("mode.n{n}.literal_r2_max"), cr.max_r2_literal());
        rec.at_most(format!("mode_constraints_n{n}"), cr.max(), h_phi * h_phi);

        let mixed = SheetField::from_fn(5, n, 0.0, h_tau, harmonic_null_mode).map_err(&ctx)?;
        let r = constraint_residuals(&mixed).max();
        rec.metric(format!("harmonic.n{n}.constraint_max"), r);
        harmonic.push(r);
    }
    let ratio = harmonic[0] / harmonic[1];
    rec.metric("harmonic.constraint_ratio", ratio);
    rec.in_band("harmonic_constraints_second_order", ratio, RATIO_BAND);

    write_csv(&dir.join("convergence.csv"), &["n_phi", "h_phi", "h_tau", "max_error"], conv_rows)?;
    let finest = finest.expect("at least two levels");
    let last = finest.n_tau() - 1;
    let tau_end = finest.tau(last);
    let snapshot = (0..finest.n_phi()).map(|j| {
        let phi = finest.phi(j);
        vec![phi, finest.at(last, j)[1], tau_end.cos() * phi.cos()]
    });
    write_csv(&dir.join("snapshot.csv"), &["phi", "x1", "exact"], snapshot)?;
    let energy = energy_field
        .energy_history()
        .into_iter()
        .enumerate()
        .map(|(i, e)| vec![energy_field.tau(i + 1), e]);
    write_csv(&dir.join("energy.csv"), &["tau", "energy"], energy)?;
    rec.output("convergence.csv");
    rec.output("snapshot.csv");
    rec.output("energy.csv");
    Ok(())
}

fn run_metric(p: &MetricParams, k: &PhysicalConstants, dir: &Path, rec: &mut Recorder) -> ScenarioResult<()> {
    let ctx = num("metric");
    let energy = p.on_shell_energy(k);
    let momentum = Vec3::from(p.momentum);
    let on = PlaneWave::on_shell(p.m0, energy, momentum, *k, 0.0).map_err(&ctx)?;
    let off = PlaneWave::off_shell(p.off_shell_factor * energy, momentum, *k, 0.0);
    let (psi_on, psi_off) = (plane_wave_6d(&on, p.m0), plane_wave_6d(&off, p.m0));

    let scale = (energy / (k.hbar() * k.c())).powi(2);
    let kg_on = klein_gordon_residual(&on, p.m0);
    let kg_off = klein_gordon_residual(&off, p.m0);
    let kg_off_expected = (p.off_shell_factor.powi(2) - 1.0) * scale;
    rec.metric("kg_on_shell", kg_on);
    rec.metric("kg_off_shell", kg_off);
    rec.metric("kg_off_shell_expected", kg_off_expected);
    rec.at_most("kg_zero_on_shell", kg_on.abs() / scale, 1e-12);
    rec.at_most("kg_off_shell_matches", rel(kg_off, kg_off_expected), 1e-12);

    let mut residuals = Vec::new();
    let mut rows = Vec::new();
    for &h in &p.steps {
        let r_on = box6_residual(&psi_on, &p.point, h);
        let r_off = box6_residual(&psi_off, &p.point, h);
        rec.metric(format!("box6_on_shell.h{h}"), r_on);
        residuals.push(r_on.abs());
        rows.push(vec![h, r_on, r_off, -kg_off * psi_off(&p.point)]);
    }
    for (i, ratio) in error_ratios(&residuals).into_iter().enumerate() {
        let refinement = p.steps[i] / p.steps[i + 1];
        let order = observed_order(residuals[i], residuals[i + 1], refinement);
        rec.metric(format!("box6_order_{i}"), order);
        if (refinement - 2.0).abs() < 1e-12 {
            rec.in_band(format!("box6_ratio_{i}"), ratio, RATIO_BAND);
        } else {
            rec.in_band(format!("box6_order_{i}"), order, (1.8, 2.2));
        }
    }

    let h = p.check_step;
    let r_on = box6_residual(&psi_on, &p.point, h);
    let r_off = box6_residual(&psi_off, &p.point, h);
    let expected = -kg_off * psi_off(&p.point);
    rec.metric("box6_on_shell_check", r_on);
    rec.metric("box6_off_shell_check", r_off);
    rec.metric("box6_off_shell_expected", expected);
    rec.at_most("box6_on_shell_small", r_on.abs() / scale, 1e-4);
    rec.at_most("box6_off_shell_defect", rel(r_off, expected), 1e-6);
    rows.push(vec![h, r_on, r_off, expected]);

    write_csv(
        &dir.join("metric.csv"),
        &["h", "on_shell_residual", "off_shell_residual", "off_shell_expected"],
        rows,
    )?;
    rec.output("metric.csv");
    Ok(())
}

struct EventSampler<'a> {
    p: &'a CausalityParams,
    k: PhysicalConstants,
    rng: ChaCha8Rng,
}

impl EventSampler<'_> {
    fn state(&mut self) -> crate::Result<ParticleState> {
        let [lo, hi] = self.p.speed_range;
        let speed = if lo == hi { lo } else { self.rng.random_range(lo..hi) } * self.k.c();
        let z: f64 = self.rng.random_range(-1.0..=1.0);
        let az: f64 = self.rng.random_range(0.0..TAU);
        let rho = (1.0 - z * z).sqrt();
        let dir = Vec3::new(rho * az.cos(), rho * az.sin(), z);
        ParticleState::massive(self.p.m0, dir * speed, self.k)
    }

    fn coord(&mut self) -> f64 {
        let x = self.rng.random_range(-self.p.extent..=self.p.extent);
        if self.p.lattice > 0.0 && self.rng.random_bool(0.5) {
            (x / self.p.lattice).round() * self.p.lattice
        } else {
            x
        }
    }

    fn event(&mut self, label: &str, state: &ParticleState) -> crate::Result<MptEvent> {
        let (tau, sigma) = (self.coord(), self.coord());
        MptEvent::new(label, state, tau, sigma)
    }
}

fn run_causality(
    p: &CausalityParams,
    k: &PhysicalConstants,
    seed: u64,
    dir: &Path,
    rec: &mut Recorder,
) -> ScenarioResult<()> {
    let ctx = num("causality");
    let mut s = EventSampler {
        p,
        k: *k,
        rng: ChaCha8Rng::seed_from_u64(seed),
    };
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    let mut time_violations = 0usize;
    let mut mixed_violations = 0usize;
    let mut mixed_checked = 0usize;
    let mut collapse_worst: f64 = 0.0;

    for _ in 0..p.pairs {
        let state = s.state().map_err(&ctx)?;
        let (a, b) = (s.event("a", &state).map_err(&ctx)?, s.event("b", &state).map_err(&ctx)?);
        let verdict = precedes(&a, &b).map_err(&ctx)?;
        *counts.entry(verdict_name(verdict)).or_default() += 1;
        let ordered = match verdict {
            OrderVerdict::Before => a.t() < b.t(),
            OrderVerdict::After => a.t() > b.t(),
            _ => true,
        };
        time_violations += usize::from(!ordered);

        // forced mixed ordering: later in τ, earlier in σ
        let (dt, ds) = (s.rng.random_range(1e-6..=p.extent), s.rng.random_range(1e-6..=p.extent));
        let m = MptEvent::new("m", &state, a.tau() + dt, a.sigma() - ds).map_err(&ctx)?;
        for (x, y) in [(&a, &m), (&m, &a)] {
            mixed_checked += 1;
            mixed_violations += usize::from(precedes(x, y).map_err(&ctx)? != OrderVerdict::Indeterminate);
        }
        let sampled_mixed = (a.tau() < b.tau() && a.sigma() > b.sigma()) || (a.tau() > b.tau() && a.sigma() < b.sigma());
        if sampled_mixed {
            mixed_checked += 1;
            mixed_violations += usize::from(verdict != OrderVerdict::Indeterminate);
        }

        // world-line switch keeps p' = p + dp on the mass shell
        let dp = Vec3::new(
            s.rng.random_range(-1.0..=1.0),
            s.rng.random_range(-1.0..=1.0),
            s.rng.random_range(-1.0..=1.0),
        ) * (p.max_kick * p.m0 * k.c() / 3f64.sqrt());
        let target = momentum_energy(&state).map_err(&ctx)?.momentum + dp;
        let moved = collapse_worldline(&state, dp).map_err(&ctx)?;
        let got = momentum_energy(&moved).map_err(&ctx)?.momentum;
        collapse_worst = collapse_worst.max((got - target).norm() / target.norm().max(p.m0 * k.c()));
    }

    let mut irreflexive = 0usize;
    let mut antisymmetric = 0usize;
    let mut transitive = 0usize;
    let mut chains = 0usize;
    for _ in 0..p.triples {
        let state = s.state().map_err(&ctx)?;
        let ev = [
            s.event("a", &state).map_err(&ctx)?,
            s.event("b", &state).map_err(&ctx)?,
            s.event("c", &state).map_err(&ctx)?,
        ];
        let mut rel = [[OrderVerdict::Concurrent; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                rel[i][j] = precedes(&ev[i], &ev[j]).map_err(&ctx)?;
            }
        }
        for i in 0..3 {
            irreflexive += usize::from(rel[i][i] == OrderVerdict::Before);
            for j in 0..3 {
                if rel[i][j] == OrderVerdict::Before && rel[j][i] != OrderVerdict::After {
                    antisymmetric += 1;
                }
                for l in 0..3 {
                    if rel[i][j] == OrderVerdict::Before && rel[j][l] == OrderVerdict::Before {
                        chains += 1;
                        transitive += usize::from(rel[i][l] != OrderVerdict::Before);
                    }
                }
            }
        }
    }

    for (name, n) in &counts {
        rec.metric(format!("verdicts.{name}"), *n as f64);
    }
    rec.metric("mixed_checked", mixed_checked as f64);
    rec.metric("transitive_chains", chains as f64);
    rec.metric("collapse_momentum_rel_error", collapse_worst);
    rec.check(
        "before_implies_earlier_t",
        time_violations == 0,
        format!("{time_violations} violations over {} pairs", p.pairs),
    );
    rec.check(
        "mixed_is_indeterminate",
        mixed_violations == 0,
        format!("{mixed_violations} violations over {mixed_checked} mixed pairs"),
    );
    rec.check("irreflexive", irreflexive == 0, format!("{irreflexive} violations"));
    rec.check("antisymmetric", antisymmetric == 0, format!("{antisymmetric} violations"));
    rec.check(
        "transitive",
        transitive == 0,
        format!("{transitive} violations over {chains} chains"),
    );
    rec.at_most("collapse_momentum", collapse_worst, 1e-12);

    let state = s.state().map_err(&ctx)?;
    let events = (0..p.log_events)
        .map(|i| s.event(&format!("e{i:03}"), &state))
        .collect::<crate::Result<Vec<_>>>()
        .map_err(&ctx)?;
    write_text(&dir.join("events.jsonl"), &event_log_jsonl(&events).map_err(&ctx)?)?;
    rec.output("events.jsonl");
    Ok(())
}

fn verdict_name(v: OrderVerdict) -> &'static str {
    match v {
        OrderVerdict::Before => "before",
        OrderVerdict::After => "after",
        OrderVerdict::Concurrent => "concurrent",
        OrderVerdict::Indeterminate => "indeterminate",
    }
}
