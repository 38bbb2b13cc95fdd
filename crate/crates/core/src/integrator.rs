// Copyright 2026 The weakcurrent Authors
// SPDX-License-Identifier: Apache-2.0

//! Region integrals for the creation-driven current.
//!
//! The quasi-Ohmic power sums T·(2E/Δt)·(δE_bal/2E) over region O and the
//! creation rate sums T/Δt over region S, both with the density of states
//! 1/(2πℏ)². Three independent evaluators are available: nested adaptive
//! quadrature in polar coordinates, nested adaptive quadrature over
//! Cartesian p_x-strips, and Monte Carlo in polar coordinates. The current
//! assembles j = σ_O·ε + e·n(t_bal)·v_f with n = (dn/dt)·t_bal.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dirac::MomentumPoint;
use crate::error::{Error, Result};
use crate::kinematics::transition_probability;
use crate::quadrature::{integrate_2d, Estimate};
use crate::regions::{classify, RegionClass, RegionConfig};
use crate::special::schwinger_prefactor;
use crate::units::{check_positive, FieldConfig, UnitSystem};

/// Samples per Monte Carlo block; each block draws from its own ChaCha stream.
/// Absolute S tolerance in units of rel_tol times the limiting S integral.
const S_ABS_FLOOR: f64 = 1e-6;

pub const MC_BLOCK: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadMethod {
    /// Polar quadrature for O, Cartesian strips for S.
    #[default]
    Adaptive,
    AdaptivePolar,
    CartesianStrip,
    MonteCarlo,
}

impl FromStr for QuadMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "adaptive" => Ok(QuadMethod::Adaptive),
            "adaptive-polar" | "polar" => Ok(QuadMethod::AdaptivePolar),
            "cartesian-strip" | "cartesian" => Ok(QuadMethod::CartesianStrip),
            "mc" | "monte-carlo" => Ok(QuadMethod::MonteCarlo),
            other => Err(Error::Domain(format!(
                "unknown quadrature `{other}` (expected adaptive|adaptive-polar|cartesian-strip|mc)"
            ))),
        }
    }
}

impl fmt::Display for QuadMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuadMethod::Adaptive => "adaptive",
            QuadMethod::AdaptivePolar => "adaptive-polar",
            QuadMethod::CartesianStrip => "cartesian-strip",
            QuadMethod::MonteCarlo => "monte-carlo",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureConfig {
    pub method: QuadMethod,
    pub rel_tol: f64,
    /// Evaluation budget for quadrature, sample count for Monte Carlo.
    pub max_evals: usize,
    pub seed: u64,
}

impl QuadratureConfig {
    pub fn new(method: QuadMethod, rel_tol: f64, max_evals: usize, seed: u64) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol < 1.0) {
            return Err(Error::Domain(format!(
                "rel_tol must lie in (0, 1), got {rel_tol}"
            )));
        }
        if max_evals < 1000 {
            return Err(Error::Domain(format!(
                "max_evals must be at least 1000, got {max_evals}"
            )));
        }
        Ok(Self {
            method,
            rel_tol,
            max_evals,
            seed,
        })
    }

    pub fn with_method(self, method: QuadMethod) -> Self {
        Self { method, ..self }
    }
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            method: QuadMethod::Adaptive,
            rel_tol: 1e-10,
            max_evals: 5_000_000,
            seed: 0x5eed,
        }
    }
}

// Per-state factors. Momentum p here is the final momentum with p_x ≥ 0.

fn force(cfg: &RegionConfig) -> f64 {
    cfg.units.e_charge() * cfg.epsilon
}

/// 2E/Δt, the work rate offered by one virtual particle.
pub fn work_rate(p: &MomentumPoint, cfg: &RegionConfig) -> f64 {
    let delta_t = 2.0 * p.p_x / force(cfg);
    2.0 * p.energy(&cfg.units) / delta_t
}

/// δE_bal/2E with δE_bal = ℏ/t_bal: virtual particles supplied per state.
pub fn virtual_multiplicity(p: &MomentumPoint, cfg: &RegionConfig) -> f64 {
    (cfg.units.hbar() / cfg.t_bal) / (2.0 * p.energy(&cfg.units))
}

/// T·(2E/Δt)·(δE_bal/2E), the quasi-Ohmic power contributed by one state.
pub fn state_power(p: &MomentumPoint, cfg: &RegionConfig) -> f64 {
    let t = transition_probability(p).unwrap_or(0.0);
    t * work_rate(p, cfg) * virtual_multiplicity(p, cfg)
}

/// T/Δt, carriers created per unit time from one state.
pub fn state_creation_rate(p: &MomentumPoint, cfg: &RegionConfig) -> f64 {
    let t = transition_probability(p).unwrap_or(0.0);
    let delta_t = 2.0 * p.p_x / force(cfg);
    t / delta_t
}

fn density_of_states(units: &UnitSystem) -> f64 {
    1.0 / (units.planck_h() * units.planck_h())
}

fn angle_breakpoints(cfg: &RegionConfig) -> Vec<f64> {
    let mut pts = vec![-FRAC_PI_2, 0.0, FRAC_PI_2];
    for radius in [cfg.r_b, cfg.r_f] {
        let c = cfg.k_v / (radius * radius);
        if c < 1.0 {
            let theta = c.acos();
            pts.extend([-theta, theta]);
        }
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

fn strip_breakpoints(cfg: &RegionConfig, end: f64) -> Vec<f64> {
    let mut pts = vec![0.0, end, cfg.r_f];
    for radius in [cfg.r_b, cfg.r_f] {
        pts.push(cfg.k_v / radius);
    }
    pts.retain(|&x| x >= 0.0 && x <= end);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

fn radial_limits(cfg: &RegionConfig, region: RegionClass, theta: f64) -> Vec<f64> {
    let outer = cfg.reachable_radius(theta);
    match region {
        RegionClass::O => vec![0.0, outer.min(cfg.r_f)],
        RegionClass::S if outer > cfg.r_f => vec![cfg.r_f, outer],
        RegionClass::S => Vec::new(),
    }
}

fn strip_limits(cfg: &RegionConfig, region: RegionClass, p_x: f64) -> Vec<f64> {
    let reach = cfg.reachable_half_width(p_x);
    let fluct = cfg.fluctuation_half_width(p_x);
    let (lo, hi) = match region {
        RegionClass::O => (0.0, reach.min(fluct)),
        RegionClass::S => (fluct, reach),
    };
    if hi <= lo {
        return Vec::new();
    }
    // the p_x/(p_x²+p_y²) peak has width p_x
    if p_x > lo && p_x < hi {
        vec![lo, p_x, hi]
    } else {
        vec![lo, hi]
    }
}

/// Absolute tolerance for the S integral, relative to its t_bal → ∞ value.
///
/// Just above t_c the region is a sliver whose value is lost in rounding;
/// the floor lets it converge. O never degenerates and gets no floor.
fn abs_floor(cfg: &RegionConfig, region: RegionClass, quad: &QuadratureConfig) -> f64 {
    match region {
        RegionClass::O => 0.0,
        RegionClass::S => {
            let limit =
                schwinger_rate_asymptotic(&cfg.units, cfg.epsilon) / density_of_states(&cfg.units);
            S_ABS_FLOOR * quad.rel_tol * limit
        }
    }
}

/// ∬ over `region` of `state(p)` dp_x dp_y, without the density of states.
fn region_integral<S>(
    cfg: &RegionConfig,
    region: RegionClass,
    quad: &QuadratureConfig,
    state: S,
) -> Result<Estimate>
where
    S: Fn(&MomentumPoint, &RegionConfig) -> f64 + Sync,
{
    let method = match quad.method {
        QuadMethod::Adaptive => match region {
            RegionClass::O => QuadMethod::AdaptivePolar,
            RegionClass::S => QuadMethod::CartesianStrip,
        },
        m => m,
    };
    match method {
        QuadMethod::AdaptivePolar => integrate_2d(
            |theta, r| {
                let p = MomentumPoint::new(r * theta.cos(), r * theta.sin());
                r * state(&p, cfg)
            },
            &angle_breakpoints(cfg),
            |theta| radial_limits(cfg, region, theta),
            quad.rel_tol,
            abs_floor(cfg, region, quad),
            quad.max_evals,
        ),
        QuadMethod::CartesianStrip => {
            let end = match region {
                RegionClass::O => cfg.reachable_px_max().min(cfg.r_f),
                RegionClass::S => cfg.reachable_px_max(),
            };
            let half = integrate_2d(
                |px, py| state(&MomentumPoint::new(px, py), cfg),
                &strip_breakpoints(cfg, end),
                |px| strip_limits(cfg, region, px),
                quad.rel_tol,
                0.5 * abs_floor(cfg, region, quad),
                quad.max_evals,
            )?;
            Ok(Estimate {
                value: 2.0 * half.value,
                abs_error: 2.0 * half.abs_error,
                evals: half.evals,
            })
        }
        QuadMethod::MonteCarlo => Ok(monte_carlo(cfg, region, quad, state)),
        QuadMethod::Adaptive => unreachable!("resolved above"),
    }
}

/// Polar Monte Carlo: θ uniform on (−π/2, π/2), r uniform under the V∩B
/// envelope, membership decided by [`classify`]. The error is one standard error.
fn monte_carlo<S>(
    cfg: &RegionConfig,
    region: RegionClass,
    quad: &QuadratureConfig,
    state: S,
) -> Estimate
where
    S: Fn(&MomentumPoint, &RegionConfig) -> f64 + Sync,
{
    let samples = quad.max_evals;
    let blocks = samples.div_ceil(MC_BLOCK);
    let partials: Vec<(f64, f64)> = (0..blocks)
        .into_par_iter()
        .map(|block| {
            let mut rng = ChaCha8Rng::seed_from_u64(quad.seed);
            rng.set_stream(block as u64);
            let count = MC_BLOCK.min(samples - block * MC_BLOCK);
            let (mut sum, mut sum_sq) = (0.0, 0.0);
            for _ in 0..count {
                let theta = PI * (rng.random::<f64>() - 0.5);
                let envelope = cfg.reachable_radius(theta);
                let r = envelope * (1.0 - rng.random::<f64>());
                let p = MomentumPoint::new(r * theta.cos(), r * theta.sin());
                let w = if classify(&p, cfg).klass == Some(region) {
                    PI * envelope * r * state(&p, cfg)
                } else {
                    0.0
                };
                sum += w;
                sum_sq += w * w;
            }
            (sum, sum_sq)
        })
        .collect();
    let (sum, sum_sq) = partials
        .iter()
        .fold((0.0, 0.0), |(s, q), &(bs, bq)| (s + bs, q + bq));
    let n = samples as f64;
    let mean = sum / n;
    let variance = (sum_sq / n - mean * mean).max(0.0) * n / (n - 1.0);
    Estimate {
        value: mean,
        abs_error: (variance / n).sqrt(),
        evals: samples,
    }
}

fn scaled(e: Estimate, factor: f64) -> Estimate {
    Estimate {
        value: e.value * factor,
        abs_error: e.abs_error * factor,
        evals: e.evals,
    }
}

/// Work per unit time and area done by the field through region O.
pub fn quasi_ohmic_power(cfg: &RegionConfig, quad: &QuadratureConfig) -> Result<Estimate> {
    let e = region_integral(cfg, RegionClass::O, quad, state_power)?;
    Ok(scaled(e, density_of_states(&cfg.units)))
}

/// e²ε²/(4πh), the O-region power whenever t_bal ≤ t_c.
pub fn quasi_ohmic_power_closed_form(units: &UnitSystem, epsilon: f64) -> f64 {
    minimal_conductivity(units) * epsilon * epsilon
}

/// e²/(4πh).
pub fn minimal_conductivity(units: &UnitSystem) -> f64 {
    units.conductance_quantum() / (4.0 * PI)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Conductivity {
    pub sigma: f64,
    pub abs_error: f64,
    pub evals: usize,
    /// t_bal > t_c: O has shrunk to the F disk, beyond the closed-form regime.
    pub model_extension: bool,
}

/// σ = P_O/ε².
pub fn conductivity(cfg: &RegionConfig, quad: &QuadratureConfig) -> Result<Conductivity> {
    let power = quasi_ohmic_power(cfg, quad)?;
    let eps2 = cfg.epsilon * cfg.epsilon;
    Ok(Conductivity {
        sigma: power.value / eps2,
        abs_error: power.abs_error / eps2,
        evals: power.evals,
        model_extension: cfg.t_bal > cfg.t_c,
    })
}

/// Carriers created per unit time and area from region S.
pub fn schwinger_region_rate(cfg: &RegionConfig, quad: &QuadratureConfig) -> Result<Estimate> {
    if !cfg.has_schwinger_region() {
        return Err(Error::Regime(format!(
            "region S is empty for t_bal = {:e} <= t_c = {:e}",
            cfg.t_bal, cfg.t_c
        )));
    }
    let e = region_integral(cfg, RegionClass::S, quad, state_creation_rate)?;
    Ok(scaled(e, density_of_states(&cfg.units)))
}

/// t_bal → ∞ limit of the S-region rate: the massless Schwinger rate times B(½,¾)/4.
pub fn schwinger_rate_asymptotic(units: &UnitSystem, epsilon: f64) -> f64 {
    units.rate_scale(epsilon) / (4.0 * PI * PI) * schwinger_prefactor()
}

/// 2+1D Schwinger pair-creation rate with mass `m` and c = v_f.
pub fn schwinger_reference_rate(m: f64, epsilon: f64, units: &UnitSystem) -> Result<f64> {
    check_positive("epsilon", epsilon)?;
    if !(m >= 0.0) {
        return Err(Error::Domain(format!("mass must be non-negative, got {m}")));
    }
    let c = units.v_f();
    let suppression = (-PI * m * m * c.powi(3) / (units.e_charge() * epsilon * units.hbar())).exp();
    Ok(units.rate_scale(epsilon) / (4.0 * PI * PI) * suppression)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    QuasiOhmic,
    Crossover,
    Schwinger,
}

impl Regime {
    /// Reporting label only; thresholds 0.3 and 3 on t_bal/t_c.
    pub fn from_ratio(t_bal_over_t_c: f64) -> Self {
        if t_bal_over_t_c < 0.3 {
            Regime::QuasiOhmic
        } else if t_bal_over_t_c > 3.0 {
            Regime::Schwinger
        } else {
            Regime::Crossover
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::QuasiOhmic => "quasi-ohmic",
            Regime::Crossover => "crossover",
            Regime::Schwinger => "schwinger",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurrentResult {
    pub epsilon: f64,
    pub t_bal: f64,
    pub t_c: f64,
    pub power_o: f64,
    pub sigma_o: f64,
    pub rate_s: f64,
    pub carrier_density: f64,
    pub j_quasi: f64,
    pub j_schwinger: f64,
    pub j_total: f64,
    pub regime: Regime,
    pub model_extension: bool,
}

impl CurrentResult {
    /// Multiplies every per-channel density by `degeneracy`.
    pub fn with_degeneracy(&self, degeneracy: u32) -> Self {
        let g = f64::from(degeneracy);
        Self {
            power_o: g * self.power_o,
            sigma_o: g * self.sigma_o,
            rate_s: g * self.rate_s,
            carrier_density: g * self.carrier_density,
            j_quasi: g * self.j_quasi,
            j_schwinger: g * self.j_schwinger,
            j_total: g * self.j_total,
            ..*self
        }
    }
}

/// Per-channel current for one (ε, t_bal) pair; both mechanisms are summed.
pub fn current(
    field: FieldConfig,
    units: &UnitSystem,
    quad: &QuadratureConfig,
) -> Result<CurrentResult> {
    let cfg = RegionConfig::new(*units, field)?;
    let power = quasi_ohmic_power(&cfg, quad)?.value;
    let sigma = power / (cfg.epsilon * cfg.epsilon);
    let rate = if cfg.has_schwinger_region() {
        schwinger_region_rate(&cfg, quad)?.value
    } else {
        0.0
    };
    let n = rate * cfg.t_bal;
    let j_quasi = sigma * cfg.epsilon;
    let j_schwinger = units.e_charge() * n * units.v_f();
    Ok(CurrentResult {
        epsilon: cfg.epsilon,
        t_bal: cfg.t_bal,
        t_c: cfg.t_c,
        power_o: power,
        sigma_o: sigma,
        rate_s: rate,
        carrier_density: n,
        j_quasi,
        j_schwinger,
        j_total: j_quasi + j_schwinger,
        regime: Regime::from_ratio(cfg.t_bal / cfg.t_c),
        model_extension: cfg.t_bal > cfg.t_c,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub epsilon: f64,
    pub t_bal: f64,
    pub result: Result<CurrentResult>,
}

/// Evaluates every (ε, t_bal) cell, ε outer and t_bal inner. Failed cells keep their error.
pub fn sweep(
    eps_grid: &[f64],
    tbal_grid: &[f64],
    units: &UnitSystem,
    quad: &QuadratureConfig,
) -> Result<Vec<SweepRow>> {
    if eps_grid.is_empty() || tbal_grid.is_empty() {
        return Err(Error::Domain("sweep grids must be nonempty".into()));
    }
    for &v in eps_grid.iter().chain(tbal_grid) {
        check_positive("sweep grid value", v)?;
    }
    let cells: Vec<(f64, f64)> = eps_grid
        .iter()
        .flat_map(|&e| tbal_grid.iter().map(move |&t| (e, t)))
        .collect();
    Ok(cells
        .into_par_iter()
        .map(|(epsilon, t_bal)| SweepRow {
            epsilon,
            t_bal,
            result: FieldConfig::new(epsilon, t_bal).and_then(|f| current(f, units, quad)),
        })
        .collect())
}

/// `steps` values from `min` to `max`, linearly or geometrically spaced.
pub fn sweep_axis(min: f64, max: f64, steps: usize, log: bool) -> Result<Vec<f64>> {
    check_positive("grid minimum", min)?;
    check_positive("grid maximum", max)?;
    if steps == 0 || max < min {
        return Err(Error::Domain(format!(
            "invalid grid [{min}, {max}] with {steps} steps"
        )));
    }
    if steps == 1 {
        return Ok(vec![min]);
    }
    let last = (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| {
            let f = i as f64 / last;
            if i == steps - 1 {
                max
            } else if log {
                (min.ln() + f * (max.ln() - min.ln())).exp()
            } else {
                min + f * (max - min)
            }
        })
        .collect())
}

/// Least-squares slope of ln y against ln x.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let cov: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let var: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    cov / var
}
