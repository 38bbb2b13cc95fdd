// Copyright 2026 The weakcurrent Authors
// SPDX-License-Identifier: Apache-2.0

//! Acceptance gate. Every criterion prints one PASS/FAIL line; the process
//! exits non-zero if any criterion fails.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use weakcurrent::dirac::{
    make_spinor, selected_weak_velocity, transition_angles, verify_weak_propagator, weak_value,
    weak_value_closed_form, Band, MomentumPoint, Observable,
};
use weakcurrent::integrator::{
    current, loglog_slope, minimal_conductivity, quasi_ohmic_power, schwinger_rate_asymptotic,
    schwinger_reference_rate, schwinger_region_rate, sweep_axis, QuadMethod, QuadratureConfig,
};
use weakcurrent::kinematics::{kinematics, transition_probability, TransitionSpec};
use weakcurrent::regions::RegionConfig;
use weakcurrent::special::{beta, schwinger_prefactor_integral};
use weakcurrent::units::{crossover_time, natural_units, FieldConfig};

// Tolerances and thresholds of the gate.
const C1_REL_TOL: f64 = 1e-6;
const C1_MAX_TIME: Duration = Duration::from_secs(1);
const C2_REL_TOL: f64 = 2e-3;
const C2_RATIO_RANGE: (f64, f64) = (0.595, 0.605);
const C2_MAX_TIME: Duration = Duration::from_secs(5);
const C3_ABS_TOL: f64 = 1e-8;
const C4_SLOPE_TOL: f64 = 0.02;
const C5_SAMPLES: usize = 10_000;
const C5_TOL: f64 = 1e-12;
const C6_SELECTIONS: usize = 100;
const C6_SLOPE_TOL: f64 = 0.1;
const C7_SAMPLES: usize = 100_000;
const C7_TANGENCY_TOL: f64 = 1e-10;
const C8_SAMPLES: usize = 1_000_000;
const C8_SIGMAS: f64 = 3.0;
const SUITE_MAX_TIME: Duration = Duration::from_secs(60);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn quad() -> QuadratureConfig {
    QuadratureConfig::default()
}

/// Minimal conductivity e²/(4πh) from the O-region quadrature.
fn c1_minimal_conductivity() -> Outcome {
    let units = natural_units();
    let exact = minimal_conductivity(&units);
    let mut worst: f64 = 0.0;
    let mut slowest = Duration::ZERO;
    for eps in [0.5, 1.0, 2.0] {
        let t_c = crossover_time(&units, eps).unwrap();
        for frac in [0.1, 0.5, 1.0] {
            let start = Instant::now();
            let cfg = RegionConfig::from_parts(units, eps, frac * t_c).unwrap();
            let power = quasi_ohmic_power(&cfg, &quad()).map_err(|e| e.to_string())?;
            slowest = slowest.max(start.elapsed());
            let sigma = power.value / (eps * eps);
            worst = worst.max((sigma / exact - 1.0).abs());
        }
    }
    check(
        worst <= C1_REL_TOL && slowest < C1_MAX_TIME,
        format!("max rel. error {worst:.2e} (tol {C1_REL_TOL:e}), slowest case {slowest:?}"),
    )
}

/// S-region rate at t_bal = 10³ t_c against the B(½,¾)/4 prefactor.
fn c2_schwinger_prefactor() -> Outcome {
    let units = natural_units();
    let eps = 1.0;
    let t_c = crossover_time(&units, eps).unwrap();
    let start = Instant::now();
    let cfg = RegionConfig::from_parts(units, eps, 1e3 * t_c).unwrap();
    let rate = schwinger_region_rate(&cfg, &quad())
        .map_err(|e| e.to_string())?
        .value;
    let elapsed = start.elapsed();
    let asymptotic = schwinger_rate_asymptotic(&units, eps);
    let rel = (rate / asymptotic - 1.0).abs();
    let ratio = rate / schwinger_reference_rate(0.0, eps, &units).unwrap();
    check(
        rel <= C2_REL_TOL && ratio >= C2_RATIO_RANGE.0 && ratio <= C2_RATIO_RANGE.1 && elapsed < C2_MAX_TIME,
        format!("rel. deviation {rel:.2e} (tol {C2_REL_TOL:e}), ratio to massless rate {ratio:.5}, {elapsed:?}"),
    )
}

/// 1-D prefactor integral against B(½,¾)/4 via log-Γ.
fn c3_prefactor_integral() -> Outcome {
    let integral = schwinger_prefactor_integral(1e-13).map_err(|e| e.to_string())?;
    let target = beta(0.5, 0.75) / 4.0;
    let diff = (integral - target).abs();
    check(
        diff <= C3_ABS_TOL,
        format!(
            "integral {integral:.12} vs B(1/2,3/4)/4 = {target:.12}, |diff| = {diff:.3e} (tol {C3_ABS_TOL:e}); \
             integral/target = {:.12}",
            integral / target
        ),
    )
}

fn slope_at_fixed_tbal(t_bal: f64) -> Result<f64, String> {
    let units = natural_units();
    let eps = sweep_axis(10f64.powf(-0.5), 10f64.powf(0.5), 11, true).map_err(|e| e.to_string())?;
    let mut j = Vec::with_capacity(eps.len());
    for &e in &eps {
        let field = FieldConfig::new(e, t_bal).unwrap();
        j.push(
            current(field, &units, &quad())
                .map_err(|e| e.to_string())?
                .j_total,
        );
    }
    Ok(loglog_slope(&eps, &j))
}

/// j ∝ ε deep in the quasi-Ohmic regime, j ∝ ε^{3/2} deep in the Schwinger one.
fn c4_crossover_scaling() -> Outcome {
    let t_c_mid = crossover_time(&natural_units(), 1.0).unwrap();
    let ohmic = slope_at_fixed_tbal(0.05 * t_c_mid)?;
    let schwinger = slope_at_fixed_tbal(50.0 * t_c_mid)?;
    check(
        (ohmic - 1.0).abs() <= C4_SLOPE_TOL && (schwinger - 1.5).abs() <= C4_SLOPE_TOL,
        format!(
            "slopes {ohmic:.5} (target 1.00) and {schwinger:.5} (target 1.50), tol ±{C4_SLOPE_TOL}"
        ),
    )
}

fn random_momentum(rng: &mut ChaCha8Rng) -> MomentumPoint {
    MomentumPoint::new(rng.random_range(1e-3..1.0), rng.random_range(-3.0..3.0))
}

fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

/// Flux matching, v_g identity, closed form vs spinor oracle, strangeness.
fn c5_weak_value_identities() -> Outcome {
    let units = natural_units();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut flux, mut vg, mut oracle, mut min_sx) = (0.0f64, 0.0f64, 0.0f64, f64::INFINITY);
    for _ in 0..C5_SAMPLES {
        let p = random_momentum(&mut rng);
        let w = selected_weak_velocity(&p, &units).unwrap();
        let t = transition_probability(&p).unwrap();
        flux = flux.max((t * w.sigma_x_w - p.p_x / p.norm()).abs());
        let k = kinematics(&TransitionSpec {
            p,
            units,
            epsilon: 1.0,
        })
        .unwrap();
        vg = vg.max((k.v_g - units.v_f() * w.sigma_x_w).abs() / units.v_f());
        min_sx = min_sx.min(w.sigma_x_w);

        let (tp, tq) = transition_angles(&p);
        let closed = weak_value_closed_form(tp, tq).unwrap();
        let pre = make_spinor(tp, Band::Negative);
        let post = make_spinor(tq, Band::Positive);
        let sx = weak_value(&pre, &post, Observable::SigmaX).unwrap();
        let sy = weak_value(&pre, &post, Observable::SigmaY).unwrap();
        oracle = oracle
            .max(rel_diff(sx.re, closed.sigma_x_w))
            .max(rel_diff(sy.re, closed.sigma_y_w))
            .max(sx.im.abs() / closed.sigma_x_w.abs().max(1.0))
            .max(sy.im.abs() / closed.sigma_x_w.abs().max(1.0));

        // generic (θ, θ′) pairs, not only the field-selected ones
        let (a, b) = (rng.random_range(-PI..PI), rng.random_range(-PI..PI));
        if (0.5 * (a - b)).sin().abs() > 1e-3 {
            let closed = weak_value_closed_form(a, b).unwrap();
            let pre = make_spinor(a, Band::Negative);
            let post = make_spinor(b, Band::Positive);
            let sx = weak_value(&pre, &post, Observable::SigmaX).unwrap();
            let sy = weak_value(&pre, &post, Observable::SigmaY).unwrap();
            oracle = oracle
                .max(rel_diff(sx.re, closed.sigma_x_w))
                .max(rel_diff(sy.re, closed.sigma_y_w));
        }
    }
    check(
        flux <= C5_TOL && vg <= C5_TOL && oracle <= C5_TOL && min_sx >= 1.0,
        format!(
            "max |T<σx>w − cosθ| {flux:.1e}, max |v_g − v_f<σx>w|/v_f {vg:.1e}, \
             max closed-vs-oracle {oracle:.1e} (relative to max(1,|w|)), min <σx>w {min_sx:.6}"
        ),
    )
}

/// Factorization error slope 2 over t ∈ [1e-4, 1e-2]·ħ/E.
fn c6_propagator_remainder() -> Outcome {
    let units = natural_units();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut slopes = Vec::with_capacity(C6_SELECTIONS);
    while slopes.len() < C6_SELECTIONS {
        let r = rng.random_range(0.1..2.0);
        let phi = rng.random_range(-PI..PI);
        let p = MomentumPoint::new(r * phi.cos(), r * phi.sin());
        let (tp, tq) = (rng.random_range(-PI..PI), rng.random_range(-PI..PI));
        let pre = make_spinor(tp, Band::Negative);
        let post = make_spinor(tq, Band::Positive);
        // keep well-conditioned selections whose second-order term does not vanish
        if post.inner(&pre).norm() < 0.1 {
            continue;
        }
        let wx = weak_value(&pre, &post, Observable::SigmaX).unwrap().re;
        let wy = weak_value(&pre, &post, Observable::SigmaY).unwrap().re;
        let e = p.energy(&units);
        let weak_energy = units.v_f() * (wx * p.p_x + wy * p.p_y);
        if (e * e - weak_energy * weak_energy).abs() < 0.05 * e * e {
            continue;
        }
        let unit = units.hbar() / e;
        let times: Vec<f64> = sweep_axis(1e-4, 1e-2, 21, true)
            .unwrap()
            .iter()
            .map(|t| t * unit)
            .collect();
        let samples =
            verify_weak_propagator(&p, &units, tp, tq, &times).map_err(|e| e.to_string())?;
        let errs: Vec<f64> = samples.iter().map(|s| s.error).collect();
        slopes.push(loglog_slope(&times, &errs));
    }
    let worst = slopes.iter().map(|s| (s - 2.0).abs()).fold(0.0, f64::max);
    let mean = slopes.iter().sum::<f64>() / slopes.len() as f64;
    check(
        worst <= C6_SLOPE_TOL,
        format!(
            "{} selections, mean slope {mean:.5}, max |slope − 2| {worst:.2e} (tol {C6_SLOPE_TOL})",
            slopes.len()
        ),
    )
}

/// B ⊆ V below t_c, tangency at t_c, Δt ≤ δt ⟺ Δx ≤ δx.
fn c7_region_geometry() -> Outcome {
    let units = natural_units();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut violations = 0usize;
    let mut accepted = 0usize;
    for (eps, frac) in [(1.0, 0.1), (0.5, 0.5), (2.0, 1.0)] {
        let t_c = crossover_time(&units, eps).unwrap();
        let cfg = RegionConfig::from_parts(units, eps, frac * t_c).unwrap();
        let mut n = 0;
        while n < C7_SAMPLES {
            let p = MomentumPoint::new(
                rng.random_range(0.0..cfg.r_b),
                rng.random_range(-cfg.r_b..cfg.r_b),
            );
            if !cfg.in_b(&p) {
                continue;
            }
            n += 1;
            if !cfg.in_v(&p) {
                violations += 1;
            }
        }
        accepted += n;
    }

    let cfg = RegionConfig::from_parts(units, 1.0, 1.0).unwrap();
    let tangent = MomentumPoint::new(cfg.r_b, 0.0);
    let b_residual = ((tangent.p_x * tangent.p_x) / (cfg.r_b * cfg.r_b) - 1.0).abs();
    let v_residual = (tangent.p_x.powi(4) / (cfg.k_v * cfg.k_v) - 1.0).abs();
    // V slack k_v² − p_x²|p|² over the B circle: zero only at φ = 0
    let slack = |phi: f64| cfg.k_v * cfg.k_v - cfg.r_b.powi(4) * phi.cos().powi(2);
    let (mut min_slack, mut argmin) = (f64::INFINITY, 0.0);
    for i in 0..=20_000 {
        let phi = -0.5 * PI + PI * i as f64 / 20_000.0;
        if slack(phi) < min_slack {
            min_slack = slack(phi);
            argmin = phi;
        }
    }
    let off_axis_positive =
        (1..=1000).all(|i| slack(i as f64 * 1e-3) > 0.0 && slack(-(i as f64) * 1e-3) > 0.0);

    let mut disagreements = 0usize;
    for (eps, t_bal) in [(1.0, 1.0), (0.3, 20.0), (4.0, 0.05)] {
        let cfg = RegionConfig::from_parts(units, eps, t_bal).unwrap();
        let scale = 2.0 * cfg.k_v.sqrt();
        for _ in 0..C7_SAMPLES {
            let p = MomentumPoint::new(
                rng.random_range(1e-9..scale),
                rng.random_range(-4.0 * scale..4.0 * scale),
            );
            let by_time = cfg.impulse_within_lifetime(&p);
            let by_length = cfg.work_within_fluctuation_length(&p);
            if by_time != by_length || by_time != cfg.in_v(&p) {
                disagreements += 1;
            }
        }
    }
    check(
        violations == 0
            && b_residual <= C7_TANGENCY_TOL
            && v_residual <= C7_TANGENCY_TOL
            && argmin.abs() < 1e-12
            && min_slack.abs() <= C7_TANGENCY_TOL * cfg.k_v * cfg.k_v
            && off_axis_positive
            && disagreements == 0,
        format!(
            "{violations} B⊄V violations in {accepted} samples; tangency residuals {b_residual:.1e}/{v_residual:.1e}, \
             slack minimum at φ = {argmin:.1e}; {disagreements} predicate disagreements"
        ),
    )
}

/// Monte Carlo within 3σ of adaptive quadrature on both integrals.
fn c8_monte_carlo_agreement() -> Outcome {
    let units = natural_units();
    let mc = QuadratureConfig::new(QuadMethod::MonteCarlo, 1e-10, C8_SAMPLES, 2026).unwrap();
    let o_cfg = RegionConfig::from_parts(units, 1.0, 0.5).unwrap();
    let s_cfg = RegionConfig::from_parts(units, 1.0, 100.0).unwrap();
    let o_ref = quasi_ohmic_power(&o_cfg, &quad())
        .map_err(|e| e.to_string())?
        .value;
    let o_mc = quasi_ohmic_power(&o_cfg, &mc).map_err(|e| e.to_string())?;
    let s_ref = schwinger_region_rate(&s_cfg, &quad())
        .map_err(|e| e.to_string())?
        .value;
    let s_mc = schwinger_region_rate(&s_cfg, &mc).map_err(|e| e.to_string())?;
    let z_o = (o_mc.value - o_ref).abs() / o_mc.abs_error;
    let z_s = (s_mc.value - s_ref).abs() / s_mc.abs_error;
    check(
        z_o <= C8_SIGMAS && z_s <= C8_SIGMAS,
        format!(
            "O: {:.3e} ± {:.1e} vs {o_ref:.6e} ({z_o:.2}σ); S: {:.4e} ± {:.1e} vs {s_ref:.6e} ({z_s:.2}σ)",
            o_mc.value, o_mc.abs_error, s_mc.value, s_mc.abs_error
        ),
    )
}

fn run_sweep(threads: &str, quad: &str) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_weakcurrent"))
        .env("RAYON_NUM_THREADS", threads)
        .args([
            "sweep",
            "--eps-min",
            "0.5",
            "--eps-max",
            "2",
            "--eps-steps",
            "3",
            "--tbal-min",
            "0.05",
            "--tbal-max",
            "50",
            "--tbal-steps",
            "4",
            "--log",
            "--seed",
            "11",
            "--quad",
            quad,
            "--max-evals",
            "200000",
        ])
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(String::from_utf8_lossy(&out.stderr).into_owned());
    }
    Ok(out.stdout)
}

/// Byte-identical sweep CSV across repeats and worker counts.
fn c9_determinism() -> Outcome {
    let mut detail = Vec::new();
    let mut ok = true;
    for quad in ["adaptive", "mc"] {
        let a = run_sweep("1", quad)?;
        let b = run_sweep("1", quad)?;
        let c = run_sweep("4", quad)?;
        let same = a == b && a == c && !a.is_empty();
        ok &= same;
        detail.push(format!("{quad}: {} bytes, identical = {same}", a.len()));
    }
    check(ok, detail.join("; "))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 minimal conductivity", c1_minimal_conductivity),
        ("2 Schwinger prefactor", c2_schwinger_prefactor),
        ("3 prefactor integral oracle", c3_prefactor_integral),
        ("4 crossover scaling", c4_crossover_scaling),
        ("5 weak-value identities", c5_weak_value_identities),
        ("6 propagator remainder", c6_propagator_remainder),
        ("7 region geometry", c7_region_geometry),
        ("8 Monte Carlo agreement", c8_monte_carlo_agreement),
        ("9 sweep determinism", c9_determinism),
    ];
    let suite = Instant::now();
    let mut failed = 0;
    for (name, criterion) in criteria {
        let start = Instant::now();
        let outcome = criterion();
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS  criterion {name}: {detail} [{elapsed:.2?}]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {name}: {detail} [{elapsed:.2?}]");
            }
        }
    }
    let total = suite.elapsed();
    let in_budget = total < SUITE_MAX_TIME;
    println!(
        "{}  suite runtime {total:.2?} (budget {SUITE_MAX_TIME:?})",
        if in_budget { "PASS" } else { "FAIL" }
    );
    if !in_budget {
        failed += 1;
    }
    println!("acceptance: {} failed", failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
