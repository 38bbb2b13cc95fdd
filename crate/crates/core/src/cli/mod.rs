// Copyright 2026 The weakcurrent Authors
// SPDX-License-Identifier: Apache-2.0

//! Command-line front end.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage or config error,
//! 3 numeric domain error, 4 quadrature non-convergence. Failures print one
//! line `error kind=<kind> exit=<code> message=<text>` to stderr.

pub mod config;
pub mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::dirac::{
    make_spinor, selected_weak_velocity, verify_weak_propagator, weak_value, Band, MomentumPoint,
    Observable,
};
use crate::error::Error;
use crate::integrator::{
    conductivity, minimal_conductivity, schwinger_rate_asymptotic, schwinger_reference_rate,
    schwinger_region_rate, sweep, sweep_axis, CurrentResult, QuadMethod, QuadratureConfig, Regime,
    SweepRow,
};
use crate::kinematics::{kinematics, TransitionSpec};
use crate::regions::{classify_grid, sample_boundaries, RegionConfig};
use crate::units::{crossover_time, FieldConfig, UnitPreset, UnitSystem};

pub use config::{load_config, RunConfig};
pub use output::{format_f64, Artifact, OutputFormat, Record};

#[derive(Debug, Parser)]
#[command(
    name = "weakcurrent",
    version,
    about = "Weak-value model of the electric current in graphene"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Default)]
pub struct GlobalArgs {
    /// Unit preset: natural (ħ = e = v_f = 1) or si
    #[arg(long, global = true, value_parser = parse_arg::<UnitPreset>)]
    pub units: Option<UnitPreset>,
    /// Flat key=value config file; flags win over it
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// csv or json
    #[arg(long, global = true, value_parser = parse_arg::<OutputFormat>)]
    pub format: Option<OutputFormat>,
    /// Output file instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Monte Carlo seed
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Relative tolerance of the adaptive quadrature
    #[arg(long, global = true)]
    pub rel_tol: Option<f64>,
    /// Evaluation budget (quadrature) or sample count (Monte Carlo)
    #[arg(long, global = true)]
    pub max_evals: Option<usize>,
    /// adaptive, adaptive-polar, cartesian-strip or mc
    #[arg(long, global = true, value_parser = parse_arg::<QuadMethod>)]
    pub quad: Option<QuadMethod>,
    /// Valley × spin multiplier for reported densities
    #[arg(long, global = true)]
    pub degeneracy: Option<u32>,
}

fn parse_arg<T: std::str::FromStr<Err = Error>>(s: &str) -> Result<T, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Ballistic time, given directly or as a sample length L = v_f·t_bal.
#[derive(Debug, Args, Clone, Copy)]
#[group(required = true, multiple = false)]
pub struct BallisticArgs {
    #[arg(long)]
    pub tbal: Option<f64>,
    /// Sample length; converted with t_bal = L/v_f
    #[arg(long)]
    pub length: Option<f64>,
}

impl BallisticArgs {
    fn field(&self, units: &UnitSystem, epsilon: f64) -> crate::Result<FieldConfig> {
        match (self.tbal, self.length) {
            (Some(t), _) => FieldConfig::new(epsilon, t),
            (None, Some(l)) => FieldConfig::from_length(units, epsilon, l),
            (None, None) => unreachable!("clap enforces the group"),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Weak values for an explicit selection or for the field-selected transition
    WeakValue {
        #[arg(long, requires = "theta_post", conflicts_with_all = ["px", "py"], allow_hyphen_values = true)]
        theta_pre: Option<f64>,
        #[arg(long, requires = "theta_pre", allow_hyphen_values = true)]
        theta_post: Option<f64>,
        #[arg(long, requires = "py", allow_hyphen_values = true)]
        px: Option<f64>,
        #[arg(long, requires = "px", allow_hyphen_values = true)]
        py: Option<f64>,
    },
    /// Work/impulse kinematics of one creation transition
    Transition {
        #[arg(long, allow_hyphen_values = true)]
        px: f64,
        #[arg(long, allow_hyphen_values = true)]
        py: f64,
        #[arg(long)]
        eps: f64,
    },
    /// Classify a momentum grid, or sample the region boundaries
    Regions {
        #[arg(long)]
        eps: f64,
        #[command(flatten)]
        ballistic: BallisticArgs,
        #[arg(long, default_value_t = 101)]
        grid: usize,
        #[arg(long)]
        boundaries: bool,
        #[arg(long, default_value_t = 200)]
        n: usize,
    },
    /// Quasi-Ohmic conductivity from the O-region integral
    Conductivity {
        #[arg(long)]
        eps: f64,
        #[command(flatten)]
        ballistic: BallisticArgs,
    },
    /// Carrier creation rate from the S-region integral
    SchwingerRate {
        #[arg(long)]
        eps: f64,
        #[command(flatten)]
        ballistic: BallisticArgs,
    },
    /// Current over an (ε, t_bal) grid
    Sweep {
        #[arg(long)]
        eps_min: f64,
        #[arg(long)]
        eps_max: f64,
        #[arg(long)]
        eps_steps: usize,
        #[arg(long)]
        tbal_min: f64,
        #[arg(long)]
        tbal_max: f64,
        #[arg(long)]
        tbal_steps: usize,
        /// Geometric instead of linear spacing
        #[arg(long)]
        log: bool,
    },
    /// Error of the weak-value factorization of the free propagator
    VerifyPropagator {
        #[arg(long, allow_hyphen_values = true)]
        px: f64,
        #[arg(long, allow_hyphen_values = true)]
        py: f64,
        #[arg(long, allow_hyphen_values = true)]
        theta_pre: f64,
        #[arg(long, allow_hyphen_values = true)]
        theta_post: f64,
        /// Smallest time in units of ħ/E
        #[arg(long, default_value_t = 1e-4)]
        t_min: f64,
        /// Largest time in units of ħ/E
        #[arg(long, default_value_t = 1e-2)]
        t_max: f64,
        #[arg(long, default_value_t = 21)]
        steps: usize,
    },
    /// t_c = sqrt(ħ/(eεv_f))
    CrossoverTime {
        #[arg(long)]
        eps: f64,
    },
}

/// Failure of one CLI run.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Model(Error),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Model(Error::Config { .. }) => 2,
            CliError::Model(Error::Convergence { .. }) => 4,
            CliError::Model(_) => 3,
            CliError::Io(_) => 1,
        }
    }

    /// Single machine-parsable line.
    pub fn line(&self) -> String {
        let (kind, message) = match self {
            CliError::Usage(m) => ("usage", m.clone()),
            CliError::Model(e) => (e.kind(), e.to_string()),
            CliError::Io(e) => ("io", e.to_string()),
        };
        let message = message.split_whitespace().collect::<Vec<_>>().join(" ");
        format!(
            "error kind={kind} exit={} message={message}",
            self.exit_code()
        )
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Model(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Merges defaults, the optional config file and the global flags.
pub fn resolve_config(global: &GlobalArgs) -> crate::Result<RunConfig> {
    let mut cfg = match &global.config {
        Some(path) => load_config(path)?,
        None => RunConfig::default(),
    };
    if let Some(u) = global.units {
        cfg.units_preset = u;
    }
    if let Some(f) = global.format {
        cfg.output_format = Some(f);
    }
    if let Some(o) = &global.out {
        cfg.output_path = Some(o.clone());
    }
    if let Some(d) = global.degeneracy {
        if d == 0 {
            return Err(Error::Domain("degeneracy must be at least 1".into()));
        }
        cfg.degeneracy = d;
    }
    let q = cfg.quad;
    cfg.quad = QuadratureConfig::new(
        global.quad.unwrap_or(q.method),
        global.rel_tol.unwrap_or(q.rel_tol),
        global.max_evals.unwrap_or(q.max_evals),
        global.seed.unwrap_or(q.seed),
    )?;
    Ok(cfg)
}

/// Runs one parsed command and returns its artifact with the default format.
pub fn execute(command: &Command, cfg: &RunConfig) -> crate::Result<(Artifact, OutputFormat)> {
    let units = cfg.units()?;
    let g = f64::from(cfg.degeneracy);
    let json = OutputFormat::Json;
    let csv = OutputFormat::Csv;
    Ok(match *command {
        Command::WeakValue {
            theta_pre,
            theta_post,
            px,
            py,
        } => {
            let (sx, sy, overlap) = match (theta_pre, theta_post, px, py) {
                (Some(tp), Some(tq), _, _) => {
                    let pre = make_spinor(tp, Band::Negative);
                    let post = make_spinor(tq, Band::Positive);
                    let overlap = crate::dirac::checked_overlap(&pre, &post)?;
                    (
                        weak_value(&pre, &post, Observable::SigmaX)?.re,
                        weak_value(&pre, &post, Observable::SigmaY)?.re,
                        overlap,
                    )
                }
                (_, _, Some(px), Some(py)) => {
                    let w = selected_weak_velocity(&MomentumPoint::new(px, py), &units)?;
                    (w.sigma_x_w, w.sigma_y_w, w.overlap)
                }
                _ => {
                    return Err(Error::Domain(
                        "weak-value needs --theta-pre/--theta-post or --px/--py".into(),
                    ))
                }
            };
            let r = Record::new()
                .with("sigma_x_w", sx)
                .with("sigma_y_w", sy)
                .with("overlap_re", overlap.re)
                .with("overlap_im", overlap.im);
            (Artifact::Single(r), json)
        }
        Command::Transition { px, py, eps } => {
            let k = kinematics(&TransitionSpec {
                p: MomentumPoint::new(px, py),
                units,
                epsilon: eps,
            })?;
            let r = Record::new()
                .with("delta_E", k.delta_e)
                .with("delta_px", k.delta_px)
                .with("delta_t", k.delta_t)
                .with("delta_x", k.delta_x)
                .with("v_g", k.v_g)
                .with("T", k.probability);
            (Artifact::Single(r), json)
        }
        Command::Regions {
            eps,
            ballistic,
            grid,
            boundaries,
            n,
        } => {
            let region = RegionConfig::new(units, ballistic.field(&units, eps)?)?;
            let rows = if boundaries {
                sample_boundaries(&region, n)?
                    .into_iter()
                    .map(|b| {
                        Record::new()
                            .with("p_x", b.p_x)
                            .with("p_y", b.p_y)
                            .with("curve", b.curve.to_string())
                    })
                    .collect()
            } else {
                classify_grid(&region, grid)?
                    .into_iter()
                    .map(|(p, l)| {
                        Record::new()
                            .with("p_x", p.p_x)
                            .with("p_y", p.p_y)
                            .with("in_V", l.in_v)
                            .with("in_B", l.in_b)
                            .with("in_F", l.in_f)
                            .with("klass", l.klass_name())
                    })
                    .collect()
            };
            (Artifact::Table(rows), csv)
        }
        Command::Conductivity { eps, ballistic } => {
            let region = RegionConfig::new(units, ballistic.field(&units, eps)?)?;
            let s = conductivity(&region, &cfg.quad)?;
            let r = Record::new()
                .with("eps", region.epsilon)
                .with("t_bal", region.t_bal)
                .with("t_c", region.t_c)
                .with("sigma", g * s.sigma)
                .with("abs_error", g * s.abs_error)
                .with("power_O", g * s.sigma * eps * eps)
                .with("sigma_closed_form", g * minimal_conductivity(&units))
                .with(
                    "regime",
                    Regime::from_ratio(region.t_bal / region.t_c).to_string(),
                )
                .with("model_extension", s.model_extension)
                .with("method", cfg.quad.method.to_string())
                .with("degeneracy", u64::from(cfg.degeneracy));
            (Artifact::Single(r), json)
        }
        Command::SchwingerRate { eps, ballistic } => {
            let region = RegionConfig::new(units, ballistic.field(&units, eps)?)?;
            let rate = schwinger_region_rate(&region, &cfg.quad)?;
            let reference = schwinger_reference_rate(0.0, eps, &units)?;
            let r = Record::new()
                .with("eps", region.epsilon)
                .with("t_bal", region.t_bal)
                .with("t_c", region.t_c)
                .with("rate_S", g * rate.value)
                .with("abs_error", g * rate.abs_error)
                .with(
                    "rate_asymptotic",
                    g * schwinger_rate_asymptotic(&units, eps),
                )
                .with("reference_rate", g * reference)
                .with("ratio_to_reference", rate.value / reference)
                .with("method", cfg.quad.method.to_string())
                .with("degeneracy", u64::from(cfg.degeneracy));
            (Artifact::Single(r), json)
        }
        Command::Sweep {
            eps_min,
            eps_max,
            eps_steps,
            tbal_min,
            tbal_max,
            tbal_steps,
            log,
        } => {
            let eps = sweep_axis(eps_min, eps_max, eps_steps, log)?;
            let tbal = sweep_axis(tbal_min, tbal_max, tbal_steps, log)?;
            let rows = sweep(&eps, &tbal, &units, &cfg.quad)?;
            let records = rows
                .iter()
                .map(|row| sweep_record(row, &units, cfg.degeneracy))
                .collect();
            (Artifact::Table(records), csv)
        }
        Command::VerifyPropagator {
            px,
            py,
            theta_pre,
            theta_post,
            t_min,
            t_max,
            steps,
        } => {
            let p = MomentumPoint::new(px, py);
            let energy = p.energy(&units);
            if energy == 0.0 {
                return Err(Error::UndefinedDirection);
            }
            let unit = units.hbar() / energy;
            let times: Vec<f64> = sweep_axis(t_min, t_max, steps, true)?
                .iter()
                .map(|t| t * unit)
                .collect();
            let samples = verify_weak_propagator(&p, &units, theta_pre, theta_post, &times)?;
            let rows = samples
                .iter()
                .map(|s| Record::new().with("t", s.t).with("error", s.error))
                .collect();
            (Artifact::Table(rows), csv)
        }
        Command::CrossoverTime { eps } => {
            let r = Record::new()
                .with("eps", eps)
                .with("t_c", crossover_time(&units, eps)?);
            (Artifact::Single(r), json)
        }
    })
}

/// One sweep CSV/JSON row. A `degeneracy` column is appended when it is not 1.
pub fn sweep_record(row: &SweepRow, units: &UnitSystem, degeneracy: u32) -> Record {
    let t_c = crossover_time(units, row.epsilon).unwrap_or(f64::NAN);
    let mut r = Record::new()
        .with("eps", row.epsilon)
        .with("t_bal", row.t_bal)
        .with("t_c", t_c);
    match &row.result {
        Ok(res) => {
            let res: CurrentResult = res.with_degeneracy(degeneracy);
            r.push("power_O", res.power_o);
            r.push("sigma_O", res.sigma_o);
            r.push("rate_S", res.rate_s);
            r.push("n", res.carrier_density);
            r.push("j_quasi", res.j_quasi);
            r.push("j_schwinger", res.j_schwinger);
            r.push("j_total", res.j_total);
            r.push("regime", res.regime.to_string());
        }
        Err(e) => {
            for key in [
                "power_O",
                "sigma_O",
                "rate_S",
                "n",
                "j_quasi",
                "j_schwinger",
                "j_total",
            ] {
                r.push(key, f64::NAN);
            }
            r.push("regime", format!("error:{}", e.kind()));
        }
    }
    if degeneracy != 1 {
        r.push("degeneracy", u64::from(degeneracy));
    }
    r
}

/// Parses `argv` (program name first), runs it and writes the artifact.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            write!(stdout, "{e}")?;
            return Ok(());
        }
        Err(e) => {
            let first = e.to_string().lines().next().unwrap_or_default().to_string();
            return Err(CliError::Usage(first));
        }
    };
    let cfg = resolve_config(&cli.global)?;
    let (artifact, default_format) = execute(&cli.command, &cfg)?;
    let format = cfg.output_format.unwrap_or(default_format);
    match &cfg.output_path {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            output::write_artifact(&artifact, format, &mut file)?;
            file.flush()?;
        }
        None => output::write_artifact(&artifact, format, stdout)?,
    }
    Ok(())
}

/// Entry point used by the binary; returns the process exit status.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match run(argv, &mut lock) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", e.line());
            e.exit_code()
        }
    }
}
