// Copyright 2026 The weakcurrent Authors
// SPDX-License-Identifier: Apache-2.0

//! Run configuration: defaults, then a flat `key=value` file, then flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::integrator::{QuadMethod, QuadratureConfig};
use crate::units::{key_value_lines, parse_positive, ConstantKey, UnitPreset, UnitSystem};

use super::output::OutputFormat;

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub units_preset: UnitPreset,
    pub constant_overrides: BTreeMap<ConstantKey, f64>,
    /// `None` lets each subcommand pick its natural format.
    pub output_format: Option<OutputFormat>,
    /// `None` is standard output.
    pub output_path: Option<PathBuf>,
    pub quad: QuadratureConfig,
    /// Valley × spin multiplier applied at serialization; 1 reports per channel.
    pub degeneracy: u32,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            units_preset: UnitPreset::Natural,
            constant_overrides: BTreeMap::new(),
            output_format: None,
            output_path: None,
            quad: QuadratureConfig::default(),
            degeneracy: 1,
        }
    }
}

impl RunConfig {
    pub fn units(&self) -> Result<UnitSystem> {
        let overrides: Vec<(ConstantKey, f64)> = self
            .constant_overrides
            .iter()
            .map(|(&k, &v)| (k, v))
            .collect();
        self.units_preset.units().with_overrides(&overrides)
    }

    /// Parses config text over the defaults.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        let mut quad = cfg.quad;
        for entry in key_value_lines(text) {
            let (line, key, value) = entry?;
            let bad = |message: String| Error::Config { line, message };
            if let Some(constant) = ConstantKey::parse(key) {
                cfg.constant_overrides
                    .insert(constant, parse_positive(line, key, value)?);
                continue;
            }
            match key {
                "units" => {
                    cfg.units_preset = value.parse().map_err(|e: Error| bad(e.to_string()))?
                }
                "format" => {
                    cfg.output_format = Some(value.parse().map_err(|e: Error| bad(e.to_string()))?)
                }
                "out" => cfg.output_path = Some(PathBuf::from(value)),
                "seed" => {
                    quad.seed = value
                        .parse()
                        .map_err(|_| bad(format!("bad seed `{value}`")))?
                }
                "rel_tol" => quad.rel_tol = parse_positive(line, key, value)?,
                "max_evals" => {
                    quad.max_evals = value
                        .parse()
                        .map_err(|_| bad(format!("bad max_evals `{value}`")))?
                }
                "quad" => {
                    quad.method = value
                        .parse::<QuadMethod>()
                        .map_err(|e| bad(e.to_string()))?
                }
                "degeneracy" => {
                    cfg.degeneracy = match value.parse::<u32>() {
                        Ok(d) if d >= 1 => d,
                        _ => {
                            return Err(bad(format!(
                                "degeneracy must be a positive integer, got `{value}`"
                            )))
                        }
                    }
                }
                other => return Err(bad(format!("unknown key `{other}`"))),
            }
        }
        cfg.quad = QuadratureConfig::new(quad.method, quad.rel_tol, quad.max_evals, quad.seed)?;
        Ok(cfg)
    }
}

/// Reads and parses a config file.
pub fn load_config(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Config {
        line: 0,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    RunConfig::from_text(&text)
}
