// Copyright 2026 The weakcurrent Authors
// SPDX-License-Identifier: Apache-2.0

//! Physical constants, unit presets and the crossover time scale.
//!
//! Every formula in the crate takes a [`UnitSystem`] instead of hard-coding
//! constants. The default preset is natural units (ℏ = e = v_f = 1); the SI
//! preset uses CODATA 2018 values for ℏ and e and the conventional graphene
//! Fermi velocity of 10⁶ m/s, which is an external convention and can be
//! overridden from a constants file.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Reduced Planck constant, J·s (CODATA 2018, exact).
pub const CODATA_HBAR: f64 = 1.054_571_817e-34;
/// Elementary charge, C (CODATA 2018, exact).
pub const CODATA_ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
/// Conventional graphene Fermi velocity, m/s.
pub const GRAPHENE_FERMI_VELOCITY: f64 = 1.0e6;

/// Constants consumed by every formula. `c` of the relativistic formulas is `v_f`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UnitSystem {
    hbar: f64,
    e_charge: f64,
    v_f: f64,
    planck_h: f64,
}

impl UnitSystem {
    pub fn new(hbar: f64, e_charge: f64, v_f: f64) -> Result<Self> {
        for (name, value) in [("hbar", hbar), ("e_charge", e_charge), ("v_f", v_f)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::Domain(format!(
                    "{name} must be positive and finite, got {value}"
                )));
            }
        }
        Ok(Self {
            hbar,
            e_charge,
            v_f,
            planck_h: 2.0 * PI * hbar,
        })
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn e_charge(&self) -> f64 {
        self.e_charge
    }

    pub fn v_f(&self) -> f64 {
        self.v_f
    }

    /// h = 2πℏ.
    pub fn planck_h(&self) -> f64 {
        self.planck_h
    }

    /// Returns a copy with one constant replaced.
    pub fn with_constant(&self, key: ConstantKey, value: f64) -> Result<Self> {
        match key {
            ConstantKey::Hbar => Self::new(value, self.e_charge, self.v_f),
            ConstantKey::ECharge => Self::new(self.hbar, value, self.v_f),
            ConstantKey::FermiVelocity => Self::new(self.hbar, self.e_charge, value),
        }
    }

    /// Applies overrides in order.
    pub fn with_overrides<'a, I>(&self, overrides: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a (ConstantKey, f64)>,
    {
        overrides
            .into_iter()
            .try_fold(*self, |units, &(key, value)| {
                units.with_constant(key, value)
            })
    }

    /// e²/h, the per-channel conductance scale.
    pub fn conductance_quantum(&self) -> f64 {
        self.e_charge * self.e_charge / self.planck_h
    }

    /// sqrt(e·ε·ℏ/v_f), the momentum scale set by the field.
    pub fn field_momentum(&self, epsilon: f64) -> f64 {
        (self.e_charge * epsilon * self.hbar / self.v_f).sqrt()
    }

    /// e^{3/2}ε^{3/2}/(ℏ^{3/2}v_f^{1/2}), the pair-creation rate scale (per area per time).
    pub fn rate_scale(&self, epsilon: f64) -> f64 {
        (self.e_charge * epsilon / self.hbar).powf(1.5) / self.v_f.sqrt()
    }
}

impl Default for UnitSystem {
    fn default() -> Self {
        natural_units()
    }
}

/// ℏ = e = v_f = 1.
pub fn natural_units() -> UnitSystem {
    UnitSystem {
        hbar: 1.0,
        e_charge: 1.0,
        v_f: 1.0,
        planck_h: 2.0 * PI,
    }
}

/// SI constants with v_f = 10⁶ m/s.
pub fn si_graphene_units() -> UnitSystem {
    UnitSystem {
        hbar: CODATA_HBAR,
        e_charge: CODATA_ELEMENTARY_CHARGE,
        v_f: GRAPHENE_FERMI_VELOCITY,
        planck_h: 2.0 * PI * CODATA_HBAR,
    }
}

/// t_c = sqrt(ℏ/(e·ε·v_f)); ballistic times below it are quasi-Ohmic.
pub fn crossover_time(units: &UnitSystem, epsilon: f64) -> Result<f64> {
    check_positive("epsilon", epsilon)?;
    Ok((units.hbar / (units.e_charge * epsilon * units.v_f)).sqrt())
}

pub(crate) fn check_positive(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{name} must be positive and finite, got {value}"
        )))
    }
}

/// Field strength and ballistic time of one run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldConfig {
    epsilon: f64,
    t_bal: f64,
}

impl FieldConfig {
    pub fn new(epsilon: f64, t_bal: f64) -> Result<Self> {
        check_positive("epsilon", epsilon)?;
        check_positive("t_bal", t_bal)?;
        Ok(Self { epsilon, t_bal })
    }

    /// Ballistic time from the sample length, t_bal = L/v_f.
    pub fn from_length(units: &UnitSystem, epsilon: f64, length: f64) -> Result<Self> {
        check_positive("length", length)?;
        Self::new(epsilon, length / units.v_f)
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn t_bal(&self) -> f64 {
        self.t_bal
    }
}

/// Named unit presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UnitPreset {
    #[default]
    Natural,
    Si,
}

impl UnitPreset {
    pub fn units(self) -> UnitSystem {
        match self {
            UnitPreset::Natural => natural_units(),
            UnitPreset::Si => si_graphene_units(),
        }
    }
}

impl FromStr for UnitPreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "natural" => Ok(UnitPreset::Natural),
            "si" => Ok(UnitPreset::Si),
            other => Err(Error::Domain(format!(
                "unknown unit preset `{other}` (expected natural|si)"
            ))),
        }
    }
}

impl fmt::Display for UnitPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UnitPreset::Natural => "natural",
            UnitPreset::Si => "si",
        })
    }
}

/// Keys accepted in a constants file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstantKey {
    Hbar,
    ECharge,
    FermiVelocity,
}

impl ConstantKey {
    pub fn parse(key: &str) -> Option<Self> {
        match key {
            "hbar" => Some(ConstantKey::Hbar),
            "e" | "e_charge" => Some(ConstantKey::ECharge),
            "v_f" => Some(ConstantKey::FermiVelocity),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ConstantKey::Hbar => "hbar",
            ConstantKey::ECharge => "e_charge",
            ConstantKey::FermiVelocity => "v_f",
        }
    }
}

/// Iterates `(line_number, key, value)` over flat `key=value` text.
///
/// Blank lines and lines starting with `#` are skipped. Line numbers start at 1.
pub fn key_value_lines(text: &str) -> impl Iterator<Item = Result<(usize, &str, &str)>> {
    text.lines().enumerate().filter_map(|(idx, raw)| {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            return None;
        }
        Some(match line.split_once('=') {
            Some((k, v)) if !k.trim().is_empty() => Ok((idx + 1, k.trim(), v.trim())),
            _ => Err(Error::Config {
                line: idx + 1,
                message: format!("expected key=value, got `{line}`"),
            }),
        })
    })
}

/// Parses a constants file: `hbar`, `e_charge` (or `e`) and `v_f` only.
pub fn parse_constants(text: &str) -> Result<Vec<(ConstantKey, f64)>> {
    key_value_lines(text)
        .map(|entry| {
            let (line, key, value) = entry?;
            let key = ConstantKey::parse(key).ok_or_else(|| Error::Config {
                line,
                message: format!("unknown constant `{key}`"),
            })?;
            let value = parse_positive(line, key.name(), value)?;
            Ok((key, value))
        })
        .collect()
}

pub(crate) fn parse_positive(line: usize, key: &str, value: &str) -> Result<f64> {
    match value.parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        _ => Err(Error::Config {
            line,
            message: format!("`{key}` needs a positive number, got `{value}`"),
        }),
    }
}
