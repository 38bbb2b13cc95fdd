// Copyright 2026 The weakcurrent Authors
// SPDX-License-Identifier: Apache-2.0

//! Work and impulse bookkeeping of a creation transition
//! (−E, (−p_x, p_y)) → (E, (p_x, p_y)) driven by a field ε along +x.

use serde::Serialize;

use crate::dirac::{selected_weak_velocity, MomentumPoint};
use crate::error::{Error, Result};
use crate::units::{check_positive, UnitSystem};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionSpec {
    /// Final momentum; the initial one is (−p_x, p_y).
    pub p: MomentumPoint,
    pub units: UnitSystem,
    pub epsilon: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransitionKinematics {
    #[serde(rename = "delta_E")]
    pub delta_e: f64,
    pub delta_px: f64,
    pub delta_t: f64,
    pub delta_x: f64,
    pub v_g: f64,
    #[serde(rename = "T")]
    pub probability: f64,
}

/// ΔE = 2E is the work eεΔx, Δp_x = 2p_x is the impulse eεΔt.
pub fn kinematics(spec: &TransitionSpec) -> Result<TransitionKinematics> {
    let TransitionSpec { p, units, epsilon } = *spec;
    if !(p.p_x > 0.0) {
        return Err(Error::NoTransition { p_x: p.p_x });
    }
    check_positive("epsilon", epsilon)?;
    let force = units.e_charge() * epsilon;
    let delta_e = 2.0 * p.energy(&units);
    let delta_px = 2.0 * p.p_x;
    Ok(TransitionKinematics {
        delta_e,
        delta_px,
        delta_t: delta_px / force,
        delta_x: delta_e / force,
        v_g: delta_e / delta_px,
        probability: transition_probability(&p)?,
    })
}

/// T = cos²θ′ = p_x²/(p_x²+p_y²); zero when the initial state has no +x velocity.
pub fn transition_probability(p: &MomentumPoint) -> Result<f64> {
    let r2 = p.p_x * p.p_x + p.p_y * p.p_y;
    if r2 == 0.0 {
        return Err(Error::UndefinedDirection);
    }
    if p.p_x <= 0.0 {
        return Ok(0.0);
    }
    Ok(p.p_x * p.p_x / r2)
}

/// |T·v_f·<σ_x>_w − v_f·cos θ′|, the flux-matching residual.
pub fn check_flux_consistency(p: &MomentumPoint, units: &UnitSystem) -> Result<f64> {
    let weak = selected_weak_velocity(p, units)?;
    let t = transition_probability(p)?;
    let cos_post = p.p_x / p.norm();
    Ok((t * units.v_f() * weak.sigma_x_w - units.v_f() * cos_post).abs())
}
