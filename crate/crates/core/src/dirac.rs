// Copyright 2026 The weakcurrent Authors
// SPDX-License-Identifier: Apache-2.0

//! Chirality spinors of the massless 2+1D Dirac Hamiltonian
//! H = v_f(σ_x p_x + σ_y p_y) and weak values of the Pauli matrices under
//! pre- and post-selection.
//!
//! Band convention for the closed forms: pre-selection in the negative-energy
//! chirality at angle θ, post-selection in the positive-energy chirality at θ′.
//! With that pairing
//!
//! ```text
//! <σ_x>_w =  sin[(θ+θ′)/2] / sin[(θ−θ′)/2]
//! <σ_y>_w = −cos[(θ+θ′)/2] / sin[(θ−θ′)/2]
//! <σ_z>_w =  i·cot[(θ−θ′)/2]
//! ```
//!
//! The first two are real; `<σ_z>_w` is purely imaginary for every such pair.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::units::UnitSystem;

/// Below this |<post|pre>| a weak value is treated as divergent.
pub const SINGULAR_OVERLAP_TOL: f64 = 1e-12;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Band {
    Positive,
    Negative,
}

impl Band {
    pub fn sign(self) -> f64 {
        match self {
            Band::Positive => 1.0,
            Band::Negative => -1.0,
        }
    }
}

/// Momentum-space point (p_x, p_y).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentumPoint {
    pub p_x: f64,
    pub p_y: f64,
}

impl MomentumPoint {
    pub fn new(p_x: f64, p_y: f64) -> Self {
        Self { p_x, p_y }
    }

    pub fn norm(&self) -> f64 {
        self.p_x.hypot(self.p_y)
    }

    /// Full-quadrant direction angle.
    pub fn angle(&self) -> f64 {
        self.p_y.atan2(self.p_x)
    }

    /// E = v_f·|p|.
    pub fn energy(&self, units: &UnitSystem) -> f64 {
        units.v_f() * self.norm()
    }
}

/// Pre- and post-selection angles of the creation transition
/// (−E, (−p_x, p_y)) → (E, (p_x, p_y)).
pub fn transition_angles(p: &MomentumPoint) -> (f64, f64) {
    (p.p_y.atan2(-p.p_x), p.p_y.atan2(p.p_x))
}

/// The chirality part of an energy eigenstate, (e^{−iθ/2}, ±e^{iθ/2})/√2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiralitySpinor {
    pub theta: f64,
    pub band: Band,
    pub components: [Complex64; 2],
}

pub fn make_spinor(theta: f64, band: Band) -> ChiralitySpinor {
    let norm = std::f64::consts::FRAC_1_SQRT_2;
    let half = 0.5 * theta;
    ChiralitySpinor {
        theta,
        band,
        components: [
            Complex64::from_polar(norm, -half),
            Complex64::from_polar(band.sign() * norm, half),
        ],
    }
}

impl ChiralitySpinor {
    /// Same state with an extra global phase e^{iφ}.
    pub fn with_global_phase(mut self, phi: f64) -> Self {
        let phase = Complex64::from_polar(1.0, phi);
        for c in &mut self.components {
            *c *= phase;
        }
        self
    }

    pub fn norm_sqr(&self) -> f64 {
        self.components.iter().map(Complex64::norm_sqr).sum()
    }

    /// <self|other>.
    pub fn inner(&self, other: &ChiralitySpinor) -> Complex64 {
        inner(&self.components, &other.components)
    }
}

fn inner(bra: &[Complex64; 2], ket: &[Complex64; 2]) -> Complex64 {
    bra[0].conj() * ket[0] + bra[1].conj() * ket[1]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    SigmaX,
    SigmaY,
    SigmaZ,
}

impl Observable {
    pub fn apply(self, v: &[Complex64; 2]) -> [Complex64; 2] {
        match self {
            Observable::SigmaX => [v[1], v[0]],
            Observable::SigmaY => [-I * v[1], I * v[0]],
            Observable::SigmaZ => [v[0], -v[1]],
        }
    }
}

/// <post|pre>, refusing (near-)orthogonal pairs.
pub fn checked_overlap(pre: &ChiralitySpinor, post: &ChiralitySpinor) -> Result<Complex64> {
    let overlap = post.inner(pre);
    if overlap.norm() <= SINGULAR_OVERLAP_TOL {
        return Err(Error::SingularPostselection {
            overlap: overlap.norm(),
            tolerance: SINGULAR_OVERLAP_TOL,
        });
    }
    Ok(overlap)
}

/// <post|O|pre>/<post|pre> by direct spinor algebra.
pub fn weak_value(
    pre: &ChiralitySpinor,
    post: &ChiralitySpinor,
    observable: Observable,
) -> Result<Complex64> {
    let overlap = checked_overlap(pre, post)?;
    let numerator = inner(&post.components, &observable.apply(&pre.components));
    Ok(numerator / overlap)
}

/// Weak values of the three Pauli matrices plus the selection overlap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeakVelocity {
    pub sigma_x_w: f64,
    pub sigma_y_w: f64,
    /// Purely imaginary for energy-eigenstate selections.
    #[serde(skip)]
    pub sigma_z_w: Complex64,
    #[serde(skip)]
    pub overlap: Complex64,
}

impl WeakVelocity {
    /// Velocity v_f·(<σ_x>_w, <σ_y>_w) driven by the transition.
    pub fn group_velocity(&self, units: &UnitSystem) -> (f64, f64) {
        (units.v_f() * self.sigma_x_w, units.v_f() * self.sigma_y_w)
    }
}

/// Closed-form weak values for pre = (θ, −), post = (θ′, +).
pub fn weak_value_closed_form(theta_pre: f64, theta_post: f64) -> Result<WeakVelocity> {
    let half_diff = 0.5 * (theta_pre - theta_post);
    let half_sum = 0.5 * (theta_pre + theta_post);
    let s = half_diff.sin();
    // |<post|pre>| = |sin((θ−θ′)/2)|
    if s.abs() <= SINGULAR_OVERLAP_TOL {
        return Err(Error::SingularPostselection {
            overlap: s.abs(),
            tolerance: SINGULAR_OVERLAP_TOL,
        });
    }
    Ok(WeakVelocity {
        sigma_x_w: half_sum.sin() / s,
        sigma_y_w: -half_sum.cos() / s,
        sigma_z_w: Complex64::new(0.0, half_diff.cos() / s),
        overlap: Complex64::new(0.0, -s),
    })
}

/// Weak velocity of the field-selected transition (−E, (−p_x, p_y)) → (E, (p_x, p_y)).
///
/// The y-field vanishes, so <σ_y>_w = 0 forces θ + θ′ = ±π, i.e. p′_x = p_x and
/// E′ = E. The remaining x-weak value is |p|/p_x = 1/cos θ′ ≥ 1.
pub fn selected_weak_velocity(p: &MomentumPoint, _units: &UnitSystem) -> Result<WeakVelocity> {
    if !(p.p_x > 0.0) {
        return Err(Error::NoTransition { p_x: p.p_x });
    }
    let (theta_pre, theta_post) = transition_angles(p);
    let overlap =
        make_spinor(theta_post, Band::Positive).inner(&make_spinor(theta_pre, Band::Negative));
    Ok(WeakVelocity {
        sigma_x_w: p.norm() / p.p_x,
        sigma_y_w: 0.0,
        sigma_z_w: Complex64::new(0.0, p.p_y / p.p_x),
        overlap,
    })
}

/// Applies exp(−i·v_f(σ·p)t/ℏ) = cos(Et/ℏ) − i·sin(Et/ℏ)(σ·p̂) to a spinor.
pub fn evolve(p: &MomentumPoint, units: &UnitSystem, t: f64, v: &[Complex64; 2]) -> [Complex64; 2] {
    let norm = p.norm();
    let phase = p.energy(units) * t / units.hbar();
    let (c, s) = (phase.cos(), phase.sin());
    if norm == 0.0 {
        return *v;
    }
    let (nx, ny) = (p.p_x / norm, p.p_y / norm);
    // σ·n = [[0, nx − i ny], [nx + i ny, 0]]
    let lower = Complex64::new(nx, ny);
    let sn_v = [lower.conj() * v[1], lower * v[0]];
    [c * v[0] - I * s * sn_v[0], c * v[1] - I * s * sn_v[1]]
}

/// One sample of the factorization error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PropagatorSample {
    pub t: f64,
    pub error: f64,
}

/// Compares the exact post-selected amplitude <post|U(t)|pre> with the
/// weak-value factorization <post|pre>·exp(−i·v_f(<σ_x>_w p_x + <σ_y>_w p_y)t/ℏ).
///
/// Pre-selection is the negative-band chirality at `theta_pre`, post-selection
/// the positive-band one at `theta_post`. The difference is second order in t.
pub fn verify_weak_propagator(
    p: &MomentumPoint,
    units: &UnitSystem,
    theta_pre: f64,
    theta_post: f64,
    times: &[f64],
) -> Result<Vec<PropagatorSample>> {
    let pre = make_spinor(theta_pre, Band::Negative);
    let post = make_spinor(theta_post, Band::Positive);
    let overlap = checked_overlap(&pre, &post)?;
    let wx = weak_value(&pre, &post, Observable::SigmaX)?;
    let wy = weak_value(&pre, &post, Observable::SigmaY)?;
    let weak_energy = units.v_f() * (wx * p.p_x + wy * p.p_y);

    times
        .iter()
        .map(|&t| {
            if !(t.is_finite() && t >= 0.0) {
                return Err(Error::Domain(format!(
                    "times must be non-negative, got {t}"
                )));
            }
            let exact = inner(&post.components, &evolve(p, units, t, &pre.components));
            let factorized = overlap * (-I * weak_energy * t / units.hbar()).exp();
            Ok(PropagatorSample {
                t,
                error: (exact - factorized).norm(),
            })
        })
        .collect()
}
