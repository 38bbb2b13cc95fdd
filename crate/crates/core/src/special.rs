// Copyright 2026 The weakcurrent Authors
// SPDX-License-Identifier: Apache-2.0

//! Beta function and the one-dimensional prefactor integral of the
//! Schwinger-regime creation rate.

use std::f64::consts::FRAC_PI_2;

use statrs::function::gamma::ln_gamma;

use crate::error::Result;
use crate::quadrature::integrate;

/// B(a, b) = Γ(a)Γ(b)/Γ(a+b) through log-gamma.
pub fn beta(a: f64, b: f64) -> f64 {
    (ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)).exp()
}

/// B(m, n) = 2∫₀^{π/2} sin^{2m−1}θ cos^{2n−1}θ dθ by adaptive quadrature.
pub fn beta_trigonometric(m: f64, n: f64, rel_tol: f64) -> Result<f64> {
    let e = integrate(
        |t: f64| 2.0 * t.sin().powf(2.0 * m - 1.0) * t.cos().powf(2.0 * n - 1.0),
        &[0.0, FRAC_PI_2],
        rel_tol,
        1_000_000,
    )?;
    Ok(e.value)
}

/// B(½, ¾)/4 ≈ 0.59907, the ratio of the S-region rate to the massless Schwinger rate.
pub fn schwinger_prefactor() -> f64 {
    beta(0.5, 0.75) / 4.0
}

/// ∫₀¹ Arctan sqrt(s⁻⁴ − 1) ds by adaptive quadrature.
///
/// Substituting p_x = sqrt(k_v)·s in the S-region strip integral gives
/// dn/dt = [rate scale/(4π²)]·(this integral)/2, and the integral itself
/// equals B(½, ¾)/2.
pub fn schwinger_prefactor_integral(rel_tol: f64) -> Result<f64> {
    let e = integrate(
        |s: f64| (1.0 / s.powi(4) - 1.0).max(0.0).sqrt().atan(),
        &[0.0, 1.0],
        rel_tol,
        1_000_000,
    )?;
    Ok(e.value)
}
