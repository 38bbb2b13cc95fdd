// Copyright 2026 The weakcurrent Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by the physics and numerics layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A numeric argument is outside the domain of the formula.
    #[error("domain error: {0}")]
    Domain(String),

    /// Pre- and post-selected states are (numerically) orthogonal.
    #[error("singular postselection: |<post|pre>| = {overlap:e} is below {tolerance:e}")]
    SingularPostselection { overlap: f64, tolerance: f64 },

    /// The initial state does not move along +x, so no creation transition exists.
    #[error("no transition: p_x = {p_x:e} must be positive")]
    NoTransition { p_x: f64 },

    /// Momentum at the Dirac point has no direction.
    #[error("undefined direction: |p| = 0")]
    UndefinedDirection,

    /// The requested quantity does not exist for this (epsilon, t_bal) pair.
    #[error("regime error: {0}")]
    Regime(String),

    /// Adaptive quadrature ran out of evaluations before reaching the tolerance.
    #[error("convergence error: estimate {estimate:e} with error bound {abs_error:e} after {evals} evaluations")]
    Convergence {
        estimate: f64,
        abs_error: f64,
        evals: usize,
    },

    /// Malformed configuration input.
    #[error("config error at line {line}: {message}")]
    Config { line: usize, message: String },
}

impl Error {
    /// Short machine-readable tag used by the CLI error line.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::SingularPostselection { .. } => "singular-postselection",
            Error::NoTransition { .. } => "no-transition",
            Error::UndefinedDirection => "undefined-direction",
            Error::Regime(_) => "regime",
            Error::Convergence { .. } => "convergence",
            Error::Config { .. } => "config",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
