// Copyright 2026 The weakcurrent Authors
// SPDX-License-Identifier: Apache-2.0

//! Weak-value model of the creation-driven electric current in graphene.
//!
//! A valence electron at (−E, (−p_x, p_y)) is promoted to (E, (p_x, p_y)) by a
//! field along +x. The post-selected group velocity is the weak value
//! v_f·<σ_x>_w = v_f|p|/p_x, the transition probability is cos²θ, and the
//! states that can be promoted are fixed by the energy-time and
//! position-momentum uncertainty relations together with the ballistic time.
//! Integrating over those momentum regions gives the quasi-Ohmic
//! conductivity e²/(4πh) for short ballistic times and a Schwinger-like
//! creation rate ∝ ε^{3/2} for long ones.
//!
//! Modules, bottom-up:
//! - [`units`]: constants, presets, crossover time t_c
//! - [`dirac`]: chirality spinors and weak values
//! - [`kinematics`]: work/impulse bookkeeping and transition probability
//! - [`regions`]: V, B, F and the O/S classification
//! - [`quadrature`], [`special`]: numerics
//! - [`integrator`]: region integrals, reference rates, current and sweeps
//! - [`cli`]: command-line front end

// `!(x > 0.0)` is written on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dirac;
pub mod error;
pub mod integrator;
pub mod kinematics;
pub mod quadrature;
pub mod regions;
pub mod special;
pub mod units;

pub use error::{Error, Result};
