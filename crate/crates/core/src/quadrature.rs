// Copyright 2026 The weakcurrent Authors
// SPDX-License-Identifier: Apache-2.0

//! Globally adaptive Gauss–Kronrod (G7/K15) quadrature in one dimension and
//! an iterated two-dimensional driver built on top of it.
//!
//! Known kinks of the integrand should be passed as breakpoints; the driver
//! bisects the interval with the largest error estimate until the summed
//! estimate is below `rel_tol·|I|` or the evaluation budget is exhausted.

use std::cell::Cell;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the odd Kronrod nodes XGK[1], XGK[3], XGK[5], XGK[7].
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Value of an integral with its estimated absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub abs_error: f64,
    pub evals: usize,
}

/// Shared evaluation counter for nested integrations.
#[derive(Debug)]
pub struct Budget {
    used: Cell<usize>,
    max: usize,
}

impl Budget {
    pub fn new(max: usize) -> Self {
        Self {
            used: Cell::new(0),
            max,
        }
    }

    pub fn used(&self) -> usize {
        self.used.get()
    }

    fn take(&self, n: usize) -> bool {
        let next = self.used.get() + n;
        if next > self.max {
            return false;
        }
        self.used.set(next);
        true
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<F>(f: &mut F, a: f64, b: f64) -> Result<Panel>
where
    F: FnMut(f64) -> Result<f64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];

    let fc = f(center)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_sum = kronrod.abs();
    for j in 0..7 {
        let dx = half * XGK[j];
        let (lo, hi) = (f(center - dx)?, f(center + dx)?);
        fv1[j] = lo;
        fv2[j] = hi;
        kronrod += WGK[j] * (lo + hi);
        abs_sum += WGK[j] * (lo.abs() + hi.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (lo + hi);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let value = kronrod * half;
    let abs_sum = abs_sum * half.abs();
    let asc = asc * half.abs();
    let mut error = ((kronrod - gauss) * half).abs();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    if abs_sum > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * abs_sum);
    }
    Ok(Panel { a, b, value, error })
}

fn splittable(p: &Panel) -> bool {
    let mid = 0.5 * (p.a + p.b);
    mid > p.a && mid < p.b && (p.b - p.a) > 8.0 * f64::EPSILON * p.a.abs().max(p.b.abs())
}

/// Adaptive integration of a fallible integrand over consecutive `breakpoints`.
///
/// Stops once the error bound is below `max(rel_tol·|value|, abs_tol)`.
pub fn integrate_with<F>(
    mut f: F,
    breakpoints: &[f64],
    rel_tol: f64,
    abs_tol: f64,
    budget: &Budget,
) -> Result<Estimate>
where
    F: FnMut(f64) -> Result<f64>,
{
    let start = budget.used();
    let mut heap = BinaryHeap::new();
    let mut frozen_value = 0.0;
    let mut frozen_error = 0.0;
    for w in breakpoints.windows(2) {
        if w[1] > w[0] {
            if !budget.take(15) {
                return Err(Error::Convergence {
                    estimate: f64::NAN,
                    abs_error: f64::INFINITY,
                    evals: budget.used() - start,
                });
            }
            heap.push(gk15(&mut f, w[0], w[1])?);
        }
    }

    loop {
        let value = frozen_value + heap.iter().map(|p| p.value).sum::<f64>();
        let error = frozen_error + heap.iter().map(|p| p.error).sum::<f64>();
        let converged = error <= (rel_tol * value.abs()).max(abs_tol) || error == 0.0;
        let worst = match heap.peek() {
            Some(p) if !converged => *p,
            _ if converged => {
                return Ok(Estimate {
                    value,
                    abs_error: error,
                    evals: budget.used() - start,
                })
            }
            _ => {
                return Err(Error::Convergence {
                    estimate: value,
                    abs_error: error,
                    evals: budget.used() - start,
                })
            }
        };
        heap.pop();
        if !splittable(&worst) {
            frozen_value += worst.value;
            frozen_error += worst.error;
            continue;
        }
        if !budget.take(30) {
            return Err(Error::Convergence {
                estimate: value,
                abs_error: error,
                evals: budget.used() - start,
            });
        }
        let mid = 0.5 * (worst.a + worst.b);
        heap.push(gk15(&mut f, worst.a, mid)?);
        heap.push(gk15(&mut f, mid, worst.b)?);
    }
}

/// Adaptive integration of a plain integrand.
pub fn integrate<F>(
    mut f: F,
    breakpoints: &[f64],
    rel_tol: f64,
    max_evals: usize,
) -> Result<Estimate>
where
    F: FnMut(f64) -> f64,
{
    integrate_with(
        |x| Ok(f(x)),
        breakpoints,
        rel_tol,
        0.0,
        &Budget::new(max_evals),
    )
}

/// Iterated integral ∫dx ∫dy f(x, y).
///
/// `inner_breakpoints(x)` returns the sorted y-breakpoints at `x`, endpoints
/// included; an empty or single-point list means an empty slice. Inner
/// integrals run at a tenth of the outer tolerances. The inner error is
/// folded into the reported bound as the smaller of worst-relative-error
/// times |value| and worst-absolute-error times the outer span, both valid
/// for sign-definite integrands.
///
/// A positive `abs_tol` lets slivers whose value is lost in rounding
/// converge to an absolute floor instead of exhausting the budget.
pub fn integrate_2d<F, L>(
    f: F,
    outer_breakpoints: &[f64],
    inner_breakpoints: L,
    rel_tol: f64,
    abs_tol: f64,
    max_evals: usize,
) -> Result<Estimate>
where
    F: Fn(f64, f64) -> f64,
    L: Fn(f64) -> Vec<f64>,
{
    let budget = Budget::new(max_evals);
    let span = match (outer_breakpoints.first(), outer_breakpoints.last()) {
        (Some(a), Some(b)) if b > a => b - a,
        _ => 0.0,
    };
    let inner_abs = if span > 0.0 {
        0.1 * abs_tol / span
    } else {
        0.0
    };
    let worst_rel = Cell::new(0.0f64);
    let worst_abs = Cell::new(0.0f64);
    let outer = integrate_with(
        |x| {
            let ys = inner_breakpoints(x);
            if ys.len() < 2 {
                return Ok(0.0);
            }
            let inner = integrate_with(|y| Ok(f(x, y)), &ys, 0.1 * rel_tol, inner_abs, &budget)?;
            if inner.value != 0.0 {
                worst_rel.set(worst_rel.get().max(inner.abs_error / inner.value.abs()));
            }
            worst_abs.set(worst_abs.get().max(inner.abs_error));
            Ok(inner.value)
        },
        outer_breakpoints,
        rel_tol,
        abs_tol,
        &budget,
    )
    .map_err(|e| match e {
        Error::Convergence {
            estimate,
            abs_error,
            ..
        } => Error::Convergence {
            estimate,
            abs_error,
            evals: budget.used(),
        },
        other => other,
    })?;
    Ok(Estimate {
        value: outer.value,
        abs_error: outer.abs_error
            + (worst_rel.get() * outer.value.abs()).min(worst_abs.get() * span),
        evals: budget.used(),
    })
}
