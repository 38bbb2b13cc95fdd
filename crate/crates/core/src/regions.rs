// Copyright 2026 The weakcurrent Authors
// SPDX-License-Identifier: Apache-2.0

//! Momentum-space regions that feed the current integrals.
//!
//! - V: virtual-particle candidates, p_x²(p_x²+p_y²) ≤ (eεℏ/4v_f)². Same set
//!   whether derived from Δt ≤ δt or from Δx ≤ δx.
//! - B: ballistically reachable states, |p| ≤ eεt_bal/2.
//! - F: states inside the ballistic energy fluctuation, |p| ≤ ℏ/(2v_f t_bal).
//!
//! On the half-plane p_x ≥ 0, V∩B∩F is region O and (V∩B)\F is region S.
//! All boundaries are closed. Because r_B·r_F = k_V, the B circle fits inside
//! both V and F exactly when t_bal ≤ t_c, and S is empty in that case.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::dirac::MomentumPoint;
use crate::error::{Error, Result};
use crate::units::{crossover_time, FieldConfig, UnitSystem};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegionConfig {
    #[serde(skip)]
    pub units: UnitSystem,
    pub epsilon: f64,
    pub t_bal: f64,
    /// eεℏ/(4v_f); V on the p_x axis ends at sqrt(k_v).
    pub k_v: f64,
    /// eεt_bal/2.
    pub r_b: f64,
    /// ℏ/(2v_f t_bal).
    pub r_f: f64,
    pub t_c: f64,
}

impl RegionConfig {
    pub fn new(units: UnitSystem, field: FieldConfig) -> Result<Self> {
        let (epsilon, t_bal) = (field.epsilon(), field.t_bal());
        let force = units.e_charge() * epsilon;
        Ok(Self {
            units,
            epsilon,
            t_bal,
            k_v: force * units.hbar() / (4.0 * units.v_f()),
            r_b: 0.5 * force * t_bal,
            r_f: units.hbar() / (2.0 * units.v_f() * t_bal),
            t_c: crossover_time(&units, epsilon)?,
        })
    }

    pub fn from_parts(units: UnitSystem, epsilon: f64, t_bal: f64) -> Result<Self> {
        Self::new(units, FieldConfig::new(epsilon, t_bal)?)
    }

    /// S is nonempty iff the B circle outgrows the F circle, i.e. t_bal > t_c.
    pub fn has_schwinger_region(&self) -> bool {
        self.r_b > self.r_f
    }

    /// Closed form p_x²(p_x²+p_y²) ≤ k_v².
    pub fn in_v(&self, p: &MomentumPoint) -> bool {
        p.p_x * p.p_x * (p.p_x * p.p_x + p.p_y * p.p_y) <= self.k_v * self.k_v
    }

    /// Δt ≤ δt: the impulse 2|p_x| must be delivered within the lifetime ℏ/2E.
    pub fn impulse_within_lifetime(&self, p: &MomentumPoint) -> bool {
        let force = self.units.e_charge() * self.epsilon;
        let transit_time = 2.0 * p.p_x.abs() / force;
        let lifetime = self.units.hbar() / (2.0 * p.energy(&self.units));
        transit_time <= lifetime
    }

    /// Δx ≤ δx: the work 2E must be done within the fluctuation length ℏ/2|p_x|.
    pub fn work_within_fluctuation_length(&self, p: &MomentumPoint) -> bool {
        let force = self.units.e_charge() * self.epsilon;
        let transit_length = 2.0 * p.energy(&self.units) / force;
        let fluctuation_length = self.units.hbar() / (2.0 * p.p_x.abs());
        transit_length <= fluctuation_length
    }

    pub fn in_b(&self, p: &MomentumPoint) -> bool {
        p.p_x * p.p_x + p.p_y * p.p_y <= self.r_b * self.r_b
    }

    pub fn in_f(&self, p: &MomentumPoint) -> bool {
        p.p_x * p.p_x + p.p_y * p.p_y <= self.r_f * self.r_f
    }

    /// Radius of the V boundary along direction θ, sqrt(k_v/cos θ); infinite for cos θ ≤ 0.
    pub fn v_radius(&self, theta: f64) -> f64 {
        let c = theta.cos();
        if c <= 0.0 {
            f64::INFINITY
        } else {
            (self.k_v / c).sqrt()
        }
    }

    /// Outer radius of V∩B along θ.
    pub fn reachable_radius(&self, theta: f64) -> f64 {
        self.r_b.min(self.v_radius(theta))
    }

    /// Largest p_x inside V∩B.
    pub fn reachable_px_max(&self) -> f64 {
        self.k_v.sqrt().min(self.r_b)
    }

    /// Half-width in p_y of V∩B at a given p_x (0 outside).
    pub fn reachable_half_width(&self, p_x: f64) -> f64 {
        if !(p_x > 0.0 && p_x <= self.reachable_px_max()) {
            return 0.0;
        }
        let v = v_half_width(self.k_v, p_x);
        let b = (self.r_b * self.r_b - p_x * p_x).max(0.0).sqrt();
        v.min(b)
    }

    /// Half-width in p_y of F at a given p_x (0 outside).
    pub fn fluctuation_half_width(&self, p_x: f64) -> f64 {
        (self.r_f * self.r_f - p_x * p_x).max(0.0).sqrt()
    }

    /// Square half-extent that comfortably contains every boundary.
    pub fn plot_extent(&self) -> f64 {
        1.25 * self.r_b.max(self.r_f).max(self.k_v.sqrt())
    }
}

fn v_half_width(k_v: f64, p_x: f64) -> f64 {
    (k_v * k_v / (p_x * p_x) - p_x * p_x).max(0.0).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RegionClass {
    O,
    S,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RegionLabel {
    pub in_v: bool,
    pub in_b: bool,
    pub in_f: bool,
    pub klass: Option<RegionClass>,
}

impl RegionLabel {
    pub fn klass_name(&self) -> &'static str {
        match self.klass {
            Some(RegionClass::O) => "O",
            Some(RegionClass::S) => "S",
            None => "none",
        }
    }
}

pub fn classify(p: &MomentumPoint, cfg: &RegionConfig) -> RegionLabel {
    let in_v = cfg.in_v(p);
    let in_b = cfg.in_b(p);
    let in_f = cfg.in_f(p);
    let klass = match (in_v && in_b && p.p_x >= 0.0, in_f) {
        (true, true) => Some(RegionClass::O),
        (true, false) => Some(RegionClass::S),
        (false, _) => None,
    };
    RegionLabel {
        in_v,
        in_b,
        in_f,
        klass,
    }
}

/// Upper edge of V at `p_x`: sqrt(k_v²/p_x² − p_x²), defined for 0 < p_x ≤ sqrt(k_v).
pub fn v_boundary(p_x: f64, cfg: &RegionConfig) -> Result<f64> {
    if !(p_x > 0.0 && p_x <= cfg.k_v.sqrt()) {
        return Err(Error::Domain(format!(
            "p_x = {p_x:e} outside (0, {:e}] for the V boundary",
            cfg.k_v.sqrt()
        )));
    }
    Ok(v_half_width(cfg.k_v, p_x))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Curve {
    V,
    B,
    F,
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Curve::V => "V",
            Curve::B => "B",
            Curve::F => "F",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryPoint {
    pub p_x: f64,
    pub p_y: f64,
    pub curve: Curve,
}

/// `n` points on each of the V curve (p_x > 0 branch), the B circle and the F circle.
pub fn sample_boundaries(cfg: &RegionConfig, n: usize) -> Result<Vec<BoundaryPoint>> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "need at least 2 boundary samples, got {n}"
        )));
    }
    let extent = cfg.plot_extent();
    let theta_max = (cfg.k_v / (extent * extent)).acos();
    let step = |i: usize| i as f64 / (n - 1) as f64;

    let mut out = Vec::with_capacity(3 * n);
    out.extend((0..n).map(|i| {
        let theta = -theta_max + 2.0 * theta_max * step(i);
        let r = cfg.v_radius(theta);
        BoundaryPoint {
            p_x: r * theta.cos(),
            p_y: r * theta.sin(),
            curve: Curve::V,
        }
    }));
    for (curve, radius) in [(Curve::B, cfg.r_b), (Curve::F, cfg.r_f)] {
        out.extend((0..n).map(|i| {
            let phi = 2.0 * std::f64::consts::PI * step(i);
            BoundaryPoint {
                p_x: radius * phi.cos(),
                p_y: radius * phi.sin(),
                curve,
            }
        }));
    }
    Ok(out)
}

/// Classifies an n×n grid over p_x ∈ [0, X], p_y ∈ [−X, X]; p_x varies slowest.
pub fn classify_grid(cfg: &RegionConfig, n: usize) -> Result<Vec<(MomentumPoint, RegionLabel)>> {
    if n < 1 {
        return Err(Error::Domain("grid size must be at least 1".into()));
    }
    let extent = cfg.plot_extent();
    let frac = |i: usize| {
        if n == 1 {
            0.5
        } else {
            i as f64 / (n - 1) as f64
        }
    };
    Ok((0..n * n)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            let p = MomentumPoint::new(extent * frac(i), extent * (2.0 * frac(j) - 1.0));
            (p, classify(&p, cfg))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::natural_units;

    fn cfg(epsilon: f64, t_bal: f64) -> RegionConfig {
        RegionConfig::from_parts(natural_units(), epsilon, t_bal).unwrap()
    }

    #[test]
    fn classify_examples() {
        let c = cfg(1.0, 1.0);
        let l = classify(&MomentumPoint::new(0.49, 0.0), &c);
        assert!(l.in_v && l.in_b && l.in_f);
        assert_eq!(l.klass, Some(RegionClass::O));

        let l = classify(&MomentumPoint::new(0.51, 0.0), &c);
        assert!(!l.in_v && !l.in_b && !l.in_f);
        assert_eq!(l.klass, None);

        let l = classify(&MomentumPoint::new(0.3, 0.0), &cfg(1.0, 100.0));
        assert!(l.in_v && l.in_b && !l.in_f);
        assert_eq!(l.klass, Some(RegionClass::S));
    }

    #[test]
    fn negative_px_is_never_classified() {
        let l = classify(&MomentumPoint::new(-0.1, 0.0), &cfg(1.0, 1.0));
        assert!(l.in_v && l.in_b && l.in_f);
        assert_eq!(l.klass, None);
        assert_eq!(l.klass_name(), "none");
    }

    #[test]
    fn derived_constants() {
        let c = cfg(1.0, 1.0);
        assert_eq!((c.k_v, c.r_b, c.r_f, c.t_c), (0.25, 0.5, 0.5, 1.0));
        let c = cfg(1.0, 100.0);
        assert_eq!((c.r_b, c.r_f), (50.0, 0.005));
        assert!(c.has_schwinger_region());
        assert!(!cfg(1.0, 0.5).has_schwinger_region());
    }

    #[test]
    fn v_boundary_examples() {
        let c = cfg(1.0, 1.0);
        assert_eq!(v_boundary(0.5, &c).unwrap(), 0.0);
        // diagonal crossing: 2p_x⁴ = k_v²
        let px = (c.k_v / 2f64.sqrt()).sqrt();
        assert!((v_boundary(px, &c).unwrap() / px - 1.0).abs() < 1e-14);
        assert!(v_boundary(1e-6, &c).unwrap() > 2.4e5);
        assert!(v_boundary(0.0, &c).is_err());
        assert!(v_boundary(0.5000001, &c).is_err());
    }

    #[test]
    fn boundary_samples_lie_on_their_curves() {
        let c = cfg(2.0, 0.3);
        let pts = sample_boundaries(&c, 64).unwrap();
        assert_eq!(pts.len(), 192);
        for pt in &pts {
            let r2 = pt.p_x * pt.p_x + pt.p_y * pt.p_y;
            match pt.curve {
                Curve::B => assert!((r2 - c.r_b * c.r_b).abs() < 1e-12),
                Curve::F => assert!((r2 - c.r_f * c.r_f).abs() < 1e-12),
                Curve::V => {
                    let lhs = pt.p_x * pt.p_x * r2;
                    assert!((lhs / (c.k_v * c.k_v) - 1.0).abs() < 1e-10);
                    assert!(pt.p_x > 0.0);
                }
            }
        }
        assert!(sample_boundaries(&c, 1).is_err());
    }

    #[test]
    fn grid_layout() {
        let grid = classify_grid(&cfg(1.0, 100.0), 3).unwrap();
        assert_eq!(grid.len(), 9);
        assert_eq!(grid[0].0.p_x, 0.0);
        assert_eq!(grid[1].0.p_y, 0.0);
        assert!(grid.iter().all(|(p, _)| p.p_x >= 0.0));
    }

    #[test]
    fn reachable_width_matches_predicates() {
        let c = cfg(1.0, 7.0);
        for i in 1..200 {
            let px = c.reachable_px_max() * i as f64 / 200.0;
            let w = c.reachable_half_width(px);
            let inside = MomentumPoint::new(px, 0.999_999 * w);
            let outside = MomentumPoint::new(px, 1.000_001 * w + 1e-300);
            assert!(c.in_v(&inside) && c.in_b(&inside));
            assert!(!(c.in_v(&outside) && c.in_b(&outside)));
        }
    }
}
