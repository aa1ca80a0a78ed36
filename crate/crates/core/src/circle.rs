//! The universal cover of PSL(2,R) acting on the line covering RP¹.
//!
//! A direction `(cos φ, sin φ)` in the plane is recorded by the coordinate
//! `x = 2φ`, so the projective line has period `2π` and the central deck
//! element `m` is the translation `x -> x + 2π`. The canonical lift of a group
//! element is the continuous lift of its linear action whose value at `0` lies
//! in `[0, 2π)`; a [`LiftedElement`] is a canonical lift composed with `m^offset`.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::psl2::{classify, classify_with, GroupElement, IsometryClass, Tolerances};

/// Sample points used to read off the deck power of a relation.
pub const WINDING_SAMPLES: [f64; 3] = [0.0, 1.7, 4.1];
/// Maximal deviation of a sampled displacement from `2πk`.
pub const WINDING_TOL: f64 = 1e-6;
/// Iterations used by the fallback translation-number estimate.
pub const DEFAULT_ITERATIONS: usize = 10_000;

/// A point of the line covering RP¹.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct CirclePoint(pub f64);

impl CirclePoint {
    /// Unit vector representing this projective point (up to sign).
    pub fn direction(&self) -> [f64; 2] {
        let (s, c) = (self.0 / 2.0).sin_cos();
        [c, s]
    }
}

/// Value at `x` of the canonical lift of `g`.
fn canonical_eval(g: &GroupElement, x: f64) -> f64 {
    let turns = (x / TAU).floor();
    let r = x - turns * TAU;
    let [a, b, c, d] = g.entries();
    let psi0 = c.atan2(a);
    let mut anchor = (2.0 * psi0).rem_euclid(TAU);
    if anchor >= TAU {
        anchor -= TAU;
    }
    // The image direction of angle r/2 turns by r/2 - (something in [0, π)),
    // monotonically; atan2 recovers it modulo 2π.
    let (s, co) = (r / 2.0).sin_cos();
    let psi = (c * co + d * s).atan2(a * co + b * s);
    let mut delta = (psi - psi0).rem_euclid(TAU);
    if delta > 1.5 * PI {
        delta -= TAU;
    }
    anchor + 2.0 * delta + turns * TAU
}

/// A fixed direction of a non-elliptic element, in the doubled-angle chart.
fn fixed_direction(g: &GroupElement) -> f64 {
    let [a, b, c, d] = g.positive_trace_entries();
    let tr = a + d;
    let lambda = 0.5 * (tr + (tr * tr - 4.0).max(0.0).sqrt());
    let v1 = [b, lambda - a];
    let v2 = [lambda - d, c];
    let n1 = v1[0].hypot(v1[1]);
    let n2 = v2[0].hypot(v2[1]);
    let v = if n1 >= n2 { v1 } else { v2 };
    if n1.max(n2) < 1e-300 {
        0.0
    } else {
        2.0 * v[1].atan2(v[0])
    }
}

/// An element of the universal cover: the canonical lift of `base` followed
/// by the deck translation `m^offset`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiftedElement {
    pub base: GroupElement,
    pub offset: i64,
}

impl LiftedElement {
    pub fn new(base: GroupElement, offset: i64) -> Self {
        Self { base, offset }
    }

    pub fn canonical(base: GroupElement) -> Self {
        Self { base, offset: 0 }
    }

    /// The generator `m` of the deck group.
    pub fn deck() -> Self {
        Self {
            base: GroupElement::IDENTITY,
            offset: 1,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        canonical_eval(&self.base, x) + TAU * self.offset as f64
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LiftedElement) -> LiftedElement {
        let base = self.base * other.base;
        let y = self.eval(other.eval(0.0));
        let offset = ((y - canonical_eval(&base, 0.0)) / TAU).round() as i64;
        LiftedElement { base, offset }
    }

    pub fn inverse(&self) -> LiftedElement {
        let base = self.base.inverse();
        // inverse(F)(F(0)) = 0
        let y = self.eval(0.0);
        let offset = ((0.0 - canonical_eval(&base, y)) / TAU).round() as i64;
        LiftedElement { base, offset }
    }

    /// Translation number, in closed form when the base classifies cleanly.
    pub fn translation_number(&self) -> f64 {
        self.translation_number_closed()
            .unwrap_or_else(|| self.translation_number_iterative(DEFAULT_ITERATIONS))
    }

    /// Closed-form translation number; `None` when the base is ambiguous.
    pub fn translation_number_closed(&self) -> Option<f64> {
        canonical_translation(&self.base).map(|t| t + TAU * self.offset as f64)
    }

    /// Average displacement over `iterations` steps from `x = 0`; the error is
    /// below `2π / iterations`.
    pub fn translation_number_iterative(&self, iterations: usize) -> f64 {
        let mut x = 0.0;
        for _ in 0..iterations {
            x = self.eval(x);
        }
        x / iterations as f64
    }
}

/// Translation number of the canonical lift.
///
/// For an elliptic element of angle `a` the canonical lift moves every point
/// by an amount in `(0, 2π)`, so its translation number is `a`. Otherwise the
/// lift fixing a fixed direction has translation number 0, and the canonical
/// lift differs from it by the winding read at that direction.
fn canonical_translation(g: &GroupElement) -> Option<f64> {
    match classify(g).ok()? {
        IsometryClass::Elliptic { angle } => Some(angle),
        _ => {
            let x = fixed_direction(g);
            let w = ((canonical_eval(g, x) - x) / TAU).round();
            Some(TAU * w)
        }
    }
}

/// Evaluates a lifted element at a circle point.
pub fn lifted_eval(g: &LiftedElement, x: CirclePoint) -> CirclePoint {
    CirclePoint(g.eval(x.0))
}

pub fn translation_number(g: &LiftedElement) -> f64 {
    g.translation_number()
}

/// The unique lift of `g` whose translation number is `theta(g)`.
pub fn special_lift(g: &GroupElement) -> Result<LiftedElement> {
    special_lift_with(g, &Tolerances::default())
}

pub fn special_lift_with(g: &GroupElement, tol: &Tolerances) -> Result<LiftedElement> {
    let class = classify_with(g, tol)?;
    let canonical = match class {
        IsometryClass::Elliptic { angle } => angle,
        _ => {
            let x = fixed_direction(g);
            TAU * ((canonical_eval(g, x) - x) / TAU).round()
        }
    };
    let offset = ((class.theta() - canonical) / TAU).round() as i64;
    Ok(LiftedElement::new(*g, offset))
}

/// The integer `k` with `special_lift(g_1) ∘ ... ∘ special_lift(g_n) = m^k`.
pub fn product_power(gs: &[GroupElement]) -> Result<i64> {
    product_power_with(gs, &Tolerances::default())
}

pub fn product_power_with(gs: &[GroupElement], tol: &Tolerances) -> Result<i64> {
    let residual = gs
        .iter()
        .fold(GroupElement::IDENTITY, |acc, g| acc * *g)
        .distance_to_identity();
    if !(residual <= tol.relation) {
        return Err(Error::RelationViolated { residual });
    }
    let lifts = gs
        .iter()
        .map(|g| special_lift_with(g, tol))
        .collect::<Result<Vec<_>>>()?;
    let displacements: Vec<f64> = WINDING_SAMPLES
        .iter()
        .map(|&x| lifts.iter().rev().fold(x, |y, l| l.eval(y)) - x)
        .collect();
    let k = (displacements[0] / TAU).round();
    if displacements.iter().all(|d| (d - TAU * k).abs() <= WINDING_TOL) {
        Ok(k as i64)
    } else {
        Err(Error::InconsistentWinding(displacements))
    }
}
