//! Isometries of the upper half-plane as elements of PSL(2,R).
//!
//! A [`GroupElement`] stores a determinant-one matrix `[[a, b], [c, d]]` in a
//! sign-canonical form (the first entry, in reading order, with absolute value
//! above `1e-9` is positive), so two representatives of the same element of
//! PSL(2,R) compare equal entrywise.

use std::f64::consts::TAU;
use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const SIGN_EPS: f64 = 1e-9;
const GEODESIC_EPS: f64 = 1e-12;

/// Numerical tolerances shared by classification and relation checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Width of the band around `|trace| = 2` treated as parabolic or identity.
    pub class: f64,
    /// Allowed distance of a relation product from the identity.
    pub relation: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            class: 1e-9,
            relation: 1e-7,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        if self.class > 0.0 && self.relation > 0.0 && self.class.is_finite() && self.relation.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "tolerances must be positive and finite, got class={} relation={}",
                self.class, self.relation
            )))
        }
    }
}

fn canonical_sign(m: [f64; 4]) -> [f64; 4] {
    let m = match m.iter().find(|v| v.abs() > SIGN_EPS) {
        Some(v) if *v < 0.0 => m.map(|v| -v),
        _ => m,
    };
    // no negative zeros in serialized output
    m.map(|v| v + 0.0)
}

/// An element of PSL(2,R), acting on the upper half-plane by `z -> (az+b)/(cz+d)`.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "[f64; 4]", try_from = "[f64; 4]")]
pub struct GroupElement {
    m: [f64; 4],
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.m;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

impl From<GroupElement> for [f64; 4] {
    fn from(g: GroupElement) -> Self {
        g.m
    }
}

impl TryFrom<[f64; 4]> for GroupElement {
    type Error = Error;

    fn try_from(m: [f64; 4]) -> Result<Self> {
        GroupElement::new(m[0], m[1], m[2], m[3])
    }
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement {
        m: [1.0, 0.0, 0.0, 1.0],
    };

    /// Builds an element from a matrix of positive determinant, rescaling it to
    /// determinant one and choosing the canonical sign.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !(det.is_finite() && det > 0.0) || [a, b, c, d].iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "matrix [[{a}, {b}], [{c}, {d}]] does not have positive finite determinant"
            )));
        }
        Ok(Self::from_raw(a, b, c, d))
    }

    // Callers guarantee a positive determinant (products of normalized elements).
    fn from_raw(a: f64, b: f64, c: f64, d: f64) -> Self {
        let det = a * d - b * c;
        // leave input bit-exact when det = 1 up to its own rounding error
        let scale = (a * d).abs() + (b * c).abs();
        let s = if (det - 1.0).abs() <= 4.0 * f64::EPSILON * scale.max(1.0) {
            1.0
        } else {
            1.0 / det.sqrt()
        };
        GroupElement {
            m: canonical_sign([a * s, b * s, c * s, d * s]),
        }
    }

    pub fn entries(&self) -> [f64; 4] {
        self.m
    }

    pub fn det(&self) -> f64 {
        self.m[0] * self.m[3] - self.m[1] * self.m[2]
    }

    /// Trace of the canonical representative; only its absolute value is
    /// an invariant of the PSL class.
    pub fn trace(&self) -> f64 {
        self.m[0] + self.m[3]
    }

    pub fn abs_trace(&self) -> f64 {
        self.trace().abs()
    }

    /// Representative with nonnegative trace.
    pub fn positive_trace_entries(&self) -> [f64; 4] {
        if self.trace() < 0.0 {
            self.m.map(|v| -v)
        } else {
            self.m
        }
    }

    pub fn inverse(&self) -> Self {
        let [a, b, c, d] = self.m;
        GroupElement {
            m: canonical_sign([d, -b, -c, a]),
        }
    }

    /// `h * self * h^{-1}`.
    pub fn conjugate_by(&self, h: &GroupElement) -> Self {
        *h * *self * h.inverse()
    }

    /// `g^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { *self };
        let mut out = GroupElement::IDENTITY;
        for _ in 0..k.unsigned_abs() {
            out = out * base;
        }
        out
    }

    /// Frobenius distance between the two classes, minimized over signs.
    pub fn distance(&self, other: &GroupElement) -> f64 {
        let plus: f64 = self.m.iter().zip(other.m).map(|(x, y)| (x - y).powi(2)).sum();
        let minus: f64 = self.m.iter().zip(other.m).map(|(x, y)| (x + y).powi(2)).sum();
        plus.min(minus).sqrt()
    }

    pub fn distance_to_identity(&self) -> f64 {
        self.distance(&GroupElement::IDENTITY)
    }

    pub fn approx_eq(&self, other: &GroupElement, tol: f64) -> bool {
        self.distance(other) <= tol
    }

    /// Möbius action on the upper half-plane.
    pub fn apply(&self, z: Complex64) -> Complex64 {
        let [a, b, c, d] = self.m;
        (z * a + b) / (z * c + d)
    }

    /// Möbius action on the closed upper half-plane including the point at infinity.
    pub fn apply_point(&self, p: PlanePoint) -> PlanePoint {
        let [a, b, c, d] = self.m;
        match p {
            PlanePoint::Infinity if c.abs() < 1e-300 => PlanePoint::Infinity,
            PlanePoint::Infinity => PlanePoint::Finite(Complex64::new(a / c, 0.0)),
            PlanePoint::Finite(z) => {
                let den = z * c + d;
                if den.norm() < 1e-300 {
                    PlanePoint::Infinity
                } else {
                    PlanePoint::Finite((z * a + b) / den)
                }
            }
        }
    }

    /// The exponential of `[[p, q], [r, -p]]` in sl(2,R).
    pub fn exp_sl2(p: f64, q: f64, r: f64) -> Self {
        let delta = p * p + q * r;
        let (ch, sh) = if delta > 1e-14 {
            let s = delta.sqrt();
            (s.cosh(), s.sinh() / s)
        } else if delta < -1e-14 {
            let s = (-delta).sqrt();
            (s.cos(), s.sin() / s)
        } else {
            (1.0 + delta / 2.0, 1.0 + delta / 6.0)
        };
        Self::from_raw(ch + sh * p, sh * q, sh * r, ch - sh * p)
    }

    /// Exponential of a Gaussian Lie-algebra sample with unit standard deviation
    /// per entry. Every conjugacy class has positive probability.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let p: f64 = rng.sample(StandardNormal);
        let q: f64 = rng.sample(StandardNormal);
        let r: f64 = rng.sample(StandardNormal);
        Self::exp_sl2(p, q, r)
    }

    /// The isometry `z -> Re(p) + Im(p) z` sending `i` to `p`.
    pub fn affine_to(p: Complex64) -> Result<Self> {
        if !(p.im > 0.0) {
            return Err(Error::InvalidCenter(p.im));
        }
        let s = p.im.sqrt();
        Ok(Self::from_raw(s, p.re / s, 0.0, 1.0 / s))
    }
}

impl Mul for GroupElement {
    type Output = GroupElement;

    fn mul(self, rhs: GroupElement) -> GroupElement {
        let [a, b, c, d] = self.m;
        let [e, f, g, h] = rhs.m;
        GroupElement::from_raw(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
    }
}

impl<'a> Mul<&'a GroupElement> for &'a GroupElement {
    type Output = GroupElement;

    fn mul(self, rhs: &GroupElement) -> GroupElement {
        *self * *rhs
    }
}

/// A point of the closed upper half-plane, the boundary point at infinity included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PlanePoint {
    Finite(Complex64),
    Infinity,
}

impl From<Complex64> for PlanePoint {
    fn from(z: Complex64) -> Self {
        PlanePoint::Finite(z)
    }
}

impl From<f64> for PlanePoint {
    fn from(x: f64) -> Self {
        PlanePoint::Finite(Complex64::new(x, 0.0))
    }
}

/// An orientation-reversing isometry `z -> (a conj(z) + b) / (c conj(z) + d)`,
/// stored with `ad - bc = -1`.
#[derive(Clone, Copy, PartialEq)]
pub struct AntiElement {
    m: [f64; 4],
}

impl fmt::Debug for AntiElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.m;
        write!(f, "anti[[{a}, {b}], [{c}, {d}]]")
    }
}

impl AntiElement {
    /// Reflection across the imaginary axis, `z -> -conj(z)`.
    pub const STANDARD: AntiElement = AntiElement {
        m: [1.0, 0.0, 0.0, -1.0],
    };

    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !(det.is_finite() && det < 0.0) {
            return Err(Error::InvalidInput(format!(
                "anti-isometry matrix needs negative determinant, got {det}"
            )));
        }
        let s = 1.0 / (-det).sqrt();
        Ok(AntiElement {
            m: canonical_sign([a * s, b * s, c * s, d * s]),
        })
    }

    pub fn entries(&self) -> [f64; 4] {
        self.m
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        let [a, b, c, d] = self.m;
        let w = z.conj();
        (w * a + b) / (w * c + d)
    }

    /// `self * g`, an orientation-reversing isometry.
    pub fn compose_group(&self, g: &GroupElement) -> AntiElement {
        let [a, b, c, d] = self.m;
        let [e, f, gg, h] = g.entries();
        AntiElement::new(a * e + b * gg, a * f + b * h, c * e + d * gg, c * f + d * h)
            .expect("determinant stays negative")
    }
}

impl Mul for AntiElement {
    type Output = GroupElement;

    /// `conj` commutes with real matrices, so two anti-isometries compose to
    /// the matrix product.
    fn mul(self, rhs: AntiElement) -> GroupElement {
        let [a, b, c, d] = self.m;
        let [e, f, g, h] = rhs.m;
        GroupElement::from_raw(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
    }
}

/// Conjugacy class of an isometry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum IsometryClass {
    Identity,
    /// Rotation angle in `(0, 2π)`, measured as the translation of the lifted
    /// projective action (see [`crate::circle`]).
    Elliptic { angle: f64 },
    PositiveParabolic,
    NegativeParabolic,
    Hyperbolic,
}

impl IsometryClass {
    pub fn is_hyperbolic(&self) -> bool {
        matches!(self, IsometryClass::Hyperbolic)
    }

    pub fn is_elliptic(&self) -> bool {
        matches!(self, IsometryClass::Elliptic { .. })
    }

    /// Contribution to the count `l` of non-hyperbolic peripherals, where the
    /// identity counts twice.
    pub fn mw_weight(&self) -> i64 {
        match self {
            IsometryClass::Identity => 2,
            IsometryClass::Hyperbolic => 0,
            _ => 1,
        }
    }

    pub fn theta(&self) -> f64 {
        match self {
            IsometryClass::Hyperbolic | IsometryClass::PositiveParabolic => 0.0,
            IsometryClass::Identity | IsometryClass::NegativeParabolic => TAU,
            IsometryClass::Elliptic { angle } => *angle,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            IsometryClass::Identity => "identity",
            IsometryClass::Elliptic { .. } => "elliptic",
            IsometryClass::PositiveParabolic => "positive_parabolic",
            IsometryClass::NegativeParabolic => "negative_parabolic",
            IsometryClass::Hyperbolic => "hyperbolic",
        }
    }
}

pub fn classify(g: &GroupElement) -> Result<IsometryClass> {
    classify_with(g, &Tolerances::default())
}

/// Classifies `g` by `|trace|` against `2 ± tol.class`.
///
/// In the band around 2 the element is the identity when it is within
/// `tol.class` of `±I`. Otherwise it is parabolic and its sign is read off the
/// nilpotent part `N = g - I` of the trace-positive representative: the form
/// `v -> det(v, Nv)` is semidefinite with the sign of `c - b`, and a positive
/// sign means every direction is pushed forward. Elements between `tol.class`
/// and `sqrt(tol.class)` of the identity are reported as ambiguous.
pub fn classify_with(g: &GroupElement, tol: &Tolerances) -> Result<IsometryClass> {
    let [a, b, c, d] = g.positive_trace_entries();
    let tr = a + d;
    if tr > 2.0 + tol.class {
        return Ok(IsometryClass::Hyperbolic);
    }
    if tr < 2.0 - tol.class {
        // c != 0 for elliptics; with c > 0 the representative is conjugate to
        // the rotation by s in (0, 2π) with trace 2cos(s/2).
        let t = if c < 0.0 { -tr } else { tr };
        let angle = 2.0 * (t / 2.0).clamp(-1.0, 1.0).acos();
        return Ok(IsometryClass::Elliptic { angle });
    }
    let dist = ((a - 1.0).powi(2) + b * b + c * c + (d - 1.0).powi(2)).sqrt();
    if dist <= tol.class {
        Ok(IsometryClass::Identity)
    } else if dist <= tol.class.sqrt() {
        Err(Error::AmbiguousClass { abs_trace: tr })
    } else if c - b > 0.0 {
        Ok(IsometryClass::PositiveParabolic)
    } else {
        Ok(IsometryClass::NegativeParabolic)
    }
}

/// The angle function: 0 on hyperbolic and positive parabolic elements, 2π on
/// negative parabolic elements and the identity, the rotation angle otherwise.
pub fn theta(g: &GroupElement) -> Result<f64> {
    Ok(classify(g)?.theta())
}

pub fn theta_with(g: &GroupElement, tol: &Tolerances) -> Result<f64> {
    Ok(classify_with(g, tol)?.theta())
}

/// Minimal displacement `inf d(x, g x)`.
pub fn translation_length(g: &GroupElement) -> f64 {
    let t = g.abs_trace();
    if t > 2.0 + Tolerances::default().class {
        2.0 * (t / 2.0).acosh()
    } else {
        0.0
    }
}

/// The elliptic element fixing `center` with `theta = angle mod 2π`.
///
/// `rotation(i, a)` is `[[cos(a/2), -sin(a/2)], [sin(a/2), cos(a/2)]]`.
pub fn rotation(center: Complex64, angle: f64) -> Result<GroupElement> {
    if !(center.im > 0.0) || !center.im.is_finite() || !center.re.is_finite() {
        return Err(Error::InvalidCenter(center.im));
    }
    let (s, c) = (angle / 2.0).sin_cos();
    let r = GroupElement::from_raw(c, -s, s, c);
    let t = GroupElement::affine_to(center)?;
    Ok(r.conjugate_by(&t))
}

/// Reflection across the geodesic through `p` and `q`.
pub fn reflection(p: impl Into<PlanePoint>, q: impl Into<PlanePoint>) -> Result<AntiElement> {
    let (p, q) = (p.into(), q.into());
    for pt in [p, q] {
        if let PlanePoint::Finite(z) = pt {
            if z.im < 0.0 || !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "point {z} is not in the closed upper half-plane"
                )));
            }
        }
    }
    let vertical = |x0: f64| AntiElement::new(-1.0, 2.0 * x0, 0.0, 1.0);
    match (p, q) {
        (PlanePoint::Infinity, PlanePoint::Infinity) => Err(Error::DegenerateGeodesic),
        (PlanePoint::Infinity, PlanePoint::Finite(z)) | (PlanePoint::Finite(z), PlanePoint::Infinity) => {
            vertical(z.re)
        }
        (PlanePoint::Finite(z), PlanePoint::Finite(w)) => {
            if (z - w).norm() <= GEODESIC_EPS {
                return Err(Error::DegenerateGeodesic);
            }
            let dx = z.re - w.re;
            if dx.abs() <= GEODESIC_EPS * (1.0 + z.norm() + w.norm()) {
                return vertical(0.5 * (z.re + w.re));
            }
            // Circle centred on the real axis through both points.
            let center = (z.norm_sqr() - w.norm_sqr()) / (2.0 * dx);
            let r2 = (z - center).norm_sqr();
            AntiElement::new(center, r2 - center * center, 1.0, -center)
        }
    }
}

/// The fixed point in the open upper half-plane of an elliptic element.
pub fn fixed_point_elliptic(g: &GroupElement) -> Result<Complex64> {
    if !classify(g)?.is_elliptic() {
        return Err(Error::NotElliptic);
    }
    let [a, _, c, d] = g.entries();
    let (a, c, d) = if c < 0.0 { (-a, -c, -d) } else { (a, c, d) };
    let tr = a + d;
    // Root of c z^2 + (d - a) z - b = 0 with positive imaginary part.
    let disc = (4.0 - tr * tr).max(0.0).sqrt();
    Ok(Complex64::new((a - d) / (2.0 * c), disc / (2.0 * c)))
}

/// Hyperbolic distance in the upper half-plane.
pub fn hyperbolic_distance(z: Complex64, w: Complex64) -> f64 {
    let num = (z - w).norm_sqr();
    (1.0 + num / (2.0 * z.im * w.im)).acosh()
}
