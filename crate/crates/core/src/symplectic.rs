//! Moment map, twist flows and the Delzant polytope of the torus action on
//! the super-maximal component.
//!
//! With `ᾱ_i = 2π - α_i` and `λ = Σα_i - 2(n-1)π`, the image of the moment map
//! `β = (β_1, .., β_{n-3})` is the simplex cut out by
//!
//! ```text
//! β_1             >= ᾱ_1 + ᾱ_2
//! β_i - β_{i-1}   >= ᾱ_{i+1}            (2 <= i <= n-3)
//! β_{n-3}         <= 2π - ᾱ_{n-1} - ᾱ_n
//! ```
//!
//! whose Euclidean volume is `λ^{n-3} / (n-3)!`; the symplectic volume of the
//! component is `(πλ)^{n-3} / (n-3)!`.

use std::f64::consts::{PI, TAU};

use itertools::Itertools;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::psl2::{classify, fixed_point_elliptic, rotation, GroupElement, IsometryClass};
use crate::rep::SphereRep;

const VERTEX_DEDUP: f64 = 1e-9;
const SINGULAR_DET: f64 = 1e-12;

/// Values `β_i = θ(ρ(b_i))` of the pants curves.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentVector {
    pub beta: Vec<f64>,
}

/// `normal · x <= bound`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HalfSpace {
    pub normal: Vec<f64>,
    pub bound: f64,
}

impl HalfSpace {
    pub fn slack(&self, x: &[f64]) -> f64 {
        self.bound - self.normal.iter().zip(x).map(|(a, b)| a * b).sum::<f64>()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DelzantPolytope {
    pub alpha: Vec<f64>,
    pub dim: usize,
    pub halfspaces: Vec<HalfSpace>,
    pub vertices: Vec<Vec<f64>>,
    pub lambda: f64,
}

impl DelzantPolytope {
    /// Smallest slack over all half-spaces; positive in the interior.
    pub fn min_slack(&self, x: &[f64]) -> f64 {
        self.halfspaces
            .iter()
            .map(|h| h.slack(x))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        x.len() == self.dim && self.min_slack(x) >= -tol
    }

    /// `per_axis^dim` interior points: the cell centres `u` of the unit cube
    /// mapped to `x_k = v_0 + λ s_k` with `s_dim = u_dim` and `s_k = u_k s_{k+1}`,
    /// so that `0 < s_1 < ... < s_dim < 1`.
    pub fn interior_grid(&self, per_axis: usize) -> Vec<Vec<f64>> {
        let origin = &self.vertices[0];
        (0..self.dim)
            .map(|_| 0..per_axis)
            .multi_cartesian_product()
            .map(|idx| {
                let mut x = origin.clone();
                let mut s = 1.0;
                for k in (0..self.dim).rev() {
                    s *= (idx[k] as f64 + 0.5) / per_axis as f64;
                    x[k] += self.lambda * s;
                }
                x
            })
            .collect()
    }
}

/// Checks `α_i ∈ (0, 2π)` and `2(n-1)π < Σα < 2nπ`.
pub fn check_alpha(alpha: &[f64]) -> Result<()> {
    let n = alpha.len();
    if n < 3 {
        return Err(Error::InvalidInput(format!("need at least 3 angles, got {n}")));
    }
    if let Some(a) = alpha.iter().find(|a| !(**a > 0.0 && **a < TAU)) {
        return Err(Error::InvalidAngles(format!("angle {a} not in (0, 2π)")));
    }
    let sum: f64 = alpha.iter().sum();
    let lower = TAU * (n - 1) as f64;
    let upper = TAU * n as f64;
    let margin = 1e-12 * upper;
    if sum - lower > margin && upper - sum > margin {
        Ok(())
    } else {
        Err(Error::EmptyPolytope { sum, lower, upper })
    }
}

pub fn lambda(alpha: &[f64]) -> f64 {
    alpha.iter().sum::<f64>() - TAU * (alpha.len() - 1) as f64
}

/// The moment polytope for peripheral angles `alpha`, with vertices from the
/// affine image of the standard simplex: the corner `v` maps to
/// `x_k = λ Σ_{j<=k} v_j + Σ_{j<=k+1} ᾱ_j`.
pub fn delzant_polytope(alpha: &[f64]) -> Result<DelzantPolytope> {
    check_alpha(alpha)?;
    let n = alpha.len();
    let dim = n - 3;
    let bar: Vec<f64> = alpha.iter().map(|a| TAU - a).collect();
    let lambda = lambda(alpha);
    let mut halfspaces = Vec::new();
    if dim > 0 {
        let unit = |k: usize, s: f64| {
            let mut v = vec![0.0; dim];
            v[k] = s;
            v
        };
        halfspaces.push(HalfSpace {
            normal: unit(0, -1.0),
            bound: -(bar[0] + bar[1]),
        });
        for i in 2..=dim {
            let mut normal = vec![0.0; dim];
            normal[i - 2] = 1.0;
            normal[i - 1] = -1.0;
            halfspaces.push(HalfSpace {
                normal,
                bound: -bar[i],
            });
        }
        halfspaces.push(HalfSpace {
            normal: unit(dim - 1, 1.0),
            bound: TAU - bar[n - 2] - bar[n - 1],
        });
    }
    let base: Vec<f64> = (0..dim).map(|k| bar[..=k + 1].iter().sum()).collect();
    let mut vertices = vec![base.clone()];
    for corner in 0..dim {
        vertices.push(
            base.iter()
                .enumerate()
                .map(|(k, b)| b + if k >= corner { lambda } else { 0.0 })
                .collect(),
        );
    }
    Ok(DelzantPolytope {
        alpha: alpha.to_vec(),
        dim,
        halfspaces,
        vertices,
        lambda,
    })
}

/// Vertices of `{x : h.normal · x <= h.bound}` by intersecting every choice of
/// `dim` facets and keeping the feasible, distinct solutions.
pub fn enumerate_vertices(halfspaces: &[HalfSpace], dim: usize) -> Vec<Vec<f64>> {
    if dim == 0 {
        return vec![vec![]];
    }
    let scale = halfspaces
        .iter()
        .map(|h| h.bound.abs())
        .fold(1.0, f64::max);
    let mut out: Vec<Vec<f64>> = Vec::new();
    for facets in (0..halfspaces.len()).combinations(dim) {
        let a = DMatrix::from_fn(dim, dim, |r, c| halfspaces[facets[r]].normal[c]);
        if a.determinant().abs() <= SINGULAR_DET {
            continue;
        }
        let b = DVector::from_iterator(dim, facets.iter().map(|&f| halfspaces[f].bound));
        let Some(x) = a.lu().solve(&b) else { continue };
        let x: Vec<f64> = x.iter().copied().collect();
        let feasible = halfspaces.iter().all(|h| h.slack(&x) >= -1e-9 * scale);
        let fresh = out.iter().all(|v| {
            v.iter().zip(&x).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max) > VERTEX_DEDUP * scale
        });
        if feasible && fresh {
            out.push(x);
        }
    }
    out
}

/// Volume of the simplex spanned by `vertices` (dimension = vertex count - 1).
pub fn simplex_volume(vertices: &[Vec<f64>]) -> Result<f64> {
    let dim = vertices.len().saturating_sub(1);
    if dim == 0 {
        return Ok(1.0);
    }
    let v0 = &vertices[0];
    let m = DMatrix::from_fn(dim, dim, |r, c| vertices[c + 1][r] - v0[r]);
    let det = m.determinant();
    let scale = m.iter().map(|v| v.abs()).fold(0.0, f64::max).powi(dim as i32);
    if !(det.abs() > 1e-12 * scale) {
        return Err(Error::DegenerateSimplex(det));
    }
    let factorial: f64 = (1..=dim).map(|k| k as f64).product();
    Ok(det.abs() / factorial)
}

/// Euclidean volume of the polytope from its vertex determinant; 1 when `n = 3`.
pub fn polytope_volume(p: &DelzantPolytope) -> Result<f64> {
    if p.vertices.len() != p.dim + 1 {
        return Err(Error::DegenerateSimplex(0.0));
    }
    simplex_volume(&p.vertices)
}

/// `(πλ)^{n-3} / (n-3)!`, cross-checked against `π^{n-3}` times the
/// determinant volume of the moment polytope.
pub fn symplectic_volume(alpha: &[f64]) -> Result<f64> {
    let p = delzant_polytope(alpha)?;
    let d = p.dim as i32;
    let factorial: f64 = (1..=p.dim).map(|k| k as f64).product();
    let closed = (PI * p.lambda).powi(d) / factorial;
    let from_polytope = PI.powi(d) * polytope_volume(&p)?;
    assert!(
        (closed - from_polytope).abs() <= 1e-9 * closed,
        "symplectic volume {closed} disagrees with polytope volume {from_polytope}"
    );
    Ok(closed)
}

/// `ρ(b_i)` for the pants curve around punctures `i+2, ..., n`.
pub fn pants_curve_image(rho: &SphereRep, i: usize) -> GroupElement {
    rho.product(i + 2, rho.n())
}

fn elliptic_pants_curve(rho: &SphereRep, i: usize) -> Result<(GroupElement, f64)> {
    let b = pants_curve_image(rho, i);
    match classify(&b) {
        Ok(IsometryClass::Elliptic { angle }) => Ok((b, angle)),
        _ => Err(Error::NonEllipticPantsCurve { index: i }),
    }
}

pub fn moment_map(rho: &SphereRep) -> Result<MomentVector> {
    let beta = (1..=rho.n().saturating_sub(3))
        .map(|i| elliptic_pants_curve(rho, i).map(|(_, a)| a))
        .collect::<Result<Vec<_>>>()?;
    Ok(MomentVector { beta })
}

fn check_index(rho: &SphereRep, i: usize) -> Result<()> {
    if i < 1 || i + 3 > rho.n() {
        return Err(Error::InvalidInput(format!(
            "pants curve index {i} outside 1..={}",
            rho.n().saturating_sub(3)
        )));
    }
    Ok(())
}

/// Twist along the pants curve `b_i`: `c_1 .. c_{i+1}` are fixed and
/// `c_{i+2} .. c_n` are conjugated by the rotation of angle `2t` about the fixed
/// point of `ρ(b_i)`, which commutes with `ρ(b_i)`. The flow is π-periodic.
pub fn twist_flow(rho: &SphereRep, i: usize, t: f64) -> Result<SphereRep> {
    check_index(rho, i)?;
    let (b, _) = elliptic_pants_curve(rho, i)?;
    let p = fixed_point_elliptic(&b).map_err(|_| Error::NonEllipticPantsCurve { index: i })?;
    let h = rotation(p, 2.0 * t)?;
    let gens: Vec<GroupElement> = rho
        .gens()
        .iter()
        .enumerate()
        .map(|(k, g)| if k > i { g.conjugate_by(&h) } else { *g })
        .collect();
    SphereRep::new(gens)
}

/// Unit-disk coordinate of `z` seen from `p`, after sending `p` to `i`.
fn disk_coordinate(p: Complex64, z: Complex64) -> Result<Complex64> {
    let w = GroupElement::affine_to(p)?.inverse().apply(z);
    let i = Complex64::new(0.0, 1.0);
    Ok((w - i) / (w + i))
}

/// Conjugate of `rho` with the fixed point of `ρ(c_1)` at `i` and the fixed
/// point of `ρ(c_2)` on the imaginary axis above it.
pub fn normal_form(rho: &SphereRep) -> Result<SphereRep> {
    let p1 = fixed_point_elliptic(&rho.generator(1))?;
    let p2 = fixed_point_elliptic(&rho.generator(2))?;
    let w = disk_coordinate(p1, p2)?;
    if w.norm() < 1e-12 {
        return Err(Error::InvalidInput(
            "first two generators share a fixed point".into(),
        ));
    }
    let i = Complex64::new(0.0, 1.0);
    let k = rotation(i, w.arg())? * GroupElement::affine_to(p1)?.inverse();
    Ok(rho.conjugate_by(&k))
}

/// Distance between conjugacy classes, measured between normal forms.
pub fn conjugacy_distance(a: &SphereRep, b: &SphereRep) -> Result<f64> {
    if a.n() != b.n() {
        return Err(Error::InvalidInput("representations of different n".into()));
    }
    Ok(normal_form(a)?.distance(&normal_form(b)?))
}

/// Twist vector carrying `from` to `to` in the same fiber of the moment map,
/// found pants by pants, together with the remaining conjugacy distance.
pub fn connecting_twists(from: &SphereRep, to: &SphereRep) -> Result<(Vec<f64>, f64)> {
    let target = normal_form(to)?;
    let mut current = from.clone();
    let mut twists = Vec::new();
    for i in 1..=from.n().saturating_sub(3) {
        let norm = normal_form(&current)?;
        let (b, _) = elliptic_pants_curve(&norm, i)?;
        let p = fixed_point_elliptic(&b)?;
        let q_now = fixed_point_elliptic(&norm.generator(i + 2))?;
        let q_target = fixed_point_elliptic(&target.generator(i + 2))?;
        // rotation(p, 2s) acts on the disk coordinate at p by w -> e^{-2is} w
        let s = 0.5 * (disk_coordinate(p, q_now)?.arg() - disk_coordinate(p, q_target)?.arg());
        let s = s.rem_euclid(PI);
        current = twist_flow(&current, i, s)?;
        twists.push(s);
    }
    let residual = conjugacy_distance(&current, to)?;
    Ok((twists, residual))
}
