//! Builders for triangle-group pants and for the necklace of pants that
//! parametrizes the super-maximal component by action-angle coordinates.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::psl2::{fixed_point_elliptic, reflection, rotation, GroupElement};
use crate::rep::SphereRep;
use crate::symplectic::{check_alpha, delzant_polytope};

/// Tolerance for matching a conjugated pants boundary with its target.
pub const GLUING_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// `θ_i` is twice the triangle angle at `p_i`; Euler class 1.
    Clockwise,
    /// `2π - θ_i` is twice the triangle angle at `p_i`; Euler class 2.
    Anticlockwise,
}

/// Prescribed rotation angles of the three peripherals of a pair of pants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleTriple {
    pub angles: [f64; 3],
    pub orientation: Orientation,
}

impl AngleTriple {
    pub fn new(angles: [f64; 3], orientation: Orientation) -> Result<Self> {
        let t = Self { angles, orientation };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(a) = self.angles.iter().find(|a| !(**a > 0.0 && **a < TAU)) {
            return Err(Error::InvalidAngles(format!("angle {a} not in (0, 2π)")));
        }
        let sum: f64 = self.angles.iter().sum();
        match self.orientation {
            Orientation::Clockwise if sum >= TAU => Err(Error::InvalidAngles(format!(
                "clockwise triangle needs angle sum < 2π, got {sum}"
            ))),
            Orientation::Anticlockwise if sum <= 2.0 * TAU => Err(Error::InvalidAngles(format!(
                "anticlockwise triangle needs angle sum > 4π, got {sum}"
            ))),
            _ => Ok(()),
        }
    }

    /// Interior angles of the hyperbolic triangle realizing the triple.
    pub fn triangle_angles(&self) -> [f64; 3] {
        match self.orientation {
            Orientation::Clockwise => self.angles.map(|t| t / 2.0),
            Orientation::Anticlockwise => self.angles.map(|t| PI - t / 2.0),
        }
    }
}

/// Side length opposite the angle `c` in a triangle with angles `a, b, c`.
fn opposite_side(a: f64, b: f64, c: f64) -> f64 {
    ((a.cos() * b.cos() + c.cos()) / (a.sin() * b.sin())).max(1.0).acosh()
}

/// Vertices of the triangle with the given angles, `p_1 = i`, `p_2` above it
/// on the imaginary axis, `p_3` to the right (clockwise) or left.
pub fn triangle_vertices(angles: [f64; 3], clockwise: bool) -> [Complex64; 3] {
    let [a1, a2, a3] = angles;
    let i = Complex64::new(0.0, 1.0);
    let d12 = opposite_side(a1, a2, a3);
    let d13 = opposite_side(a1, a3, a2);
    let p2 = i * d12.exp();
    // rotation(i, s) turns tangent vectors at i by -s
    let turn = if clockwise { a1 } else { -a1 };
    let p3 = rotation(i, turn).expect("i is interior").apply(i * d13.exp());
    [i, p2, p3]
}

/// The pants representation `ρ(c_1) = σ_31 σ_12, ρ(c_2) = σ_12 σ_23,
/// ρ(c_3) = σ_23 σ_31` of a triangle with angles determined by `angles`.
pub fn triangle_pants(angles: AngleTriple) -> Result<SphereRep> {
    angles.validate()?;
    // Double reflections around a clockwise triangle rotate forward in the
    // lifted chart, so Clockwise data is realized by a clockwise triangle.
    let clockwise = angles.orientation == Orientation::Clockwise;
    let p = triangle_vertices(angles.triangle_angles(), clockwise);
    let s = |a: usize, b: usize| reflection(p[a], p[b]);
    let gens = vec![s(2, 0)? * s(0, 1)?, s(0, 1)? * s(1, 2)?, s(1, 2)? * s(2, 0)?];
    SphereRep::new(gens)
}

/// Action-angle coordinates of the super-maximal component.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ActionAngleCoords {
    /// Peripheral rotation angles, each in `(0, 2π)`.
    pub alpha: Vec<f64>,
    /// Target values of the moment map, one per pants curve.
    pub x: Vec<f64>,
    /// Twist angles along the pants curves, taken modulo π.
    pub t: Vec<f64>,
}

/// The isometry `k` with `k a k^{-1} = b` for elliptics of equal angle,
/// followed by the rotation of angle `2 twist` about the common fixed point.
fn matching_conjugator(a: &GroupElement, b: &GroupElement, twist: f64) -> Result<GroupElement> {
    let p = fixed_point_elliptic(a)?;
    let q = fixed_point_elliptic(b)?;
    let k = GroupElement::affine_to(q)? * GroupElement::affine_to(p)?.inverse();
    let k = rotation(q, 2.0 * twist)? * k;
    let miss = a.conjugate_by(&k).distance(b);
    if miss > GLUING_TOL * (1.0 + b.entries().iter().map(|v| v.abs()).fold(0.0, f64::max)) {
        return Err(Error::GluingFailure(miss));
    }
    Ok(k)
}

/// Glues anticlockwise triangle pants with boundary data `(α_1, α_2, x_1)`,
/// `(2π - x_{i-1}, α_{i+1}, x_i)`, ..., `(2π - x_{n-3}, α_{n-1}, α_n)`.
///
/// The pants curve `b_i` is the loop around punctures `i+2, ..., n`, so that
/// `θ(ρ(c_{i+2} ... c_n)) = x_i`; its inverse `ρ(c_1 ... c_{i+1})` is the
/// first peripheral of the next pants.
pub fn necklace(coords: &ActionAngleCoords) -> Result<SphereRep> {
    let n = coords.alpha.len();
    check_alpha(&coords.alpha)?;
    if coords.x.len() != n - 3 || coords.t.len() != n - 3 {
        return Err(Error::InvalidInput(format!(
            "n = {n} needs {} actions and twists, got {} and {}",
            n - 3,
            coords.x.len(),
            coords.t.len()
        )));
    }
    if let Some(t) = coords.t.iter().find(|t| !t.is_finite()) {
        return Err(Error::InvalidInput(format!("twist {t} is not finite")));
    }
    let polytope = delzant_polytope(&coords.alpha)?;
    let slack = polytope.min_slack(&coords.x);
    if !(slack > 0.0) {
        return Err(Error::PolytopeViolation(format!(
            "x = {:?} has slack {slack} against the open polytope",
            coords.x
        )));
    }
    let alpha = &coords.alpha;
    let acw = |a: [f64; 3]| triangle_pants(AngleTriple::new(a, Orientation::Anticlockwise)?);
    if n == 3 {
        return acw([alpha[0], alpha[1], alpha[2]]);
    }
    let x = &coords.x;
    let first = acw([alpha[0], alpha[1], x[0]])?;
    let mut gens = vec![first.generator(1), first.generator(2)];
    // ρ(c_1 ... c_{i+1})
    let mut outer = first.generator(1) * first.generator(2);
    for i in 2..=n - 3 {
        let pants = acw([TAU - x[i - 2], alpha[i], x[i - 1]])?;
        let k = matching_conjugator(&pants.generator(1), &outer, coords.t[i - 2])?;
        let c = pants.generator(2).conjugate_by(&k);
        gens.push(c);
        outer = outer * c;
    }
    let last = acw([TAU - x[n - 4], alpha[n - 2], alpha[n - 1]])?;
    let k = matching_conjugator(&last.generator(1), &outer, coords.t[n - 4])?;
    gens.push(last.generator(2).conjugate_by(&k));
    gens.push(last.generator(3).conjugate_by(&k));
    SphereRep::new(gens)
}

/// Draws interior action coordinates uniformly from the polytope and twists
/// uniformly from `[0, π)`, then runs [`necklace`]. Deterministic in `seed`.
pub fn sample_coords(alpha: &[f64], seed: u64) -> Result<ActionAngleCoords> {
    let polytope = delzant_polytope(alpha)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = polytope.dim;
    loop {
        // Uniform on a simplex: normalized exponential weights on the vertices.
        let w: Vec<f64> = (0..=d).map(|_| rng.sample::<f64, _>(Exp1)).collect();
        let total: f64 = w.iter().sum();
        let mut x = vec![0.0; d];
        for (wj, v) in w.iter().zip(&polytope.vertices) {
            for (xk, vk) in x.iter_mut().zip(v) {
                *xk += wj / total * vk;
            }
        }
        if d == 0 || polytope.min_slack(&x) > 1e-9 * polytope.lambda {
            let t = (0..d).map(|_| rng.gen_range(0.0..PI)).collect();
            return Ok(ActionAngleCoords {
                alpha: alpha.to_vec(),
                x,
                t,
            });
        }
    }
}

pub fn sample_component(alpha: &[f64], seed: u64) -> Result<SphereRep> {
    necklace(&sample_coords(alpha, seed)?)
}

/// Random peripheral angles with `2(n-1)π < Σα < 2nπ`: the total defect
/// `Σ(2π - α_i)` is uniform in `(0.2π, 1.8π)` and split with weights in `[0.2, 1]`.
pub fn random_admissible_alpha<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    let total = TAU * rng.gen_range(0.1..0.9);
    let w: Vec<f64> = (0..n).map(|_| rng.gen_range(0.2..1.0)).collect();
    let sum: f64 = w.iter().sum();
    w.iter().map(|wi| TAU - total * wi / sum).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psl2::hyperbolic_distance;
    use crate::rep::{mirror, relative_euler_class};

    fn thetas(rho: &SphereRep) -> Vec<f64> {
        rho.theta_vector().unwrap()
    }

    #[test]
    fn triangle_side_lengths() {
        let angles = [0.3, 0.5, 0.7];
        let p = triangle_vertices(angles, true);
        let d12 = hyperbolic_distance(p[0], p[1]);
        let d13 = hyperbolic_distance(p[0], p[2]);
        let d23 = hyperbolic_distance(p[1], p[2]);
        assert!((d12 - opposite_side(0.3, 0.5, 0.7)).abs() < 1e-9);
        assert!((d13 - opposite_side(0.3, 0.7, 0.5)).abs() < 1e-9);
        assert!((d23 - opposite_side(0.5, 0.7, 0.3)).abs() < 1e-9);
        assert!(p[2].re > 0.0);
    }

    #[test]
    fn anticlockwise_equilateral() {
        let t = 1.9 * PI;
        let rho = triangle_pants(AngleTriple::new([t; 3], Orientation::Anticlockwise).unwrap()).unwrap();
        for th in thetas(&rho) {
            assert!((th - t).abs() < 1e-9);
        }
        assert_eq!(relative_euler_class(&rho).unwrap(), 2);
    }

    #[test]
    fn clockwise_equilateral() {
        let t = 0.5 * PI;
        let rho = triangle_pants(AngleTriple::new([t; 3], Orientation::Clockwise).unwrap()).unwrap();
        for th in thetas(&rho) {
            assert!((th - t).abs() < 1e-9);
        }
        assert_eq!(relative_euler_class(&rho).unwrap(), 1);
    }

    #[test]
    fn mirror_swaps_orientation() {
        let t = [5.0, 4.6, 4.3];
        let rho = triangle_pants(AngleTriple::new(t, Orientation::Anticlockwise).unwrap()).unwrap();
        let m = mirror(&rho);
        let cw = triangle_pants(
            AngleTriple::new(t.map(|a| TAU - a), Orientation::Clockwise).unwrap(),
        )
        .unwrap();
        for (a, b) in thetas(&m).iter().zip(thetas(&cw)) {
            assert!((a - b).abs() < 1e-9);
        }
        assert_eq!(relative_euler_class(&m).unwrap(), 1);
        assert_eq!(relative_euler_class(&cw).unwrap(), 1);
    }

    #[test]
    fn invalid_triples() {
        assert!(AngleTriple::new([1.0, 1.0, 5.0], Orientation::Clockwise).is_err());
        assert!(AngleTriple::new([5.0, 5.0, 1.0], Orientation::Anticlockwise).is_err());
        assert!(AngleTriple::new([0.0, 1.0, 1.0], Orientation::Clockwise).is_err());
    }

    #[test]
    fn necklace_n4() {
        let coords = ActionAngleCoords {
            alpha: vec![1.8 * PI; 4],
            x: vec![PI],
            t: vec![0.0],
        };
        let rho = necklace(&coords).unwrap();
        assert_eq!(relative_euler_class(&rho).unwrap(), 3);
        let b = rho.product(3, 4);
        assert!((crate::psl2::theta(&b).unwrap() - PI).abs() < 1e-8);
        for th in thetas(&rho) {
            assert!((th - 1.8 * PI).abs() < 1e-8);
        }
    }

    #[test]
    fn necklace_n3_is_a_triangle() {
        let alpha = vec![1.7 * PI, 1.6 * PI, 1.5 * PI];
        let coords = ActionAngleCoords {
            alpha: alpha.clone(),
            x: vec![],
            t: vec![],
        };
        let rho = necklace(&coords).unwrap();
        assert_eq!(relative_euler_class(&rho).unwrap(), 2);
        let a = sample_component(&alpha, 1).unwrap();
        let b = sample_component(&alpha, 99).unwrap();
        assert_eq!(thetas(&a), thetas(&b));
    }

    #[test]
    fn necklace_rejects_boundary_and_outside() {
        let alpha = vec![1.8 * PI; 4];
        for x in [0.4 * PI, 1.6 * PI, 0.1, 6.0] {
            let coords = ActionAngleCoords {
                alpha: alpha.clone(),
                x: vec![x],
                t: vec![0.0],
            };
            assert!(matches!(necklace(&coords), Err(Error::PolytopeViolation(_))), "x={x}");
        }
        let bad = ActionAngleCoords {
            alpha: vec![1.5 * PI; 4],
            x: vec![PI],
            t: vec![0.0],
        };
        assert!(matches!(necklace(&bad), Err(Error::EmptyPolytope { .. })));
    }

    #[test]
    fn sampling_is_deterministic() {
        let alpha = vec![1.9 * PI; 5];
        let a = sample_coords(&alpha, 7).unwrap();
        assert_eq!(a, sample_coords(&alpha, 7).unwrap());
        assert_ne!(a, sample_coords(&alpha, 8).unwrap());
        // Σα = 2(n-1)π exactly: no interior
        let edge = vec![1.6 * PI; 5];
        assert!(matches!(sample_component(&edge, 0), Err(Error::EmptyPolytope { .. })));
    }

    #[test]
    fn random_alpha_is_admissible() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for n in 3..10 {
            let a = random_admissible_alpha(n, &mut rng);
            assert!(check_alpha(&a).is_ok());
        }
    }
}
