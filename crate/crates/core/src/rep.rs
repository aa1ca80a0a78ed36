//! Representations of the punctured-sphere group `<c_1, ..., c_n | c_1 ... c_n = 1>`.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::path::Path;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::circle::product_power_with;
use crate::error::{Error, Result};
use crate::psl2::{classify_with, AntiElement, GroupElement, IsometryClass, Tolerances};

/// Distance within which `Θ / 2π` snaps to an integer in the Milnor-Wood bounds.
pub const INTEGER_SNAP: f64 = 1e-9;

/// A representation given by the images of the peripheral loops.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereRep {
    gens: Vec<GroupElement>,
}

#[derive(Serialize, Deserialize)]
struct RepFile {
    n: usize,
    generators: Vec<GroupElement>,
}

impl SphereRep {
    pub fn new(gens: Vec<GroupElement>) -> Result<Self> {
        Self::new_with(gens, &Tolerances::default())
    }

    /// Validates `n >= 3` and the product relation.
    pub fn new_with(gens: Vec<GroupElement>, tol: &Tolerances) -> Result<Self> {
        if gens.len() < 3 {
            return Err(Error::InvalidInput(format!(
                "a punctured-sphere representation needs n >= 3 generators, got {}",
                gens.len()
            )));
        }
        let residual = relation_residual(&gens);
        if !(residual <= tol.relation) {
            return Err(Error::RelationViolated { residual });
        }
        Ok(Self { gens })
    }

    /// The trivial representation.
    pub fn trivial(n: usize) -> Self {
        assert!(n >= 3, "n must be at least 3");
        Self {
            gens: vec![GroupElement::IDENTITY; n],
        }
    }

    /// Random representation: `n - 1` exponentials of Gaussian Lie-algebra
    /// samples, closed up by the inverse of their product.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        assert!(n >= 3, "n must be at least 3");
        let mut gens: Vec<GroupElement> = (0..n - 1).map(|_| GroupElement::random(rng)).collect();
        let prod = gens.iter().fold(GroupElement::IDENTITY, |acc, g| acc * *g);
        gens.push(prod.inverse());
        Self { gens }
    }

    pub(crate) fn from_parts_unchecked(gens: Vec<GroupElement>) -> Self {
        Self { gens }
    }

    pub fn n(&self) -> usize {
        self.gens.len()
    }

    pub fn gens(&self) -> &[GroupElement] {
        &self.gens
    }

    /// Image of `c_i`, 1-based.
    pub fn generator(&self, i: usize) -> GroupElement {
        self.gens[i - 1]
    }

    pub fn residual(&self) -> f64 {
        relation_residual(&self.gens)
    }

    /// Product of the images of `c_i ... c_j`, 1-based and inclusive.
    pub fn product(&self, i: usize, j: usize) -> GroupElement {
        self.gens[i - 1..j]
            .iter()
            .fold(GroupElement::IDENTITY, |acc, g| acc * *g)
    }

    pub fn conjugate_by(&self, h: &GroupElement) -> Self {
        Self {
            gens: self.gens.iter().map(|g| g.conjugate_by(h)).collect(),
        }
    }

    pub fn classes(&self, tol: &Tolerances) -> Result<Vec<IsometryClass>> {
        self.gens.iter().map(|g| classify_with(g, tol)).collect()
    }

    pub fn theta_vector(&self) -> Result<Vec<f64>> {
        Ok(self
            .classes(&Tolerances::default())?
            .iter()
            .map(IsometryClass::theta)
            .collect())
    }

    pub fn big_theta(&self) -> Result<f64> {
        Ok(self.theta_vector()?.iter().sum())
    }

    /// Entrywise distance, generator by generator.
    pub fn distance(&self, other: &SphereRep) -> f64 {
        assert_eq!(self.n(), other.n());
        self.gens
            .iter()
            .zip(&other.gens)
            .map(|(a, b)| a.distance(b))
            .fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&RepFile {
            n: self.n(),
            generators: self.gens.clone(),
        })
        .expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_json_with(s, &Tolerances::default())
    }

    /// Reads `{"n": .., "generators": [[a,b,c,d], ..]}`, renormalizing every
    /// generator and validating the relation.
    pub fn from_json_with(s: &str, tol: &Tolerances) -> Result<Self> {
        let file: RepFile = serde_json::from_str(s)?;
        if file.n != file.generators.len() {
            return Err(Error::InvalidInput(format!(
                "n = {} but {} generators given",
                file.n,
                file.generators.len()
            )));
        }
        Self::new_with(file.generators, tol)
    }

    pub fn read(path: &Path, tol: &Tolerances) -> Result<Self> {
        Self::from_json_with(&std::fs::read_to_string(path)?, tol)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }
}

fn relation_residual(gens: &[GroupElement]) -> f64 {
    gens.iter()
        .fold(GroupElement::IDENTITY, |acc, g| acc * *g)
        .distance_to_identity()
}

pub fn new_rep(gens: Vec<GroupElement>) -> Result<SphereRep> {
    SphereRep::new(gens)
}

/// Relative Euler class: the deck power reached by the ordered product of
/// the special lifts of the peripheral images.
pub fn relative_euler_class(rho: &SphereRep) -> Result<i64> {
    relative_euler_class_with(rho, &Tolerances::default())
}

pub fn relative_euler_class_with(rho: &SphereRep, tol: &Tolerances) -> Result<i64> {
    product_power_with(rho.gens(), tol)
}

/// `2π eu(ρ) - Θ(ρ)`.
pub fn volume(rho: &SphereRep) -> Result<f64> {
    Ok(TAU * relative_euler_class(rho)? as f64 - rho.big_theta()?)
}

pub fn is_super_maximal(rho: &SphereRep) -> Result<bool> {
    let eu = relative_euler_class(rho)?;
    let n = rho.n() as i64;
    Ok(eu == n - 1 || eu == n)
}

/// Conjugation by the reflection `z -> -conj(z)`.
pub fn mirror(rho: &SphereRep) -> SphereRep {
    let s = AntiElement::STANDARD;
    SphereRep {
        gens: rho
            .gens
            .iter()
            .map(|g| s.compose_group(g) * s)
            .collect(),
    }
}

/// Restrictions to the two subsurfaces cut off by the curve around punctures
/// `1..=i+1`: `(c_1, .., c_{i+1}, b^{-1})` and `(b, c_{i+2}, .., c_n)` with
/// `b = ρ(c_1 ... c_{i+1})`.
pub fn restrict(rho: &SphereRep, i: usize) -> Result<(SphereRep, SphereRep)> {
    let n = rho.n();
    if i < 1 || i + 3 > n {
        return Err(Error::InvalidInput(format!(
            "restriction index {i} outside 1..={}",
            n.saturating_sub(3)
        )));
    }
    let b = rho.product(1, i + 1);
    let mut left = rho.gens[..=i].to_vec();
    left.push(b.inverse());
    let mut right = vec![b];
    right.extend_from_slice(&rho.gens[i + 1..]);
    Ok((
        SphereRep::from_parts_unchecked(left),
        SphereRep::from_parts_unchecked(right),
    ))
}

/// Floor and ceiling of `q`, both snapped to the nearest integer when `q` is
/// within [`INTEGER_SNAP`] of it.
pub fn snapped_floor_ceil(q: f64) -> (i64, i64) {
    let r = q.round();
    if (q - r).abs() <= INTEGER_SNAP {
        (r as i64, r as i64)
    } else {
        (q.floor() as i64, q.ceil() as i64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EulerReport {
    pub n: usize,
    pub euler: i64,
    pub theta_vector: Vec<f64>,
    pub big_theta: f64,
    pub volume: f64,
    pub super_maximal: bool,
    /// Non-hyperbolic peripherals, identities counted twice.
    pub l: i64,
    pub mw_lower: i64,
    pub mw_upper: i64,
}

pub fn euler_report(rho: &SphereRep, tol: &Tolerances) -> Result<EulerReport> {
    let classes = rho.classes(tol)?;
    let theta_vector: Vec<f64> = classes.iter().map(IsometryClass::theta).collect();
    let big_theta: f64 = theta_vector.iter().sum();
    let euler = relative_euler_class_with(rho, tol)?;
    let n = rho.n() as i64;
    let chi = n - 2;
    let l: i64 = classes.iter().map(IsometryClass::mw_weight).sum();
    let (floor, ceil) = snapped_floor_ceil(big_theta / TAU);
    Ok(EulerReport {
        n: rho.n(),
        euler,
        volume: TAU * euler as f64 - big_theta,
        theta_vector,
        big_theta,
        super_maximal: euler == n - 1 || euler == n,
        l,
        mw_lower: (l - chi).min(ceil),
        mw_upper: chi.max(floor),
    })
}

/// Computes the Euler report and checks the refined Milnor-Wood bounds
/// `min(l - |χ|, ⌈Θ/2π⌉) <= eu <= max(|χ|, ⌊Θ/2π⌋)`.
pub fn check_milnor_wood(rho: &SphereRep) -> Result<EulerReport> {
    check_milnor_wood_with(rho, &Tolerances::default())
}

pub fn check_milnor_wood_with(rho: &SphereRep, tol: &Tolerances) -> Result<EulerReport> {
    let report = euler_report(rho, tol)?;
    if report.mw_lower <= report.euler && report.euler <= report.mw_upper {
        Ok(report)
    } else {
        Err(Error::MWViolation {
            euler: report.euler,
            lower: report.mw_lower,
            upper: report.mw_upper,
        })
    }
}

/// `eu(ρ) - (eu(ρ') + eu(ρ'') - δ)` for the restrictions along the curve
/// around punctures `1..=i+1`, with `δ` the weight of the class of `ρ(b)`
/// (2 identity, 1 elliptic or parabolic, 0 hyperbolic). Zero when additive.
pub fn gluing_defect(rho: &SphereRep, i: usize, tol: &Tolerances) -> Result<i64> {
    let (left, right) = restrict(rho, i)?;
    let delta = classify_with(&rho.product(1, i + 1), tol)?.mw_weight();
    let eu = relative_euler_class_with(rho, tol)?;
    let parts = relative_euler_class_with(&left, tol)? + relative_euler_class_with(&right, tol)?;
    Ok(eu - (parts - delta))
}

/// Outcome of checking random representations against the Milnor-Wood
/// bounds and the mirror relation `eu(ρ) + eu(ρ̄) = l`.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct FuzzReport {
    pub n: usize,
    pub trials: usize,
    /// Trials with a peripheral too close to the identity to classify.
    pub skipped: usize,
    pub mw_violations: usize,
    pub mirror_violations: usize,
    /// Lifts whose deck power disagreed between sample points.
    pub winding_failures: usize,
    pub euler_counts: BTreeMap<i64, usize>,
}

impl FuzzReport {
    pub fn violations(&self) -> usize {
        self.mw_violations + self.mirror_violations + self.winding_failures
    }

    pub fn skip_rate(&self) -> f64 {
        self.skipped as f64 / self.trials.max(1) as f64
    }
}

pub fn fuzz_milnor_wood<R: Rng + ?Sized>(
    n: usize,
    trials: usize,
    rng: &mut R,
    tol: &Tolerances,
) -> FuzzReport {
    let mut report = FuzzReport {
        n,
        trials,
        ..FuzzReport::default()
    };
    for _ in 0..trials {
        let rho = SphereRep::random(n, rng);
        let checked = euler_report(&rho, tol).and_then(|r| {
            let mirrored = relative_euler_class_with(&mirror(&rho), tol)?;
            Ok((r, mirrored))
        });
        match checked {
            Ok((r, mirrored)) => {
                *report.euler_counts.entry(r.euler).or_default() += 1;
                if r.euler < r.mw_lower || r.euler > r.mw_upper {
                    report.mw_violations += 1;
                }
                if r.euler + mirrored != r.l {
                    report.mirror_violations += 1;
                }
            }
            Err(Error::AmbiguousClass { .. }) => report.skipped += 1,
            Err(_) => report.winding_failures += 1,
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psl2::rotation;
    use num_complex::Complex64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn construction() {
        assert!(SphereRep::new(vec![GroupElement::IDENTITY; 5]).is_ok());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = GroupElement::random(&mut rng);
        assert!(SphereRep::new(vec![g, g.inverse(), GroupElement::IDENTITY]).is_ok());
        let h = GroupElement::random(&mut rng);
        assert!(matches!(
            SphereRep::new(vec![g, h, g]),
            Err(Error::RelationViolated { .. })
        ));
        assert!(SphereRep::new(vec![g, g.inverse()]).is_err());
    }

    #[test]
    fn trivial_rep() {
        let rho = SphereRep::trivial(5);
        assert_eq!(relative_euler_class(&rho).unwrap(), 5);
        assert_eq!(volume(&rho).unwrap(), 0.0);
        assert!(is_super_maximal(&rho).unwrap());
        let r = check_milnor_wood(&SphereRep::trivial(4)).unwrap();
        assert_eq!((r.euler, r.l, r.mw_lower, r.mw_upper), (4, 8, 4, 4));
        assert_eq!(mirror(&rho), rho);
    }

    #[test]
    fn identity_peripheral_pants() {
        let g = rotation(Complex64::new(1.0, 0.5), 2.5).unwrap();
        let rho = SphereRep::new(vec![g, g.inverse(), GroupElement::IDENTITY]).unwrap();
        let r = check_milnor_wood(&rho).unwrap();
        assert_eq!(r.euler, 2);
        assert!((r.big_theta - 2.0 * TAU).abs() < 1e-12);
        let h = GroupElement::new(3.0, 1.0, 2.0, 1.0).unwrap();
        let rho = SphereRep::new(vec![h, h.inverse(), GroupElement::IDENTITY]).unwrap();
        assert_eq!(relative_euler_class(&rho).unwrap(), 1);
    }

    #[test]
    fn mirror_is_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let rho = SphereRep::random(5, &mut rng);
        let m = mirror(&rho);
        assert!(m.residual() < 1e-9);
        assert!(mirror(&m).distance(&rho) < 1e-12);
    }

    #[test]
    fn restriction_relations() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let rho = SphereRep::random(4, &mut rng);
        let (a, b) = restrict(&rho, 1).unwrap();
        assert_eq!((a.n(), b.n()), (3, 3));
        assert!(a.residual() < 1e-7 && b.residual() < 1e-7);
        assert!(restrict(&rho, 2).is_err());
    }

    #[test]
    fn snapping() {
        assert_eq!(snapped_floor_ceil(2.0 - 1e-12), (2, 2));
        assert_eq!(snapped_floor_ceil(2.5), (2, 3));
    }

    #[test]
    fn json_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let rho = SphereRep::random(4, &mut rng);
        let back = SphereRep::from_json(&rho.to_json()).unwrap();
        assert_eq!(back.theta_vector().unwrap(), rho.theta_vector().unwrap());
        assert_eq!(relative_euler_class(&back).unwrap(), relative_euler_class(&rho).unwrap());
        assert!(SphereRep::from_json(r#"{"n": 4, "generators": [[1,0,0,1],[1,0,0,1],[1,0,0,1]]}"#).is_err());
    }
}
