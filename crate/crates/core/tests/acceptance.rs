//! Acceptance suite. Each criterion prints one PASS/FAIL line; the process
//! exits non-zero if any criterion fails.

use std::f64::consts::{PI, TAU};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use supermaximal::construct::{necklace, random_admissible_alpha, sample_component, ActionAngleCoords};
use supermaximal::curves::{audit_non_hyperbolic, HYPERBOLIC_MARGIN};
use supermaximal::psl2::{rotation, GroupElement, Tolerances};
use supermaximal::rep::{fuzz_milnor_wood, gluing_defect, relative_euler_class, FuzzReport, SphereRep};
use supermaximal::symplectic::{
    delzant_polytope, enumerate_vertices, moment_map, simplex_volume, symplectic_volume, twist_flow,
};
use supermaximal::{Error, LiftedElement};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn factorial(d: usize) -> f64 {
    (1..=d).map(|k| k as f64).product()
}

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// Largest entrywise difference between the sign-matched representatives.
fn entrywise(a: &GroupElement, b: &GroupElement) -> f64 {
    let (x, y) = (a.entries(), b.entries());
    let same = x.iter().zip(&y).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
    let flip = x.iter().zip(&y).map(|(p, q)| (p + q).abs()).fold(0.0, f64::max);
    same.min(flip)
}

fn rep_entrywise(a: &SphereRep, b: &SphereRep) -> f64 {
    a.gens().iter().zip(b.gens()).map(|(g, h)| entrywise(g, h)).fold(0.0, f64::max)
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max)
}

fn sampled_rep(n: usize, seed: u64) -> SphereRep {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alpha = random_admissible_alpha(n, &mut rng);
    sample_component(&alpha, seed).expect("sampling inside the polytope succeeds")
}

fn euler_exactness() -> Verdict {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut count = 0;
    for n in 3..=8 {
        for k in 0..100u64 {
            let rho = sampled_rep(n, 1000 * n as u64 + k);
            count += 1;
            match relative_euler_class(&rho) {
                Ok(eu) if eu == n as i64 - 1 => {}
                other => bad.push(format!("n={n} seed={k}: {other:?}")),
            }
        }
    }
    for n in 3..=8 {
        if relative_euler_class(&SphereRep::trivial(n)).ok() != Some(n as i64) {
            bad.push(format!("trivial n={n}"));
        }
    }
    let elapsed = start.elapsed();
    verdict(
        bad.is_empty() && elapsed < Duration::from_secs(10),
        format!("{count} necklace reps at eu = n-1, trivial reps at eu = n, {} failures, {elapsed:.2?}", bad.len()),
    )
}

fn fuzz_corpus() -> Vec<FuzzReport> {
    let tol = Tolerances::default();
    [3, 4, 5]
        .iter()
        .map(|&n| {
            let mut rng = ChaCha8Rng::seed_from_u64(77 + n as u64);
            fuzz_milnor_wood(n, 10_000, &mut rng, &tol)
        })
        .collect()
}

fn milnor_wood(corpus: &[FuzzReport], elapsed: Duration) -> Verdict {
    let violations: usize = corpus.iter().map(|r| r.mw_violations + r.winding_failures).sum();
    let worst_skip = corpus.iter().map(FuzzReport::skip_rate).fold(0.0, f64::max);
    let skipped: Vec<usize> = corpus.iter().map(|r| r.skipped).collect();
    verdict(
        violations == 0 && worst_skip < 0.01 && elapsed < Duration::from_secs(60),
        format!("3 x 10^4 reps, {violations} violations, skipped {skipped:?}, {elapsed:.2?}"),
    )
}

fn mirror_relation(corpus: &[FuzzReport]) -> Verdict {
    let violations: usize = corpus.iter().map(|r| r.mirror_violations).sum();
    let checked: usize = corpus.iter().map(|r| r.trials - r.skipped).sum();
    verdict(violations == 0, format!("{checked} reps, {violations} violations of eu + eu(mirror) = l"))
}

fn gluing_additivity() -> Verdict {
    let tol = Tolerances::default();
    let (mut checked, mut skipped) = (0, 0);
    let mut bad = Vec::new();
    for n in [4, 5] {
        let mut rng = ChaCha8Rng::seed_from_u64(500 + n as u64);
        for trial in 0..1000 {
            let rho = SphereRep::random(n, &mut rng);
            for i in 1..=n - 3 {
                match gluing_defect(&rho, i, &tol) {
                    Ok(0) => checked += 1,
                    Err(Error::AmbiguousClass { .. }) => skipped += 1,
                    other => bad.push(format!("n={n} trial={trial} i={i}: {other:?}")),
                }
            }
        }
    }
    verdict(
        bad.is_empty(),
        format!("{checked} cuts additive, {skipped} ambiguous skipped, {} violations {:?}", bad.len(), bad.first()),
    )
}

fn non_hyperbolicity() -> Verdict {
    let start = Instant::now();
    let mut violations = 0;
    let mut max_trace: f64 = 0.0;
    for n in [4, 5, 6] {
        for k in 0..100u64 {
            let rho = sampled_rep(n, 9000 + 100 * n as u64 + k);
            let report = audit_non_hyperbolic(&rho, 20, 1000, k);
            violations += report.violations.len();
            max_trace = max_trace.max(report.max_abs_trace);
        }
    }
    let elapsed = start.elapsed();
    verdict(
        violations == 0 && elapsed < Duration::from_secs(300),
        format!(
            "300 reps x 1000 curves at depth 20, {violations} traces above 2 + {HYPERBOLIC_MARGIN:e}, max |tr| = {max_trace:.12}, {elapsed:.2?}"
        ),
    )
}

fn moment_polytope() -> Verdict {
    let mut worst_slack = f64::INFINITY;
    let mut failures = Vec::new();
    for k in 0..1000u64 {
        let n = 4 + (k % 5) as usize;
        let rho = sampled_rep(n, 20_000 + k);
        let alpha = rho.theta_vector().unwrap();
        let p = delzant_polytope(&alpha).unwrap();
        match moment_map(&rho) {
            Ok(m) => worst_slack = worst_slack.min(p.min_slack(&m.beta)),
            Err(e) => failures.push(format!("seed {k}: {e}")),
        }
    }
    let mut grid_points = 0;
    let mut worst_round_trip: f64 = 0.0;
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for n in 4..=6 {
        let alpha = random_admissible_alpha(n, &mut rng);
        let p = delzant_polytope(&alpha).unwrap();
        for x in p.interior_grid(5) {
            let t: Vec<f64> = (0..x.len()).map(|_| rng.gen_range(0.0..PI)).collect();
            let coords = ActionAngleCoords { alpha: alpha.clone(), x: x.clone(), t };
            match necklace(&coords).and_then(|rho| moment_map(&rho)) {
                Ok(m) => worst_round_trip = worst_round_trip.max(max_diff(&m.beta, &x)),
                Err(e) => failures.push(format!("grid n={n} x={x:?}: {e}")),
            }
            grid_points += 1;
        }
    }
    verdict(
        failures.is_empty() && worst_slack >= -1e-8 && worst_round_trip < 1e-8,
        format!(
            "1000 reps, min slack {worst_slack:.3e}; {grid_points} grid points, max round trip {worst_round_trip:.3e}; {} failures {:?}",
            failures.len(),
            failures.first()
        ),
    )
}

fn volume_formula() -> Verdict {
    let mut worst_euclid: f64 = 0.0;
    let mut worst_sympl: f64 = 0.0;
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for n in 4..=9 {
        let d = n - 3;
        for _ in 0..100 {
            let alpha = random_admissible_alpha(n, &mut rng);
            let p = delzant_polytope(&alpha).unwrap();
            let vertices = enumerate_vertices(&p.halfspaces, d);
            if vertices.len() != d + 1 {
                failures.push(format!("n={n}: {} vertices", vertices.len()));
                continue;
            }
            let euclid = simplex_volume(&vertices).unwrap();
            worst_euclid = worst_euclid.max(rel_err(euclid, p.lambda.powi(d as i32) / factorial(d)));
            let sympl = symplectic_volume(&alpha).unwrap();
            worst_sympl = worst_sympl
                .max(rel_err(sympl, (PI * p.lambda).powi(d as i32) / factorial(d)))
                .max(rel_err(sympl, PI.powi(d as i32) * euclid));
        }
    }
    verdict(
        failures.is_empty() && worst_euclid <= 1e-9 && worst_sympl <= 1e-9,
        format!(
            "600 angle vectors, max relative error {worst_euclid:.2e} (vertex enumeration), {worst_sympl:.2e} (symplectic); {} failures",
            failures.len()
        ),
    )
}

fn twist_flows() -> Verdict {
    let start = Instant::now();
    let (mut period, mut invariance, mut commute): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let mut euler_ok = true;
    for k in 0..100u64 {
        let n = 4 + (k % 4) as usize;
        let rho = sampled_rep(n, 40_000 + k);
        let theta = rho.theta_vector().unwrap();
        let beta = moment_map(&rho).unwrap().beta;
        for i in 1..=n - 3 {
            period = period.max(rep_entrywise(&twist_flow(&rho, i, PI).unwrap(), &rho));
            for t in [0.1, 0.5, 1.0, 2.0, 3.0] {
                let f = twist_flow(&rho, i, t).unwrap();
                invariance = invariance
                    .max(max_diff(&f.theta_vector().unwrap(), &theta))
                    .max(max_diff(&moment_map(&f).unwrap().beta, &beta));
                euler_ok &= relative_euler_class(&f).ok() == Some(n as i64 - 1);
            }
            for j in i + 1..=n - 3 {
                let (s, t) = (0.7, 2.3);
                let a = twist_flow(&twist_flow(&rho, i, s).unwrap(), j, t).unwrap();
                let b = twist_flow(&twist_flow(&rho, j, t).unwrap(), i, s).unwrap();
                commute = commute.max(rep_entrywise(&a, &b));
            }
        }
    }
    let elapsed = start.elapsed();
    verdict(
        period <= 1e-9 && invariance <= 1e-9 && euler_ok && commute <= 1e-8 && elapsed < Duration::from_secs(30),
        format!(
            "100 reps, period error {period:.2e}, invariant drift {invariance:.2e}, euler fixed {euler_ok}, commutator {commute:.2e}, {elapsed:.2?}"
        ),
    )
}

fn translation_numbers() -> Verdict {
    const N: usize = 10_000;
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    let mut worst: f64 = 0.0;
    let mut missing = 0;
    let mut classes = std::collections::BTreeMap::new();
    for k in 0..1000 {
        let h = GroupElement::random(&mut rng);
        let base = match k % 10 {
            0 => GroupElement::new(1.0, 0.0, rng.gen_range(0.1..3.0), 1.0).unwrap().conjugate_by(&h),
            1 => GroupElement::new(1.0, rng.gen_range(0.1..3.0), 0.0, 1.0).unwrap().conjugate_by(&h),
            2 if k % 20 == 2 => GroupElement::IDENTITY,
            2..=4 => {
                let center = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(0.2..3.0));
                rotation(center, rng.gen_range(0.05..TAU - 0.05)).unwrap()
            }
            _ => h,
        };
        if let Ok(c) = supermaximal::classify(&base) {
            *classes.entry(c.name()).or_insert(0) += 1;
        }
        let lift = LiftedElement::new(base, rng.gen_range(-2..=2));
        match lift.translation_number_closed() {
            Some(closed) => {
                let estimate = lift.translation_number_iterative(N);
                worst = worst.max((estimate - closed).abs());
            }
            None => missing += 1,
        }
    }
    let bound = TAU / N as f64 + 1e-9;
    verdict(
        missing == 0 && worst <= bound,
        format!("1000 lifts {classes:?}, max |iterative - closed| = {worst:.3e} (bound {bound:.3e})"),
    )
}

fn main() {
    let fuzz_start = Instant::now();
    let corpus = fuzz_corpus();
    let fuzz_elapsed = fuzz_start.elapsed();
    let results = [
        ("euler class exactness", euler_exactness()),
        ("refined Milnor-Wood fuzz", milnor_wood(&corpus, fuzz_elapsed)),
        ("mirror relation", mirror_relation(&corpus)),
        ("gluing additivity", gluing_additivity()),
        ("total non-hyperbolicity", non_hyperbolicity()),
        ("moment-map polytope", moment_polytope()),
        ("volume formula", volume_formula()),
        ("twist-flow periodicity and invariance", twist_flows()),
        ("translation-number oracle", translation_numbers()),
    ];
    let mut failed = 0;
    for (k, (name, v)) in results.iter().enumerate() {
        println!("{} {}. {name}: {}", if v.pass { "PASS" } else { "FAIL" }, k + 1, v.detail);
        failed += usize::from(!v.pass);
    }
    println!("acceptance: {} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
