//! Audits braid orbits of simple closed curves for hyperbolic images, on a
//! super-maximal representation and on a random one.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use supermaximal::curves::{braid_act, evaluate};
use supermaximal::{audit_non_hyperbolic, base_curve, sample_component, Result, SphereRep};

fn main() -> Result<()> {
    let rho = sample_component(&[1.9 * PI, 1.8 * PI, 1.85 * PI, 1.7 * PI, 1.95 * PI], 7)?;
    let mut w = base_curve(5, 2, 3)?;
    for (k, s) in [(1, 1), (3, -1), (2, 1)] {
        w = braid_act(k, s, &w);
    }
    println!("sample curve {:?} has |tr| = {:.9}", w.letters(), evaluate(&rho, &w).abs_trace());

    let report = audit_non_hyperbolic(&rho, 20, 1000, 0);
    println!(
        "super-maximal: {} curves, {} violations, {} warnings, max |tr| = {:.9}",
        report.samples,
        report.violations.len(),
        report.warnings.len(),
        report.max_abs_trace
    );

    let random = SphereRep::random(5, &mut ChaCha8Rng::seed_from_u64(1));
    let report = audit_non_hyperbolic(&random, 20, 1000, 0);
    println!(
        "random:        {} curves, {} violations, max |tr| = {:.3e}",
        report.samples,
        report.violations.len(),
        report.max_abs_trace
    );
    Ok(())
}
