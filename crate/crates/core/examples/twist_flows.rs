//! Twist flows along pants curves: periodicity, invariance of the actions and
//! recovery of the twists joining two points of a fiber.

use std::f64::consts::PI;

use supermaximal::construct::{necklace, ActionAngleCoords};
use supermaximal::symplectic::{connecting_twists, conjugacy_distance};
use supermaximal::{moment_map, twist_flow, Result};

fn main() -> Result<()> {
    let alpha = vec![1.9 * PI; 6];
    let x = vec![0.5 * PI, 0.8 * PI, 1.2 * PI];
    let rho = necklace(&ActionAngleCoords { alpha: alpha.clone(), x: x.clone(), t: vec![0.3, 1.0, 2.0] })?;
    for i in 1..=3 {
        for t in [0.5, 1.0, PI] {
            let f = twist_flow(&rho, i, t)?;
            let c = f.generator(i + 1) * f.generator(i + 2);
            println!(
                "i = {i}, t = {t:.4}: beta / pi = {:.6?}, |tr(c{} c{})| = {:.6}, distance to start {:.2e}",
                moment_map(&f)?.beta.iter().map(|b| b / PI).collect::<Vec<_>>(),
                i + 1,
                i + 2,
                c.abs_trace(),
                f.distance(&rho)
            );
        }
    }
    let target = necklace(&ActionAngleCoords { alpha, x, t: vec![2.5, 0.2, 1.4] })?;
    println!("distance between fiber points {:.4}", conjugacy_distance(&rho, &target)?);
    let (twists, residual) = connecting_twists(&rho, &target)?;
    println!("connecting twists {twists:.6?}, residual {residual:.2e}");
    Ok(())
}
