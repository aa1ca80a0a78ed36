//! Builds super-maximal representations from action-angle coordinates and
//! reads the actions back through the moment map.

use std::f64::consts::PI;

use supermaximal::construct::{necklace, sample_coords, ActionAngleCoords};
use supermaximal::rep::euler_report;
use supermaximal::{moment_map, Result, Tolerances};

fn main() -> Result<()> {
    let coords = ActionAngleCoords {
        alpha: vec![1.9 * PI; 5],
        x: vec![0.5 * PI, 1.0 * PI],
        t: vec![0.3, 1.1],
    };
    let rho = necklace(&coords)?;
    let report = euler_report(&rho, &Tolerances::default())?;
    println!("n = {}, euler = {}, super-maximal = {}", report.n, report.euler, report.super_maximal);
    println!("beta / pi = {:?}", moment_map(&rho)?.beta.iter().map(|b| b / PI).collect::<Vec<_>>());
    println!("{}", rho.to_json());

    let alpha = [1.95 * PI, 1.8 * PI, 1.7 * PI, 1.9 * PI, 1.85 * PI, 1.75 * PI];
    for seed in 0..3 {
        let c = sample_coords(&alpha, seed)?;
        let beta = moment_map(&necklace(&c)?)?.beta;
        let err = beta.iter().zip(&c.x).map(|(b, x)| (b - x).abs()).fold(0.0, f64::max);
        println!("seed {seed}: x / pi = {:.4?}, round-trip error {err:.2e}", c.x.iter().map(|x| x / PI).collect::<Vec<_>>());
    }
    Ok(())
}
