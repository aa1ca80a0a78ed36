//! Classifies a few isometries of the upper half-plane and prints their angles.

use std::f64::consts::PI;

use num_complex::Complex64;
use supermaximal::psl2::{classify, fixed_point_elliptic, rotation, translation_length};
use supermaximal::{GroupElement, Result};

fn main() -> Result<()> {
    let i = Complex64::new(0.0, 1.0);
    let samples = [
        ("identity", GroupElement::IDENTITY),
        ("diag(2, 1/2)", GroupElement::new(2.0, 0.0, 0.0, 0.5)?),
        ("[[1,0],[1,1]]", GroupElement::new(1.0, 0.0, 1.0, 1.0)?),
        ("[[1,1],[0,1]]", GroupElement::new(1.0, 1.0, 0.0, 1.0)?),
        ("rotation(2i, pi/3)", rotation(2.0 * i, PI / 3.0)?),
    ];
    for (name, g) in samples {
        let class = classify(&g)?;
        print!(
            "{name:>20}: {:<18} theta = {:.6} pi, length = {:.6}",
            class.name(),
            class.theta() / PI,
            translation_length(&g)
        );
        match fixed_point_elliptic(&g) {
            Ok(p) => println!(", fixed point {:.6}", p),
            Err(_) => println!(),
        }
    }
    Ok(())
}
