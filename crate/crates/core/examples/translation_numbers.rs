//! Lifts to the universal cover of the circle: special lifts, closed-form and
//! iterative translation numbers, and the deck power of a relation.

use std::f64::consts::PI;

use num_complex::Complex64;
use supermaximal::circle::special_lift;
use supermaximal::psl2::rotation;
use supermaximal::{product_power, GroupElement, LiftedElement, Result};

fn main() -> Result<()> {
    let i = Complex64::new(0.0, 1.0);
    let elements = [
        GroupElement::new(2.0, 0.0, 0.0, 0.5)?,
        GroupElement::new(1.0, 0.0, 0.8, 1.0)?,
        GroupElement::new(1.0, 0.8, 0.0, 1.0)?,
        rotation(Complex64::new(1.0, 2.0), 1.3)?,
    ];
    for g in &elements {
        for offset in [0, 1] {
            let lift = LiftedElement::new(*g, offset);
            println!(
                "offset {offset}: closed {:.6} pi, iterative {:.6} pi",
                lift.translation_number() / PI,
                lift.translation_number_iterative(10_000) / PI
            );
        }
        println!("  special lift translation {:.6} pi", special_lift(g)?.translation_number() / PI);
    }
    let g = rotation(i, 2.0)?;
    println!("(g, g^-1, 1) has deck power {}", product_power(&[g, g.inverse(), GroupElement::IDENTITY])?);
    Ok(())
}
