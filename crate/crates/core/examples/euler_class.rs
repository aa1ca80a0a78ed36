//! Relative Euler class of triangle-group pants, their mirrors and the
//! trivial representation, with the Milnor-Wood bounds.

use std::f64::consts::PI;

use supermaximal::rep::{check_milnor_wood, mirror};
use supermaximal::{triangle_pants, AngleTriple, Orientation, Result, SphereRep};

fn show(name: &str, rho: &SphereRep) -> Result<()> {
    let r = check_milnor_wood(rho)?;
    let thetas: Vec<String> = r.theta_vector.iter().map(|t| format!("{:.3}", t / PI)).collect();
    println!(
        "{name:<28} eu = {} in [{}, {}], theta/pi = [{}], volume = {:.6}",
        r.euler,
        r.mw_lower,
        r.mw_upper,
        thetas.join(", "),
        r.volume
    );
    Ok(())
}

fn main() -> Result<()> {
    let cw = triangle_pants(AngleTriple::new([0.5 * PI; 3], Orientation::Clockwise)?)?;
    let acw = triangle_pants(AngleTriple::new([1.9 * PI; 3], Orientation::Anticlockwise)?)?;
    show("clockwise (pi/2 x3)", &cw)?;
    show("mirror of clockwise", &mirror(&cw))?;
    show("anticlockwise (1.9pi x3)", &acw)?;
    show("mirror of anticlockwise", &mirror(&acw))?;
    show("trivial, n = 5", &SphereRep::trivial(5))?;
    Ok(())
}
