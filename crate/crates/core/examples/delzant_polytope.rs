//! The moment polytope of the super-maximal component and its volumes.

use std::f64::consts::PI;

use supermaximal::symplectic::enumerate_vertices;
use supermaximal::{delzant_polytope, polytope_volume, symplectic_volume, Result};

fn main() -> Result<()> {
    for alpha in [vec![1.8 * PI; 4], vec![1.9 * PI; 5], vec![1.95 * PI, 1.9 * PI, 1.85 * PI, 1.8 * PI, 1.9 * PI, 1.75 * PI]] {
        let p = delzant_polytope(&alpha)?;
        println!("n = {}, lambda = {:.4} pi", alpha.len(), p.lambda / PI);
        for h in &p.halfspaces {
            println!("  {:?} . x <= {:.4} pi", h.normal, h.bound / PI);
        }
        for v in &p.vertices {
            println!("  vertex {:.4?}", v.iter().map(|x| x / PI).collect::<Vec<_>>());
        }
        let enumerated = enumerate_vertices(&p.halfspaces, p.dim);
        println!(
            "  {} vertices from facets, volume {:.6}, symplectic volume {:.6}",
            enumerated.len(),
            polytope_volume(&p)?,
            symplectic_volume(&alpha)?
        );
    }
    Ok(())
}
