//! Random representations against the refined Milnor-Wood inequality and the
//! mirror relation. Usage: `milnor_wood_fuzz [trials] [seed]`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use supermaximal::rep::fuzz_milnor_wood;
use supermaximal::Tolerances;

fn main() {
    let mut args = std::env::args().skip(1);
    let trials: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(2000);
    let seed: u64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(0);
    for n in 3..=6 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed + n as u64);
        let r = fuzz_milnor_wood(n, trials, &mut rng, &Tolerances::default());
        println!(
            "n = {n}: {} trials, {} skipped, {} violations, euler histogram {:?}",
            r.trials,
            r.skipped,
            r.violations(),
            r.euler_counts
        );
    }
}
