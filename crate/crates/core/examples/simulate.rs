//! Simulate the attracting SOPS and check it against the rigorous seeds.
//! The simulation is plain floating point and proves nothing on its own.

use wright_sops::{seed_pair, simulate_sops, AprioriParams, Interval};

fn main() {
    for alpha in [2.0, 2.5, 3.0, 4.0] {
        let s = simulate_sops(alpha, 600.0, 1.0 / 256.0).expect("settles");
        let seeds = seed_pair(Interval::new(alpha, alpha), AprioriParams::default(), 64, 10);
        let inside = seeds.iter().any(|r| r.contains_kappa(s.q, s.qbar, s.max));
        println!(
            "α = {alpha}: q = {:.5}, q̄ = {:.5}, max = {:.5}, min = {:.3}, κ in a seed: {inside}",
            s.q, s.qbar, s.max, s.min
        );
    }
    match simulate_sops(1.0, 200.0, 1.0 / 64.0) {
        Ok(_) => println!("α = 1: unexpected cycle"),
        Err(e) => println!("α = 1: {e}"),
    }
}
