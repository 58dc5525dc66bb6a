//! Apply the contractor to the short seed and watch the box shrink.

use wright_sops::prune::prune_once;
use wright_sops::{seed_short, AprioriParams, Interval};

fn main() {
    let alpha = Interval::new(2.0, 2.1);
    let mut r = seed_short(alpha, AprioriParams::default(), 32);
    println!("seed: q {} q̄ {} M {}", r.i_q, r.i_qbar, r.i_m);
    for pass in 1..=8 {
        if let Err(reason) = prune_once(&mut r) {
            println!("pass {pass}: discarded ({reason})");
            return;
        }
        println!(
            "pass {pass}: q {} q̄ {} M {}  x(-1) in {}",
            r.i_q,
            r.i_qbar,
            r.i_m,
            r.enclosure.point(-32)
        );
    }
    // split the widest side and prune both halves once more
    let (a, b) = r.subdivide();
    for (name, mut half) in [("left", a), ("right", b)] {
        match prune_once(&mut half) {
            Ok(()) => println!("{name}: q {} q̄ {} M {}", half.i_q, half.i_qbar, half.i_m),
            Err(reason) => println!("{name}: discarded ({reason})"),
        }
    }
}
