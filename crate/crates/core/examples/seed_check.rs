//! Run the long-gap seed over width-0.1 subintervals of [1.57, 2.07] and
//! report which ones come back empty.
//!
//! `cargo run --release --example seed_check -- [lo hi n_time]`

use std::time::Instant;

use wright_sops::{seed_long, AprioriParams};

fn main() {
    let args: Vec<f64> = std::env::args().skip(1).map(|a| a.parse().expect("number")).collect();
    let (lo, hi) = match args.as_slice() {
        [lo, hi, ..] => (*lo, *hi),
        _ => (1.57, 2.07),
    };
    let n_time = args.get(2).map_or(128, |&n| n as u32);
    for a in wright_sops::prover::partition(lo, hi, 0.1) {
        let t = Instant::now();
        let r = seed_long(a, AprioriParams::default(), n_time, 10);
        let what = match &r {
            None => "empty".to_string(),
            Some(r) => format!("kept q {} qbar {} M {}", r.i_q, r.i_qbar, r.i_m),
        };
        println!("{a}: {what} ({:.2} s)", t.elapsed().as_secs_f64());
    }
}
