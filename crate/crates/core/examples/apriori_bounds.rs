//! Classical estimates that hold for every SOPS and seed the search.
//!
//! `cargo run --example apriori_bounds -- 2.5 2.6`

use wright_sops::apriori::{
    a_seq, global_extrema, max_lower_bound, p_ceiling, q_qbar_ranges, walther_min,
};
use wright_sops::Interval;

fn main() {
    let args: Vec<f64> = std::env::args().skip(1).map(|a| a.parse().expect("number")).collect();
    let alpha = match args.as_slice() {
        [lo, hi, ..] => Interval::new(*lo, *hi),
        _ => Interval::new(2.5, 2.6),
    };
    println!("α in {alpha}");
    println!("  every solution for t > 0 lies in {}", global_extrema(alpha));
    println!("  maximum x(1) <= {}", p_ceiling(alpha, 2, 128));
    println!("  maximum x(1) >= {}", max_lower_bound(alpha));
    println!("  minimum <= {}", walther_min(alpha));
    println!("  a_20 = {}", a_seq(alpha, 20));
    let (q, qbar) = q_qbar_ranges(alpha, 20);
    println!("  q in {q}");
    println!("  q̄ in {qbar}");
}
