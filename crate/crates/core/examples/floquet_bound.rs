//! Bound the Floquet multipliers over the terminal regions of a proof run.
//!
//! `cargo run --release --example floquet_bound -- 1.90 1.91 1`

use wright_sops::floquet::floquet_trace;
use wright_sops::{branch_and_prune, floquet_bound, Interval, ProofConfig};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let lo: f64 = args.first().map_or(1.90, |s| s.parse().expect("alpha_lo"));
    let hi: f64 = args.get(1).map_or(1.91, |s| s.parse().expect("alpha_hi"));
    let row: u32 = args.get(2).map_or(1, |s| s.parse().expect("row"));
    let cfg = ProofConfig::table_row(row).with_range(lo, hi);
    let regions = branch_and_prune(Interval::new(lo, hi), &cfg).expect("within limits");

    let Some(first) = regions.first() else {
        println!("no terminal regions");
        return;
    };
    println!("first region: q {} q̄ {} M {}", first.i_q, first.i_qbar, first.i_m);
    for (k, s) in floquet_trace(first, cfg.n_floquet, cfg.m_floquet).iter().enumerate() {
        println!("  pass {k}: Λ = {:.4}", s.lambda_max);
    }

    let worst = regions
        .iter()
        .map(|r| floquet_bound(r, cfg.n_floquet, cfg.m_floquet))
        .max_by(|a, b| a.lambda_max.total_cmp(&b.lambda_max))
        .expect("nonempty");
    println!(
        "{} regions; worst Λ = {:.4} ({})",
        regions.len(),
        worst.lambda_max,
        worst.kind.as_str()
    );
}
