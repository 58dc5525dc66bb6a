//! Prove uniqueness over one `α` subinterval with one of the standard parameter rows
//! and print the certificate summary.
//!
//! `cargo run --release --example prove -- 5.9 6.0 3`

use std::time::Instant;

use wright_sops::prover::{branch_and_prune_observed, Step};
use wright_sops::{floquet_bound, Interval, ProofConfig};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let lo: f64 = args.first().map_or(5.9, |s| s.parse().expect("alpha_lo"));
    let hi: f64 = args.get(1).map_or(6.0, |s| s.parse().expect("alpha_hi"));
    let row: u32 = args.get(2).map_or(3, |s| s.parse().expect("row"));
    let cfg = ProofConfig::table_row(row).with_range(lo, hi);
    let alpha = Interval::new(lo, hi);

    let t = Instant::now();
    let (mut discarded, mut split) = (0u64, 0u64);
    let regions = branch_and_prune_observed(alpha, &cfg, |s| match s {
        Step::Discarded { .. } => discarded += 1,
        Step::Split { .. } => {
            split += 1;
            if split % 1000 == 0 {
                eprintln!("{split} splits, {discarded} discarded, {:.0} s", t.elapsed().as_secs_f64());
            }
        }
        Step::Terminal { .. } => {}
    })
    .expect("within resource limits");
    println!(
        "{alpha}: {} terminal regions, {split} splits, {discarded} discarded, {:.1} s",
        regions.len(),
        t.elapsed().as_secs_f64()
    );
    for r in &regions {
        let f = floquet_bound(r, cfg.n_floquet, cfg.m_floquet);
        println!(
            "  q {} qbar {} M {} -> {} (Λ {:.3e}, {} passes)",
            r.i_q,
            r.i_qbar,
            r.i_m,
            f.kind.as_str(),
            f.lambda_max,
            f.outer_iterations
        );
    }
    println!("total {:.1} s", t.elapsed().as_secs_f64());
}
