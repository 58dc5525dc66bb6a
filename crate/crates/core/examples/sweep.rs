//! Prove a range of `α` in parallel and write JSON-lines certificates.
//!
//! `cargo run --release --example sweep -- 2.1 2.5 certs.jsonl`

use std::fs::File;
use std::io::BufWriter;

use wright_sops::prover::{global_verdict, write_certificates};
use wright_sops::{sweep, ProofConfig};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let lo: f64 = args.first().map_or(2.1, |s| s.parse().expect("alpha_lo"));
    let hi: f64 = args.get(1).map_or(2.5, |s| s.parse().expect("alpha_hi"));
    let out = args.get(2).map_or("certificates.jsonl", String::as_str);

    let row = if lo >= 2.1 { 3 } else if lo >= 1.96 { 2 } else { 1 };
    let cfg = ProofConfig::table_row(row).with_range(lo, hi);
    let certs = sweep(&cfg);
    for c in &certs {
        println!(
            "[{}, {}] verdict {:?}, {} regions, worst Λ {:?}",
            c.alpha_lo, c.alpha_hi, c.verdict, c.region_count, c.lambda_max_worst
        );
    }
    let mut w = BufWriter::new(File::create(out).expect("create output"));
    write_certificates(&mut w, &certs).expect("write certificates");
    println!("global verdict {:?}; written to {out}", global_verdict(&certs));
}
