//! Branch and prune, verdicts, sweeps, certificates, and the simulation oracle.

mod bnp;
mod certificate;
mod config;
mod simulate;

pub use bnp::{branch_and_prune, branch_and_prune_observed, ResourceLimit, Step};
pub use certificate::{
    global_verdict, partition, prove_interval, read_certificates, sweep, write_certificates,
    ProofCertificate, RegionRecord,
};
pub use config::{ConfigError, ProofConfig};
pub use simulate::{simulate_sops, SimError, SimulatedSops};
