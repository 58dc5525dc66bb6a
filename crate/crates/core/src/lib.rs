//! Computer-assisted uniqueness proofs for slowly oscillating periodic
//! solutions (SOPS) of Wright's equation in exponential form,
//!
//! ```text
//! x'(t) = -α (e^{x(t-1)} - 1),
//! ```
//!
//! over intervals of the parameter `α`.
//!
//! Every SOPS, translated so that `x(0) = 0` and `x'(0) > 0`, is summarized by
//! its reduction `κ(x) = (q, q̄, x(1))`: the gap to the next zero, the gap to
//! the zero after that, and the maximum. The crate encloses the κ-images of
//! all SOPS at all `α ∈ I_α` in a finite union of boxes, each carrying a
//! rigorous enclosure `ℓ ≤ x ≤ u` of the corresponding solutions, and then
//! bounds the Floquet multipliers of every solution inside each box. If all
//! boxes certify asymptotic stability, the SOPS is unique for every `α ∈ I_α`.
//!
//! Module map:
//!
//! * [`interval`]: outward-rounded interval arithmetic.
//! * [`gridfn`]: piecewise-constant interval functions on a uniform grid.
//! * [`apriori`]: classical estimates that seed the search.
//! * [`region`]: boxes in κ-space with their enclosures.
//! * [`prune`]: the six-step contractor.
//! * [`seed`]: the two initial boxes (short and long second gap).
//! * [`floquet`]: the multiplier bound.
//! * [`prover`]: branch and prune, verdicts, sweeps, certificates, and a
//!   non-rigorous simulator used as a test oracle.
//! * [`cli`]: the batch front end behind the `wright` binary.

// `!(x >= 0.0)` style checks are there to reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod apriori;
pub mod cli;
pub mod floquet;
pub mod gridfn;
pub mod interval;
pub mod prover;
pub mod prune;
pub mod region;
pub mod seed;

pub use floquet::{floquet_bound, FloquetOutcome, OutcomeKind};
pub use gridfn::{GridFn, Infeasible};
pub use interval::{Interval, IntervalError};
pub use prover::{
    branch_and_prune, prove_interval, simulate_sops, sweep, ProofCertificate, ProofConfig,
};
pub use prune::{prune, Pruned};
pub use region::Region;
pub use seed::{seed_long, seed_pair, seed_short, AprioriParams};
