use std::collections::BTreeMap;
use std::io::{self, BufRead, Write};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::floquet::{floquet_bound, FloquetOutcome, OutcomeKind};
use crate::interval::Interval;
use crate::region::Region;

use super::bnp::branch_and_prune;
use super::config::ProofConfig;

/// One terminal region and its multiplier bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionRecord {
    pub i_q: Interval,
    pub i_qbar: Interval,
    pub i_m: Interval,
    pub outcome: OutcomeKind,
    /// `None` when the bound is infinite.
    pub lambda_max: Option<f64>,
    pub outer_iterations: u32,
}

impl RegionRecord {
    fn new(r: &Region, f: &FloquetOutcome) -> Self {
        RegionRecord {
            i_q: r.i_q,
            i_qbar: r.i_qbar,
            i_m: r.i_m,
            outcome: f.kind,
            lambda_max: f.lambda_max.is_finite().then_some(f.lambda_max),
            outer_iterations: f.outer_iterations,
        }
    }
}

/// Machine-checkable record of one proof attempt over `[alpha_lo, alpha_hi]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProofCertificate {
    pub alpha_lo: f64,
    pub alpha_hi: f64,
    /// `Some(true)`: unique SOPS for every α in range. `None`: resource limit hit.
    pub verdict: Option<bool>,
    pub region_count: usize,
    /// Largest `Λ_max` over all regions; `None` if any bound is infinite or there are no regions.
    pub lambda_max_worst: Option<f64>,
    pub outcome_histogram: BTreeMap<OutcomeKind, usize>,
    pub wall_seconds: f64,
    pub config_hash: String,
    /// Set when the run stopped early or produced a suspicious result.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub regions: Vec<RegionRecord>,
}

impl ProofCertificate {
    pub fn alpha(&self) -> Interval {
        Interval::new(self.alpha_lo, self.alpha_hi)
    }

    /// Copy with the timing zeroed, for comparing runs.
    pub fn without_timing(&self) -> ProofCertificate {
        ProofCertificate {
            wall_seconds: 0.0,
            ..self.clone()
        }
    }

    /// Outcome that best summarizes the run: the weakest one present.
    pub fn worst_outcome(&self) -> Option<OutcomeKind> {
        self.outcome_histogram.keys().next_back().copied()
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }
}

/// Run branch and prune, then bound the multipliers of every terminal region.
pub fn prove_interval(alpha: Interval, cfg: &ProofConfig) -> ProofCertificate {
    let start = Instant::now();
    let mut cert = ProofCertificate {
        alpha_lo: alpha.inf(),
        alpha_hi: alpha.sup(),
        verdict: None,
        region_count: 0,
        lambda_max_worst: None,
        outcome_histogram: BTreeMap::new(),
        wall_seconds: 0.0,
        config_hash: cfg.hash(),
        note: None,
        regions: Vec::new(),
    };
    let regions = match branch_and_prune(alpha, cfg) {
        Ok(r) => r,
        Err(limit) => {
            cert.note = Some(limit.to_string());
            cert.wall_seconds = start.elapsed().as_secs_f64();
            return cert;
        }
    };
    let outcomes: Vec<FloquetOutcome> = regions
        .par_iter()
        .map(|r| floquet_bound(r, cfg.n_floquet, cfg.m_floquet))
        .collect();

    cert.region_count = regions.len();
    cert.regions = regions
        .iter()
        .zip(&outcomes)
        .map(|(r, f)| RegionRecord::new(r, f))
        .collect();
    for f in &outcomes {
        *cert.outcome_histogram.entry(f.kind).or_insert(0) += 1;
    }
    cert.lambda_max_worst = outcomes
        .iter()
        .map(|f| f.lambda_max)
        .try_fold(f64::NEG_INFINITY, |acc, l| l.is_finite().then(|| acc.max(l)))
        .filter(|w| w.is_finite());
    cert.verdict = Some(outcomes.iter().all(|f| f.kind.is_stable()));
    if regions.is_empty() {
        cert.note = Some("no terminal regions: every SOPS was excluded, which contradicts known existence".into());
    }
    cert.wall_seconds = start.elapsed().as_secs_f64();
    cert
}

/// Closed subintervals of width `delta` covering `[lo, hi]`; neighbours share endpoints.
pub fn partition(lo: f64, hi: f64, delta: f64) -> Vec<Interval> {
    assert!(lo <= hi && delta > 0.0);
    let count = ((hi - lo) / delta).round().max(1.0) as usize;
    // endpoints on a decimal lattice so 2.1 + 0.1 lands on the literal 2.2
    const SCALE: f64 = 1e9;
    let ends: Vec<f64> = (0..=count)
        .map(|k| {
            if k == 0 {
                lo
            } else if k == count {
                hi
            } else {
                ((lo * SCALE).round() + (k as f64 * delta * SCALE).round()) / SCALE
            }
        })
        .collect();
    ends.windows(2).map(|w| Interval::new(w[0], w[1])).collect()
}

/// Prove every subinterval of the configured range, in parallel.
pub fn sweep(cfg: &ProofConfig) -> Vec<ProofCertificate> {
    partition(cfg.alpha_lo, cfg.alpha_hi, cfg.delta_alpha)
        .par_iter()
        .map(|a| prove_interval(*a, cfg))
        .collect()
}

/// `Some(true)` only when every certificate proves uniqueness; `None` if any hit a limit.
pub fn global_verdict(certs: &[ProofCertificate]) -> Option<bool> {
    let mut all = true;
    for c in certs {
        all &= c.verdict?;
    }
    Some(all)
}

pub fn write_certificates<W: Write>(out: &mut W, certs: &[ProofCertificate]) -> io::Result<()> {
    for c in certs {
        writeln!(out, "{}", c.to_json_line())?;
    }
    Ok(())
}

pub fn read_certificates<R: BufRead>(input: R) -> io::Result<Vec<ProofCertificate>> {
    let mut out = Vec::new();
    for line in input.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let c = serde_json::from_str(&line).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?;
        out.push(c);
    }
    Ok(out)
}
