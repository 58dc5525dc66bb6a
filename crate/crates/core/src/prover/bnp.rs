use std::time::Instant;

use thiserror::Error;

use crate::interval::Interval;
use crate::prune::{prune, EmptyReason, Pruned};
use crate::region::Region;
use crate::seed::seed_pair;

use super::config::ProofConfig;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum ResourceLimit {
    #[error("worklist pushes exceeded {0}")]
    Pushes(u64),
    #[error("wall-clock budget of {0} s exceeded")]
    WallClock(f64),
}

/// What happened to one popped region.
#[derive(Debug)]
pub enum Step<'a> {
    Discarded {
        before: &'a Region,
        reason: EmptyReason,
    },
    Terminal {
        before: &'a Region,
        after: &'a Region,
    },
    Split {
        before: &'a Region,
        after: &'a Region,
    },
}

/// Branch and prune with a no-op observer.
pub fn branch_and_prune(alpha: Interval, cfg: &ProofConfig) -> Result<Vec<Region>, ResourceLimit> {
    branch_and_prune_observed(alpha, cfg, |_| {})
}

/// Depth-first branch and prune starting from the seed pair.
///
/// `observe` sees every popped region and what the contractor did with it.
pub fn branch_and_prune_observed(
    alpha: Interval,
    cfg: &ProofConfig,
    mut observe: impl FnMut(Step<'_>),
) -> Result<Vec<Region>, ResourceLimit> {
    let start = Instant::now();
    let mut work = seed_pair(alpha, cfg.apriori(), cfg.n_time, cfg.n_period);
    work.reverse();
    let mut pushes = work.len() as u64;
    let mut done = Vec::new();
    while let Some(r) = work.pop() {
        if cfg.wall_budget_seconds > 0.0 && start.elapsed().as_secs_f64() > cfg.wall_budget_seconds {
            return Err(ResourceLimit::WallClock(cfg.wall_budget_seconds));
        }
        match prune(r.clone(), cfg.n_prune) {
            Pruned::Empty(reason) => observe(Step::Discarded { before: &r, reason }),
            Pruned::Kept(k) => {
                if k.is_terminal(cfg.eps1, cfg.eps2) || k.diameter() == 0.0 {
                    observe(Step::Terminal {
                        before: &r,
                        after: &k,
                    });
                    done.push(k);
                } else {
                    observe(Step::Split {
                        before: &r,
                        after: &k,
                    });
                    let (a, b) = k.subdivide();
                    pushes += 2;
                    if pushes > cfg.max_pushes {
                        return Err(ResourceLimit::Pushes(cfg.max_pushes));
                    }
                    work.push(b);
                    work.push(a);
                }
            }
        }
    }
    Ok(done)
}
