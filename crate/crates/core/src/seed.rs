//! The two initial boxes: `K₁` for SOPS with `q̄ <= 3` and `K₂` for `q̄ >= 3`.
//! Together they hold the κ-image of every SOPS at every `α ∈ I_α`.

use crate::apriori::{
    a_seq, global_extrema, max_lower_bound, p_ceiling, p_fn, period_bound, q_min_bound,
    q_qbar_ranges,
};
use crate::gridfn::{point_pos, GridFn};
use crate::interval::{add_up, Interval};
use crate::prune::{step1_sign, step2_integrate, step3_zero_and_max, step4_periodicity};
use crate::region::Region;

pub use crate::apriori::AprioriParams;

/// Stored index range covering every time the contractor and the multiplier
/// bound look at for a box with these gaps.
pub fn domain_for(i_q: Interval, i_qbar: Interval, n_time: u32) -> (i64, i64) {
    let n = n_time as i64;
    let l_max = add_up(i_q.sup(), i_qbar.sup()).ceil() as i64;
    let q_max = i_q.sup().ceil() as i64;
    (-(l_max + 2) * n, (l_max + q_max + 2) * n)
}

/// Bound valid for every SOPS at every time: Wright's extrema capped by `p_{i0}(1)`.
fn ambient_bound(alpha: Interval, ceiling: f64) -> Interval {
    let g = global_extrema(alpha);
    Interval::new(g.inf(), g.sup().min(ceiling))
}

/// `K₁`, holding every SOPS with `q̄ <= 3`.
pub fn seed_short(alpha: Interval, p: AprioriParams, n_time: u32) -> Region {
    let (i_q, _) = q_qbar_ranges(alpha, p.j0);
    let i_qbar = Interval::new(
        Interval::ONE.add(Interval::ONE.div(Interval::point(alpha.sup())).unwrap()).inf(),
        3.0,
    );
    let ceiling = p_ceiling(alpha, p.i0, n_time);
    let i_m = Interval::new(max_lower_bound(alpha).min(ceiling), ceiling);
    let amb = ambient_bound(alpha, ceiling);
    let (lo, hi) = domain_for(i_q, i_qbar, n_time);
    let enclosure = GridFn::constant(n_time, lo, hi, amb, amb);
    Region::new(i_q, i_qbar, i_m, alpha, enclosure).expect("seed gaps exceed 1")
}

/// Initial bounding functions for the long seed on `[lo, hi]`, or `None`
/// when they already cross.
fn long_enclosure(
    alpha: Interval,
    p: AprioriParams,
    n_time: u32,
    lo: i64,
    hi: i64,
) -> Option<GridFn> {
    let n = n_time as i64;
    let ceiling = p_ceiling(alpha, p.i0, n_time);
    let amb = ambient_bound(alpha, ceiling);
    let a = a_seq(alpha, p.j0);
    let p_neg = p_fn(alpha, p.i0, n_time, lo.min(0), 0);
    let mut crossed = false;
    let f = GridFn::from_fn(n_time, lo, hi, amb, |pos| {
        if pos == 0 {
            return Interval::ZERO;
        }
        if pos > 0 {
            return amb;
        }
        let lower = p_neg.at(pos).inf().max(amb.inf());
        let upper = if pos >= point_pos(-n) {
            // u(t) = -t a_{j0} on [-1, 0); sup over the closed support
            let k = pos.div_euclid(2);
            let t = if pos.rem_euclid(2) == 0 {
                Interval::ratio(k as f64, n_time as f64)
            } else {
                Interval::ratio(k as f64, n_time as f64)
                    .hull(Interval::ratio((k + 1) as f64, n_time as f64))
            };
            t.neg().mul(a).sup().min(amb.sup())
        } else {
            amb.sup()
        };
        Interval::try_new(lower, upper).unwrap_or_else(|_| {
            crossed = true;
            amb
        })
    });
    (!crossed).then_some(f)
}

const MAX_SEED_ROUNDS: usize = 32;

/// Intersect `I_q̄` with the period bound, or `None` once it falls below 3.
fn narrow_qbar(r: &mut Region) -> Option<()> {
    let pb = period_bound(&r.enclosure, r.i_q);
    let qbar_hi = pb.qbar_hi.unwrap_or(f64::INFINITY);
    if qbar_hi < 3.0 {
        return None;
    }
    let refined = Interval::try_new(pb.qbar_lo.max(3.0), qbar_hi).ok()?;
    r.i_qbar = r.i_qbar.intersect(refined).ok()?;
    Some(())
}

/// `K₂`, holding every SOPS with `q̄ >= 3`, or `None` when the period bound
/// rules such solutions out.
pub fn seed_long(alpha: Interval, p: AprioriParams, n_time: u32, n_period: u32) -> Option<Region> {
    let n = n_time as i64;
    let q_lo = q_min_bound(alpha);
    let q_hi = add_up(2.0, Interval::ONE.div(Interval::point(alpha.inf())).unwrap().sup());
    let i_q = Interval::new(q_lo, q_hi);
    let (_, coarse) = q_qbar_ranges(alpha, p.j0);
    let i_qbar = Interval::new(3.0, coarse.sup().max(3.0));
    let ceiling = p_ceiling(alpha, p.i0, n_time);
    let i_m = Interval::new(0.0, ceiling);

    // The coarse q̄ range can be huge; work on a short window first.
    let (lo, hi) = (-6 * n, 9 * n);
    let enclosure = long_enclosure(alpha, p, n_time, lo, hi)?;
    let mut r = Region::new(i_q, i_qbar, i_m, alpha, enclosure).ok()?;

    step1_sign(&mut r).ok()?;
    for _ in 0..n_period {
        step2_integrate(&mut r, Some((-4 * n, 4 * n))).ok()?;
    }
    step3_zero_and_max(&mut r).ok()?;
    narrow_qbar(&mut r)?;

    // One pass leaves q̄ loose when I_α is wide. Every step below keeps every
    // SOPS with q̄ >= 3, so repeat them with periodicity until q̄ settles.
    for _ in 0..MAX_SEED_ROUNDS {
        let before = r.i_qbar;
        step1_sign(&mut r).ok()?;
        for _ in 0..n_period {
            step2_integrate(&mut r, None).ok()?;
        }
        step3_zero_and_max(&mut r).ok()?;
        step4_periodicity(&mut r).ok()?;
        narrow_qbar(&mut r)?;
        if r.i_qbar == before {
            break;
        }
    }

    let (lo2, hi2) = domain_for(r.i_q, r.i_qbar, n_time);
    if (lo2, hi2) != (lo, hi) {
        let fresh = long_enclosure(alpha, p, n_time, lo2.min(lo), hi2.max(hi))?;
        let grown = r
            .enclosure
            .resized(lo2, hi2, |pos| fresh.at(pos));
        r.enclosure = grown;
    }
    Some(r)
}

/// `[K₁]` or `[K₁, K₂]`.
pub fn seed_pair(alpha: Interval, p: AprioriParams, n_time: u32, n_period: u32) -> Vec<Region> {
    let mut out = vec![seed_short(alpha, p, n_time)];
    out.extend(seed_long(alpha, p, n_time, n_period));
    out
}
