//! The six-step contractor on a region and its bounding functions.
//!
//! Every step only intersects, so the output region and enclosure always sit
//! inside the input. A step that produces an empty intersection proves the
//! region holds no SOPS.

use std::fmt;

use crate::apriori::walther_min;
use crate::gridfn::{cell_pos, point_pos, Infeasible};
use crate::interval::{add_down, add_up, Interval};
use crate::region::Region;

/// Why a region was discarded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmptyReason {
    /// Lower and upper bound crossed at a grid position.
    Crossed(i64),
    /// No sign change is possible inside `I_q`.
    NoZero,
    /// The value at `t = 1` misses `I_M`.
    MaxOutOfRange,
    /// The solution cannot dip below the Walther threshold.
    Walther,
}

impl fmt::Display for EmptyReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmptyReason::Crossed(p) => write!(f, "bounds crossed at position {p}"),
            EmptyReason::NoZero => f.write_str("no admissible first zero"),
            EmptyReason::MaxOutOfRange => f.write_str("maximum outside I_M"),
            EmptyReason::Walther => f.write_str("minimum above Walther bound"),
        }
    }
}

impl From<Infeasible> for EmptyReason {
    fn from(e: Infeasible) -> Self {
        EmptyReason::Crossed(e.position)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Pruned {
    Kept(Region),
    Empty(EmptyReason),
}

impl Pruned {
    pub fn is_empty(&self) -> bool {
        matches!(self, Pruned::Empty(_))
    }

    pub fn region(self) -> Option<Region> {
        match self {
            Pruned::Kept(r) => Some(r),
            Pruned::Empty(_) => None,
        }
    }
}

fn clamp_window(r: &mut Region, a: f64, b: f64, to: Interval) -> Result<(), EmptyReason> {
    if !(a <= b) {
        return Ok(());
    }
    let (first, last) = r.enclosure.inner_window(a, b);
    for p in first..=last {
        r.enclosure.refine_at(p, to)?;
    }
    Ok(())
}

/// Sign pattern of a SOPS and its translates, plus `x(1) ∈ I_M`.
pub fn step1_sign(r: &mut Region) -> Result<(), EmptyReason> {
    let (q, qb) = (r.i_q, r.i_qbar);
    let l_min = add_down(q.inf(), qb.inf());
    let l_max = add_up(q.sup(), qb.sup());
    clamp_window(r, -qb.inf(), 0.0, Interval::NONPOS)?;
    clamp_window(r, q.sup(), l_min, Interval::NONPOS)?;
    clamp_window(r, -l_min, -qb.sup(), Interval::NONNEG)?;
    clamp_window(r, 0.0, q.inf(), Interval::NONNEG)?;
    clamp_window(r, l_max, add_down(l_min, q.inf()), Interval::NONNEG)?;
    let one = point_pos(r.enclosure.n_time() as i64);
    r.enclosure
        .refine_at(one, r.i_m)
        .map_err(|_| EmptyReason::MaxOutOfRange)
}

/// Variation of parameters over one grid step, forward then backward.
///
/// `window` is the index range of base points `t_0 = k/n`; `None` means the
/// whole stored domain.
pub fn step2_integrate(r: &mut Region, window: Option<(i64, i64)>) -> Result<(), EmptyReason> {
    let f = &mut r.enclosure;
    let n = f.n_time() as i64;
    let (lo, hi) = window.unwrap_or((f.i_lo(), f.i_hi()));
    let lo = lo.max(f.i_lo());
    let hi = hi.min(f.i_hi());
    let dt = f.step();
    let span = Interval::new(0.0, dt.sup());
    let neg_alpha = r.alpha.neg();
    // x' on the closed cell j + 1 is bounded through x on the closed cell j + 1 - n
    let field = |g: &crate::gridfn::GridFn, j: i64| neg_alpha.mul(g.closed_cell(j - n).exp_m1());

    for k in lo..hi {
        let v = field(f, k);
        let x0 = f.point(k);
        f.refine_at(cell_pos(k), x0.add(span.mul(v)))?;
        f.refine_at(point_pos(k + 1), x0.add(dt.mul(v)))?;
    }
    for k in ((lo + 1)..=hi).rev() {
        let v = field(f, k - 1);
        let x0 = f.point(k);
        f.refine_at(cell_pos(k - 1), x0.sub(span.mul(v)))?;
        f.refine_at(point_pos(k - 1), x0.sub(dt.mul(v)))?;
    }
    Ok(())
}

/// Narrow `I_q` to where a sign change is possible and `I_M` to the value at 1.
pub fn step3_zero_and_max(r: &mut Region) -> Result<(), EmptyReason> {
    let f = &r.enclosure;
    let (q_lo, q_hi) = (r.i_q.inf(), r.i_q.sup());
    let (first, last) = f.window(q_lo, q_hi);
    let left_edge = |p: i64| f.time_of(p.div_euclid(2)).inf();
    let right_edge = |p: i64| {
        let i = p.div_euclid(2);
        if p.rem_euclid(2) == 0 {
            f.time_of(i).sup()
        } else {
            f.time_of(i + 1).sup()
        }
    };
    let new_lo = (first..=last).find(|&p| f.at(p).inf() <= 0.0);
    let new_hi = (first..=last).rev().find(|&p| f.at(p).sup() >= 0.0);
    let (Some(a), Some(b)) = (new_lo, new_hi) else {
        return Err(EmptyReason::NoZero);
    };
    let lo = q_lo.max(left_edge(a));
    let hi = q_hi.min(right_edge(b));
    r.i_q = Interval::try_new(lo, hi).map_err(|_| EmptyReason::NoZero)?;
    let at_one = f.point(f.n_time() as i64);
    r.i_m = r
        .i_m
        .intersect(at_one)
        .map_err(|_| EmptyReason::MaxOutOfRange)?;
    Ok(())
}

/// `x(t) = x(t + L)` for some `L ∈ I_L`.
pub fn step4_periodicity(r: &mut Region) -> Result<(), EmptyReason> {
    let shifted = r.enclosure.shift_hull(r.i_l());
    r.enclosure = r.enclosure.refine_pointwise(&shifted)?;
    Ok(())
}

/// `true` when some stored value is empty. Intersections in this crate fail
/// eagerly, so a region that reached this point is never empty; kept as a
/// guard for enclosures built by hand.
pub fn step5_infeasible(r: &Region) -> bool {
    r.enclosure.values().iter().any(|v| !(v.inf() <= v.sup()))
}

/// `true` when the lower bound at the minimum stays above the Walther threshold.
pub fn step6_walther(r: &Region) -> bool {
    let a = add_down(r.i_q.inf(), 1.0);
    let b = add_up(r.i_q.sup(), 1.0);
    r.enclosure.inf_over(a, b) > walther_min(r.alpha)
}

/// One full pass of steps 1 through 6.
pub fn prune_once(r: &mut Region) -> Result<(), EmptyReason> {
    step1_sign(r)?;
    step2_integrate(r, None)?;
    step3_zero_and_max(r)?;
    step4_periodicity(r)?;
    if step5_infeasible(r) {
        return Err(EmptyReason::Crossed(0));
    }
    if step6_walther(r) {
        return Err(EmptyReason::Walther);
    }
    Ok(())
}

/// `n_iter` passes of the contractor, stopping early on an empty region.
pub fn prune(mut r: Region, n_iter: u32) -> Pruned {
    assert!(n_iter >= 1, "at least one pass");
    for _ in 0..n_iter {
        if let Err(e) = prune_once(&mut r) {
            return Pruned::Empty(e);
        }
    }
    Pruned::Kept(r)
}
