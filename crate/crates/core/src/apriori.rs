//! A priori estimates for SOPS of Wright's equation.
//!
//! Everything here is a rigorous enclosure of a classical bound, evaluated
//! with interval arithmetic over the whole parameter interval `I_α` at once.

use serde::{Deserialize, Serialize};

use crate::gridfn::{cell_pos, point_pos, GridFn};
use crate::interval::{add_down, add_up, Interval};

/// Recurrence depths for the maximum bound `p_i` and the minus-one bound `a_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AprioriParams {
    pub i0: u32,
    pub j0: u32,
}

impl Default for AprioriParams {
    fn default() -> Self {
        AprioriParams { i0: 2, j0: 20 }
    }
}

/// Enclosure of `x(t)` for all `t > 0` and any solution with `x(0) = 0`:
/// `[-α_max (e^{α_max} - 1), α_max]`.
pub fn global_extrema(alpha: Interval) -> Interval {
    assert!(alpha.inf() > 0.0, "alpha must be positive");
    let a = Interval::point(alpha.sup());
    let lower = a.mul(a.exp_m1()).neg();
    Interval::new(lower.inf(), alpha.sup())
}

/// Enclosure of the Jones bound `p_i` on the index range `[i_lo, i_hi]` of the
/// grid with resolution `n_time` (`i_hi <= n_time`, i.e. `t <= 1`).
///
/// `p_1(t) = α t` and `p_{k+1}(t) = -α ∫_0^t (e^{p_k(s-1)} - 1) ds`; every
/// level is integrated on the grid with interval Riemann sums, so the result
/// contains `p_i(t; α)` for every `α ∈ alpha` and every `t` in the range.
pub fn p_fn(alpha: Interval, i: u32, n_time: u32, i_lo: i64, i_hi: i64) -> GridFn {
    assert!(i >= 1, "p_i is defined for i >= 1");
    assert!(i_lo <= i_hi && i_hi <= n_time as i64, "p_i lives on (-inf, 1]");
    let n = n_time as i64;
    let (want_lo, want_hi) = (i_lo, i_hi);
    let (i_lo, i_hi) = (i_lo.min(0), i_hi.max(0));
    let base_lo = i_lo - (i as i64 - 1) * n;

    let mut p = GridFn::from_fn(n_time, base_lo, i_hi, Interval::ENTIRE, |pos| {
        let k = pos.div_euclid(2);
        let t = if pos.rem_euclid(2) == 0 {
            Interval::ratio(k as f64, n_time as f64)
        } else {
            Interval::ratio(k as f64, n_time as f64)
                .hull(Interval::ratio((k + 1) as f64, n_time as f64))
        };
        alpha.mul(t)
    });

    let dt = Interval::ratio(1.0, n_time as f64);
    let dt_span = Interval::new(0.0, dt.sup());
    for _ in 1..i {
        let lo = p.i_lo() + n;
        // g(s) = e^{p(s-1)} - 1 on the closed cell j
        let g = |j: i64| p.closed_cell(j - n).exp_m1();
        let mut integral = vec![Interval::ZERO; (2 * (i_hi - lo) + 1) as usize];
        let at = |k: i64| (k - point_pos(lo)) as usize;
        // forward from 0
        let mut acc = Interval::ZERO;
        for m in 0..i_hi {
            let gm = g(m);
            integral[at(cell_pos(m))] = acc.add(dt_span.mul(gm));
            acc = acc.add(dt.mul(gm));
            integral[at(point_pos(m + 1))] = acc;
        }
        // backward from 0
        let mut acc = Interval::ZERO;
        for m in (lo..0).rev() {
            let gm = g(m);
            integral[at(cell_pos(m))] = acc.sub(dt_span.mul(gm));
            acc = acc.sub(dt.mul(gm));
            integral[at(point_pos(m))] = acc;
        }
        let neg_alpha = alpha.neg();
        p = GridFn::from_fn(n_time, lo, i_hi, Interval::ENTIRE, |pos| {
            neg_alpha.mul(integral[at(pos)])
        });
    }
    p.resized(want_lo, want_hi, |_| Interval::ENTIRE)
}

/// Enclosure of `sup p_i(1)` over `α ∈ alpha`: the ceiling on every SOPS for `t >= 0`.
pub fn p_ceiling(alpha: Interval, i: u32, n_time: u32) -> f64 {
    let n = n_time as i64;
    p_fn(alpha, i, n_time, n, n).point(n).sup()
}

/// `a_1 = -(α - 1)`, `a_{i+1} = α (e^{a_i} - 1)`, evaluated over `alpha`.
pub fn a_seq(alpha: Interval, j: u32) -> Interval {
    assert!(j >= 1, "a_j is defined for j >= 1");
    let mut a = Interval::ONE.sub(alpha);
    for _ in 1..j {
        a = alpha.mul(a.exp_m1());
    }
    a
}

/// Lower bound on the first zero gap `q`, shared by both seeds.
pub fn q_min_bound(alpha: Interval) -> f64 {
    let beta = alpha.add(alpha.neg().exp()).sub(Interval::ONE);
    let inner = beta
        .div(beta.exp_m1())
        .and_then(|r| r.div(alpha))
        .unwrap_or(Interval::ZERO);
    let lo = Interval::ONE.add(inner).inf();
    lo.max(1.0)
}

/// Ranges for the two zero gaps `(I_q, I_q̄)` valid for every SOPS at `α ∈ alpha`.
pub fn q_qbar_ranges(alpha: Interval, j0: u32) -> (Interval, Interval) {
    let q_lo = q_min_bound(alpha);
    let q_hi = if alpha.inf() >= 2.0 {
        2.0
    } else {
        add_up(2.0, Interval::ratio(1.0, alpha.inf()).sup())
    };
    let qbar_lo = add_down(1.0, Interval::ratio(1.0, alpha.sup()).inf());
    let a = a_seq(alpha, j0);
    let qbar_hi = match alpha.exp_m1().div(a.exp_m1()) {
        Ok(r) => Interval::point(2.0).add(r.abs()).sup().max(3.0),
        Err(_) => f64::INFINITY,
    };
    (Interval::new(q_lo, q_hi), Interval::new(qbar_lo, qbar_hi))
}

/// Upper bound on `-log(α_min / (π/2))`.
///
/// Every SOPS at `α >= π/2` has `min x <= -log(α / (π/2))`; a region whose
/// lower bound at the minimum exceeds this value holds no SOPS. Rounding the
/// threshold up keeps that test sound.
pub fn walther_min(alpha: Interval) -> f64 {
    let ratio = Interval::point(alpha.inf())
        .div(Interval::HALF_PI)
        .expect("pi/2 enclosure is positive");
    match ratio.log() {
        Ok(l) => l.neg().sup(),
        Err(_) => f64::INFINITY,
    }
}

/// Lower bound on the maximum `x(1)` of any SOPS:
/// `inf_α log(1 + α^{-1} log(α / (π/2)))`, clamped below at zero.
pub fn max_lower_bound(alpha: Interval) -> f64 {
    let v = alpha
        .div(Interval::HALF_PI)
        .and_then(|r| r.log())
        .and_then(|l| l.div(alpha))
        .and_then(|x| Interval::ONE.add(x).log());
    match v {
        Ok(m) => m.inf().max(0.0),
        Err(_) => 0.0,
    }
}

/// The integral terms of the period bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeriodBoundTerms {
    pub u_plus: f64,
    pub l_plus: f64,
    pub u_minus_1: f64,
    pub l_minus_1: f64,
    pub m: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodBound {
    pub terms: PeriodBoundTerms,
    /// `-inf` when the lower denominator is not bounded away from zero.
    pub qbar_lo: f64,
    /// `None` when `sup f(-1) >= 0` and the upper bound degenerates.
    pub qbar_hi: Option<f64>,
}

/// Bounds on `q̄` for every SOPS with `q̄ >= 2`, `q ∈ i_q`, enclosed by `f`.
///
/// `f` must enclose the solution on `[q_min - 1, q_max + 1]` and at `t = -1`.
pub fn period_bound(f: &GridFn, i_q: Interval) -> PeriodBound {
    let n = f.n_time() as i64;
    let pos_part = f.map(|x| x.exp_m1().max_elt(Interval::ZERO));
    let neg_part = f.map(|x| Interval::ONE.sub(x.exp()).max_elt(Interval::ZERO));
    let plus = pos_part.sliding_riemann(-n, n, i_q);
    let minus = neg_part.sliding_riemann(0, n, i_q);
    let m = f.inf_over(add_down(i_q.inf(), 1.0), add_up(i_q.sup(), 1.0));
    let u_m1 = f.point(-n).sup();
    let terms = PeriodBoundTerms {
        u_plus: plus.sup(),
        l_plus: plus.inf(),
        u_minus_1: minus.sup(),
        l_minus_1: minus.inf(),
        m,
    };

    let two = Interval::point(2.0);
    // m >= 0 means the enclosure already excludes every SOPS; stay neutral
    let qbar_lo = if m >= 0.0 {
        f64::NEG_INFINITY
    } else {
        Interval::point(m)
        .exp_m1()
        .abs()
        .pipe(|den| Interval::point(terms.l_plus).sub(Interval::point(terms.u_minus_1)).div(den))
        .map(|r| two.add(r).inf())
        .unwrap_or(f64::NEG_INFINITY)
    };
    let qbar_hi = if u_m1 >= 0.0 {
        None
    } else {
        Interval::point(u_m1)
            .exp_m1()
            .abs()
            .pipe(|den| Interval::point(terms.u_plus).sub(Interval::point(terms.l_minus_1)).div(den))
            .ok()
            .map(|r| two.add(r).sup())
    };
    PeriodBound {
        terms,
        qbar_lo,
        qbar_hi,
    }
}

trait Pipe: Sized {
    fn pipe<R>(self, f: impl FnOnce(Self) -> R) -> R {
        f(self)
    }
}
impl Pipe for Interval {}
