//! Upper bounds on the nontrivial Floquet multipliers of every SOPS in a region.
//!
//! A multiplier `λ` with eigenfunction `h` gives a solution `y` of the
//! linearized equation `y'(t) = -α e^{x(t-1)} y(t-1)` with `y₀ = h`, and
//! `z(t) = -y(L) x'(t) / x'(L) + y(t)` satisfies `z(t + L) = λ h(t)` on
//! `[-1, 0]`. Bounding `|y|`, `|z|` and `|z_L|` on the grid bounds `|λ|`.
//! All three bound functions are stored as intervals `[0, B(t)]`; only the
//! upper endpoints matter.

use serde::{Deserialize, Serialize};

use crate::gridfn::{cell_pos, point_pos, GridFn};
use crate::interval::{add_down, add_up, mul_up, Interval};
use crate::region::Region;

/// How a region was certified, or why it was not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OutcomeKind {
    /// `Λ_max < 1` on the first pass: an explicit bound on every multiplier.
    BoundedStable,
    /// A refined pass reached `Λ_max < 1`, ruling out `|λ| >= 1`.
    StableByContradiction,
    Inconclusive,
}

impl OutcomeKind {
    pub fn is_stable(self) -> bool {
        !matches!(self, OutcomeKind::Inconclusive)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            OutcomeKind::BoundedStable => "BoundedStable",
            OutcomeKind::StableByContradiction => "StableByContradiction",
            OutcomeKind::Inconclusive => "Inconclusive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FloquetOutcome {
    pub kind: OutcomeKind,
    /// `+inf` when the bound degenerates.
    pub lambda_max: f64,
    /// Number of times the initial segment was refined.
    pub outer_iterations: u32,
}

/// `sup x(-1) >= 0`: the ratio `x'(t)/x'(L)` is unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegenerateDenominator;

#[derive(Debug, Clone)]
pub struct FloquetState {
    pub y_bound: GridFn,
    pub z_bound: GridFn,
    pub zl_bound: GridFn,
    pub lambda_max: f64,
}

const UNKNOWN: Interval = Interval::NONNEG;

fn upper(v: f64) -> Interval {
    Interval::new(0.0, v)
}

/// Per-cell weights `e^{sup x}` over the closed cell `j` of the enclosure.
fn exp_weights(enc: &GridFn) -> Vec<f64> {
    (enc.i_lo()..enc.i_hi())
        .map(|j| enc.closed_cell(j).exp().sup())
        .collect()
}

fn weight(enc: &GridFn, w: &[f64], j: i64) -> f64 {
    if j >= enc.i_lo() && j < enc.i_hi() {
        w[(j - enc.i_lo()) as usize]
    } else {
        enc.closed_cell(j).exp().sup()
    }
}

/// `Y = 1` on `[-1, 0)`, `Y(0) = 0`, unknown elsewhere, on the enclosure's domain.
pub fn init_y(enc: &GridFn) -> GridFn {
    let n = enc.n_time() as i64;
    GridFn::from_fn(enc.n_time(), enc.i_lo(), enc.i_hi(), UNKNOWN, |p| {
        if p == 0 {
            Interval::ZERO
        } else if (point_pos(-n)..0).contains(&p) {
            Interval::ONE.hull(Interval::ZERO)
        } else {
            UNKNOWN
        }
    })
}

fn alpha_max(r: &Region) -> Interval {
    Interval::point(r.alpha.sup())
}

/// Extend `Y` to `t >= 0` by the upper Riemann sum of `α_max Y(s-1) e^{sup x(s-1)}`.
pub fn extend_y(y: &GridFn, r: &Region) -> GridFn {
    let enc = &r.enclosure;
    let w = exp_weights(enc);
    extend_y_with(y, r, &w)
}

fn extend_y_with(y: &GridFn, r: &Region, w: &[f64]) -> GridFn {
    let enc = &r.enclosure;
    let n = enc.n_time() as i64;
    let a = alpha_max(r).sup();
    let dt = enc.step().sup();
    let mut out = y.clone();
    let mut acc = 0.0;
    out.set(0, Interval::ZERO);
    for k in 0..y.i_hi() {
        let j = k - n;
        let term = mul_up(a, mul_up(dt, mul_up(out.closed_cell(j).sup(), weight(enc, w, j))));
        acc = add_up(acc, term);
        // the integrand is nonnegative: the cell never exceeds its right end
        out.set(cell_pos(k), upper(acc));
        out.set(point_pos(k + 1), upper(acc));
    }
    out
}

/// `Z(t) = max_{L ∈ I_L} Y(L) · max |(e^{x(t-1)} - 1) / (e^{x(-1)} - 1)| + Y(t)`.
pub fn build_z(y: &GridFn, r: &Region) -> Result<GridFn, DegenerateDenominator> {
    let enc = &r.enclosure;
    let n = enc.n_time() as i64;
    let den = enc.point(-n).exp_m1();
    if den.sup() >= 0.0 {
        return Err(DegenerateDenominator);
    }
    let l = r.i_l();
    let y_max = y.sup_over(l.inf(), l.sup());
    Ok(GridFn::from_fn(y.n_time(), y.i_lo(), y.i_hi(), UNKNOWN, |p| {
        let yv = y.at(p);
        if yv.sup() == f64::INFINITY {
            return UNKNOWN;
        }
        let num = enc.at(p - 2 * n).exp_m1();
        let ratio = num.div(den).map(|q| q.abs().sup()).unwrap_or(f64::INFINITY);
        let scaled = if y_max == 0.0 { 0.0 } else { mul_up(y_max, ratio) };
        upper(add_up(scaled, yv.sup()))
    }))
}

/// `Z_L(t) = max_{L ∈ I_L} Z(t + L)`.
pub fn build_zl(z: &GridFn, r: &Region) -> GridFn {
    z.shift_hull(r.i_l()).map(|v| upper(v.sup()))
}

/// `m_floquet` passes of `Z_L(τ) <- min(Z_L(τ), α_max ∫_τ^0 Z_L(s-1) e^{sup x(s-1)} ds)`
/// for `τ ∈ [-(L_min - 1), 0]`.
pub fn refine_zl(zl: &GridFn, r: &Region, m_floquet: u32) -> GridFn {
    let w = exp_weights(&r.enclosure);
    refine_zl_with(zl, r, m_floquet, &w)
}

fn refine_zl_with(zl: &GridFn, r: &Region, m_floquet: u32, w: &[f64]) -> GridFn {
    let enc = &r.enclosure;
    let n = enc.n_time() as i64;
    let a = alpha_max(r).sup();
    let dt = enc.step().sup();
    let reach = add_down(add_down(r.i_q.inf(), r.i_qbar.inf()), -1.0);
    let (first, _) = zl.inner_window(-reach, 0.0);
    let k_min = first.div_euclid(2) + first.rem_euclid(2);
    let mut out = zl.clone();
    for _ in 0..m_floquet {
        let mut acc = 0.0;
        out.refine_at(0, Interval::ZERO).expect("bounds contain 0");
        for k in (k_min..0).rev() {
            let j = k - n;
            let term = mul_up(a, mul_up(dt, mul_up(out.closed_cell(j).sup(), weight(enc, w, j))));
            acc = add_up(acc, term);
            let cand = upper(acc);
            out.refine_at(cell_pos(k), cand).expect("bounds contain 0");
            out.refine_at(point_pos(k), cand).expect("bounds contain 0");
        }
    }
    out
}

fn lambda_of(zl: &GridFn) -> f64 {
    zl.sup_over(-1.0, 0.0)
}

/// One pass of steps 2 to 6 from the current initial segment.
fn one_pass(
    y0: &GridFn,
    r: &Region,
    m_floquet: u32,
    w: &[f64],
) -> Result<FloquetState, DegenerateDenominator> {
    let y = extend_y_with(y0, r, w);
    let z = build_z(&y, r)?;
    let zl = refine_zl_with(&build_zl(&z, r), r, m_floquet, w);
    let lambda_max = lambda_of(&zl);
    Ok(FloquetState {
        y_bound: y,
        z_bound: z,
        zl_bound: zl,
        lambda_max,
    })
}

/// Full multiplier bound with up to `n_floquet` refinements of the initial segment.
pub fn floquet_bound(r: &Region, n_floquet: u32, m_floquet: u32) -> FloquetOutcome {
    let enc = &r.enclosure;
    let n = enc.n_time() as i64;
    let w = exp_weights(enc);
    let mut y0 = init_y(enc);
    let mut last = f64::INFINITY;
    for pass in 0..=n_floquet {
        let st = match one_pass(&y0, r, m_floquet, &w) {
            Ok(st) => st,
            Err(DegenerateDenominator) => {
                return FloquetOutcome {
                    kind: OutcomeKind::Inconclusive,
                    lambda_max: f64::INFINITY,
                    outer_iterations: pass,
                }
            }
        };
        last = st.lambda_max;
        if last < 1.0 {
            let kind = if pass == 0 {
                OutcomeKind::BoundedStable
            } else {
                OutcomeKind::StableByContradiction
            };
            return FloquetOutcome {
                kind,
                lambda_max: last,
                outer_iterations: pass,
            };
        }
        if pass == n_floquet {
            break;
        }
        // Y <- min(1, Z_L) on [-1, 0]
        for p in point_pos(-n)..0 {
            let cap = st.zl_bound.at(p).sup().min(1.0);
            y0.set(p, upper(cap));
        }
    }
    FloquetOutcome {
        kind: OutcomeKind::Inconclusive,
        lambda_max: last,
        outer_iterations: n_floquet,
    }
}

/// All passes of the bound, for inspection.
pub fn floquet_trace(r: &Region, n_floquet: u32, m_floquet: u32) -> Vec<FloquetState> {
    let enc = &r.enclosure;
    let n = enc.n_time() as i64;
    let w = exp_weights(enc);
    let mut y0 = init_y(enc);
    let mut out = Vec::new();
    for _ in 0..=n_floquet {
        let Ok(st) = one_pass(&y0, r, m_floquet, &w) else {
            break;
        };
        for p in point_pos(-n)..0 {
            y0.set(p, upper(st.zl_bound.at(p).sup().min(1.0)));
        }
        let done = st.lambda_max < 1.0;
        out.push(st);
        if done {
            break;
        }
    }
    out
}
