//! Boxes `K = I_q × I_q̄ × I_M` in κ-space together with their bounding functions.

use thiserror::Error;

use crate::gridfn::GridFn;
use crate::interval::Interval;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RegionError {
    #[error("zero gap range {0} must lie strictly above 1")]
    GapTooShort(Interval),
}

/// A box in κ-space for parameters `alpha`, with `enclosure(t) ⊇ [ℓ(t), u(t)]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    pub i_q: Interval,
    pub i_qbar: Interval,
    pub i_m: Interval,
    pub alpha: Interval,
    pub enclosure: GridFn,
}

impl Region {
    /// Checks the slow-oscillation constraint and pins the enclosure to 0 at `t = 0`.
    pub fn new(
        i_q: Interval,
        i_qbar: Interval,
        i_m: Interval,
        alpha: Interval,
        mut enclosure: GridFn,
    ) -> Result<Self, RegionError> {
        for gap in [i_q, i_qbar] {
            if gap.inf() <= 1.0 {
                return Err(RegionError::GapTooShort(gap));
            }
        }
        enclosure.set(0, Interval::ZERO);
        Ok(Region {
            i_q,
            i_qbar,
            i_m,
            alpha,
            enclosure,
        })
    }

    /// Range of the period `L = q + q̄`.
    pub fn i_l(&self) -> Interval {
        self.i_q.add(self.i_qbar)
    }

    fn sides(&self) -> [Interval; 3] {
        [self.i_q, self.i_qbar, self.i_m]
    }

    /// Largest side width.
    pub fn diameter(&self) -> f64 {
        self.sides()
            .iter()
            .map(|s| s.width())
            .fold(0.0, f64::max)
    }

    /// Index of the widest side; ties go to the lowest index.
    pub fn widest_side(&self) -> usize {
        let s = self.sides();
        let mut best = 0;
        for k in 1..3 {
            if s[k].width() > s[best].width() {
                best = k;
            }
        }
        best
    }

    /// Bisect the widest side. Both halves keep the parent's enclosure.
    pub fn subdivide(&self) -> (Region, Region) {
        let k = self.widest_side();
        let side = self.sides()[k];
        assert!(side.width() > 0.0, "cannot bisect a point box");
        let mid = side.mid();
        let halves = [
            Interval::new(side.inf(), mid),
            Interval::new(mid, side.sup()),
        ];
        let make = |h: Interval| {
            let mut r = self.clone();
            match k {
                0 => r.i_q = h,
                1 => r.i_qbar = h,
                _ => r.i_m = h,
            }
            r
        };
        (make(halves[0]), make(halves[1]))
    }

    /// Small enough to stop branching: `eps1` applies to short second gaps
    /// (`sup q̄ < 3`), `eps2` to the rest.
    pub fn is_terminal(&self, eps1: f64, eps2: f64) -> bool {
        let d = self.diameter();
        if self.i_qbar.sup() < 3.0 {
            d < eps1
        } else {
            d < eps2
        }
    }

    /// `true` when `(q, qbar, m)` lies in the box.
    pub fn contains_kappa(&self, q: f64, qbar: f64, m: f64) -> bool {
        self.i_q.contains(q) && self.i_qbar.contains(qbar) && self.i_m.contains(m)
    }
}
