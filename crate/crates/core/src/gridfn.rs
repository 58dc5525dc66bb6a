//! Piecewise-constant interval-valued functions on the uniform grid `i / n_time`.
//!
//! A [`GridFn`] stores one interval for every grid point `t = i/n` and one for
//! every open cell `(i/n, (i+1)/n)` between `i_lo` and `i_hi`. Both kinds of
//! value live in a single vector addressed by *position*: position `2i` is the
//! point `i/n` and position `2i + 1` is the cell to its right. Positions
//! outside the stored range evaluate to the `ambient` interval.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::interval::{add_down, add_up, mul_down, mul_up, scaled_floor, Interval};

/// An intersection came out empty at `position`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("bounding functions crossed at grid position {position}")]
pub struct Infeasible {
    pub position: i64,
}

#[derive(Debug, Error)]
pub enum GridParseError {
    #[error("missing or malformed header line")]
    Header,
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
}

/// Position of the grid point `i / n`.
#[inline]
pub const fn point_pos(i: i64) -> i64 {
    2 * i
}

/// Position of the open cell `(i/n, (i+1)/n)`.
#[inline]
pub const fn cell_pos(i: i64) -> i64 {
    2 * i + 1
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridFn {
    n_time: u32,
    i_lo: i64,
    i_hi: i64,
    vals: Vec<Interval>,
    ambient: Interval,
}

impl GridFn {
    /// The function equal to `value` on `[i_lo/n, i_hi/n]` and `ambient` elsewhere.
    pub fn constant(n_time: u32, i_lo: i64, i_hi: i64, value: Interval, ambient: Interval) -> Self {
        assert!(n_time > 0, "n_time must be positive");
        assert!(i_lo <= i_hi, "empty index range");
        let len = (2 * (i_hi - i_lo) + 1) as usize;
        GridFn {
            n_time,
            i_lo,
            i_hi,
            vals: vec![value; len],
            ambient,
        }
    }

    /// Build from explicit point values (`i_lo..=i_hi`) and cell values (`i_lo..i_hi`).
    pub fn from_parts(
        n_time: u32,
        i_lo: i64,
        points: &[Interval],
        cells: &[Interval],
        ambient: Interval,
    ) -> Self {
        assert!(!points.is_empty() && cells.len() + 1 == points.len());
        let i_hi = i_lo + cells.len() as i64;
        let mut vals = Vec::with_capacity(points.len() + cells.len());
        for (k, p) in points.iter().enumerate() {
            vals.push(*p);
            if let Some(c) = cells.get(k) {
                vals.push(*c);
            }
        }
        GridFn {
            n_time,
            i_lo,
            i_hi,
            vals,
            ambient,
        }
    }

    /// Build by evaluating `f` at every stored position.
    pub fn from_fn(
        n_time: u32,
        i_lo: i64,
        i_hi: i64,
        ambient: Interval,
        mut f: impl FnMut(i64) -> Interval,
    ) -> Self {
        assert!(n_time > 0 && i_lo <= i_hi);
        let vals = (point_pos(i_lo)..=point_pos(i_hi)).map(&mut f).collect();
        GridFn {
            n_time,
            i_lo,
            i_hi,
            vals,
            ambient,
        }
    }

    #[inline]
    pub fn n_time(&self) -> u32 {
        self.n_time
    }

    #[inline]
    pub fn i_lo(&self) -> i64 {
        self.i_lo
    }

    #[inline]
    pub fn i_hi(&self) -> i64 {
        self.i_hi
    }

    #[inline]
    pub fn ambient(&self) -> Interval {
        self.ambient
    }

    pub fn with_ambient(mut self, ambient: Interval) -> Self {
        self.ambient = ambient;
        self
    }

    /// First and last stored position.
    #[inline]
    pub fn pos_range(&self) -> (i64, i64) {
        (point_pos(self.i_lo), point_pos(self.i_hi))
    }

    /// Grid step as an enclosure of `1 / n_time`.
    pub fn step(&self) -> Interval {
        Interval::ratio(1.0, self.n_time as f64)
    }

    /// Enclosure of the time `i / n_time`.
    pub fn time_of(&self, i: i64) -> Interval {
        Interval::ratio(i as f64, self.n_time as f64)
    }

    /// Enclosure of all times covered by position `p` (closure of a cell).
    pub fn support(&self, p: i64) -> Interval {
        let i = p.div_euclid(2);
        if p.rem_euclid(2) == 0 {
            self.time_of(i)
        } else {
            self.time_of(i).hull(self.time_of(i + 1))
        }
    }

    #[inline]
    fn in_domain(&self, p: i64) -> bool {
        let (a, b) = self.pos_range();
        a <= p && p <= b
    }

    #[inline]
    fn idx(&self, p: i64) -> usize {
        (p - point_pos(self.i_lo)) as usize
    }

    /// Value at a position, `ambient` outside the stored range.
    #[inline]
    pub fn at(&self, p: i64) -> Interval {
        if self.in_domain(p) {
            self.vals[self.idx(p)]
        } else {
            self.ambient
        }
    }

    #[inline]
    pub fn point(&self, i: i64) -> Interval {
        self.at(point_pos(i))
    }

    #[inline]
    pub fn cell(&self, i: i64) -> Interval {
        self.at(cell_pos(i))
    }

    /// Overwrite a stored value; positions outside the domain are ignored.
    #[inline]
    pub fn set(&mut self, p: i64, v: Interval) {
        if self.in_domain(p) {
            let k = self.idx(p);
            self.vals[k] = v;
        }
    }

    /// Intersect a stored value with `v`; positions outside the domain are ignored.
    #[inline]
    pub fn refine_at(&mut self, p: i64, v: Interval) -> Result<(), Infeasible> {
        if self.in_domain(p) {
            let k = self.idx(p);
            self.vals[k] = self.vals[k]
                .intersect(v)
                .map_err(|_| Infeasible { position: p })?;
        }
        Ok(())
    }

    /// All stored values in position order.
    pub fn values(&self) -> &[Interval] {
        &self.vals
    }

    /// Positions whose support meets the closed real window `[a, b]`.
    ///
    /// A point `i` is included when `a <= i/n <= b`, a cell `i` when
    /// `a - 1/n < i/n < b`.
    pub fn window(&self, a: f64, b: f64) -> (i64, i64) {
        let n = self.n_time as f64;
        let (fa, ia) = scaled_floor(a, n);
        let (fb, ib) = scaled_floor(b, n);
        let first = if ia { point_pos(fa) } else { cell_pos(fa) };
        let last = if ib { point_pos(fb) } else { cell_pos(fb) };
        (first, last)
    }

    /// Positions whose whole support lies inside the closed window `[a, b]`.
    /// May be empty (`first > last`).
    pub fn inner_window(&self, a: f64, b: f64) -> (i64, i64) {
        let n = self.n_time as f64;
        let (fa, ia) = scaled_floor(a, n);
        let (fb, _) = scaled_floor(b, n);
        let first = if ia { point_pos(fa) } else { point_pos(fa + 1) };
        (first, point_pos(fb))
    }

    /// Hull of the values at positions `first..=last`, including `ambient`
    /// when the range leaves the stored domain.
    pub fn hull_positions(&self, first: i64, last: i64) -> Interval {
        let (a, b) = self.pos_range();
        let lo = first.max(a);
        let hi = last.min(b);
        let mut acc: Option<Interval> = None;
        if first < a || last > b {
            acc = Some(self.ambient);
        }
        if lo <= hi {
            let s = &self.vals[self.idx(lo)..=self.idx(hi)];
            let mut l = f64::INFINITY;
            let mut h = f64::NEG_INFINITY;
            for v in s {
                l = l.min(v.inf());
                h = h.max(v.sup());
            }
            let v = Interval::new(l, h);
            acc = Some(acc.map_or(v, |x| x.hull(v)));
        }
        acc.unwrap_or(self.ambient)
    }

    /// Hull of the function over a set of times.
    pub fn eval(&self, t: Interval) -> Interval {
        let (a, b) = self.window(t.inf(), t.sup());
        self.hull_positions(a, b)
    }

    pub fn sup_over(&self, a: f64, b: f64) -> f64 {
        self.eval(Interval::new(a, b)).sup()
    }

    pub fn inf_over(&self, a: f64, b: f64) -> f64 {
        self.eval(Interval::new(a, b)).inf()
    }

    /// Closed hull over the cell `i` and both of its bounding points.
    #[inline]
    pub fn closed_cell(&self, i: i64) -> Interval {
        self.hull_positions(point_pos(i), point_pos(i + 1))
    }

    /// Apply `f` to every stored value and to the ambient value.
    pub fn map(&self, mut f: impl FnMut(Interval) -> Interval) -> GridFn {
        GridFn {
            n_time: self.n_time,
            i_lo: self.i_lo,
            i_hi: self.i_hi,
            vals: self.vals.iter().map(|v| f(*v)).collect(),
            ambient: f(self.ambient),
        }
    }

    /// Pointwise intersection. Both functions must share the grid and domain.
    pub fn refine_pointwise(&self, other: &GridFn) -> Result<GridFn, Infeasible> {
        assert_eq!(self.n_time, other.n_time, "grid resolution mismatch");
        assert_eq!(
            (self.i_lo, self.i_hi),
            (other.i_lo, other.i_hi),
            "domain mismatch"
        );
        let base = point_pos(self.i_lo);
        let vals = self
            .vals
            .iter()
            .zip(&other.vals)
            .enumerate()
            .map(|(k, (a, b))| {
                a.intersect(*b).map_err(|_| Infeasible {
                    position: base + k as i64,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let ambient = self.ambient.intersect(other.ambient).unwrap_or(self.ambient);
        Ok(GridFn {
            n_time: self.n_time,
            i_lo: self.i_lo,
            i_hi: self.i_hi,
            vals,
            ambient,
        })
    }

    /// `G(t) ⊇ hull { f(t + L) : L ∈ shift }` on the same domain.
    pub fn shift_hull(&self, shift: Interval) -> GridFn {
        assert!(shift.is_finite(), "shift must be finite");
        let n = self.n_time as f64;
        let (fl_lo, int_lo) = scaled_floor(shift.inf(), n);
        let (fl_hi, int_hi) = scaled_floor(shift.sup(), n);
        let window_of = |p: i64| -> (i64, i64) {
            if p.rem_euclid(2) == 0 {
                let s = if int_lo { 2 * fl_lo } else { 2 * fl_lo + 1 };
                let e = if int_hi { 2 * fl_hi } else { 2 * fl_hi + 1 };
                (p + s, p + e)
            } else {
                (p + 2 * fl_lo, p + 2 * fl_hi)
            }
        };

        let (d_lo, d_hi) = self.pos_range();
        let mut out = Vec::with_capacity(self.vals.len());
        // Both window ends are nondecreasing in p: monotone deques give O(len).
        let mut min_q: VecDeque<i64> = VecDeque::new();
        let mut max_q: VecDeque<i64> = VecDeque::new();
        let mut next = d_lo; // next position to push
        for p in d_lo..=d_hi {
            let (ws, we) = window_of(p);
            let push_to = we.min(d_hi);
            while next <= push_to {
                let v = self.vals[self.idx(next)];
                while min_q
                    .back()
                    .is_some_and(|&q| self.vals[self.idx(q)].inf() >= v.inf())
                {
                    min_q.pop_back();
                }
                min_q.push_back(next);
                while max_q
                    .back()
                    .is_some_and(|&q| self.vals[self.idx(q)].sup() <= v.sup())
                {
                    max_q.pop_back();
                }
                max_q.push_back(next);
                next += 1;
            }
            while min_q.front().is_some_and(|&q| q < ws) {
                min_q.pop_front();
            }
            while max_q.front().is_some_and(|&q| q < ws) {
                max_q.pop_front();
            }
            let inside = match (min_q.front(), max_q.front()) {
                (Some(&a), Some(&b)) if ws <= we => Some(Interval::new(
                    self.vals[self.idx(a)].inf(),
                    self.vals[self.idx(b)].sup(),
                )),
                _ => None,
            };
            let leaves = ws < d_lo || we > d_hi;
            let v = match (inside, leaves) {
                (Some(v), true) => v.hull(self.ambient),
                (Some(v), false) => v,
                (None, _) => self.ambient,
            };
            out.push(v);
        }
        GridFn {
            n_time: self.n_time,
            i_lo: self.i_lo,
            i_hi: self.i_hi,
            vals: out,
            ambient: self.ambient,
        }
    }

    /// Upper Riemann sum of step `1/n` over `[i_a/n, i_b/n]`, each cell taken
    /// as the hull of its open value and both bounding points.
    pub fn riemann_upper(&self, i_a: i64, i_b: i64) -> f64 {
        assert!(i_a <= i_b);
        let dt = self.step().sup();
        let mut acc = 0.0;
        for j in i_a..i_b {
            acc = add_up(acc, mul_up(dt, self.closed_cell(j).sup()));
        }
        acc
    }

    /// Lower Riemann sum, the mirror of [`GridFn::riemann_upper`].
    pub fn riemann_lower(&self, i_a: i64, i_b: i64) -> f64 {
        assert!(i_a <= i_b);
        let dt = self.step().inf();
        let mut acc = 0.0;
        for j in i_a..i_b {
            acc = add_down(acc, mul_down(dt, self.closed_cell(j).inf()));
        }
        acc
    }

    /// Bounds `[inf_q, sup_q]` of `∫_{q + off/n}^{q + (off+len)/n} f` over all
    /// `q ∈ q_range`, for any measurable selection of `f`.
    ///
    /// When `q` sits inside an open cell the window cuts two partial cells
    /// whose lengths add up to one step; their contribution is bounded by one
    /// step times the extreme of the two.
    pub fn sliding_riemann(&self, off: i64, len: i64, q_range: Interval) -> Interval {
        assert!(len >= 1);
        let dt = self.step();
        let (p0, p1) = self.window(q_range.inf(), q_range.sup());
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for p in p0..=p1 {
            let k = p.div_euclid(2);
            let (first, last, edge) = if p.rem_euclid(2) == 0 {
                (k + off, k + off + len - 1, None)
            } else {
                (
                    k + off + 1,
                    k + off + len - 1,
                    Some((k + off, k + off + len)),
                )
            };
            let mut s_lo = 0.0;
            let mut s_hi = 0.0;
            for j in first..=last {
                let c = self.closed_cell(j);
                s_lo = add_down(s_lo, mul_down(dt.inf(), c.inf()).min(mul_down(dt.sup(), c.inf())));
                s_hi = add_up(s_hi, mul_up(dt.sup(), c.sup()).max(mul_up(dt.inf(), c.sup())));
            }
            if let Some((l, r)) = edge {
                let cl = self.closed_cell(l);
                let cr = self.closed_cell(r);
                let m_lo = cl.inf().min(cr.inf());
                let m_hi = cl.sup().max(cr.sup());
                s_lo = add_down(s_lo, mul_down(dt.inf(), m_lo).min(mul_down(dt.sup(), m_lo)));
                s_hi = add_up(s_hi, mul_up(dt.sup(), m_hi).max(mul_up(dt.inf(), m_hi)));
            }
            lo = lo.min(s_lo);
            hi = hi.max(s_hi);
        }
        Interval::new(lo, hi)
    }

    /// Copy onto a new index range. Positions that were not stored before take
    /// the value produced by `fill`.
    pub fn resized(&self, i_lo: i64, i_hi: i64, mut fill: impl FnMut(i64) -> Interval) -> GridFn {
        GridFn::from_fn(self.n_time, i_lo, i_hi, self.ambient, |p| {
            if self.in_domain(p) {
                self.at(p)
            } else {
                fill(p)
            }
        })
    }

    /// `true` when every value stored in `self` lies inside `other` at the same position.
    pub fn subset_of(&self, other: &GridFn) -> bool {
        let (a, b) = self.pos_range();
        (a..=b).all(|p| self.at(p).subset_of(other.at(p)))
    }

    /// Line-oriented dump: a header `n_time i_lo i_hi ambient_lo ambient_hi`,
    /// then one line `i point_lo point_hi cell_lo cell_hi` per grid index (the
    /// last index has no cell and writes `- -`).
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "# {} {} {} {:?} {:?}",
            self.n_time,
            self.i_lo,
            self.i_hi,
            self.ambient.inf(),
            self.ambient.sup()
        );
        for i in self.i_lo..=self.i_hi {
            let p = self.point(i);
            if i < self.i_hi {
                let c = self.cell(i);
                let _ = writeln!(
                    s,
                    "{} {:?} {:?} {:?} {:?}",
                    i,
                    p.inf(),
                    p.sup(),
                    c.inf(),
                    c.sup()
                );
            } else {
                let _ = writeln!(s, "{} {:?} {:?} - -", i, p.inf(), p.sup());
            }
        }
        s
    }
}

impl FromStr for GridFn {
    type Err = GridParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s.lines().enumerate();
        let (_, header) = lines.next().ok_or(GridParseError::Header)?;
        let h: Vec<&str> = header
            .strip_prefix('#')
            .ok_or(GridParseError::Header)?
            .split_whitespace()
            .collect();
        if h.len() != 5 {
            return Err(GridParseError::Header);
        }
        let n_time: u32 = h[0].parse().map_err(|_| GridParseError::Header)?;
        let i_lo: i64 = h[1].parse().map_err(|_| GridParseError::Header)?;
        let i_hi: i64 = h[2].parse().map_err(|_| GridParseError::Header)?;
        let amb_lo: f64 = h[3].parse().map_err(|_| GridParseError::Header)?;
        let amb_hi: f64 = h[4].parse().map_err(|_| GridParseError::Header)?;
        let ambient = Interval::try_new(amb_lo, amb_hi).map_err(|_| GridParseError::Header)?;
        if n_time == 0 || i_lo > i_hi {
            return Err(GridParseError::Header);
        }

        let mut points = Vec::new();
        let mut cells = Vec::new();
        for (ln, line) in lines {
            let err = |msg: &str| GridParseError::Line {
                line: ln + 1,
                msg: msg.to_string(),
            };
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.is_empty() {
                continue;
            }
            if f.len() != 5 {
                return Err(err("expected 5 fields"));
            }
            let i: i64 = f[0].parse().map_err(|_| err("bad index"))?;
            if i != i_lo + points.len() as i64 {
                return Err(err("indices must be consecutive"));
            }
            let num = |x: &str| x.parse::<f64>().map_err(|_| err("bad number"));
            points.push(
                Interval::try_new(num(f[1])?, num(f[2])?).map_err(|_| err("bad point interval"))?,
            );
            if f[3] == "-" {
                if i != i_hi {
                    return Err(err("only the last index may omit its cell"));
                }
            } else {
                cells.push(
                    Interval::try_new(num(f[3])?, num(f[4])?)
                        .map_err(|_| err("bad cell interval"))?,
                );
            }
        }
        if points.len() as i64 != i_hi - i_lo + 1 || cells.len() + 1 != points.len() {
            return Err(GridParseError::Line {
                line: 0,
                msg: "index range does not match header".into(),
            });
        }
        Ok(GridFn::from_parts(n_time, i_lo, &points, &cells, ambient))
    }
}
