//! Closed intervals over the extended reals with outward-rounded arithmetic.
//!
//! Endpoints are binary64. Every operation returns an interval that contains
//! the exact image of its arguments: the endpoint produced by the hardware
//! (round-to-nearest) is compared against the exact result through an
//! error-free transformation and stepped to the adjacent float only when it
//! landed on the wrong side. Transcendentals have no such transformation, so
//! their endpoints are widened by a fixed number of units in the last place.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Units in the last place added on each side of `exp` and `log` endpoints.
///
/// The platform libm is accurate to well under one ulp for both functions;
/// the test suite checks the enclosure against independent high-precision
/// values.
pub const TRANSCENDENTAL_ULPS: u32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum IntervalError {
    #[error("interval endpoints are not ordered or are NaN")]
    InvalidBounds,
    #[error("denominator interval contains zero")]
    DivisionByZeroInterval,
    #[error("logarithm of an interval that is not strictly positive")]
    LogNonPositive,
    #[error("intervals do not intersect")]
    EmptyIntersection,
}

/// A closed interval `[lo, hi]` with `lo <= hi`.
///
/// `lo` may be `-inf` and `hi` may be `+inf`; the degenerate intervals
/// `[+inf, +inf]` and `[-inf, -inf]` are not representable.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl TryFrom<[f64; 2]> for Interval {
    type Error = IntervalError;

    fn try_from(v: [f64; 2]) -> Result<Self, Self::Error> {
        Interval::try_new(v[0], v[1])
    }
}

impl From<Interval> for [f64; 2] {
    fn from(x: Interval) -> Self {
        [x.lo, x.hi]
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}]", self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

// ---------------------------------------------------------------------------
// Directed-rounding primitives.

#[inline]
fn two_sum_err(a: f64, b: f64, s: f64) -> f64 {
    let bb = s - a;
    (a - (s - bb)) + (b - bb)
}

#[inline]
pub(crate) fn add_down(a: f64, b: f64) -> f64 {
    let s = a + b;
    if s.is_infinite() {
        if a.is_infinite() || b.is_infinite() || s < 0.0 {
            return s;
        }
        return f64::MAX;
    }
    if two_sum_err(a, b, s) < 0.0 {
        s.next_down()
    } else {
        s
    }
}

#[inline]
pub(crate) fn add_up(a: f64, b: f64) -> f64 {
    let s = a + b;
    if s.is_infinite() {
        if a.is_infinite() || b.is_infinite() || s > 0.0 {
            return s;
        }
        return f64::MIN;
    }
    if two_sum_err(a, b, s) > 0.0 {
        s.next_up()
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_down(a: f64, b: f64) -> f64 {
    add_down(a, -b)
}

#[inline]
pub(crate) fn sub_up(a: f64, b: f64) -> f64 {
    add_up(a, -b)
}

// Below this magnitude the fma residual may itself underflow, so the result is
// always stepped outward.
const TINY: f64 = 1e-290;

// Products with a zero factor are zero even against an infinite factor.
#[inline]
pub(crate) fn mul_down(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    if p.is_infinite() {
        if a.is_infinite() || b.is_infinite() || p < 0.0 {
            return p;
        }
        return f64::MAX;
    }
    if p == 0.0 {
        // underflow
        return if (a < 0.0) != (b < 0.0) { -f64::MIN_POSITIVE } else { 0.0 };
    }
    if p.abs() < TINY || a.mul_add(b, -p) < 0.0 {
        p.next_down()
    } else {
        p
    }
}

#[inline]
pub(crate) fn mul_up(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    if p.is_infinite() {
        if a.is_infinite() || b.is_infinite() || p > 0.0 {
            return p;
        }
        return f64::MIN;
    }
    if p == 0.0 {
        return if (a < 0.0) != (b < 0.0) { 0.0 } else { f64::MIN_POSITIVE };
    }
    if p.abs() < TINY || a.mul_add(b, -p) > 0.0 {
        p.next_up()
    } else {
        p
    }
}

// Quotient residual: sign(q*b - a) = sign(q - a/b) * sign(b).
#[inline]
fn div_residual_sign(a: f64, b: f64, q: f64) -> f64 {
    let r = q.mul_add(b, -a);
    if b > 0.0 {
        r
    } else {
        -r
    }
}

#[inline]
pub(crate) fn div_down(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    let q = a / b;
    if q.is_infinite() {
        if a.is_infinite() || q < 0.0 {
            return q;
        }
        return f64::MAX;
    }
    if b.is_infinite() {
        return if q < 0.0 || (q == 0.0 && (a < 0.0) != (b < 0.0)) {
            -f64::MIN_POSITIVE
        } else {
            0.0
        };
    }
    if q == 0.0 {
        return if (a < 0.0) != (b < 0.0) { -f64::MIN_POSITIVE } else { 0.0 };
    }
    if q.abs() < TINY || div_residual_sign(a, b, q) > 0.0 {
        q.next_down()
    } else {
        q
    }
}

#[inline]
pub(crate) fn div_up(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    let q = a / b;
    if q.is_infinite() {
        if a.is_infinite() || q > 0.0 {
            return q;
        }
        return f64::MIN;
    }
    if b.is_infinite() {
        return if q > 0.0 || (q == 0.0 && (a < 0.0) == (b < 0.0)) {
            f64::MIN_POSITIVE
        } else {
            0.0
        };
    }
    if q == 0.0 {
        return if (a < 0.0) != (b < 0.0) { 0.0 } else { f64::MIN_POSITIVE };
    }
    if q.abs() < TINY || div_residual_sign(a, b, q) < 0.0 {
        q.next_up()
    } else {
        q
    }
}

#[inline]
fn step_down(x: f64, ulps: u32) -> f64 {
    (0..ulps).fold(x, |v, _| v.next_down())
}

#[inline]
fn step_up(x: f64, ulps: u32) -> f64 {
    (0..ulps).fold(x, |v, _| v.next_up())
}

#[inline]
pub(crate) fn exp_down(x: f64) -> f64 {
    if x == 0.0 {
        return 1.0;
    }
    if x == f64::NEG_INFINITY {
        return 0.0;
    }
    if x == f64::INFINITY {
        return f64::MAX;
    }
    step_down(x.exp(), TRANSCENDENTAL_ULPS).max(0.0)
}

#[inline]
pub(crate) fn exp_up(x: f64) -> f64 {
    if x == 0.0 {
        return 1.0;
    }
    if x.is_infinite() {
        return x.exp();
    }
    let e = x.exp();
    if e.is_infinite() {
        return e;
    }
    step_up(e, TRANSCENDENTAL_ULPS).max(f64::MIN_POSITIVE)
}

#[inline]
fn log_down(x: f64) -> f64 {
    if x == 1.0 {
        return 0.0;
    }
    if x == f64::INFINITY {
        return f64::MAX;
    }
    step_down(x.ln(), TRANSCENDENTAL_ULPS)
}

#[inline]
fn log_up(x: f64) -> f64 {
    if x == 1.0 {
        return 0.0;
    }
    if x == f64::INFINITY {
        return x;
    }
    step_up(x.ln(), TRANSCENDENTAL_ULPS)
}

// ---------------------------------------------------------------------------

// named methods keep the rounding visible at call sites
#[allow(clippy::should_implement_trait)]
impl Interval {
    /// `[0, 0]`
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    /// `[1, 1]`
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };
    /// `[-inf, +inf]`
    pub const ENTIRE: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };
    /// `[-inf, 0]`
    pub const NONPOS: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: 0.0,
    };
    /// `[0, +inf]`
    pub const NONNEG: Interval = Interval {
        lo: 0.0,
        hi: f64::INFINITY,
    };
    /// Enclosure of pi/2. `FRAC_PI_2` rounds to nearest and sits just below the true value.
    pub const HALF_PI: Interval = Interval {
        lo: std::f64::consts::FRAC_PI_2,
        hi: 1.570_796_326_794_896_8,
    };

    /// Panics if the bounds are unordered or NaN; use [`Interval::try_new`] for untrusted input.
    #[inline]
    pub fn new(lo: f64, hi: f64) -> Self {
        match Self::try_new(lo, hi) {
            Ok(x) => x,
            Err(_) => panic!("invalid interval bounds [{lo}, {hi}]"),
        }
    }

    #[inline]
    pub fn try_new(lo: f64, hi: f64) -> Result<Self, IntervalError> {
        if lo.is_nan() || hi.is_nan() || lo > hi || lo == f64::INFINITY || hi == f64::NEG_INFINITY
        {
            return Err(IntervalError::InvalidBounds);
        }
        Ok(Interval { lo, hi })
    }

    #[inline]
    pub fn point(x: f64) -> Self {
        Self::new(x, x)
    }

    /// Smallest interval with float endpoints containing the real number
    /// `num / den` (both exactly representable).
    pub fn ratio(num: f64, den: f64) -> Self {
        Interval::new(div_down(num, den), div_up(num, den))
    }

    /// Widen by one float on each side. Used to turn a decimal literal that was
    /// rounded to nearest into an interval containing the decimal value.
    pub fn widen_ulp(self) -> Self {
        Interval::new(self.lo.next_down(), self.hi.next_up())
    }

    #[inline]
    pub fn inf(self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn sup(self) -> f64 {
        self.hi
    }

    /// Width rounded up.
    #[inline]
    pub fn width(self) -> f64 {
        sub_up(self.hi, self.lo)
    }

    /// Midpoint (not rounded in any particular direction).
    #[inline]
    pub fn mid(self) -> f64 {
        if self.lo.is_infinite() || self.hi.is_infinite() {
            if self.lo.is_infinite() && self.hi.is_infinite() {
                return 0.0;
            }
            return if self.lo.is_infinite() { self.hi } else { self.lo };
        }
        let m = 0.5 * self.lo + 0.5 * self.hi;
        m.clamp(self.lo, self.hi)
    }

    #[inline]
    pub fn is_point(self) -> bool {
        self.lo == self.hi
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    #[inline]
    pub fn contains(self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    #[inline]
    pub fn contains_zero(self) -> bool {
        self.contains(0.0)
    }

    /// `self ⊆ other`
    #[inline]
    pub fn subset_of(self, other: Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    #[inline]
    pub fn hull(self, other: Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    #[inline]
    pub fn intersect(self, other: Interval) -> Result<Interval, IntervalError> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        if lo > hi {
            Err(IntervalError::EmptyIntersection)
        } else {
            Ok(Interval { lo, hi })
        }
    }

    #[inline]
    pub fn add(self, y: Interval) -> Interval {
        Interval {
            lo: add_down(self.lo, y.lo),
            hi: add_up(self.hi, y.hi),
        }
    }

    #[inline]
    pub fn sub(self, y: Interval) -> Interval {
        Interval {
            lo: sub_down(self.lo, y.hi),
            hi: sub_up(self.hi, y.lo),
        }
    }

    #[inline]
    pub fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }

    pub fn mul(self, y: Interval) -> Interval {
        let (a, b, c, d) = (self.lo, self.hi, y.lo, y.hi);
        // Sign-case split keeps the common nonnegative cases to two products.
        if a >= 0.0 && c >= 0.0 {
            return Interval {
                lo: mul_down(a, c),
                hi: mul_up(b, d),
            };
        }
        if b <= 0.0 && d <= 0.0 {
            return Interval {
                lo: mul_down(b, d),
                hi: mul_up(a, c),
            };
        }
        let lo = mul_down(a, c)
            .min(mul_down(a, d))
            .min(mul_down(b, c))
            .min(mul_down(b, d));
        let hi = mul_up(a, c)
            .max(mul_up(a, d))
            .max(mul_up(b, c))
            .max(mul_up(b, d));
        Interval { lo, hi }
    }

    pub fn div(self, y: Interval) -> Result<Interval, IntervalError> {
        if y.contains_zero() {
            return Err(IntervalError::DivisionByZeroInterval);
        }
        let (a, b, c, d) = (self.lo, self.hi, y.lo, y.hi);
        let lo = div_down(a, c)
            .min(div_down(a, d))
            .min(div_down(b, c))
            .min(div_down(b, d));
        let hi = div_up(a, c)
            .max(div_up(a, d))
            .max(div_up(b, c))
            .max(div_up(b, d));
        Ok(Interval { lo, hi })
    }

    /// Multiply by an exactly representable real constant.
    #[inline]
    pub fn scale(self, c: f64) -> Interval {
        if c >= 0.0 {
            Interval {
                lo: mul_down(self.lo, c),
                hi: mul_up(self.hi, c),
            }
        } else {
            Interval {
                lo: mul_down(self.hi, c),
                hi: mul_up(self.lo, c),
            }
        }
    }

    #[inline]
    pub fn exp(self) -> Interval {
        Interval {
            lo: exp_down(self.lo),
            hi: exp_up(self.hi),
        }
    }

    /// `exp(x) - 1`, the nonlinearity of Wright's equation in exponential form.
    #[inline]
    pub fn exp_m1(self) -> Interval {
        self.exp().sub(Interval::ONE)
    }

    pub fn log(self) -> Result<Interval, IntervalError> {
        if self.lo <= 0.0 {
            return Err(IntervalError::LogNonPositive);
        }
        Ok(Interval {
            lo: log_down(self.lo),
            hi: log_up(self.hi),
        })
    }

    pub fn abs(self) -> Interval {
        if self.lo >= 0.0 {
            self
        } else if self.hi <= 0.0 {
            self.neg()
        } else {
            Interval {
                lo: 0.0,
                hi: (-self.lo).max(self.hi),
            }
        }
    }

    /// Image of `(u, v) -> min(u, v)`.
    #[inline]
    pub fn min_elt(self, y: Interval) -> Interval {
        Interval {
            lo: self.lo.min(y.lo),
            hi: self.hi.min(y.hi),
        }
    }

    /// Image of `(u, v) -> max(u, v)`.
    #[inline]
    pub fn max_elt(self, y: Interval) -> Interval {
        Interval {
            lo: self.lo.max(y.lo),
            hi: self.hi.max(y.hi),
        }
    }

    /// Enclosure of `1 / self`.
    pub fn recip(self) -> Result<Interval, IntervalError> {
        Interval::ONE.div(self)
    }
}

impl Add for Interval {
    type Output = Interval;
    #[inline]
    fn add(self, rhs: Interval) -> Interval {
        Interval::add(self, rhs)
    }
}

impl Sub for Interval {
    type Output = Interval;
    #[inline]
    fn sub(self, rhs: Interval) -> Interval {
        Interval::sub(self, rhs)
    }
}

impl Mul for Interval {
    type Output = Interval;
    #[inline]
    fn mul(self, rhs: Interval) -> Interval {
        Interval::mul(self, rhs)
    }
}

impl Neg for Interval {
    type Output = Interval;
    #[inline]
    fn neg(self) -> Interval {
        Interval::neg(self)
    }
}

impl From<f64> for Interval {
    fn from(x: f64) -> Self {
        Interval::point(x)
    }
}

/// Split `x * n` into its floor and whether the exact product is an integer.
///
/// Exact in all cases where `x * n` does not overflow: the rounding error of the
/// product is recovered with a fused multiply-add.
pub(crate) fn scaled_floor(x: f64, n: f64) -> (i64, bool) {
    let p = x * n;
    let r = x.mul_add(n, -p);
    let f = p.floor();
    if r == 0.0 {
        (f as i64, f == p)
    } else if r < 0.0 && f == p {
        (f as i64 - 1, false)
    } else {
        (f as i64, false)
    }
}
