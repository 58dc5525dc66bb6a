//! Plain floating-point simulation of Wright's equation, used as a test oracle.
//! Nothing here is rigorous and nothing in the proof path calls it.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("alpha must be positive and finite")]
    BadAlpha,
    #[error("step must divide the delay into at least 4 pieces")]
    BadStep,
    #[error("no periodic orbit detected before t = {0}")]
    NonConvergence(f64),
}

/// A simulated SOPS translated so that `x(0) = 0` and `x'(0) > 0`.
#[derive(Debug, Clone)]
pub struct SimulatedSops {
    pub alpha: f64,
    pub q: f64,
    pub qbar: f64,
    /// `x(1)`, the maximum.
    pub max: f64,
    /// `x(q + 1)`, the minimum.
    pub min: f64,
    h: f64,
    /// Raw samples at spacing `h`; translated time 0 sits at `origin` on this grid.
    xs: Vec<f64>,
    origin: f64,
}

impl SimulatedSops {
    pub fn period(&self) -> f64 {
        self.q + self.qbar
    }

    /// `x(t)` for any real `t`, using periodicity.
    pub fn eval(&self, t: f64) -> f64 {
        let p = self.period();
        let s = t.rem_euclid(p);
        interp(&self.xs, self.h, self.origin + s)
    }

    /// Range of `x` over `[a, b]`, sampled at spacing `h / 4` plus both ends.
    pub fn range_over(&self, a: f64, b: f64) -> (f64, f64) {
        let mut lo = self.eval(a).min(self.eval(b));
        let mut hi = self.eval(a).max(self.eval(b));
        let step = self.h / 4.0;
        let mut t = a;
        while t < b {
            let v = self.eval(t);
            lo = lo.min(v);
            hi = hi.max(v);
            t += step;
        }
        (lo, hi)
    }

    /// `(t, x(t))` over one period starting at the upward zero.
    pub fn trajectory(&self) -> Vec<(f64, f64)> {
        let p = self.period();
        let steps = (p / self.h).ceil() as usize;
        (0..=steps)
            .map(|k| {
                let t = (k as f64 * self.h).min(p);
                (t, self.eval(t))
            })
            .collect()
    }
}

/// Cubic Lagrange interpolation on a uniform grid starting at 0.
fn interp(xs: &[f64], h: f64, t: f64) -> f64 {
    let u = t / h;
    let k = (u.floor() as isize).clamp(1, xs.len() as isize - 3) as usize;
    let s = u - k as f64;
    let (a, b, c, d) = (xs[k - 1], xs[k], xs[k + 1], xs[k + 2]);
    // nodes at s = -1, 0, 1, 2
    -a * s * (s - 1.0) * (s - 2.0) / 6.0 + b * (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0
        - c * (s + 1.0) * s * (s - 2.0) / 2.0
        + d * (s + 1.0) * s * (s - 1.0) / 6.0
}

/// Zero of the interpolant in `[t0, t1]` by bisection, given a sign change.
fn zero_between(xs: &[f64], h: f64, mut t0: f64, mut t1: f64) -> f64 {
    let f0 = interp(xs, h, t0);
    for _ in 0..80 {
        let m = 0.5 * (t0 + t1);
        let fm = interp(xs, h, m);
        if (fm > 0.0) == (f0 > 0.0) {
            t0 = m;
        } else {
            t1 = m;
        }
    }
    0.5 * (t0 + t1)
}

/// Run `x'(t) = -α (e^{x(t-1)} - 1)` from `x ≡ 0.5` on `[-1, 0]` until the
/// zero pattern repeats to within `1e-6`, then return the attracting SOPS.
///
/// `step` is the time step; it should divide 1.
pub fn simulate_sops(alpha: f64, horizon: f64, step: f64) -> Result<SimulatedSops, SimError> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(SimError::BadAlpha);
    }
    let per = (1.0 / step).round();
    if !(per >= 4.0) || !(horizon > 0.0) {
        return Err(SimError::BadStep);
    }
    let n = per as usize;
    let h = 1.0 / per;
    let total = (horizon * per).ceil() as usize + n;

    // index k holds time (k - n) h; history occupies 0..=n
    let mut xs = vec![0.5; n + 1];
    xs.reserve(total);
    let g = |x: f64| -alpha * x.exp_m1();
    let mut ups: Vec<f64> = Vec::new();
    let mut downs: Vec<f64> = Vec::new();
    let tol = 1e-6;

    let mut k = n;
    while k < total {
        // integrate g(x(s - 1)) over [t_k, t_{k+1}]; delayed samples k-n-1 .. k-n+2
        let j = k - n;
        let gm = g(xs[j.saturating_sub(1)]);
        let g0 = g(xs[j]);
        let g1 = g(xs[j + 1]);
        let g2 = g(xs[j + 2]);
        let next = xs[k] + h * (-gm + 13.0 * g0 + 13.0 * g1 - g2) / 24.0;
        xs.push(next);

        let (a, b) = (xs[k], xs[k + 1]);
        if k > n + 2 && a.signum() != b.signum() && b != 0.0 {
            let z = zero_between(&xs, h, k as f64 * h, (k + 1) as f64 * h) - n as f64 * h;
            if b > 0.0 {
                ups.push(z);
            } else {
                downs.push(z);
            }
            if b > 0.0 && ups.len() >= 4 {
                let u = &ups[ups.len() - 4..];
                let p1 = u[2] - u[1];
                let p2 = u[3] - u[2];
                let prev_down = downs.iter().rev().find(|&&d| d < u[3] && d > u[2]);
                let prev_down2 = downs.iter().rev().find(|&&d| d < u[2] && d > u[1]);
                if let (Some(&d2), Some(&d1)) = (prev_down, prev_down2) {
                    let q2 = d2 - u[2];
                    let q1 = d1 - u[1];
                    let peak = |a: f64, b: f64| {
                        let (i, j) = (((a / h) as usize) + n, ((b / h) as usize) + n);
                        xs[i..=j.min(xs.len() - 1)].iter().cloned().fold(f64::MIN, f64::max)
                    };
                    let (m1, m2) = (peak(u[1], u[2]), peak(u[2], u[3]));
                    // a decaying oscillation keeps its period, so the amplitude must settle too
                    let settled = m2 > 1e-3 && (m1 - m2).abs() < tol;
                    if settled && (p1 - p2).abs() < tol && (q1 - q2).abs() < tol && q2 > 1.0 && p2 - q2 > 1.0 {
                        // keep integrating one more period so the stored window covers
                        // [z - 1, z + period + 2]
                        let origin_t = u[2];
                        return finish(alpha, h, n, xs, k, origin_t, q2, p2 - q2, g, horizon);
                    }
                }
            }
        }
        k += 1;
    }
    Err(SimError::NonConvergence(horizon))
}

#[allow(clippy::too_many_arguments)]
fn finish(
    alpha: f64,
    h: f64,
    n: usize,
    mut xs: Vec<f64>,
    mut k: usize,
    origin_t: f64,
    q: f64,
    qbar: f64,
    g: impl Fn(f64) -> f64,
    horizon: f64,
) -> Result<SimulatedSops, SimError> {
    let need = ((origin_t + q + qbar + 3.0) / h).ceil() as usize + n;
    while k + 1 < need {
        k += 1;
        let j = k - n;
        let next = xs[k] + h * (-g(xs[j - 1]) + 13.0 * g(xs[j]) + 13.0 * g(xs[j + 1]) - g(xs[j + 2])) / 24.0;
        xs.push(next);
    }
    let origin = origin_t + n as f64 * h;
    if origin - 2.0 < 0.0 {
        return Err(SimError::NonConvergence(horizon));
    }
    let mut s = SimulatedSops {
        alpha,
        q,
        qbar,
        max: 0.0,
        min: 0.0,
        h,
        xs,
        origin,
    };
    s.max = s.eval(1.0);
    s.min = s.eval(q + 1.0);
    Ok(s)
}
