//! Checks shared by the acceptance runner and the ordinary test files.
#![allow(dead_code)]


use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wright_sops::prover::{branch_and_prune_observed, Step};
use wright_sops::prune::prune_once;
use wright_sops::{seed_pair, simulate_sops, AprioriParams, GridFn, Interval, ProofConfig, Region};

// ---------------------------------------------------------------------------
// Exact rational oracle.

pub fn rational(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

/// Parse `d.ddd[e±x]` exactly.
pub fn parse_decimal(s: &str) -> BigRational {
    let (mant, exp) = match s.split_once('e') {
        Some((m, e)) => (m, e.parse::<i32>().expect("exponent")),
        None => (s, 0),
    };
    let neg = mant.starts_with('-');
    let mant = mant.trim_start_matches('-');
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    let digits: BigInt = format!("{int}{frac}").parse().expect("digits");
    let shift = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut r = BigRational::from_integer(digits);
    if shift >= 0 {
        r *= BigRational::from_integer(num_traits::pow(ten, shift as usize));
    } else {
        r /= BigRational::from_integer(num_traits::pow(ten, (-shift) as usize));
    }
    if neg {
        -r
    } else {
        r
    }
}

/// `true` when the exact value `v` lies in `x`.
pub fn holds(x: Interval, v: &BigRational) -> bool {
    let lo_ok = x.inf() == f64::NEG_INFINITY || rational(x.inf()) <= *v;
    let hi_ok = x.sup() == f64::INFINITY || rational(x.sup()) >= *v;
    lo_ok && hi_ok
}

fn random_float(rng: &mut ChaCha8Rng) -> f64 {
    match rng.gen_range(0..10) {
        0 => 0.0,
        1 => rng.gen_range(-4..=4) as f64,
        2 => {
            // huge or tiny magnitudes
            let e = rng.gen_range(-1000..1000);
            let m: f64 = rng.gen_range(1.0..2.0);
            let s = if rng.gen_bool(0.5) { -1.0 } else { 1.0 };
            s * m * 2f64.powi(e)
        }
        _ => {
            let e = rng.gen_range(-40..40);
            let m: f64 = rng.gen_range(1.0..2.0);
            let s = if rng.gen_bool(0.5) { -1.0 } else { 1.0 };
            s * m * 2f64.powi(e)
        }
    }
}

fn random_interval(rng: &mut ChaCha8Rng) -> Interval {
    let a = random_float(rng);
    let b = if rng.gen_bool(0.2) { a } else { random_float(rng) };
    Interval::new(a.min(b), a.max(b))
}

/// A float inside `x`: an endpoint or a random interior point.
fn member(rng: &mut ChaCha8Rng, x: Interval) -> f64 {
    match rng.gen_range(0..4) {
        0 => x.inf(),
        1 => x.sup(),
        _ => {
            let u: f64 = rng.gen_range(0.0..1.0);
            let p = x.inf() + u * (x.sup() - x.inf());
            if p.is_finite() {
                p.clamp(x.inf(), x.sup())
            } else {
                x.inf()
            }
        }
    }
}

/// Random `x ∘ y` checks for `+ - * /` against exact rationals. Returns the
/// number of violations.
pub fn containment_fuzz(cases: usize, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = 0;
    let mut done = 0;
    while done < cases {
        let x = random_interval(&mut rng);
        let y = random_interval(&mut rng);
        let (a, b) = (member(&mut rng, x), member(&mut rng, y));
        let (ra, rb) = (rational(a), rational(b));
        let (enc, exact) = match rng.gen_range(0..5) {
            0 => (x.add(y), &ra + &rb),
            1 => (x.sub(y), &ra - &rb),
            2 => (x.mul(y), &ra * &rb),
            3 => match x.div(y) {
                Ok(q) if !rb.is_zero() => (q, &ra / &rb),
                _ => continue,
            },
            _ => {
                let c = random_float(&mut rng);
                (x.scale(c), &ra * rational(c))
            }
        };
        done += 1;
        if !holds(enc, &exact) {
            bad += 1;
            if bad <= 5 {
                eprintln!("containment violated: x {x:?} y {y:?} a {a:e} b {b:e} -> {enc:?}");
            }
        }
    }
    bad
}

/// `exp` and `log` of every tabulated input against 45-digit reference values.
pub fn transcendental_table() -> usize {
    let mut bad = 0;
    for &(bits, v) in oracle_table::EXP_TABLE {
        let x = f64::from_bits(bits);
        if !holds(Interval::point(x).exp(), &parse_decimal(v)) {
            eprintln!("exp({x:e}) misses {v}");
            bad += 1;
        }
    }
    for &(bits, v) in oracle_table::LOG_TABLE {
        let x = f64::from_bits(bits);
        let enc = Interval::point(x).log().expect("positive");
        if !holds(enc, &parse_decimal(v)) {
            eprintln!("log({x:e}) misses {v}");
            bad += 1;
        }
    }
    bad
}

// ---------------------------------------------------------------------------
// Riemann sums.

fn exp_enclosure(n: u32) -> GridFn {
    GridFn::from_fn(n, 0, n as i64, Interval::ENTIRE, |pos| {
        let i = pos.div_euclid(2);
        let a = Interval::ratio(i as f64, n as f64).exp();
        if pos % 2 == 0 {
            a
        } else {
            a.hull(Interval::ratio((i + 1) as f64, n as f64).exp())
        }
    })
}

fn identity_enclosure(n: u32) -> GridFn {
    GridFn::from_fn(n, 0, n as i64, Interval::ENTIRE, |pos| {
        let i = pos.div_euclid(2);
        let a = Interval::ratio(i as f64, n as f64);
        if pos % 2 == 0 {
            a
        } else {
            a.hull(Interval::ratio((i + 1) as f64, n as f64))
        }
    })
}

/// Upper and lower sums of `e^t` and `t` on `[0, 1]` bracket the integrals
/// `e - 1` and `1/2`, with gap at most `2Δ` times the largest slope.
pub fn riemann_bracketing() -> Result<String, String> {
    // e - 1 = 1.71828182845904523536028747135266249775724709369995...
    let e_minus_1 = parse_decimal("1.71828182845904523536028747135266249775724709369995");
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut worst = 0.0f64;
    for n in [4u32, 16, 32, 64, 128, 1000] {
        let dt = 1.0 / n as f64;
        for (f, exact, slope, name) in [
            (exp_enclosure(n), &e_minus_1, std::f64::consts::E, "exp"),
            (identity_enclosure(n), &half, 1.0, "t"),
        ] {
            let lo = f.riemann_lower(0, n as i64);
            let hi = f.riemann_upper(0, n as i64);
            if !holds(Interval::new(lo, hi), exact) {
                return Err(format!("{name}, n = {n}: [{lo}, {hi}] misses the integral"));
            }
            let allowed = 2.0 * dt * slope;
            if hi - lo > allowed {
                return Err(format!("{name}, n = {n}: gap {} exceeds {allowed}", hi - lo));
            }
            worst = worst.max((hi - lo) / allowed);
        }
    }
    Ok(format!("largest gap / allowed = {worst:.3}"))
}

// ---------------------------------------------------------------------------
// Prune contraction.

fn box_subset(a: &Region, b: &Region) -> bool {
    a.i_q.subset_of(b.i_q) && a.i_qbar.subset_of(b.i_qbar) && a.i_m.subset_of(b.i_m)
}

/// Prune `count` random regions reached by random bisection from the seeds;
/// every kept output must lie inside its input.
pub fn prune_contraction(count: usize, seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut kept = 0;
    for case in 0..count {
        let lo = rng.gen_range(1.9..5.9f64);
        let lo = (lo * 100.0).round() / 100.0;
        let width = [0.01, 0.05, 0.1][rng.gen_range(0..3)];
        let alpha = Interval::new(lo, lo + width);
        let n_time = [16, 32][rng.gen_range(0..2)];
        let seeds = seed_pair(alpha, AprioriParams::default(), n_time, 10);
        let mut r = seeds[rng.gen_range(0..seeds.len())].clone();
        for _ in 0..rng.gen_range(0..6) {
            let (a, b) = r.subdivide();
            r = if rng.gen_bool(0.5) { a } else { b };
            if rng.gen_bool(0.5) {
                let mut t = r.clone();
                if prune_once(&mut t).is_ok() {
                    r = t;
                }
            }
        }
        let mut out = r.clone();
        if prune_once(&mut out).is_ok() {
            kept += 1;
            if !box_subset(&out, &r) {
                return Err(format!("case {case}: box grew on {alpha}"));
            }
            if !out.enclosure.subset_of(&r.enclosure) {
                return Err(format!("case {case}: enclosure grew on {alpha}"));
            }
        }
    }
    Ok(format!("{count} regions, {kept} kept, none grew"))
}

// ---------------------------------------------------------------------------
// Simulated SOPS against the rigorous enclosures.

/// Slack for the simulated κ and trajectory.
pub const SIM_TOL: f64 = 1e-6;

fn kappa_inside(r: &Region, k: (f64, f64, f64), slack: f64) -> bool {
    let within = |x: Interval, v: f64| v >= x.inf() - slack && v <= x.sup() + slack;
    within(r.i_q, k.0) && within(r.i_qbar, k.1) && within(r.i_m, k.2)
}

/// First position where the simulated solution leaves the enclosure.
fn escapes(r: &Region, sim: &wright_sops::prover::SimulatedSops) -> Option<i64> {
    let f = &r.enclosure;
    let n = f.n_time() as f64;
    let (a, b) = f.pos_range();
    (a..=b).find(|&p| {
        let i = p.div_euclid(2) as f64;
        let (lo, hi) = if p % 2 == 0 {
            let v = sim.eval(i / n);
            (v, v)
        } else {
            sim.range_over(i / n, (i + 1.0) / n)
        };
        let v = f.at(p);
        lo < v.inf() - SIM_TOL || hi > v.sup() + SIM_TOL
    })
}

/// Simulate at `alpha`, run branch and prune on `i_alpha` and check that the
/// solution stays inside every enclosure whose box holds its κ, that no
/// discarded box held κ, and that κ ends in some terminal box.
pub fn oracle_containment(alpha: f64, i_alpha: Interval, cfg: &ProofConfig) -> Result<String, String> {
    let sim = simulate_sops(alpha, 1500.0, 1.0 / 256.0).map_err(|e| e.to_string())?;
    let k = (sim.q, sim.qbar, sim.max);

    let seeds = seed_pair(i_alpha, cfg.apriori(), cfg.n_time, cfg.n_period);
    if !seeds.iter().any(|r| kappa_inside(r, k, SIM_TOL)) {
        return Err(format!("κ {k:?} outside both seeds"));
    }
    for r in seeds.iter().filter(|r| kappa_inside(r, k, -SIM_TOL)) {
        if let Some(p) = escapes(r, &sim) {
            return Err(format!("solution leaves a seed enclosure at position {p}"));
        }
    }

    let mut failure: Option<String> = None;
    let mut checked = 0usize;
    let terminal = branch_and_prune_observed(i_alpha, cfg, |s| {
        if failure.is_some() {
            return;
        }
        match s {
            Step::Discarded { before, reason } => {
                if kappa_inside(before, k, -SIM_TOL) {
                    failure = Some(format!("box holding κ discarded: {reason}"));
                }
            }
            Step::Split { before, after } | Step::Terminal { before, after } => {
                if kappa_inside(before, k, -SIM_TOL) {
                    checked += 1;
                    if !kappa_inside(after, k, SIM_TOL) {
                        failure = Some("pruning moved the box off κ".into());
                    } else if let Some(p) = escapes(after, &sim) {
                        failure = Some(format!("solution leaves a pruned enclosure at position {p}"));
                    }
                }
            }
        }
    })
    .map_err(|e| e.to_string())?;
    if let Some(f) = failure {
        return Err(f);
    }
    if !terminal.iter().any(|r| kappa_inside(r, k, SIM_TOL)) {
        return Err(format!("κ {k:?} outside every terminal box"));
    }
    Ok(format!(
        "κ = ({:.5}, {:.5}, {:.5}); {checked} pruned enclosures checked, {} terminal boxes",
        k.0,
        k.1,
        k.2,
        terminal.len()
    ))
}

/// The α subinterval and parameter row used for the oracle runs.
pub fn oracle_run(alpha: f64) -> (Interval, ProofConfig) {
    if alpha < 2.1 {
        let cfg = ProofConfig::table_row(2).with_range(alpha, alpha + 0.01);
        (Interval::new(alpha, alpha + 0.01), cfg)
    } else {
        let cfg = ProofConfig::table_row(3).with_range(alpha, alpha + 0.1);
        (Interval::new(alpha, alpha + 0.1), cfg)
    }
}
