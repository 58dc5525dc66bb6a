//! Outward-rounded interval arithmetic: every result contains the exact
//! real answer for every choice of operands.

use wright_sops::Interval;

fn main() {
    let third = Interval::ratio(1.0, 3.0);
    println!("1/3       in {third}  (width {:e})", third.width());

    let tenth = Interval::ratio(1.0, 10.0);
    let sum = (0..10).fold(Interval::ZERO, |acc, _| acc.add(tenth));
    println!("10 x 0.1  in {sum}  contains 1: {}", sum.contains(1.0));

    let alpha = Interval::new(2.5, 2.6);
    // the right-hand side of Wright's equation at x = 1
    let rhs = alpha.neg().mul(Interval::ONE.exp_m1());
    println!("-α(e - 1) in {rhs}");

    let half_pi = Interval::HALF_PI;
    println!("π/2       in {half_pi}");
    match alpha.div(half_pi).and_then(|r| r.log()) {
        Ok(v) => println!("log(α/(π/2)) in {v}"),
        Err(e) => println!("log failed: {e}"),
    }

    // division by an interval holding zero is an error, not a silent infinity
    let bad = Interval::ONE.div(Interval::new(-1.0, 1.0));
    println!("1/[-1, 1] -> {bad:?}");
}
