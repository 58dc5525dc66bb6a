//! Piecewise-constant interval functions: values at grid points `i/n` and on
//! the open cells between them, with rigorous Riemann sums.

use wright_sops::{GridFn, Interval};

fn main() {
    let n = 8;
    // enclose e^t on [0, 1]: points exactly, cells by their endpoint values
    let f = GridFn::from_fn(n, 0, n as i64, Interval::ENTIRE, |pos| {
        let i = pos.div_euclid(2);
        let a = Interval::ratio(i as f64, n as f64).exp();
        if pos % 2 == 0 {
            a
        } else {
            a.hull(Interval::ratio((i + 1) as f64, n as f64).exp())
        }
    });
    let lo = f.riemann_lower(0, n as i64);
    let hi = f.riemann_upper(0, n as i64);
    println!("∫₀¹ eᵗ dt in [{lo}, {hi}], exact {}", std::f64::consts::E - 1.0);

    println!("sup over [0.3, 0.6]: {}", f.sup_over(0.3, 0.6));
    println!("value at t in [0.5, 0.55]: {}", f.eval(Interval::new(0.5, 0.55)));

    // every stored value of x(t + L) for some L in [0.25, 0.5]
    let shifted = f.shift_hull(Interval::new(0.25, 0.5));
    println!("shifted at t = 0: {}", shifted.point(0));

    println!("\ntext form:\n{}", f.to_text());
}
