//! Interval enclosures of sine and of normalized terms.
//!
//!     cargo run --example intervals

use rug::Float;
use sinpa::interval::{
    eval_term, interval_sin, pi_enclosure, sign_of_ground, Interval, IntervalBox,
};
use sinpa::{NormalTerm, Rational, RawTerm};

fn main() {
    let pi = pi_enclosure(53);
    println!("pi in {:?}", pi.to_f64_pair());
    for (lo, hi) in [(0.0, 0.5), (1.0, 2.0), (-10.0, -3.0), (1e6, 1e6 + 1e-9)] {
        let x = Interval::new(Float::with_val(53, lo), Float::with_val(53, hi));
        println!(
            "sin[{lo}, {hi}] in {:?}",
            interval_sin(&x, 53).to_f64_pair()
        );
    }

    let t = NormalTerm::normalize(
        &(RawTerm::sin(RawTerm::var(0) + RawTerm::sin(RawTerm::var(1))) - RawTerm::var(1)),
        2,
    )
    .unwrap();
    let point = [Rational::from((7, 3)), Rational::from(-2)];
    for prec in [24, 53, 113] {
        let v = eval_term(&t, &IntervalBox::point(&point, prec), prec);
        println!("at {prec} bits: {:?}", v.to_f64_pair());
    }

    // sin(1) - 0.8414709848078965 is about 4e-17
    let c: Rational = "8414709848078965/10000000000000000".parse().unwrap();
    let g = NormalTerm::normalize(
        &(RawTerm::sin(RawTerm::constant(1)) - RawTerm::constant(c)),
        0,
    )
    .unwrap();
    println!(
        "sign of sin(1) - 0.8414709848078965: {:?}",
        sign_of_ground(&g)
    );
}
