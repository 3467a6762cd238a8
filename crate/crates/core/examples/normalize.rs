//! Normalize a few terms and show their structure.
//!
//!     cargo run --example normalize

use sinpa::syntax::{default_names, print_term};
use sinpa::{NormalTerm, RawTerm};

fn main() {
    let x = || RawTerm::var(0);
    let y = || RawTerm::var(1);
    let half = |t| RawTerm::scale(sinpa::Rational::from((1, 2)), t);
    let terms = [
        // sin(-x) folds into sin(x)
        RawTerm::sin(x()) + RawTerm::sin(-x()) + x(),
        // the same nested atom is shared by both summands
        RawTerm::sin(x() + RawTerm::sin(y())) - RawTerm::scale(3, RawTerm::sin(RawTerm::sin(y()))),
        RawTerm::scale(2, RawTerm::sin(half(x() + y()))) + RawTerm::sin(RawTerm::constant(0)),
    ];
    let names = default_names(2);
    for raw in &terms {
        let t = NormalTerm::normalize(raw, 2).expect("arity 2");
        println!("{}", print_term(&t, &names));
        println!(
            "  depth {}, {} atoms, {} summands, oscillatory: {}",
            t.sine_depth(),
            t.atoms().len(),
            t.summands().len(),
            t.is_oscillatory()
        );
        if let Ok(r) = t.oscillatory_part().radius() {
            println!("  radius of the oscillatory part: {r}");
        }
    }
}
