//! Rewrite linear-sine equalities into linear equalities and disequalities.
//!
//!     cargo run --example sine_equality

use sinpa::sine_eq::{eliminate_sine_equality, enumerate_congruences, DEFAULT_CAP};
use sinpa::syntax::{parse, print_formula};

fn main() {
    for k in 0..=4 {
        let count = enumerate_congruences(k, DEFAULT_CAP).unwrap().len();
        println!("K = {k}: {count} sign-symmetric partitions");
    }
    println!();
    for eq in [
        "sin(x) - sin(y) = 0",
        "x + sin(x) = 0",
        "sin(2*x) - 2*sin(x) = 0",
        "sin(x) + sin(y) + sin(x + y) = 0",
        "sin(sin(x)) - sin(sin(y)) = 0",
    ] {
        let s = parse(&format!("exists x, y. {eq}")).unwrap();
        let lit = s.matrix.literals()[0].clone();
        let psi = eliminate_sine_equality(&lit, DEFAULT_CAP).unwrap();
        println!("{eq}\n  <=> {}", print_formula(&psi, &s.names()));
    }
}
