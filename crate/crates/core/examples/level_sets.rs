//! Rational gcds, level sets, and the three linear reductions on one clause
//! each.
//!
//!     cargo run --example level_sets

use sinpa::arith::{denominator_lcm, rational_gcd};
use sinpa::linear::{eliminate_divisibility, eliminate_equalities, eliminate_linear, level_set};
use sinpa::syntax::{default_names, parse, print_literal};
use sinpa::{AffineForm, Literal, Rational};

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

fn show(title: &str, r: &sinpa::linear::Reduction) {
    let names = default_names(r.arity);
    println!("{title}: {} branches", r.branches.len());
    for b in &r.branches {
        let lits: Vec<String> = b.clause.iter().map(|l| print_literal(l, &names)).collect();
        println!(
            "  {}",
            if lits.is_empty() {
                "true".into()
            } else {
                lits.join(" and ")
            }
        );
    }
}

fn clause(text: &str) -> Vec<Literal> {
    parse(text)
        .unwrap()
        .matrix
        .literals()
        .into_iter()
        .cloned()
        .collect()
}

fn main() {
    let coeffs = [q(2, 3), q(-5, 4), q(1, 6)];
    println!("gcd of 2/3, -5/4, 1/6 = {}", rational_gcd(&coeffs).unwrap());
    println!("lcm of their denominators = {}", denominator_lcm(&coeffs));

    // values of 3/2 x - 3/4 y + 1/3 in [-2, 2)
    let f = AffineForm(vec![q(3, 2), q(-3, 4), q(1, 3)]);
    let set = level_set(&f, &q(-2, 1), &q(2, 1));
    let shown: Vec<String> = set.values.iter().map(ToString::to_string).collect();
    println!("level set: {}\n", shown.join(", "));

    show(
        "equalities",
        &eliminate_equalities(&clause("exists x, y. 2x - 3y = 1 and 0 < sin(x + y)"), 2),
    );
    show(
        "linear occurrences",
        &eliminate_linear(&clause("exists x. x < sin(x) and -1 < x + sin(2x)"), 1),
    );
    show(
        "divisibility",
        &eliminate_divisibility(&clause("exists x. div(3, x + 1) and 1/2 < sin(x)"), 1),
    );
}
