//! Parse sentences, print their normalized matrices, and show diagnostics.
//!
//!     cargo run --example parse_print

use sinpa::syntax::{parse, print};

fn main() {
    let inputs = [
        "exists x. 9/10 < sin(x)",
        "exists x, y. 2x - 3y <= sin(x + sin(y)) and not (x = y)",
        "exists x. div(3, 2x + 1) or sin(x/2) >= 1/3",
        "exists x, y. x > y or forall z. z < x",
        "exists x.\n  x < sin(x",
    ];
    for text in inputs {
        match parse(text) {
            Ok(s) => {
                println!("{}", print(&s));
                let existential = if s.is_existential() {
                    ""
                } else {
                    " (not existential)"
                };
                println!("  {} literals{existential}", s.matrix.literals().len());
            }
            Err(e) => println!("error at {e}"),
        }
    }
}
