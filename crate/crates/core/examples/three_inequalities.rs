//! A three-inequality system in two variables: stage by stage sizes, the
//! period, the certified box, and an integer witness.
//!
//!     cargo run --release --example three_inequalities

use sinpa::pipeline::{decide_existential, Options, Verdict};
use sinpa::syntax::parse;

const SYSTEM: &str = "exists x, y.
    -3*x + y - 2 < 2*sin(3*x + sin(y - 1)) + sin(1/2)
    and 2*x + 4/3*y - 1 < sin(-3*x + 2*y - 1) + 2*sin(-2*x)
    and 1/2*x - 3/2*y - 19/2 < -sin(1/2*x + 1/3*y + 2)";

fn main() {
    let s = parse(SYSTEM).unwrap();
    let opts = Options {
        keep_formulas: true,
        ..Options::default()
    };
    let d = decide_existential(&s, &opts).unwrap();
    for st in &d.trace.stages {
        println!(
            "{:>20}: {} clauses, {} literals",
            st.name, st.clauses, st.literals
        );
    }
    println!(
        "period multiplier: {}",
        d.trace.period.as_deref().unwrap_or("-")
    );
    println!("boxes examined: {}", d.trace.search.boxes);
    match &d.verdict {
        Verdict::Sat {
            certified_box,
            witness,
            ..
        } => {
            for (name, iv) in s.names().iter().zip(&certified_box.dims) {
                println!("{name} in {:?}", iv.to_f64_pair());
            }
            if let Some(w) = witness {
                println!("witness: x = {}, y = {}", w[0], w[1]);
            }
        }
        other => println!("{other:?}"),
    }
}
