//! Decide a handful of sentences and print verdicts with witnesses.
//!
//!     cargo run --release --example decide [sentence]

use sinpa::pipeline::{decide_existential, Options, Verdict};
use sinpa::syntax::parse;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let inputs: Vec<String> = if args.is_empty() {
        [
            "exists x. 1 < sin(x)",
            "exists x. 9/10 < sin(x)",
            "exists x, y. x - 2*y = 0 and 9/10 < sin(x)",
            "exists x. sin(x) = 0 and x != 0",
            "exists x. 1000 < x and x < 1003 and 1/2 < sin(x)",
            "exists x, y. sin(x) - sin(y) = 0 and x < y",
        ]
        .map(String::from)
        .to_vec()
    } else {
        vec![args.join(" ")]
    };
    let opts = Options::default();
    for text in &inputs {
        let s = match parse(text) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("{e}");
                continue;
            }
        };
        let d = decide_existential(&s, &opts).expect("existential sentence");
        let verdict = match &d.verdict {
            Verdict::Sat {
                witness: Some(w), ..
            } => {
                let parts: Vec<String> = s
                    .names()
                    .iter()
                    .zip(w)
                    .map(|(n, v)| format!("{n} = {v}"))
                    .collect();
                format!("sat, {}", parts.join(", "))
            }
            Verdict::Sat { .. } => "sat (no witness within the bound)".into(),
            Verdict::Unsat { refuted_boxes } => format!("unsat ({refuted_boxes} boxes refuted)"),
            Verdict::Unknown { reason } => format!("unknown: {reason}"),
        };
        let note = if d.trace.schanuel_conditional {
            " [Schanuel]"
        } else {
            ""
        };
        println!("{text}\n  {verdict}{note}");
    }
}
