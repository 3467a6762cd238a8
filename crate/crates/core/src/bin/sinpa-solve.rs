use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sinpa::pipeline::{decide_existential, Options, Verdict, VerdictKind};
use sinpa::syntax::{self, Quantifier};

#[derive(Parser)]
#[command(
    name = "sinpa-solve",
    version,
    about = "Decide existential Presburger arithmetic with sine"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a sentence read from a file, or from stdin for `-`.
    Decide {
        input: PathBuf,
        /// Maximum number of boxes examined by the interval search.
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        /// Starting precision in bits; two higher levels are derived from it.
        #[arg(long, default_value_t = 53, value_parser = clap::value_parser!(u32).range(16..=100_000))]
        precision: u32,
        /// Bound on integer witness coordinates; 0 disables the search.
        #[arg(long, default_value_t = 10_000)]
        witness_bound: u64,
        /// Print per-stage statistics and formulas.
        #[arg(long)]
        trace: bool,
        /// Print a JSON report instead of text.
        #[arg(long)]
        json: bool,
    },
}

const INPUT_ERROR: u8 = 64;

fn read_input(path: &PathBuf) -> std::io::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

/// Line and column of the first `forall` keyword outside comments.
fn forall_position(text: &str) -> (usize, usize) {
    for (i, line) in text.lines().enumerate() {
        let code = line.split('#').next().unwrap_or("");
        if let Some(c) = code.find("forall") {
            return (i + 1, code[..c].chars().count() + 1);
        }
    }
    (1, 1)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Command::Decide {
        input,
        budget,
        precision,
        witness_bound,
        trace,
        json,
    } = cli.command;
    let text = match read_input(&input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("{}: {e}", input.display());
            return ExitCode::from(INPUT_ERROR);
        }
    };
    let sentence = match syntax::parse(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(INPUT_ERROR);
        }
    };
    if sentence
        .prefix
        .iter()
        .any(|(q, _)| *q == Quantifier::Forall)
    {
        let (line, col) = forall_position(&text);
        eprintln!("{line}:{col}: only existential sentences can be decided");
        return ExitCode::from(INPUT_ERROR);
    }
    let opts = Options {
        budget,
        precisions: Options::ladder(precision),
        witness_bound,
        keep_formulas: trace,
        ..Options::default()
    };
    let decision = match decide_existential(&sentence, &opts) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("1:1: {e}");
            return ExitCode::from(INPUT_ERROR);
        }
    };
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&decision.to_json()).expect("json")
        );
    } else {
        let names = sentence.names();
        match &decision.verdict {
            Verdict::Sat { witness, .. } => {
                println!("sat");
                if let Some(z) = witness {
                    let parts: Vec<String> = names
                        .iter()
                        .zip(z)
                        .map(|(n, v)| format!("{n} = {v}"))
                        .collect();
                    println!("witness: {}", parts.join(", "));
                }
            }
            Verdict::Unsat { .. } => println!("unsat"),
            Verdict::Unknown { reason } => println!("unknown ({reason})"),
        }
        if decision.trace.schanuel_conditional {
            println!("note: conditional on Schanuel's conjecture");
        }
        if trace {
            for st in &decision.trace.stages {
                println!(
                    "[{}] {} clauses, {} literals, {:.1} ms",
                    st.name, st.clauses, st.literals, st.millis
                );
                if let Some(f) = &st.formula {
                    println!("  {f}");
                }
            }
            if let Some(p) = &decision.trace.period {
                println!("period multiplier: {p}");
            }
            let s = &decision.trace.search;
            println!(
                "boxes: {} examined, {} refuted, {} escalations, coverage {}",
                s.boxes, s.refuted, s.escalations, s.coverage
            );
        }
    }
    ExitCode::from(match decision.verdict.kind() {
        VerdictKind::Sat => 0,
        VerdictKind::Unsat => 1,
        VerdictKind::Unknown => 2,
    })
}
