mod common;

use proptest::prelude::*;
use rand::Rng;

use common::gen::Gen;
use sinpa::syntax::{parse, print};

fn sentence_text(seed: u64) -> String {
    let mut g = Gen::new(seed);
    g.max_arity = 3;
    g.max_depth = 3;
    g.sentence().text
}

#[rustfmt::skip]
const NOISE: &[&str] = &[
    "(", ")", "sin", "*", "/", "+", "-", "<", "=", "!=", "and", "or", "not", ",", ".", "x0", "1/0",
    "forall", "exists", "div(", "9999999999999999999999", "#", "
", " ", "é", "∃", "0.5",
];

fn mutate(text: &str, seed: u64) -> String {
    let mut g = Gen::new(seed);
    let mut chars: Vec<char> = text.chars().collect();
    for _ in 0..g.rng.gen_range(1..=4) {
        let at = g.rng.gen_range(0..=chars.len());
        match g.rng.gen_range(0..3) {
            0 if at < chars.len() => {
                let end = (at + g.rng.gen_range(1..=6)).min(chars.len());
                chars.drain(at..end);
            }
            1 => {
                let piece = NOISE[g.rng.gen_range(0..NOISE.len())];
                chars.splice(at..at, piece.chars());
            }
            _ => chars.truncate(at),
        }
    }
    chars.into_iter().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn printing_round_trips(seed in any::<u64>()) {
        let text = sentence_text(seed);
        let s = parse(&text).unwrap();
        let printed = print(&s);
        let again = parse(&printed).unwrap_or_else(|e| panic!("{printed}: {e}"));
        prop_assert_eq!(again, s, "{}", printed);
    }

    #[test]
    fn mutated_inputs_get_a_located_diagnostic_or_parse(seed in any::<u64>(), noise in any::<u64>()) {
        let text = mutate(&sentence_text(seed), noise);
        if let Err(e) = parse(&text) {
            let lines = text.split('\n').count();
            prop_assert!(e.line >= 1 && e.line <= lines, "{text:?}: {e}");
            prop_assert!(e.col >= 1, "{text:?}: {e}");
            prop_assert!(!e.message.is_empty());
        }
    }
}
