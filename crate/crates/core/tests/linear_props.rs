mod common;

use proptest::prelude::*;
use rand::Rng;

use common::brute::{Checker, Prop};
use common::gen::Gen;
use common::{clauses, to_i64s, to_integers};
use sinpa::linear::{
    eliminate_divisibility, eliminate_equalities, eliminate_linear, linear_variables, Reduction,
};
use sinpa::Literal;

const BOUND: i64 = 25;

fn setup(seed: u64) -> (Gen, usize) {
    let mut g = Gen::new(seed);
    let n = g.rng.gen_range(1..=2);
    (g, n)
}

/// Any output witness maps back to an integer point satisfying the input.
fn witnesses_map_back(input: &[Literal], r: &Reduction, n: usize) -> Result<(), String> {
    let check = Checker::new(&Prop::clause(input), n);
    for b in &r.branches {
        let mut lits = b.clause.clone();
        lits.extend(b.side.iter().cloned());
        if let Some(w) = Checker::new(&Prop::clause(&lits), n).search(BOUND) {
            let x = b
                .map
                .apply_integral(&to_integers(&w))
                .ok_or(format!("{w:?} maps to a non-integer"))?;
            let x = to_i64s(&x).unwrap();
            if !check.holds(&x) {
                return Err(format!("{w:?} maps to {x:?}, which fails the input"));
            }
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn equalities_are_eliminated(seed in any::<u64>()) {
        let (mut g, n) = setup(seed);
        let clause = clauses::linear_equality_clause(&mut g, n);
        let r = eliminate_equalities(&clause, n);
        for l in r.branches.iter().flat_map(|b| &b.clause) {
            prop_assert!(!matches!(l, Literal::LinEq(_) | Literal::LinNeq(_)), "{l}");
        }
        prop_assert_eq!(witnesses_map_back(&clause, &r, n), Ok(()));
    }

    #[test]
    fn linear_occurrences_are_eliminated(seed in any::<u64>()) {
        let (mut g, n) = setup(seed);
        let clause = clauses::linear_occurrence_clause(&mut g, n);
        prop_assume!(!linear_variables(&clause, n).is_empty());
        let r = eliminate_linear(&clause, n);
        for b in &r.branches {
            prop_assert!(linear_variables(&b.clause, n).is_empty());
            for l in &b.clause {
                prop_assert!(!matches!(l, Literal::LinEq(_) | Literal::LinNeq(_)), "{l}");
            }
        }
        prop_assert_eq!(witnesses_map_back(&clause, &r, n), Ok(()));
    }

    #[test]
    fn divisibility_is_eliminated(seed in any::<u64>()) {
        let (mut g, n) = setup(seed);
        let clause = clauses::divisibility_clause(&mut g, n);
        let r = eliminate_divisibility(&clause, n);
        for l in r.branches.iter().flat_map(|b| &b.clause) {
            prop_assert!(!matches!(l, Literal::Div { .. }), "{l}");
        }
        prop_assert_eq!(witnesses_map_back(&clause, &r, n), Ok(()));
    }
}
