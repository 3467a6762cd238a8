mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use proptest::prelude::*;
use rand::Rng;

use common::gen::Gen;
use common::hp::{self, Fixed};
use sinpa::formula::to_dnf;
use sinpa::{AffineForm, Formula, Literal, NormalTerm, Rational};

fn random_point(g: &mut Gen, n: usize) -> Vec<Fixed> {
    (0..n)
        .map(|_| {
            let num = g.rng.gen_range(-50_000i64..=50_000);
            let den = g.rng.gen_range(1i64..=997);
            Fixed::from_rational(&BigRational::new(num.into(), den.into()))
        })
        .collect()
}

fn generated(seed: u64, depth: u32) -> (Gen, usize, NormalTerm, common::gen::Term) {
    let mut g = Gen::new(seed);
    let n = g.rng.gen_range(1..=3);
    let raw = g.term_in(n, depth);
    let t = NormalTerm::normalize(&raw.raw, n).unwrap();
    (g, n, t, raw)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normalization_is_idempotent(seed in any::<u64>()) {
        let (_, n, t, _) = generated(seed, 3);
        prop_assert_eq!(NormalTerm::normalize(&t.to_raw(), n).unwrap(), t);
    }

    #[test]
    fn normal_form_has_the_same_value(seed in any::<u64>()) {
        let (mut g, n, t, raw) = generated(seed, 3);
        let z = random_point(&mut g, n);
        let diff = hp::eval_raw(&raw.raw, &z).sub(&hp::eval_normal(&t, &z));
        prop_assert!(diff.below_pow10(9), "{} vs {t}", raw.text);
    }

    #[test]
    fn radius_bounds_oscillatory_terms(seed in any::<u64>()) {
        let (mut g, n, t, _) = generated(seed, 3);
        let osc = t.oscillatory_part();
        let r = hp::rational(&osc.radius().unwrap());
        let v = hp::eval_normal(&osc, &random_point(&mut g, n)).to_rational().abs();
        if osc.is_zero() {
            prop_assert_eq!(v, BigRational::from(BigInt::from(0)));
        } else {
            prop_assert!(v < r, "|{osc}| reached its radius");
        }
    }

    #[test]
    fn summand_arguments_are_distinct_up_to_sign(seed in any::<u64>()) {
        let (_, _, t, _) = generated(seed, 3);
        let args: Vec<&[Rational]> = t.summands().iter().map(|s| &s.arg[..]).collect();
        for (i, a) in args.iter().enumerate() {
            prop_assert!(a.iter().any(|c| *c != 0));
            for b in &args[i + 1..] {
                let opposite = a.iter().zip(b.iter()).all(|(x, y)| *x == Rational::from(-y));
                prop_assert!(a != b && !opposite, "{t}");
            }
        }
    }

    #[test]
    fn dnf_preserves_every_truth_assignment(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let count = g.rng.gen_range(1..=10);
        let lits: Vec<Literal> = (0..count)
            .map(|i| Literal::LinEq(AffineForm::from_ints(&[1, -(i as i64)])))
            .collect();
        let f = random_formula(&mut g, &lits, 4);
        let dnf = to_dnf(&f).to_formula();
        for mask in 0u32..1 << count {
            let mut val = |l: &Literal| {
                let i = lits.iter().position(|m| m == l).unwrap();
                mask >> i & 1 == 1
            };
            let expected = f.eval(&mut val);
            prop_assert_eq!(dnf.eval(&mut val), expected, "{} under {:b}", f, mask);
        }
    }
}

fn random_formula(g: &mut Gen, lits: &[Literal], depth: u32) -> Formula {
    if depth == 0 || g.rng.gen_bool(0.3) {
        return Formula::Leaf(lits[g.rng.gen_range(0..lits.len())].clone());
    }
    let count = g.rng.gen_range(2..=3);
    let parts: Vec<Formula> = (0..count)
        .map(|_| random_formula(g, lits, depth - 1))
        .collect();
    if g.rng.gen_bool(0.5) {
        Formula::And(parts)
    } else {
        Formula::Or(parts)
    }
}
