//! Random conjunctive clauses shaped as the input of each reduction stage.

use rand::Rng;
use sinpa::{AffineForm, Integer, Literal, NormalTerm, Rational, RawTerm};

use super::gen::Gen;

fn normal(raw: &RawTerm, n: usize) -> NormalTerm {
    NormalTerm::normalize(raw, n).expect("generated terms normalize")
}

fn small_q(g: &mut Gen, zero_ok: bool) -> Rational {
    loop {
        let num = g.rng.gen_range(-g.max_num..=g.max_num);
        if num == 0 && !zero_ok {
            continue;
        }
        let den = g.rng.gen_range(1..=g.max_den);
        return Rational::from((num, den));
    }
}

/// Affine form with at least one nonzero variable coefficient.
pub fn affine(g: &mut Gen, n: usize) -> AffineForm {
    loop {
        let v: Vec<Rational> = (0..=n).map(|_| small_q(g, true)).collect();
        if v[..n].iter().any(|c| *c != 0) {
            return AffineForm(v);
        }
    }
}

fn int_affine(g: &mut Gen, n: usize, range: i64) -> Vec<i64> {
    loop {
        let v: Vec<i64> = (0..=n).map(|_| g.rng.gen_range(-range..=range)).collect();
        if v[..n].iter().any(|c| *c != 0) {
            return v;
        }
    }
}

fn int_raw(v: &[i64]) -> RawTerm {
    let n = v.len() - 1;
    let mut parts: Vec<RawTerm> = (0..n)
        .filter(|&i| v[i] != 0)
        .map(|i| RawTerm::scale(v[i], RawTerm::var(i)))
        .collect();
    parts.push(RawTerm::constant(v[n]));
    RawTerm::Sum(parts)
}

pub fn oscillatory(g: &mut Gen, n: usize, depth: u32) -> NormalTerm {
    let t = g.term_in(n, depth.max(1));
    normal(&t.raw, n).oscillatory_part()
}

fn inequality(g: &mut Gen, n: usize, linear: bool) -> Literal {
    let depth = g.rng.gen_range(1..=g.max_depth);
    let t = oscillatory(g, n, depth);
    let q = if linear {
        affine(g, n)
    } else {
        AffineForm::constant(n, small_q(g, true) / Rational::from(2))
    };
    Literal::less(q, t)
}

fn divisibility(g: &mut Gen, n: usize) -> Literal {
    let k = Integer::from(g.rng.gen_range(2..=4));
    let p: Vec<Rational> = int_affine(g, n, 3)
        .into_iter()
        .map(Rational::from)
        .collect();
    Literal::divides(&k, &p).unwrap()
}

/// Clauses with a linear-sine equality, either a random one or one that
/// holds along a line (`sin P = sin Q`).
pub fn sine_equality_clause(g: &mut Gen, n: usize) -> Vec<Literal> {
    let eq = if g.rng.gen_bool(0.5) {
        let p = int_raw(&int_affine(g, n, 2));
        let q = int_raw(&int_affine(g, n, 2));
        let r = small_q(g, false);
        let raw = RawTerm::scale(r.clone(), RawTerm::sin(p.clone()))
            - RawTerm::scale(r, RawTerm::sin(q.clone()));
        let extra = if g.rng.gen_bool(0.3) {
            p - q
        } else {
            RawTerm::constant(0)
        };
        normal(&(raw + extra), n)
    } else {
        let (da, db) = (
            g.rng.gen_range(1..=g.max_depth),
            g.rng.gen_range(0..=g.max_depth),
        );
        let a = g.term_in(n, da);
        let b = g.term_in(n, db);
        normal(&(a.raw - b.raw), n)
    };
    let mut clause = vec![Literal::eq_zero(&eq)];
    if g.rng.gen_bool(0.4) {
        clause.push(inequality(g, n, true));
    }
    if g.rng.gen_bool(0.2) {
        let t = normal(&g.term_in(n, 1).raw, n);
        if !t.is_affine() {
            clause.push(Literal::neq_zero(&t));
        }
    }
    clause
}

pub fn linear_equality_clause(g: &mut Gen, n: usize) -> Vec<Literal> {
    let mut clause = Vec::new();
    let eqs = g.rng.gen_range(1..=n.min(2));
    for _ in 0..eqs {
        let v = int_affine(g, n, 4);
        let scale = Rational::from((1, g.rng.gen_range(1..=3)));
        clause.push(Literal::LinEq(
            AffineForm(v.into_iter().map(Rational::from).collect()).scale(&scale),
        ));
    }
    let linear = g.rng.gen_bool(0.5);
    clause.push(inequality(g, n, linear));
    if g.rng.gen_bool(0.3) {
        clause.push(Literal::LinNeq(affine(g, n)));
    }
    if g.rng.gen_bool(0.3) {
        clause.push(divisibility(g, n));
    }
    clause
}

pub fn linear_occurrence_clause(g: &mut Gen, n: usize) -> Vec<Literal> {
    let mut clause = Vec::new();
    for _ in 0..g.rng.gen_range(1..=2) {
        clause.push(inequality(g, n, true));
    }
    if g.rng.gen_bool(0.3) {
        clause.push(inequality(g, n, false));
    }
    if g.rng.gen_bool(0.3) {
        clause.push(divisibility(g, n));
    }
    clause
}

pub fn divisibility_clause(g: &mut Gen, n: usize) -> Vec<Literal> {
    let mut clause = Vec::new();
    for _ in 0..g.rng.gen_range(1..=2) {
        clause.push(divisibility(g, n));
    }
    for _ in 0..g.rng.gen_range(1..=2) {
        clause.push(inequality(g, n, false));
    }
    clause
}
