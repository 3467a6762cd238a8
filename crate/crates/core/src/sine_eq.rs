//! Elimination of linear-sine equalities.
//!
//! An equality `p0·(x,1) + Σ r_i sin(P_i) = 0` holds at a rational point
//! exactly when its linear part vanishes and the outer coefficients cancel
//! inside every class of the relation "equal up to sign" on the arguments
//! `{0, ±P_1, …, ±P_K}` (assuming Schanuel's conjecture). Enumerating all
//! such relations and describing each by equalities and disequalities
//! between arguments of smaller sine depth yields a purely linear formula.

use std::collections::HashMap;

use crate::arith::Rational;
use crate::error::Error;
use crate::formula::{Formula, Literal};
use crate::interval::eval_ground;
use crate::lineq::Disjunction;
use crate::term::NormalTerm;

/// Default bound on the number of summands whose relations are enumerated.
pub const DEFAULT_CAP: usize = 8;

/// A negation-closed partition of `{0, ±1, …, ±K}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CongruenceRelation {
    k: usize,
    /// class label per element, elements ordered `0, +1, -1, +2, -2, …`;
    /// labels numbered by first occurrence
    labels: Vec<usize>,
}

/// Position of a signed index in the element order `0, +1, -1, +2, …`.
fn slot(a: i64) -> usize {
    if a == 0 {
        0
    } else if a > 0 {
        2 * a as usize - 1
    } else {
        2 * (-a) as usize
    }
}

fn signed(slot: usize) -> i64 {
    if slot == 0 {
        0
    } else if slot % 2 == 1 {
        slot.div_ceil(2) as i64
    } else {
        -((slot / 2) as i64)
    }
}

impl CongruenceRelation {
    /// Build from arbitrary class labels indexed by slot; `None` unless the
    /// partition is negation-closed.
    pub fn from_labels(k: usize, labels: &[usize]) -> Option<CongruenceRelation> {
        if labels.len() != 2 * k + 1 {
            return None;
        }
        let mut renumber = HashMap::new();
        let labels: Vec<usize> = labels
            .iter()
            .map(|l| {
                let next = renumber.len();
                *renumber.entry(*l).or_insert(next)
            })
            .collect();
        let rel = CongruenceRelation { k, labels };
        rel.is_negation_closed().then_some(rel)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn elements(&self) -> impl Iterator<Item = i64> {
        (0..2 * self.k + 1).map(signed)
    }

    pub fn related(&self, a: i64, b: i64) -> bool {
        self.labels[slot(a)] == self.labels[slot(b)]
    }

    /// `a ~ b  iff  -a ~ -b`.
    pub fn is_negation_closed(&self) -> bool {
        let els: Vec<i64> = self.elements().collect();
        els.iter().all(|&a| {
            els.iter()
                .all(|&b| self.related(a, b) == self.related(-a, -b))
        })
    }

    /// Classes in order of their smallest element, members ascending in the
    /// element order.
    pub fn classes(&self) -> Vec<Vec<i64>> {
        let count = self.labels.iter().max().map_or(0, |m| m + 1);
        let mut out = vec![Vec::new(); count];
        for (s, l) in self.labels.iter().enumerate() {
            out[*l].push(signed(s));
        }
        out
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Block {
    Zero,
    SelfNegated,
    /// `(label of B, label of -B)`
    Pair(usize, usize),
}

/// All negation-closed partitions of `{0, ±1, …, ±k}` in a fixed order.
pub fn enumerate_congruences(k: usize, cap: usize) -> Result<Vec<CongruenceRelation>, Error> {
    if k > cap {
        return Err(Error::CongruenceCap { k, cap });
    }
    let mut out = Vec::new();
    let mut labels = vec![0; 2 * k + 1];
    let mut blocks = vec![Block::Zero];
    extend(1, k, &mut labels, &mut blocks, &mut out);
    Ok(out)
}

fn extend(
    i: usize,
    k: usize,
    labels: &mut Vec<usize>,
    blocks: &mut Vec<Block>,
    out: &mut Vec<CongruenceRelation>,
) {
    if i > k {
        out.push(CongruenceRelation::from_labels(k, labels).expect("closed by construction"));
        return;
    }
    let (pos, neg) = (slot(i as i64), slot(-(i as i64)));
    let existing = blocks.len();
    for b in 0..existing {
        match blocks[b] {
            Block::Zero | Block::SelfNegated => {
                labels[pos] = b;
                labels[neg] = b;
                extend(i + 1, k, labels, blocks, out);
            }
            Block::Pair(this, other) if this == b && this < other => {
                for (p, n) in [(this, other), (other, this)] {
                    labels[pos] = p;
                    labels[neg] = n;
                    extend(i + 1, k, labels, blocks, out);
                }
            }
            Block::Pair(..) => {}
        }
    }
    blocks.push(Block::SelfNegated);
    labels[pos] = existing;
    labels[neg] = existing;
    extend(i + 1, k, labels, blocks, out);
    blocks.pop();

    blocks.push(Block::Pair(existing, existing + 1));
    blocks.push(Block::Pair(existing + 1, existing));
    labels[pos] = existing;
    labels[neg] = existing + 1;
    extend(i + 1, k, labels, blocks, out);
    blocks.truncate(existing);
}

/// Outer coefficients `r_1..r_K` of an equality, all nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarCondition {
    coeffs: Vec<Rational>,
}

impl StarCondition {
    pub fn new(coeffs: Vec<Rational>) -> Option<StarCondition> {
        coeffs
            .iter()
            .all(|c| *c != 0)
            .then_some(StarCondition { coeffs })
    }

    pub fn of_term(t: &NormalTerm) -> StarCondition {
        StarCondition {
            coeffs: t.summands().iter().map(|s| s.coeff.clone()).collect(),
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }
}

/// For every `i`: `Σ_{j: +j ~ +i} r_j - Σ_{j: -j ~ +i} r_j = 0`.
pub fn satisfies_star(rel: &CongruenceRelation, r: &StarCondition) -> Result<bool, Error> {
    let k = rel.k();
    if r.coeffs.len() != k {
        return Err(Error::Length {
            expected: k,
            found: r.coeffs.len(),
        });
    }
    for i in 1..=k as i64 {
        let mut sum = Rational::new();
        for (j, rj) in (1..=k as i64).zip(&r.coeffs) {
            if rel.related(j, i) {
                sum += rj;
            }
            if rel.related(-j, i) {
                sum -= rj;
            }
        }
        if sum != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Term for a signed element: `0`, `P_i` or `-P_i`.
fn element_term(a: i64, args: &[NormalTerm], arity: usize) -> NormalTerm {
    match a {
        0 => NormalTerm::zero(arity),
        a if a > 0 => args[a as usize - 1].clone(),
        a => args[(-a) as usize - 1].neg(),
    }
}

/// Equalities and disequalities between arguments that pin down `rel`: the
/// representatives of distinct classes differ and every member equals its
/// class representative. Of two classes `C` and `-C` only the one with the
/// smaller representative is described.
pub fn theta_formula(rel: &CongruenceRelation, args: &[NormalTerm], arity: usize) -> Formula {
    assert_eq!(args.len(), rel.k(), "one argument per summand");
    let mut described: Vec<Vec<i64>> = Vec::new();
    for class in rel.classes() {
        let mirror = -class[0];
        if !class.contains(&mirror) && described.iter().any(|c| c.contains(&mirror)) {
            continue;
        }
        described.push(class);
    }
    let mut parts = Vec::new();
    for (i, class) in described.iter().enumerate() {
        let rep = element_term(class[0], args, arity);
        for other in &described[..i] {
            let d = rep.sub(&element_term(other[0], args, arity));
            parts.push(Formula::Leaf(Literal::neq_zero(&d)));
        }
        for &c in &class[1..] {
            let d = rep.sub(&element_term(c, args, arity));
            parts.push(Formula::Leaf(Literal::eq_zero(&d)));
        }
    }
    let mut seen = Vec::new();
    parts.retain(|p| {
        if seen.contains(p) {
            false
        } else {
            seen.push(p.clone());
            true
        }
    });
    Formula::conj(parts)
}

/// Rewrites `t = 0` into a positive combination of linear equalities and
/// disequalities. Equivalent at every rational point under Schanuel's
/// conjecture.
pub struct SineEqEliminator {
    cap: usize,
    memo: HashMap<NormalTerm, Disjunction>,
}

impl SineEqEliminator {
    pub fn new(cap: usize) -> SineEqEliminator {
        SineEqEliminator {
            cap,
            memo: HashMap::new(),
        }
    }

    pub fn eliminate(&mut self, t: &NormalTerm) -> Result<Formula, Error> {
        Ok(self.eliminate_systems(t)?.to_formula())
    }

    /// The same result as a disjunction of consistent linear systems.
    pub fn eliminate_systems(&mut self, t: &NormalTerm) -> Result<Disjunction, Error> {
        if let Some(f) = self.memo.get(t) {
            return Ok(f.clone());
        }
        let f = self.eliminate_uncached(t)?;
        self.memo.insert(t.clone(), f.clone());
        Ok(f)
    }

    fn eliminate_uncached(&mut self, t: &NormalTerm) -> Result<Disjunction, Error> {
        let n = t.arity();
        let linear = Disjunction::eq(t.linear());
        let k = t.summands().len();
        if k == 0 || linear.is_falsity() {
            return Ok(linear);
        }
        let depth = t.sine_depth();
        let args: Vec<NormalTerm> = (0..k).map(|i| t.argument(i)).collect();
        let star = StarCondition::of_term(t);
        let mut disjuncts = Disjunction::falsity(n);
        for rel in enumerate_congruences(k, self.cap)? {
            if !satisfies_star(&rel, &star)? {
                continue;
            }
            let theta = theta_formula(&rel, &args, n);
            let mut reduced = linear.clone();
            for l in theta.literals() {
                let g = l.term();
                assert!(
                    g.sine_depth() < depth,
                    "argument equalities must be shallower"
                );
                let part = match l {
                    Literal::LinSineEq { .. } | Literal::LinEq(_) => self.eliminate_systems(&g)?,
                    Literal::LinSineNeq { .. } | Literal::LinNeq(_) => {
                        self.eliminate_systems(&g)?.complement()
                    }
                    other => unreachable!("theta contains {other:?}"),
                };
                reduced = reduced.and(&part);
                if reduced.is_falsity() {
                    break;
                }
            }
            disjuncts = disjuncts.or(&reduced);
        }
        Ok(disjuncts)
    }
}

/// Eliminate a single `LinSineEq` (or `LinEq`) literal.
pub fn eliminate_sine_equality(lit: &Literal, cap: usize) -> Result<Formula, Error> {
    match lit {
        Literal::LinSineEq { .. } | Literal::LinEq(_) => {
            SineEqEliminator::new(cap).eliminate(&lit.term())
        }
        other => panic!("expected an equality, got {}", other.kind()),
    }
}

/// Whether a variable-free term is exactly zero, by the same criterion
/// evaluated at the single point: the linear part vanishes and the actual
/// relation between the arguments satisfies the coefficient condition.
/// Argument comparisons recurse on strictly shallower terms.
pub fn ground_is_zero(t: &NormalTerm) -> bool {
    assert!(t.is_ground(), "ground term expected");
    if t.summands().is_empty() {
        return *t.constant_term() == 0;
    }
    if *t.constant_term() != 0 || eval_ground(t, 53).is_some() {
        return false;
    }
    let n = t.arity();
    let k = t.summands().len();
    let args: Vec<NormalTerm> = (0..k).map(|i| t.argument(i)).collect();
    let size = 2 * k + 1;
    let mut labels: Vec<usize> = (0..size).collect();
    for a in 0..size {
        if labels[a] != a {
            continue;
        }
        #[allow(clippy::needless_range_loop)]
        for b in a + 1..size {
            if labels[b] != b {
                continue;
            }
            let d = element_term(signed(a), &args, n).sub(&element_term(signed(b), &args, n));
            if ground_is_zero(&d) {
                labels[b] = a;
            }
        }
    }
    match CongruenceRelation::from_labels(k, &labels) {
        Some(rel) => satisfies_star(&rel, &StarCondition::of_term(t)).expect("matching length"),
        // equality up to sign is an equivalence, so this only happens if
        // the zero tests contradict each other
        None => unreachable!("relation between ground arguments is not negation-closed"),
    }
}
