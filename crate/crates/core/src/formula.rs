//! Literals, positive Boolean combinations and disjunctive normal form.

use std::collections::HashSet;
use std::fmt;

use crate::arith::{denominator_lcm, leading_sign, Integer, Rational};
use crate::term::{single_substitution, NormalTerm};

/// Coefficients `p` of the affine form `p·(x,1)`; the constant comes last.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineForm(pub Vec<Rational>);

impl AffineForm {
    pub fn zero(arity: usize) -> AffineForm {
        AffineForm(vec![Rational::new(); arity + 1])
    }

    pub fn constant(arity: usize, c: impl Into<Rational>) -> AffineForm {
        let mut f = AffineForm::zero(arity);
        f.0[arity] = c.into();
        f
    }

    pub fn var(arity: usize, i: usize) -> AffineForm {
        let mut f = AffineForm::zero(arity);
        f.0[i] = Rational::from(1);
        f
    }

    pub fn from_ints(coeffs: &[i64]) -> AffineForm {
        AffineForm(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn arity(&self) -> usize {
        self.0.len() - 1
    }

    pub fn var_coeffs(&self) -> &[Rational] {
        &self.0[..self.arity()]
    }

    pub fn constant_term(&self) -> &Rational {
        &self.0[self.arity()]
    }

    pub fn is_ground(&self) -> bool {
        self.var_coeffs().iter().all(|c| *c == 0)
    }

    pub fn neg(&self) -> AffineForm {
        AffineForm(self.0.iter().map(|c| Rational::from(-c)).collect())
    }

    pub fn scale(&self, q: &Rational) -> AffineForm {
        AffineForm(self.0.iter().map(|c| Rational::from(c * q)).collect())
    }

    pub fn add(&self, other: &AffineForm) -> AffineForm {
        AffineForm(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| Rational::from(a + b))
                .collect(),
        )
    }

    pub fn shift(&self, c: &Rational) -> AffineForm {
        let mut f = self.clone();
        let n = f.arity();
        f.0[n] += c;
        f
    }

    pub fn to_term(&self) -> NormalTerm {
        NormalTerm::affine(&self.0)
    }

    pub fn substitute(&self, rows: &[Vec<Rational>]) -> AffineForm {
        let n = self.arity();
        let mut out = AffineForm::constant(n, self.constant_term().clone());
        for (c, row) in self.var_coeffs().iter().zip(rows) {
            if *c == 0 {
                continue;
            }
            for (acc, r) in out.0.iter_mut().zip(row) {
                *acc += Rational::from(c * r);
            }
        }
        out
    }

    pub fn eval(&self, point: &[Integer]) -> Rational {
        let mut acc = self.constant_term().clone();
        for (c, z) in self.var_coeffs().iter().zip(point) {
            acc += Rational::from(c * z);
        }
        acc
    }
}

/// The literal kinds of the language plus divisibility predicates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Literal {
    /// `q·(x,1) < t`, `t` oscillatory, some variable coefficient of `q` nonzero
    LinSineLess { q: AffineForm, t: NormalTerm },
    /// `c < t`, `t` oscillatory
    OscLess { c: Rational, t: NormalTerm },
    /// `q·(x,1) + t = 0`, `t` oscillatory and nonzero
    LinSineEq { q: AffineForm, t: NormalTerm },
    /// `q·(x,1) = 0`
    LinEq(AffineForm),
    /// `q·(x,1) + t ≠ 0`
    LinSineNeq { q: AffineForm, t: NormalTerm },
    /// `q·(x,1) ≠ 0`
    LinNeq(AffineForm),
    /// `k` divides `p·(x,1)`, `k ≥ 2`
    Div { k: Integer, p: Vec<Integer> },
}

impl Literal {
    /// `q·(x,1) < t`, stored as [`Literal::OscLess`] when `q` has no
    /// variable part.
    pub fn less(q: AffineForm, t: NormalTerm) -> Literal {
        assert!(t.is_oscillatory(), "right-hand side must be oscillatory");
        assert_eq!(q.arity(), t.arity(), "arity mismatch");
        if q.is_ground() {
            Literal::OscLess {
                c: q.constant_term().clone(),
                t,
            }
        } else {
            Literal::LinSineLess { q, t }
        }
    }

    /// `lhs < rhs` for arbitrary normal terms.
    pub fn lt(lhs: &NormalTerm, rhs: &NormalTerm) -> Literal {
        Literal::gap_positive(&rhs.sub(lhs))
    }

    /// `0 < g`.
    pub fn gap_positive(g: &NormalTerm) -> Literal {
        let q = AffineForm(g.linear().to_vec()).neg();
        Literal::less(q, g.oscillatory_part())
    }

    /// `t = 0`, oriented so that the leading coefficient is positive.
    pub fn eq_zero(t: &NormalTerm) -> Literal {
        let t = orient(t);
        let q = AffineForm(t.linear().to_vec());
        if t.is_affine() {
            Literal::LinEq(q)
        } else {
            Literal::LinSineEq {
                q,
                t: t.oscillatory_part(),
            }
        }
    }

    /// `t ≠ 0`, oriented like [`Literal::eq_zero`].
    pub fn neq_zero(t: &NormalTerm) -> Literal {
        match Literal::eq_zero(t) {
            Literal::LinEq(q) => Literal::LinNeq(q),
            Literal::LinSineEq { q, t } => Literal::LinSineNeq { q, t },
            _ => unreachable!(),
        }
    }

    /// `k | p·(x,1)` for a rational affine form whose value is an integer
    /// wherever the predicate is meant to hold. Rational coefficients are
    /// cleared by scaling `k` and `p` together. `None` when `k = 1`.
    pub fn divides(k: &Integer, p: &[Rational]) -> Option<Literal> {
        assert!(*k >= 1, "modulus must be positive");
        let l = denominator_lcm(p);
        let k = Integer::from(k * &l);
        if k == 1 {
            return None;
        }
        let p = p
            .iter()
            .map(|c| Rational::from(c * &l).into_numer_denom().0)
            .collect();
        Some(Literal::Div { k, p })
    }

    /// `1 < 0`.
    pub fn falsum(arity: usize) -> Literal {
        Literal::OscLess {
            c: Rational::from(1),
            t: NormalTerm::zero(arity),
        }
    }

    /// `-1 < 0`.
    pub fn verum(arity: usize) -> Literal {
        Literal::OscLess {
            c: Rational::from(-1),
            t: NormalTerm::zero(arity),
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Literal::LinSineLess { q, .. }
            | Literal::LinSineEq { q, .. }
            | Literal::LinSineNeq { q, .. }
            | Literal::LinEq(q)
            | Literal::LinNeq(q) => q.arity(),
            Literal::OscLess { t, .. } => t.arity(),
            Literal::Div { p, .. } => p.len() - 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Literal::LinSineLess { .. } => "LinSineLess",
            Literal::OscLess { .. } => "OscLess",
            Literal::LinSineEq { .. } => "LinSineEq",
            Literal::LinEq(_) => "LinEq",
            Literal::LinSineNeq { .. } => "LinSineNeq",
            Literal::LinNeq(_) => "LinNeq",
            Literal::Div { .. } => "Div",
        }
    }

    /// For an inequality, the term `t - q·(x,1)` that is positive exactly
    /// where the literal holds; for (dis)equalities the term compared with 0;
    /// for `Div` the affine form.
    pub fn term(&self) -> NormalTerm {
        match self {
            Literal::LinSineLess { q, t } => t.sub(&q.to_term()),
            Literal::OscLess { c, t } => t.sub(&NormalTerm::constant(t.arity(), c.clone())),
            Literal::LinSineEq { q, t } | Literal::LinSineNeq { q, t } => q.to_term().add(t),
            Literal::LinEq(q) | Literal::LinNeq(q) => q.to_term(),
            Literal::Div { p, .. } => NormalTerm::affine(
                &p.iter()
                    .map(|c| Rational::from(c.clone()))
                    .collect::<Vec<_>>(),
            ),
        }
    }

    pub fn substitute(&self, rows: &[Vec<Rational>]) -> Literal {
        match self {
            Literal::LinSineLess { q, t } => Literal::less(q.substitute(rows), t.substitute(rows)),
            Literal::OscLess { c, t } => Literal::OscLess {
                c: c.clone(),
                t: t.substitute(rows),
            },
            Literal::LinSineEq { .. } => Literal::eq_zero(&self.term().substitute(rows)),
            Literal::LinSineNeq { .. } => Literal::neq_zero(&self.term().substitute(rows)),
            Literal::LinEq(q) => Literal::LinEq(q.substitute(rows)),
            Literal::LinNeq(q) => Literal::LinNeq(q.substitute(rows)),
            Literal::Div { k, p } => {
                let p: Vec<Rational> = p.iter().map(|c| Rational::from(c.clone())).collect();
                let p = AffineForm(p).substitute(rows);
                Literal::divides(k, &p.0).expect("modulus stays at least 2")
            }
        }
    }

    pub fn substitute_var(&self, k: usize, q: &[Rational]) -> Literal {
        self.substitute(&single_substitution(self.arity(), k, q))
    }

    pub fn occurring_vars(&self) -> Vec<bool> {
        match self {
            Literal::LinSineLess { q, t }
            | Literal::LinSineEq { q, t }
            | Literal::LinSineNeq { q, t } => t
                .occurring_vars()
                .into_iter()
                .zip(q.var_coeffs())
                .map(|(o, c)| o || *c != 0)
                .collect(),
            Literal::OscLess { t, .. } => t.occurring_vars(),
            Literal::LinEq(q) | Literal::LinNeq(q) => {
                q.var_coeffs().iter().map(|c| *c != 0).collect()
            }
            Literal::Div { p, .. } => p[..p.len() - 1].iter().map(|c| *c != 0).collect(),
        }
    }

    pub fn is_ground(&self) -> bool {
        !self.occurring_vars().into_iter().any(|b| b)
    }

    /// Truth value when it follows without any numerics: zero-term
    /// inequalities, ground linear (dis)equalities and ground divisibility.
    pub fn syntactic_truth(&self) -> Option<bool> {
        match self {
            Literal::OscLess { c, t } if t.is_zero() => Some(*c < 0),
            Literal::LinEq(q) if q.is_ground() => Some(*q.constant_term() == 0),
            Literal::LinNeq(q) if q.is_ground() => Some(*q.constant_term() != 0),
            Literal::Div { k, p } if p[..p.len() - 1].iter().all(|c| *c == 0) => {
                Some(p[p.len() - 1].is_divisible(k))
            }
            _ => None,
        }
    }

    /// The negation as a positive formula.
    pub fn negate(&self) -> Formula {
        let n = self.arity();
        match self {
            Literal::LinEq(q) => Formula::Leaf(Literal::LinNeq(q.clone())),
            Literal::LinNeq(q) => Formula::Leaf(Literal::LinEq(q.clone())),
            Literal::LinSineEq { q, t } => Formula::Leaf(Literal::LinSineNeq {
                q: q.clone(),
                t: t.clone(),
            }),
            Literal::LinSineNeq { q, t } => Formula::Leaf(Literal::LinSineEq {
                q: q.clone(),
                t: t.clone(),
            }),
            Literal::LinSineLess { .. } | Literal::OscLess { .. } => {
                // not (0 < g)  <=>  g < 0  or  g = 0
                let g = self.term();
                Formula::Or(vec![
                    Formula::Leaf(Literal::gap_positive(&g.neg())),
                    Formula::Leaf(Literal::eq_zero(&g)),
                ])
            }
            Literal::Div { k, p } => {
                let k_usize = k.to_usize().expect("modulus fits in memory");
                let mut parts = Vec::with_capacity(k_usize - 1);
                for r in 1..k_usize {
                    let mut p = p.clone();
                    p[n] -= r;
                    parts.push(Formula::Leaf(Literal::Div { k: k.clone(), p }));
                }
                Formula::disj(parts)
            }
        }
    }
}

/// Flip the sign so that the first nonzero among the variable
/// coefficients, the outer sine coefficients and the constant is positive.
fn orient(t: &NormalTerm) -> NormalTerm {
    let n = t.arity();
    let key = t.linear()[..n]
        .iter()
        .chain(t.summands().iter().map(|s| &s.coeff))
        .chain(std::iter::once(t.constant_term()));
    if leading_sign(key) < 0 {
        t.neg()
    } else {
        t.clone()
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = crate::syntax::default_names(self.arity());
        f.write_str(&crate::syntax::print_literal(self, &names))
    }
}

/// A negation-free Boolean combination of literals. `And(vec![])` is true
/// and `Or(vec![])` is false.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Leaf(Literal),
}

impl Formula {
    pub fn truth() -> Formula {
        Formula::And(Vec::new())
    }

    pub fn falsity() -> Formula {
        Formula::Or(Vec::new())
    }

    pub fn is_truth(&self) -> bool {
        matches!(self, Formula::And(v) if v.is_empty())
    }

    pub fn is_falsity(&self) -> bool {
        matches!(self, Formula::Or(v) if v.is_empty())
    }

    /// Conjunction that flattens nested conjunctions and absorbs constants.
    pub fn conj(parts: impl IntoIterator<Item = Formula>) -> Formula {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Formula::And(v) => out.extend(v),
                p if p.is_falsity() => return Formula::falsity(),
                p => out.push(p),
            }
        }
        if out.len() == 1 {
            out.pop().unwrap()
        } else {
            Formula::And(out)
        }
    }

    /// Disjunction that flattens nested disjunctions and absorbs constants.
    pub fn disj(parts: impl IntoIterator<Item = Formula>) -> Formula {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Formula::Or(v) => out.extend(v),
                p if p.is_truth() => return Formula::truth(),
                p => out.push(p),
            }
        }
        if out.len() == 1 {
            out.pop().unwrap()
        } else {
            Formula::Or(out)
        }
    }

    pub fn literals(&self) -> Vec<&Literal> {
        let mut out = Vec::new();
        self.visit(&mut |l| out.push(l));
        out
    }

    fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Literal)) {
        match self {
            Formula::And(v) | Formula::Or(v) => v.iter().for_each(|c| c.visit(f)),
            Formula::Leaf(l) => f(l),
        }
    }

    /// Replace every leaf by a formula, rebuilding with the simplifying
    /// constructors.
    pub fn try_map_leaves<E>(
        &self,
        f: &mut impl FnMut(&Literal) -> Result<Formula, E>,
    ) -> Result<Formula, E> {
        Ok(match self {
            Formula::And(v) => Formula::conj(
                v.iter()
                    .map(|c| c.try_map_leaves(f))
                    .collect::<Result<Vec<_>, E>>()?,
            ),
            Formula::Or(v) => Formula::disj(
                v.iter()
                    .map(|c| c.try_map_leaves(f))
                    .collect::<Result<Vec<_>, E>>()?,
            ),
            Formula::Leaf(l) => f(l)?,
        })
    }

    pub fn map_leaves(&self, f: &mut impl FnMut(&Literal) -> Formula) -> Formula {
        self.try_map_leaves::<std::convert::Infallible>(&mut |l| Ok(f(l)))
            .unwrap_or_else(|e| match e {})
    }

    /// Replace `x_k` by `q·(x,1)` everywhere.
    pub fn substitute(&self, k: usize, q: &[Rational]) -> Formula {
        self.map_leaves(&mut |l| Formula::Leaf(l.substitute_var(k, q)))
    }

    pub fn substitute_all(&self, rows: &[Vec<Rational>]) -> Formula {
        self.map_leaves(&mut |l| Formula::Leaf(l.substitute(rows)))
    }

    /// Negation pushed to the leaves.
    pub fn complement(&self) -> Formula {
        match self {
            Formula::And(v) => Formula::disj(v.iter().map(Formula::complement)),
            Formula::Or(v) => Formula::conj(v.iter().map(Formula::complement)),
            Formula::Leaf(l) => l.negate(),
        }
    }

    /// Evaluate under a truth assignment of the literals.
    pub fn eval(&self, val: &mut impl FnMut(&Literal) -> bool) -> bool {
        match self {
            Formula::And(v) => v.iter().all(|c| c.eval(val)),
            Formula::Or(v) => v.iter().any(|c| c.eval(val)),
            Formula::Leaf(l) => val(l),
        }
    }

    /// Collapse one-element connectives.
    pub fn simplify_structure(&self) -> Formula {
        match self {
            Formula::And(v) | Formula::Or(v) if v.len() == 1 => v[0].simplify_structure(),
            Formula::And(v) => Formula::And(v.iter().map(Formula::simplify_structure).collect()),
            Formula::Or(v) => Formula::Or(v.iter().map(Formula::simplify_structure).collect()),
            Formula::Leaf(l) => Formula::Leaf(l.clone()),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arity = self.literals().first().map_or(0, |l| l.arity());
        let names = crate::syntax::default_names(arity);
        f.write_str(&crate::syntax::print_formula(self, &names))
    }
}

/// A disjunction of conjunctive clauses.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dnf {
    pub clauses: Vec<Vec<Literal>>,
}

impl Dnf {
    pub fn to_formula(&self) -> Formula {
        Formula::disj(
            self.clauses
                .iter()
                .map(|c| Formula::conj(c.iter().cloned().map(Formula::Leaf))),
        )
    }

    pub fn literal_count(&self) -> usize {
        self.clauses.iter().map(Vec::len).sum()
    }
}

/// Distribute conjunctions over disjunctions. Literals are deduplicated
/// inside each clause and clauses with the same literal set are kept once.
pub fn to_dnf(f: &Formula) -> Dnf {
    let clauses = dnf_clauses(f);
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(clauses.len());
    for c in clauses {
        let mut key = c.clone();
        key.sort();
        if seen.insert(key) {
            out.push(c);
        }
    }
    Dnf { clauses: out }
}

fn dnf_clauses(f: &Formula) -> Vec<Vec<Literal>> {
    match f {
        Formula::Leaf(l) => vec![vec![l.clone()]],
        Formula::Or(v) => v.iter().flat_map(dnf_clauses).collect(),
        Formula::And(v) => {
            let mut acc: Vec<Vec<Literal>> = vec![Vec::new()];
            for child in v {
                let parts = dnf_clauses(child);
                let mut next = Vec::with_capacity(acc.len() * parts.len());
                for a in &acc {
                    for p in &parts {
                        let mut c = a.clone();
                        for l in p {
                            if !c.contains(l) {
                                c.push(l.clone());
                            }
                        }
                        next.push(c);
                    }
                }
                acc = next;
            }
            acc
        }
    }
}
