//! Disjunctions of linear equation/disequation systems over the rationals,
//! kept consistent and free of subsumed clauses.

use std::collections::HashSet;

use crate::arith::Rational;
use crate::formula::{AffineForm, Formula, Literal};

/// Equalities in reduced row echelon form plus disequalities reduced
/// modulo them, each scaled to a unit leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct System {
    arity: usize,
    eqs: Vec<Vec<Rational>>,
    neqs: Vec<Vec<Rational>>,
}

fn pivot(v: &[Rational], n: usize) -> Option<usize> {
    v[..n].iter().position(|c| *c != 0)
}

fn scaled_to_unit(mut v: Vec<Rational>, p: usize) -> Vec<Rational> {
    let lead = v[p].clone();
    for c in &mut v {
        *c /= &lead;
    }
    v
}

impl System {
    pub fn truth(arity: usize) -> System {
        System {
            arity,
            eqs: Vec::new(),
            neqs: Vec::new(),
        }
    }

    pub fn is_truth(&self) -> bool {
        self.eqs.is_empty() && self.neqs.is_empty()
    }

    fn reduce(&self, mut v: Vec<Rational>) -> Vec<Rational> {
        let n = self.arity;
        for e in &self.eqs {
            let p = pivot(e, n).expect("echelon rows have a pivot");
            if v[p] != 0 {
                let f = v[p].clone();
                for (a, b) in v.iter_mut().zip(e) {
                    *a -= Rational::from(&f * b);
                }
            }
        }
        v
    }

    /// Add `v·(x,1) = 0`; `None` when the system becomes inconsistent.
    pub fn with_eq(mut self, v: &[Rational]) -> Option<System> {
        let n = self.arity;
        let v = self.reduce(v.to_vec());
        let Some(p) = pivot(&v, n) else {
            return (v[n] == 0).then_some(self);
        };
        let v = scaled_to_unit(v, p);
        for e in &mut self.eqs {
            if e[p] != 0 {
                let f = e[p].clone();
                for (a, b) in e.iter_mut().zip(&v) {
                    *a -= Rational::from(&f * b);
                }
            }
        }
        self.eqs.push(v);
        self.eqs.sort_by_key(|e| pivot(e, n));
        let neqs = std::mem::take(&mut self.neqs);
        neqs.into_iter().try_fold(self, |s, d| s.with_neq(&d))
    }

    /// Add `v·(x,1) ≠ 0`; `None` when it contradicts the equalities.
    pub fn with_neq(mut self, v: &[Rational]) -> Option<System> {
        let n = self.arity;
        let v = self.reduce(v.to_vec());
        let Some(p) = pivot(&v, n) else {
            return (v[n] != 0).then_some(self);
        };
        let v = scaled_to_unit(v, p);
        if let Err(at) = self.neqs.binary_search(&v) {
            self.neqs.insert(at, v);
        }
        Some(self)
    }

    pub fn meet(&self, other: &System) -> Option<System> {
        let s = other
            .eqs
            .iter()
            .try_fold(self.clone(), |s, e| s.with_eq(e))?;
        other.neqs.iter().try_fold(s, |s, d| s.with_neq(d))
    }

    /// Every solution of `self` solves `other`.
    pub fn implies(&self, other: &System) -> bool {
        let n = self.arity;
        let zero = |v: &[Rational]| v.iter().all(|c| *c == 0);
        other.eqs.iter().all(|e| zero(&self.reduce(e.clone())))
            && other.neqs.iter().all(|d| {
                let r = self.reduce(d.clone());
                match pivot(&r, n) {
                    None => r[n] != 0,
                    Some(p) => self.neqs.binary_search(&scaled_to_unit(r, p)).is_ok(),
                }
            })
    }

    pub fn literals(&self) -> Vec<Literal> {
        let eqs = self
            .eqs
            .iter()
            .map(|e| Literal::eq_zero(&AffineForm(e.clone()).to_term()));
        let neqs = self
            .neqs
            .iter()
            .map(|d| Literal::neq_zero(&AffineForm(d.clone()).to_term()));
        eqs.chain(neqs).collect()
    }
}

/// A disjunction of [`System`]s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disjunction {
    arity: usize,
    systems: Vec<System>,
}

impl Disjunction {
    pub fn falsity(arity: usize) -> Disjunction {
        Disjunction {
            arity,
            systems: Vec::new(),
        }
    }

    pub fn truth(arity: usize) -> Disjunction {
        Disjunction::of(System::truth(arity))
    }

    pub fn of(s: System) -> Disjunction {
        Disjunction {
            arity: s.arity,
            systems: vec![s],
        }
    }

    pub fn eq(v: &[Rational]) -> Disjunction {
        let n = v.len() - 1;
        match System::truth(n).with_eq(v) {
            Some(s) => Disjunction::of(s),
            None => Disjunction::falsity(n),
        }
    }

    pub fn neq(v: &[Rational]) -> Disjunction {
        let n = v.len() - 1;
        match System::truth(n).with_neq(v) {
            Some(s) => Disjunction::of(s),
            None => Disjunction::falsity(n),
        }
    }

    pub fn systems(&self) -> &[System] {
        &self.systems
    }

    pub fn is_falsity(&self) -> bool {
        self.systems.is_empty()
    }

    /// Drop duplicates and systems implied by another one.
    fn simplify(mut systems: Vec<System>, arity: usize) -> Disjunction {
        let mut seen = HashSet::new();
        systems.retain(|s| seen.insert(s.clone()));
        if systems.iter().any(System::is_truth) {
            return Disjunction::truth(arity);
        }
        // fewer constraints first, so keepers are the weaker systems
        systems.sort_by_key(|s| s.eqs.len() + s.neqs.len());
        let mut kept: Vec<System> = Vec::new();
        for s in systems {
            if !kept.iter().any(|k| s.implies(k)) {
                kept.push(s);
            }
        }
        Disjunction {
            arity,
            systems: kept,
        }
    }

    pub fn or(&self, other: &Disjunction) -> Disjunction {
        let all = self.systems.iter().chain(&other.systems).cloned().collect();
        Disjunction::simplify(all, self.arity)
    }

    pub fn and(&self, other: &Disjunction) -> Disjunction {
        let mut out = Vec::new();
        for a in &self.systems {
            for b in &other.systems {
                if let Some(m) = a.meet(b) {
                    out.push(m);
                }
            }
        }
        Disjunction::simplify(out, self.arity)
    }

    pub fn complement(&self) -> Disjunction {
        let mut acc = Disjunction::truth(self.arity);
        for s in &self.systems {
            let mut flipped = Disjunction::falsity(self.arity);
            for e in &s.eqs {
                flipped = flipped.or(&Disjunction::neq(e));
            }
            for d in &s.neqs {
                flipped = flipped.or(&Disjunction::eq(d));
            }
            acc = acc.and(&flipped);
            if acc.is_falsity() {
                break;
            }
        }
        acc
    }

    pub fn to_formula(&self) -> Formula {
        if self.systems.is_empty() {
            return Formula::falsity();
        }
        Formula::disj(
            self.systems
                .iter()
                .map(|s| Formula::conj(s.literals().into_iter().map(Formula::Leaf))),
        )
    }
}
