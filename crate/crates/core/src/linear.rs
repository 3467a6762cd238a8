//! Presburger-style reductions: linear equalities and disequalities,
//! linear occurrences of variables in inequalities, and divisibility
//! predicates.
//!
//! Every reduction returns its result already split into conjunctive
//! [`Branch`]es. Each branch carries the substitution that maps its
//! variables back to the variables of the input, so a witness found at the
//! end of the pipeline can be transported to the original sentence.

use rug::ops::RemRounding;

use crate::arith::{ceil, denominator_lcm, lcm_all, rational_gcd, Integer, Rational};
use crate::formula::{AffineForm, Formula, Literal};
use crate::term::{single_substitution, NormalTerm};

/// The values an affine form takes on `ℤⁿ` inside `[lo, hi)`, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelSet {
    pub values: Vec<Rational>,
}

impl LevelSet {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Greatest common divisor of the variable coefficients, 0 when there are
/// none or all vanish.
pub fn step(f: &AffineForm) -> Rational {
    rational_gcd(f.var_coeffs()).unwrap_or_default()
}

pub fn level_set(f: &AffineForm, lo: &Rational, hi: &Rational) -> LevelSet {
    assert!(lo <= hi, "empty generating interval");
    let g = step(f);
    let c = f.constant_term();
    if g == 0 {
        let values = if c >= lo && c < hi {
            vec![c.clone()]
        } else {
            Vec::new()
        };
        return LevelSet { values };
    }
    // first k with k·g + c >= lo
    let mut k = ceil(&(Rational::from(lo - c) / &g));
    let mut values = Vec::new();
    loop {
        let v = Rational::from(k.clone()) * &g + c;
        if v >= *hi {
            break;
        }
        values.push(v);
        k += 1;
    }
    LevelSet { values }
}

/// An affine substitution `x_i ↦ rows[i]·(z,1)` from the variables of a
/// reduced clause back to the variables it was derived from.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    rows: Vec<Vec<Rational>>,
}

impl AffineMap {
    pub fn identity(n: usize) -> AffineMap {
        AffineMap {
            rows: (0..n).map(|i| AffineForm::var(n, i).0).collect(),
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> AffineMap {
        let n = rows.len();
        assert!(
            rows.iter().all(|r| r.len() == n + 1),
            "rows must have n+1 entries"
        );
        AffineMap { rows }
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn arity(&self) -> usize {
        self.rows.len()
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn then(&self, inner: &AffineMap) -> AffineMap {
        AffineMap {
            rows: self
                .rows
                .iter()
                .map(|r| AffineForm(r.clone()).substitute(&inner.rows).0)
                .collect(),
        }
    }

    pub fn apply(&self, z: &[Integer]) -> Vec<Rational> {
        self.rows
            .iter()
            .map(|r| AffineForm(r.clone()).eval(z))
            .collect()
    }

    /// `apply` for maps known to send integers to integers on the points of
    /// interest; `None` if some coordinate is fractional.
    pub fn apply_integral(&self, z: &[Integer]) -> Option<Vec<Integer>> {
        self.apply(z)
            .into_iter()
            .map(|q| {
                if *q.denom() == 1 {
                    Some(q.into_numer_denom().0)
                } else {
                    None
                }
            })
            .collect()
    }
}

/// One conjunctive clause of a reduction.
///
/// `side` holds pure linear inequalities `q·(x,1) < 0` that were dropped
/// from `clause` because they cannot affect satisfiability (their solution
/// set contains arbitrarily large cubes). They still constrain witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub clause: Vec<Literal>,
    pub side: Vec<Literal>,
    pub map: AffineMap,
}

impl Branch {
    pub fn new(clause: Vec<Literal>, arity: usize) -> Branch {
        Branch {
            clause,
            side: Vec::new(),
            map: AffineMap::identity(arity),
        }
    }

    /// The clause as a formula; the empty clause is `-1 < 0`.
    pub fn to_formula(&self) -> Formula {
        if self.clause.is_empty() {
            return Formula::Leaf(Literal::verum(self.map.arity()));
        }
        Formula::conj(self.clause.iter().cloned().map(Formula::Leaf))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub arity: usize,
    pub branches: Vec<Branch>,
}

impl Reduction {
    pub fn to_formula(&self) -> Formula {
        if self.branches.is_empty() {
            return Formula::Leaf(Literal::falsum(self.arity));
        }
        Formula::disj(self.branches.iter().map(Branch::to_formula))
    }

    /// Drop literals that are syntactically true and branches containing a
    /// syntactically false literal.
    pub fn pruned(mut self) -> Reduction {
        self.branches = self
            .branches
            .into_iter()
            .filter_map(|mut b| {
                b.clause = prune_clause(b.clause)?;
                b.side = prune_clause(b.side)?;
                Some(b)
            })
            .collect();
        self
    }
}

fn prune_clause(clause: Vec<Literal>) -> Option<Vec<Literal>> {
    let mut out = Vec::with_capacity(clause.len());
    for l in clause {
        match l.syntactic_truth() {
            Some(true) => {}
            Some(false) => return None,
            None => {
                if !out.contains(&l) {
                    out.push(l)
                }
            }
        }
    }
    Some(out)
}

fn substitute_all(lits: &[Literal], rows: &[Vec<Rational>]) -> Vec<Literal> {
    lits.iter().map(|l| l.substitute(rows)).collect()
}

/// `q·(x,1) < 0`.
fn negative(q: AffineForm) -> Literal {
    let n = q.arity();
    Literal::less(q, NormalTerm::zero(n))
}

fn is_pure_linear(l: &Literal) -> bool {
    matches!(l, Literal::LinSineLess { t, .. } if t.is_zero())
}

/// Inequalities with a linear part and a nonzero right-hand side.
fn is_linear_sine(l: &Literal) -> bool {
    matches!(l, Literal::LinSineLess { t, .. } if !t.is_zero())
}

fn integer_coeffs(q: &AffineForm) -> Vec<Integer> {
    let l = denominator_lcm(&q.0);
    q.0.iter()
        .map(|c| Rational::from(c * &l).into_numer_denom().0)
        .collect()
}

/// Remove linear equalities by substitution and split linear disequalities
/// by trichotomy. Accepts `LinSineLess`, `OscLess`, `Div`, `LinEq` and
/// `LinNeq` literals.
pub fn eliminate_equalities(clause: &[Literal], arity: usize) -> Reduction {
    let mut eqs = Vec::new();
    let mut neqs = Vec::new();
    let mut rest = Vec::new();
    for l in clause {
        assert_eq!(l.arity(), arity, "literal arity");
        match l {
            Literal::LinEq(q) => eqs.push(q.clone()),
            Literal::LinNeq(q) => neqs.push(q.clone()),
            Literal::LinSineLess { .. } | Literal::OscLess { .. } | Literal::Div { .. } => {
                rest.push(l.clone())
            }
            other => panic!("{} literal in equality elimination", other.kind()),
        }
    }
    let mut map = AffineMap::identity(arity);
    let mut i = 0;
    while i < eqs.len() {
        let p = integer_coeffs(&eqs[i]);
        i += 1;
        let pivot = (0..arity)
            .filter(|&j| p[j] != 0)
            .min_by(|&a, &b| p[a].cmp_abs(&p[b]).then(a.cmp(&b)));
        let Some(k) = pivot else {
            if p[arity] != 0 {
                return Reduction {
                    arity,
                    branches: vec![Branch {
                        clause: vec![Literal::falsum(arity)],
                        side: Vec::new(),
                        map,
                    }],
                };
            }
            continue;
        };
        let pk = Rational::from(p[k].clone());
        let mut q: Vec<Rational> = p
            .iter()
            .map(|c| Rational::from(Integer::from(-c)) / &pk)
            .collect();
        q[k] = Rational::new();
        let rows = single_substitution(arity, k, &q);
        rest = substitute_all(&rest, &rows);
        for e in eqs[i..].iter_mut() {
            *e = e.substitute(&rows);
        }
        for d in neqs.iter_mut() {
            *d = d.substitute(&rows);
        }
        map = map.then(&AffineMap::from_rows(rows));
        let modulus = Integer::from(p[k].abs_ref());
        if modulus >= 2 {
            let mut p2: Vec<Rational> = p
                .iter()
                .map(|c| Rational::from(Integer::from(-c)))
                .collect();
            p2[k] = Rational::new();
            rest.extend(Literal::divides(&modulus, &p2));
        }
    }
    let mut clauses = vec![rest];
    for d in neqs {
        let options = [negative(d.clone()), negative(d.neg())];
        clauses = clauses
            .into_iter()
            .flat_map(|c| {
                options.iter().map(move |o| {
                    let mut c = c.clone();
                    c.push(o.clone());
                    c
                })
            })
            .collect();
    }
    Reduction {
        arity,
        branches: clauses
            .into_iter()
            .map(|clause| Branch {
                clause,
                side: Vec::new(),
                map: map.clone(),
            })
            .collect(),
    }
}

/// Variables with a nonzero coefficient on the left of an inequality whose
/// right-hand side is not zero.
pub fn linear_variables(clause: &[Literal], arity: usize) -> Vec<usize> {
    let mut occ = vec![false; arity];
    for l in clause.iter().filter(|l| is_linear_sine(l)) {
        if let Literal::LinSineLess { q, .. } = l {
            for (o, c) in occ.iter_mut().zip(q.var_coeffs()) {
                *o |= *c != 0;
            }
        }
    }
    (0..arity).filter(|&i| occ[i]).collect()
}

/// The shift step for `x_v` that every divisibility predicate tolerates.
pub fn shift_period(clause: &[Literal], v: usize) -> Integer {
    let ms: Vec<Integer> = clause
        .iter()
        .filter_map(|l| match l {
            Literal::Div { k, p } if p[v] != 0 => {
                let g = Integer::from(k.gcd_ref(&p[v]));
                Some(Integer::from(k / &g))
            }
            _ => None,
        })
        .collect();
    lcm_all(&ms)
}

/// Level sets `S_j` for the inequalities of `clause` in which `x_v` occurs
/// linearly, paired with the index of the literal in `clause`.
pub fn level_sets_for(clause: &[Literal], v: usize) -> Vec<(usize, LevelSet)> {
    let n = Rational::from(shift_period(clause, v));
    clause
        .iter()
        .enumerate()
        .filter_map(|(j, l)| match l {
            Literal::LinSineLess { q, t } if !t.is_zero() && q.0[v] != 0 => {
                let r = t.radius().expect("right-hand side is oscillatory");
                let lo = Rational::from(-&r) - Rational::from(q.0[v].abs_ref()) * &n;
                Some((j, level_set(q, &lo, &r)))
            }
            _ => None,
        })
        .collect()
}

/// Remove every linear occurrence of a variable on the left of an
/// inequality. Accepts `LinSineLess`, `OscLess` and `Div` literals and
/// returns branches of `OscLess` and `Div` literals.
///
/// For the chosen variable each inequality `q_j·(x,1) < t_j` either takes
/// a value in its level set `S_j`, which is turned into an equality and
/// eliminated, or stays below `-R(t_j)`, where it holds regardless of
/// `t_j`. The second alternative leaves the pure inequality
/// `q_j·(x,1) + R(t_j) < 0`; such inequalities are resolved once no
/// linear-sine inequality is left (see [`resolve_pure_linear`]).
pub fn eliminate_linear(clause: &[Literal], arity: usize) -> Reduction {
    let mut out = Vec::new();
    let start = Branch::new(clause.to_vec(), arity);
    linear_step(start, arity, &mut out);
    Reduction {
        arity,
        branches: out,
    }
}

/// [`eliminate_linear`] continuing from an existing branch.
pub fn eliminate_linear_branch(b: Branch, arity: usize) -> Vec<Branch> {
    let mut out = Vec::new();
    linear_step(b, arity, &mut out);
    out
}

fn linear_step(b: Branch, arity: usize, out: &mut Vec<Branch>) {
    let Some(clause) = prune_clause(b.clause) else {
        return;
    };
    let b = Branch { clause, ..b };
    let vars = linear_variables(&b.clause, arity);
    if vars.is_empty() {
        resolve_pure_step(b, arity, out);
        return;
    }
    let (v, sets) = vars
        .iter()
        .map(|&v| {
            let sets = level_sets_for(&b.clause, v);
            (v, sets)
        })
        .min_by_key(|(v, sets)| (sets.iter().map(|(_, s)| s.len()).sum::<usize>(), *v))
        .expect("at least one variable");
    let d = vars.len();
    for (j, set) in &sets {
        let Literal::LinSineLess { q, .. } = &b.clause[*j] else {
            unreachable!()
        };
        for c in &set.values {
            let mut clause = b.clause.clone();
            clause.push(Literal::LinEq(q.shift(&Rational::from(-c))));
            for sub in eliminate_equalities(&clause, arity).branches {
                assert!(
                    linear_variables(&sub.clause, arity).len() < d,
                    "level-set equality must remove a linearly occurring variable"
                );
                let side = substitute_all(&b.side, sub.map.rows());
                linear_step(
                    Branch {
                        clause: sub.clause,
                        side,
                        map: b.map.then(&sub.map),
                    },
                    arity,
                    out,
                );
            }
        }
    }
    let deep: Vec<Literal> = b
        .clause
        .iter()
        .map(|l| match l {
            Literal::LinSineLess { q, t } if !t.is_zero() && q.0[v] != 0 => {
                negative(q.shift(&t.radius().expect("oscillatory")))
            }
            other => other.clone(),
        })
        .collect();
    assert!(linear_variables(&deep, arity).len() < d);
    linear_step(Branch { clause: deep, ..b }, arity, out);
}

/// Outcome of the cone test for a system of pure inequalities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cone {
    /// Some direction decreases every left-hand side.
    Open,
    /// Nonnegative multipliers, not all zero, under which the variable
    /// parts cancel.
    Blocked(Vec<Rational>),
}

/// Decide whether `{d : a_j·d < 0 for all j}` is nonempty by Fourier-Motzkin
/// elimination; when it is empty, return a certificate of the combination
/// that cancels.
pub fn cone_test(rows: &[Vec<Rational>]) -> Cone {
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    let mut sys: Vec<(Vec<Rational>, Vec<Rational>)> = rows
        .iter()
        .enumerate()
        .map(|(j, r)| {
            let mut lam = vec![Rational::new(); m];
            lam[j] = Rational::from(1);
            (r.clone(), lam)
        })
        .collect();
    for v in 0..n {
        if let Some((_, lam)) = sys.iter().find(|(a, _)| a.iter().all(|c| *c == 0)) {
            return Cone::Blocked(lam.clone());
        }
        let (pos, rest): (Vec<_>, Vec<_>) = sys.into_iter().partition(|(a, _)| a[v] > 0);
        let (neg, zero): (Vec<_>, Vec<_>) = rest.into_iter().partition(|(a, _)| a[v] < 0);
        let mut next = zero;
        for (pa, pl) in &pos {
            for (na, nl) in &neg {
                let sp = Rational::from(pa[v].recip_ref());
                let sn = (-na[v].clone()).recip();
                let a: Vec<Rational> = pa
                    .iter()
                    .zip(na)
                    .map(|(x, y)| Rational::from(x * &sp) + Rational::from(y * &sn))
                    .collect();
                let lam: Vec<Rational> = pl
                    .iter()
                    .zip(nl)
                    .map(|(x, y)| Rational::from(x * &sp) + Rational::from(y * &sn))
                    .collect();
                if !next.iter().any(|(b, _)| same_direction(b, &a)) {
                    next.push((a, lam));
                }
            }
        }
        sys = next;
    }
    match sys.into_iter().next() {
        Some((_, lam)) => Cone::Blocked(lam),
        None => Cone::Open,
    }
}

fn same_direction(a: &[Rational], b: &[Rational]) -> bool {
    let Some(i) = a.iter().position(|c| *c != 0) else {
        return b.iter().all(|c| *c == 0);
    };
    if b[i] == 0 || (a[i] > 0) != (b[i] > 0) {
        return false;
    }
    let s = Rational::from(&b[i] / &a[i]);
    a.iter().zip(b).all(|(x, y)| Rational::from(x * &s) == *y)
}

/// Resolve the pure inequalities `q_j·(x,1) < 0` of a clause without
/// linear-sine inequalities. If a common decreasing direction exists the
/// pure inequalities are moved to `side`: the remaining oscillatory and
/// divisibility constraints have integer solutions deep inside the cone as
/// soon as they have any. Otherwise some `q_j` is bounded below on the
/// solution set and is split into its finitely many values.
pub fn resolve_pure_linear(clause: &[Literal], arity: usize) -> Reduction {
    let mut out = Vec::new();
    resolve_pure_step(Branch::new(clause.to_vec(), arity), arity, &mut out);
    Reduction {
        arity,
        branches: out,
    }
}

fn resolve_pure_step(b: Branch, arity: usize, out: &mut Vec<Branch>) {
    let Some(clause) = prune_clause(b.clause) else {
        return;
    };
    let (pure, other): (Vec<Literal>, Vec<Literal>) = clause.into_iter().partition(is_pure_linear);
    let forms: Vec<AffineForm> = pure
        .iter()
        .map(|l| match l {
            Literal::LinSineLess { q, .. } => q.clone(),
            _ => unreachable!(),
        })
        .collect();
    if forms.is_empty() {
        out.push(Branch { clause: other, ..b });
        return;
    }
    let rows: Vec<Vec<Rational>> = forms.iter().map(|q| q.var_coeffs().to_vec()).collect();
    match cone_test(&rows) {
        Cone::Open => {
            let mut side = b.side;
            side.extend(pure);
            out.push(Branch {
                clause: other,
                side,
                map: b.map,
            });
        }
        Cone::Blocked(lam) => {
            // sum_i lam_i q_i is the constant kappa, and every q_i < 0, so
            // lam_j q_j > kappa - 0 for the chosen j
            let j = lam
                .iter()
                .position(|l| *l > 0)
                .expect("nonzero certificate");
            let kappa: Rational = forms
                .iter()
                .zip(&lam)
                .map(|(q, l)| Rational::from(q.constant_term() * l))
                .fold(Rational::new(), |a, x| a + x);
            let lo = kappa / &lam[j];
            if lo >= 0 {
                return;
            }
            let set = level_set(&forms[j], &lo, &Rational::new());
            let mut clause = other;
            clause.extend(pure);
            for c in &set.values {
                let mut with_eq = clause.clone();
                with_eq.push(Literal::LinEq(forms[j].shift(&Rational::from(-c))));
                for sub in eliminate_equalities(&with_eq, arity).branches {
                    let side = substitute_all(&b.side, sub.map.rows());
                    resolve_pure_step(
                        Branch {
                            clause: sub.clause,
                            side,
                            map: b.map.then(&sub.map),
                        },
                        arity,
                        out,
                    );
                }
            }
        }
    }
}

/// Reduce divisibility coefficients modulo the modulus.
fn reduce_div(l: Literal) -> Literal {
    match l {
        Literal::Div { k, p } => Literal::Div {
            p: p.into_iter().map(|c| RemRounding::rem_euc(c, &k)).collect(),
            k,
        },
        other => other,
    }
}

/// Remove divisibility predicates by splitting a variable into residue
/// classes `x_v ↦ N·x_v + j`. Accepts `OscLess` and `Div` literals.
pub fn eliminate_divisibility(clause: &[Literal], arity: usize) -> Reduction {
    let mut out = Vec::new();
    divisibility_step(Branch::new(clause.to_vec(), arity), arity, &mut out);
    Reduction {
        arity,
        branches: out,
    }
}

/// [`eliminate_divisibility`] continuing from an existing branch.
pub fn eliminate_divisibility_branch(b: Branch, arity: usize) -> Vec<Branch> {
    let mut out = Vec::new();
    divisibility_step(b, arity, &mut out);
    out
}

fn divisibility_step(b: Branch, arity: usize, out: &mut Vec<Branch>) {
    let Some(clause) = prune_clause(b.clause.into_iter().map(reduce_div).collect()) else {
        return;
    };
    let v = clause
        .iter()
        .filter_map(|l| match l {
            Literal::Div { p, .. } => (0..arity).find(|&i| p[i] != 0),
            _ => None,
        })
        .min();
    let Some(v) = v else {
        out.push(Branch { clause, ..b });
        return;
    };
    let moduli: Vec<Integer> = clause
        .iter()
        .filter_map(|l| match l {
            Literal::Div { k, p } if p[v] != 0 => Some(k.clone()),
            _ => None,
        })
        .collect();
    let n = lcm_all(&moduli);
    let count = n.to_u64().expect("modulus fits in u64");
    for j in 0..count {
        let mut row = AffineForm::zero(arity).0;
        row[v] = Rational::from(n.clone());
        row[arity] = Rational::from(j);
        let rows = single_substitution(arity, v, &row);
        divisibility_step(
            Branch {
                clause: substitute_all(&clause, &rows),
                side: substitute_all(&b.side, &rows),
                map: b.map.then(&AffineMap::from_rows(rows)),
            },
            arity,
            out,
        );
    }
}
