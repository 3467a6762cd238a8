//! Linear-sine terms: the raw syntax tree and the canonical form
//!
//! ```text
//! p0·(x,1) + Σ r_i sin(p_i·(x,1,t_1..t_m)),   t_i = sin(q_i·(x,1,t_1..t_{i-1}))
//! ```
//!
//! Canonical forms are built through a recursive representation in which a
//! sine argument is itself an affine combination of variables and sine
//! atoms. Two arguments that agree up to sign are merged, and each
//! argument is stored with its first nonzero coefficient positive.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::rc::Rc;

use crate::arith::Rational;
use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RawTerm {
    Const(Rational),
    Var(usize),
    Sum(Vec<RawTerm>),
    Scale(Rational, Box<RawTerm>),
    Sin(Box<RawTerm>),
}

impl RawTerm {
    pub fn constant(q: impl Into<Rational>) -> Self {
        RawTerm::Const(q.into())
    }

    pub fn var(i: usize) -> Self {
        RawTerm::Var(i)
    }

    pub fn sin(t: RawTerm) -> Self {
        RawTerm::Sin(Box::new(t))
    }

    pub fn scale(q: impl Into<Rational>, t: RawTerm) -> Self {
        RawTerm::Scale(q.into(), Box::new(t))
    }

    pub fn max_var(&self) -> Option<usize> {
        match self {
            RawTerm::Const(_) => None,
            RawTerm::Var(i) => Some(*i),
            RawTerm::Sum(ts) => ts.iter().filter_map(RawTerm::max_var).max(),
            RawTerm::Scale(_, t) | RawTerm::Sin(t) => t.max_var(),
        }
    }

    /// Nesting depth of `sin` applications.
    pub fn nesting(&self) -> u32 {
        match self {
            RawTerm::Const(_) | RawTerm::Var(_) => 0,
            RawTerm::Sum(ts) => ts.iter().map(RawTerm::nesting).max().unwrap_or(0),
            RawTerm::Scale(_, t) => t.nesting(),
            RawTerm::Sin(t) => 1 + t.nesting(),
        }
    }

    /// The value when the term contains neither variables nor sines.
    pub fn as_constant(&self) -> Option<Rational> {
        match self {
            RawTerm::Const(q) => Some(q.clone()),
            RawTerm::Var(_) | RawTerm::Sin(_) => None,
            RawTerm::Sum(ts) => ts
                .iter()
                .try_fold(Rational::new(), |acc, t| Some(acc + t.as_constant()?)),
            RawTerm::Scale(q, t) => Some(t.as_constant()? * q),
        }
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        match self {
            RawTerm::Const(q) => q.to_f64(),
            RawTerm::Var(i) => x[*i],
            RawTerm::Sum(ts) => ts.iter().map(|t| t.eval_f64(x)).sum(),
            RawTerm::Scale(q, t) => q.to_f64() * t.eval_f64(x),
            RawTerm::Sin(t) => t.eval_f64(x).sin(),
        }
    }
}

impl Add for RawTerm {
    type Output = RawTerm;
    fn add(self, rhs: RawTerm) -> RawTerm {
        RawTerm::Sum(vec![self, rhs])
    }
}

impl Sub for RawTerm {
    type Output = RawTerm;
    fn sub(self, rhs: RawTerm) -> RawTerm {
        RawTerm::Sum(vec![self, -rhs])
    }
}

impl Neg for RawTerm {
    type Output = RawTerm;
    fn neg(self) -> RawTerm {
        RawTerm::scale(-1, self)
    }
}

// ---------------------------------------------------------------------------
// Recursive canonical representation

#[derive(Clone, Debug, PartialEq, Eq)]
struct Lin {
    /// variables, then the constant
    coeffs: Vec<Rational>,
    /// sorted by atom order, nonzero coefficients only
    sines: Vec<(Atom, Rational)>,
    /// largest depth among the atoms in `sines`
    depth: u32,
}

/// `sin(arg)` with `arg` in canonical sign.
#[derive(Clone, Debug)]
struct Atom(Rc<Lin>);

impl Atom {
    fn depth(&self) -> u32 {
        self.0.depth + 1
    }
}

impl PartialEq for Atom {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Atom {}

impl PartialOrd for Atom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Atom {
    fn cmp(&self, other: &Self) -> Ordering {
        if Rc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.depth()
            .cmp(&other.depth())
            .then_with(|| dense_cmp(&self.0, &other.0))
    }
}

/// Lexicographic order of the dense coefficient vectors over
/// `(x, 1, atoms in canonical order)`.
fn dense_cmp(a: &Lin, b: &Lin) -> Ordering {
    for (x, y) in a.coeffs.iter().zip(&b.coeffs) {
        match x.cmp(y) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    let zero = Rational::new();
    let (mut i, mut j) = (0, 0);
    loop {
        let (ca, cb) = match (a.sines.get(i), b.sines.get(j)) {
            (None, None) => return Ordering::Equal,
            (Some((_, c)), None) => {
                i += 1;
                (c, &zero)
            }
            (None, Some((_, d))) => {
                j += 1;
                (&zero, d)
            }
            (Some((x, c)), Some((y, d))) => match x.cmp(y) {
                Ordering::Less => {
                    i += 1;
                    (c, &zero)
                }
                Ordering::Greater => {
                    j += 1;
                    (&zero, d)
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                    (c, d)
                }
            },
        };
        match ca.cmp(cb) {
            Ordering::Equal => {}
            o => return o,
        }
    }
}

impl Lin {
    fn zero(n: usize) -> Lin {
        Lin {
            coeffs: vec![Rational::new(); n + 1],
            sines: Vec::new(),
            depth: 0,
        }
    }

    fn affine(coeffs: &[Rational]) -> Lin {
        Lin {
            coeffs: coeffs.to_vec(),
            sines: Vec::new(),
            depth: 0,
        }
    }

    fn arity(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn from_sines(coeffs: Vec<Rational>, sines: Vec<(Atom, Rational)>) -> Lin {
        let depth = sines.iter().map(|(a, _)| a.depth()).max().unwrap_or(0);
        Lin {
            coeffs,
            sines,
            depth,
        }
    }

    fn add(&self, other: &Lin) -> Lin {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| Rational::from(a + b))
            .collect();
        let mut sines = Vec::with_capacity(self.sines.len() + other.sines.len());
        let (mut i, mut j) = (0, 0);
        while i < self.sines.len() || j < other.sines.len() {
            let ord = match (self.sines.get(i), other.sines.get(j)) {
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (Some((a, _)), Some((b, _))) => a.cmp(b),
                (None, None) => unreachable!(),
            };
            match ord {
                Ordering::Less => {
                    sines.push(self.sines[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    sines.push(other.sines[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = Rational::from(&self.sines[i].1 + &other.sines[j].1);
                    if c != 0 {
                        sines.push((self.sines[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Lin::from_sines(coeffs, sines)
    }

    fn scale(&self, q: &Rational) -> Lin {
        if *q == 0 {
            return Lin::zero(self.arity());
        }
        Lin {
            coeffs: self.coeffs.iter().map(|c| Rational::from(c * q)).collect(),
            sines: self
                .sines
                .iter()
                .map(|(a, c)| (a.clone(), Rational::from(c * q)))
                .collect(),
            depth: self.depth,
        }
    }

    fn leading_sign(&self) -> Ordering {
        self.coeffs
            .iter()
            .chain(self.sines.iter().map(|(_, c)| c))
            .map(|c| c.cmp0())
            .find(|o| *o != Ordering::Equal)
            .unwrap_or(Ordering::Equal)
    }

    /// `sin(arg)`, using `sin(-a) = -sin(a)` to keep the argument's leading
    /// coefficient positive.
    fn sine(arg: Lin) -> Lin {
        let n = arg.arity();
        let (arg, coeff) = match arg.leading_sign() {
            Ordering::Equal => return Lin::zero(n),
            Ordering::Less => (arg.scale(&Rational::from(-1)), Rational::from(-1)),
            Ordering::Greater => (arg, Rational::from(1)),
        };
        let atom = Atom(Rc::new(arg));
        Lin::from_sines(vec![Rational::new(); n + 1], vec![(atom, coeff)])
    }

    fn from_raw(t: &RawTerm, n: usize) -> Result<Lin, Error> {
        Ok(match t {
            RawTerm::Const(q) => {
                let mut l = Lin::zero(n);
                l.coeffs[n] = q.clone();
                l
            }
            RawTerm::Var(i) => {
                if *i >= n {
                    return Err(Error::Arity {
                        index: *i,
                        arity: n,
                    });
                }
                let mut l = Lin::zero(n);
                l.coeffs[*i] = Rational::from(1);
                l
            }
            RawTerm::Sum(ts) => {
                let mut acc = Lin::zero(n);
                for t in ts {
                    acc = acc.add(&Lin::from_raw(t, n)?);
                }
                acc
            }
            RawTerm::Scale(q, t) => Lin::from_raw(t, n)?.scale(q),
            RawTerm::Sin(t) => Lin::sine(Lin::from_raw(t, n)?),
        })
    }

    fn to_raw(&self) -> RawTerm {
        let n = self.arity();
        let mut parts = Vec::new();
        for (i, c) in self.coeffs[..n].iter().enumerate() {
            if *c != 0 {
                parts.push(RawTerm::scale(c.clone(), RawTerm::Var(i)));
            }
        }
        if self.coeffs[n] != 0 {
            parts.push(RawTerm::Const(self.coeffs[n].clone()));
        }
        for (a, c) in &self.sines {
            parts.push(RawTerm::scale(c.clone(), RawTerm::sin(a.0.to_raw())));
        }
        RawTerm::Sum(parts)
    }

    /// Replace every variable `x_i` by `rows[i]·(x,1)`.
    fn substitute(&self, rows: &[Vec<Rational>], memo: &mut HashMap<*const Lin, Lin>) -> Lin {
        let n = self.arity();
        let mut coeffs = vec![Rational::new(); n + 1];
        coeffs[n] = self.coeffs[n].clone();
        for (i, c) in self.coeffs[..n].iter().enumerate() {
            if *c == 0 {
                continue;
            }
            for (acc, r) in coeffs.iter_mut().zip(&rows[i]) {
                *acc += Rational::from(c * r);
            }
        }
        let mut acc = Lin::affine(&coeffs);
        for (a, c) in &self.sines {
            let key = Rc::as_ptr(&a.0);
            let image = match memo.get(&key) {
                Some(l) => l.clone(),
                None => {
                    let l = Lin::sine(a.0.substitute(rows, memo));
                    memo.insert(key, l.clone());
                    l
                }
            };
            acc = acc.add(&image.scale(c));
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// Flat canonical form

/// `t_i = sin(coeffs·(x, 1, t_1, …, t_{i-1}))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SineAtom {
    pub coeffs: Vec<Rational>,
}

/// `coeff · sin(arg·(x, 1, t_1, …, t_m))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Summand {
    pub coeff: Rational,
    pub arg: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalTerm {
    arity: usize,
    linear: Vec<Rational>,
    atoms: Vec<SineAtom>,
    summands: Vec<Summand>,
}

impl NormalTerm {
    pub fn normalize(t: &RawTerm, arity: usize) -> Result<NormalTerm, Error> {
        Ok(NormalTerm::from_lin(&Lin::from_raw(t, arity)?))
    }

    pub fn zero(arity: usize) -> NormalTerm {
        NormalTerm {
            arity,
            linear: vec![Rational::new(); arity + 1],
            atoms: Vec::new(),
            summands: Vec::new(),
        }
    }

    /// The affine term `coeffs·(x,1)`; `coeffs` has `arity + 1` entries.
    pub fn affine(coeffs: &[Rational]) -> NormalTerm {
        assert!(!coeffs.is_empty(), "affine form needs a constant entry");
        NormalTerm {
            arity: coeffs.len() - 1,
            linear: coeffs.to_vec(),
            atoms: Vec::new(),
            summands: Vec::new(),
        }
    }

    pub fn constant(arity: usize, q: impl Into<Rational>) -> NormalTerm {
        let mut t = NormalTerm::zero(arity);
        t.linear[arity] = q.into();
        t
    }

    pub fn var(arity: usize, i: usize) -> NormalTerm {
        assert!(i < arity, "variable {i} out of range for arity {arity}");
        let mut t = NormalTerm::zero(arity);
        t.linear[i] = Rational::from(1);
        t
    }

    fn from_lin(top: &Lin) -> NormalTerm {
        let n = top.arity();
        let mut seen = BTreeSet::new();
        fn collect(l: &Lin, seen: &mut BTreeSet<Atom>) {
            for (a, _) in &l.sines {
                if seen.insert(a.clone()) {
                    collect(&a.0, seen);
                }
            }
        }
        for (a, _) in &top.sines {
            collect(&a.0, &mut seen);
        }
        let index: BTreeMap<Atom, usize> = seen
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, a)| (a, i))
            .collect();
        let flatten = |l: &Lin, width: usize| {
            let mut v = l.coeffs.clone();
            v.resize(n + 1 + width, Rational::new());
            for (b, c) in &l.sines {
                v[n + 1 + index[b]] = c.clone();
            }
            v
        };
        let atoms = seen
            .iter()
            .enumerate()
            .map(|(i, a)| SineAtom {
                coeffs: flatten(&a.0, i),
            })
            .collect();
        let summands = top
            .sines
            .iter()
            .map(|(a, r)| Summand {
                coeff: r.clone(),
                arg: flatten(&a.0, seen.len()),
            })
            .collect();
        NormalTerm {
            arity: n,
            linear: top.coeffs.clone(),
            atoms,
            summands,
        }
    }

    fn to_lin(&self) -> Lin {
        let n = self.arity;
        let combine = |v: &[Rational], atoms: &[Lin]| {
            let mut acc = Lin::affine(&v[..n + 1]);
            for (c, a) in v[n + 1..].iter().zip(atoms) {
                if *c != 0 {
                    acc = acc.add(&a.scale(c));
                }
            }
            acc
        };
        let mut atoms: Vec<Lin> = Vec::with_capacity(self.atoms.len());
        for a in &self.atoms {
            let s = Lin::sine(combine(&a.coeffs, &atoms));
            atoms.push(s);
        }
        let mut top = Lin::affine(&self.linear);
        for s in &self.summands {
            top = top.add(&Lin::sine(combine(&s.arg, &atoms)).scale(&s.coeff));
        }
        top
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// `p0`: variable coefficients followed by the constant.
    pub fn linear(&self) -> &[Rational] {
        &self.linear
    }

    pub fn atoms(&self) -> &[SineAtom] {
        &self.atoms
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn constant_term(&self) -> &Rational {
        &self.linear[self.arity]
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty() && self.linear.iter().all(|c| *c == 0)
    }

    pub fn is_oscillatory(&self) -> bool {
        self.linear.iter().all(|c| *c == 0)
    }

    pub fn is_affine(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn radius(&self) -> Result<Rational, Error> {
        if !self.is_oscillatory() {
            return Err(Error::NotOscillatory);
        }
        Ok(self.summands.iter().map(|s| s.coeff.clone().abs()).sum())
    }

    /// Depth of every atom, indexed like [`NormalTerm::atoms`].
    pub fn atom_depths(&self) -> Vec<u32> {
        let n = self.arity;
        let mut depths: Vec<u32> = Vec::with_capacity(self.atoms.len());
        for a in &self.atoms {
            let inner = referenced_depth(&a.coeffs[n + 1..], &depths);
            depths.push(inner + 1);
        }
        depths
    }

    pub fn sine_depth(&self) -> u32 {
        if self.summands.is_empty() {
            return 0;
        }
        let depths = self.atom_depths();
        let n = self.arity;
        1 + self
            .summands
            .iter()
            .map(|s| referenced_depth(&s.arg[n + 1..], &depths))
            .max()
            .unwrap_or(0)
    }

    pub fn linear_part(&self) -> NormalTerm {
        NormalTerm::affine(&self.linear)
    }

    pub fn oscillatory_part(&self) -> NormalTerm {
        NormalTerm {
            arity: self.arity,
            linear: vec![Rational::new(); self.arity + 1],
            atoms: self.atoms.clone(),
            summands: self.summands.clone(),
        }
    }

    /// The argument `P_i` of the `i`-th summand as a term of its own.
    pub fn argument(&self, i: usize) -> NormalTerm {
        let l = self.to_lin();
        NormalTerm::from_lin(&l.sines[i].0 .0)
    }

    pub fn add(&self, other: &NormalTerm) -> NormalTerm {
        assert_eq!(self.arity, other.arity, "arity mismatch");
        NormalTerm::from_lin(&self.to_lin().add(&other.to_lin()))
    }

    pub fn sub(&self, other: &NormalTerm) -> NormalTerm {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> NormalTerm {
        self.scale(&Rational::from(-1))
    }

    pub fn scale(&self, q: &Rational) -> NormalTerm {
        NormalTerm::from_lin(&self.to_lin().scale(q))
    }

    /// `sin(self)` in canonical form.
    pub fn sin(&self) -> NormalTerm {
        NormalTerm::from_lin(&Lin::sine(self.to_lin()))
    }

    /// Replace every variable `x_i` by `rows[i]·(x,1)`.
    pub fn substitute(&self, rows: &[Vec<Rational>]) -> NormalTerm {
        assert_eq!(rows.len(), self.arity, "one row per variable");
        NormalTerm::from_lin(&self.to_lin().substitute(rows, &mut HashMap::new()))
    }

    /// Replace `x_k` by `q·(x,1)`.
    pub fn substitute_var(&self, k: usize, q: &[Rational]) -> NormalTerm {
        self.substitute(&single_substitution(self.arity, k, q))
    }

    /// Which variables occur anywhere in the term.
    pub fn occurring_vars(&self) -> Vec<bool> {
        let n = self.arity;
        let mut occ: Vec<bool> = self.linear[..n].iter().map(|c| *c != 0).collect();
        for v in self.sine_vectors() {
            for (o, c) in occ.iter_mut().zip(&v[..n]) {
                *o |= *c != 0;
            }
        }
        occ
    }

    pub fn is_ground(&self) -> bool {
        !self.occurring_vars().into_iter().any(|b| b)
    }

    /// Coefficient vectors of every sine argument, atoms first.
    pub fn sine_vectors(&self) -> impl Iterator<Item = &[Rational]> {
        self.atoms
            .iter()
            .map(|a| a.coeffs.as_slice())
            .chain(self.summands.iter().map(|s| s.arg.as_slice()))
    }

    pub fn to_raw(&self) -> RawTerm {
        self.to_lin().to_raw()
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        let n = self.arity;
        let dot = |v: &[Rational], atoms: &[f64]| -> f64 {
            let mut s = v[n].to_f64();
            for i in 0..n {
                if v[i] != 0 {
                    s += v[i].to_f64() * x[i];
                }
            }
            for (c, a) in v[n + 1..].iter().zip(atoms) {
                if *c != 0 {
                    s += c.to_f64() * a;
                }
            }
            s
        };
        let mut atoms = Vec::with_capacity(self.atoms.len());
        for a in &self.atoms {
            let v = dot(&a.coeffs, &atoms).sin();
            atoms.push(v);
        }
        let mut total = dot(&self.linear, &[]);
        for s in &self.summands {
            total += s.coeff.to_f64() * dot(&s.arg, &atoms).sin();
        }
        total
    }
}

fn referenced_depth(atom_coeffs: &[Rational], depths: &[u32]) -> u32 {
    atom_coeffs
        .iter()
        .zip(depths)
        .filter(|(c, _)| **c != 0)
        .map(|(_, d)| *d)
        .max()
        .unwrap_or(0)
}

/// Rows for the substitution `x_k ↦ q·(x,1)`, identity elsewhere.
pub fn single_substitution(n: usize, k: usize, q: &[Rational]) -> Vec<Vec<Rational>> {
    assert!(k < n && q.len() == n + 1);
    (0..n)
        .map(|i| {
            if i == k {
                q.to_vec()
            } else {
                let mut row = vec![Rational::new(); n + 1];
                row[i] = Rational::from(1);
                row
            }
        })
        .collect()
}

impl fmt::Display for NormalTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = crate::syntax::default_names(self.arity);
        f.write_str(&crate::syntax::print_term(self, &names))
    }
}
