//! Brute-force truth and witness search over integer boxes. Atoms are
//! decided in f64 when the value is clearly away from zero, exactly when the
//! term is affine, and with the fixed-point oracle otherwise.

use num_integer::Integer as _;
use sinpa::{Formula, Literal, NormalTerm, RawTerm};

use super::hp::{self, Fixed};

/// Digits below which an oracle value counts as zero.
pub const ZERO_DIGITS: u32 = 50;
const FAST_MARGIN: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Pos,
    Zero,
    NonZero,
    Divides(i64),
}

#[derive(Clone, Debug)]
pub enum Term {
    Raw(RawTerm),
    Normal(NormalTerm),
}

#[derive(Clone, Debug)]
pub enum Prop {
    Const(bool),
    Atom(Rel, Term),
    Not(Box<Prop>),
    And(Vec<Prop>),
    Or(Vec<Prop>),
}

impl Prop {
    pub fn raw(rel: Rel, t: RawTerm) -> Prop {
        Prop::Atom(rel, Term::Raw(t))
    }

    /// The oracle reading of a library literal, taken from its documented
    /// `term()` convention.
    pub fn from_literal(l: &Literal) -> Prop {
        let t = Term::Normal(l.term());
        match l {
            Literal::LinSineLess { .. } | Literal::OscLess { .. } => Prop::Atom(Rel::Pos, t),
            Literal::LinSineEq { .. } | Literal::LinEq(_) => Prop::Atom(Rel::Zero, t),
            Literal::LinSineNeq { .. } | Literal::LinNeq(_) => Prop::Atom(Rel::NonZero, t),
            Literal::Div { k, .. } => Prop::Atom(Rel::Divides(k.to_i64().unwrap()), t),
        }
    }

    pub fn from_formula(f: &Formula) -> Prop {
        match f {
            Formula::Leaf(l) => Prop::from_literal(l),
            Formula::And(fs) => Prop::And(fs.iter().map(Prop::from_formula).collect()),
            Formula::Or(fs) => Prop::Or(fs.iter().map(Prop::from_formula).collect()),
        }
    }

    pub fn clause(lits: &[Literal]) -> Prop {
        Prop::And(lits.iter().map(Prop::from_literal).collect())
    }
}

enum Fast {
    Const(f64),
    Var(usize),
    Sum(Vec<Fast>),
    Scale(f64, Box<Fast>),
    Sin(Box<Fast>),
}

impl Fast {
    fn of(t: &RawTerm) -> Fast {
        match t {
            RawTerm::Const(q) => Fast::Const(q.to_f64()),
            RawTerm::Var(i) => Fast::Var(*i),
            RawTerm::Sum(ts) => Fast::Sum(ts.iter().map(Fast::of).collect()),
            RawTerm::Scale(q, t) => Fast::Scale(q.to_f64(), Box::new(Fast::of(t))),
            RawTerm::Sin(t) => Fast::Sin(Box::new(Fast::of(t))),
        }
    }

    fn eval(&self, z: &[f64]) -> f64 {
        match self {
            Fast::Const(c) => *c,
            Fast::Var(i) => z[*i],
            Fast::Sum(ts) => ts.iter().map(|t| t.eval(z)).sum(),
            Fast::Scale(c, t) => c * t.eval(z),
            Fast::Sin(t) => t.eval(z).sin(),
        }
    }
}

struct FastNormal {
    n: usize,
    atoms: Vec<Vec<f64>>,
    linear: Vec<f64>,
    summands: Vec<(f64, Vec<f64>)>,
}

impl FastNormal {
    fn of(t: &NormalTerm) -> FastNormal {
        let f = |v: &[sinpa::Rational]| v.iter().map(|c| c.to_f64()).collect::<Vec<_>>();
        FastNormal {
            n: t.arity(),
            atoms: t.atoms().iter().map(|a| f(&a.coeffs)).collect(),
            linear: f(t.linear()),
            summands: t
                .summands()
                .iter()
                .map(|s| (s.coeff.to_f64(), f(&s.arg)))
                .collect(),
        }
    }

    fn eval(&self, z: &[f64]) -> f64 {
        let n = self.n;
        let dot = |v: &[f64], atoms: &[f64]| {
            let mut s = v[n];
            for (c, x) in v[..n].iter().zip(z) {
                s += c * x;
            }
            for (c, a) in v[n + 1..].iter().zip(atoms) {
                s += c * a;
            }
            s
        };
        let mut atoms = Vec::with_capacity(self.atoms.len());
        for a in &self.atoms {
            let v = dot(a, &atoms).sin();
            atoms.push(v);
        }
        let mut total = dot(&self.linear, &[]);
        for (c, arg) in &self.summands {
            total += c * dot(arg, &atoms).sin();
        }
        total
    }
}

/// Affine term with integer numerators over a common denominator.
struct Exact {
    coeffs: Vec<i128>,
    constant: i128,
    den: i128,
}

impl Exact {
    fn eval(&self, z: &[i64]) -> i128 {
        self.coeffs
            .iter()
            .zip(z)
            .map(|(c, &x)| c * x as i128)
            .sum::<i128>()
            + self.constant
    }
}

fn exact_of(coeffs: &[sinpa::Rational]) -> Exact {
    let den = coeffs
        .iter()
        .fold(1i128, |l, c| l.lcm(&c.denom().to_i128().unwrap()));
    let scaled: Vec<i128> = coeffs
        .iter()
        .map(|c| {
            let (p, q) = (c.numer().to_i128().unwrap(), c.denom().to_i128().unwrap());
            p * (den / q)
        })
        .collect();
    let (constant, coeffs) = scaled.split_last().unwrap();
    Exact {
        coeffs: coeffs.to_vec(),
        constant: *constant,
        den,
    }
}

fn raw_affine(t: &RawTerm, n: usize) -> Option<Vec<sinpa::Rational>> {
    let mut v = vec![sinpa::Rational::new(); n + 1];
    fn go(t: &RawTerm, scale: &sinpa::Rational, v: &mut [sinpa::Rational]) -> bool {
        match t {
            RawTerm::Const(q) => {
                *v.last_mut().unwrap() += sinpa::Rational::from(q * scale);
                true
            }
            RawTerm::Var(i) => {
                v[*i] += scale;
                true
            }
            RawTerm::Sum(ts) => ts.iter().all(|t| go(t, scale, v)),
            RawTerm::Scale(q, t) => go(t, &sinpa::Rational::from(q * scale), v),
            RawTerm::Sin(_) => false,
        }
    }
    go(t, &sinpa::Rational::from(1), &mut v).then_some(v)
}

struct CAtom {
    rel: Rel,
    term: Term,
    fast_raw: Option<Fast>,
    fast_normal: Option<FastNormal>,
    exact: Option<Exact>,
}

impl CAtom {
    fn new(rel: Rel, term: &Term, n: usize) -> CAtom {
        let (fast_raw, fast_normal, affine) = match term {
            Term::Raw(t) => (Some(Fast::of(t)), None, raw_affine(t, n)),
            Term::Normal(t) => (
                None,
                Some(FastNormal::of(t)),
                t.is_affine().then(|| t.linear().to_vec()),
            ),
        };
        if let Rel::Divides(_) = rel {
            assert!(affine.is_some(), "divisibility of a non-affine term");
        }
        CAtom {
            rel,
            term: term.clone(),
            fast_raw,
            fast_normal,
            exact: affine.map(|v| exact_of(&v)),
        }
    }

    fn holds(&self, z: &[i64], zf: &[f64]) -> bool {
        if let Some(e) = &self.exact {
            let v = e.eval(z);
            return match self.rel {
                Rel::Pos => v > 0,
                Rel::Zero => v == 0,
                Rel::NonZero => v != 0,
                Rel::Divides(k) => v % e.den == 0 && (v / e.den) % k as i128 == 0,
            };
        }
        let f = match (&self.fast_raw, &self.fast_normal) {
            (Some(r), _) => r.eval(zf),
            (_, Some(nf)) => nf.eval(zf),
            _ => unreachable!(),
        };
        match self.rel {
            Rel::Pos if f.abs() > FAST_MARGIN => return f > 0.0,
            Rel::Zero if f.abs() > FAST_MARGIN => return false,
            Rel::NonZero if f.abs() > FAST_MARGIN => return true,
            _ => {}
        }
        let s = value(&self.term, z).sign(ZERO_DIGITS);
        match self.rel {
            Rel::Pos => s.is_gt(),
            Rel::Zero => s.is_eq(),
            Rel::NonZero => s.is_ne(),
            Rel::Divides(_) => unreachable!(),
        }
    }
}

pub fn value(t: &Term, z: &[i64]) -> Fixed {
    let x = hp::point(z);
    match t {
        Term::Raw(t) => hp::eval_raw(t, &x),
        Term::Normal(t) => hp::eval_normal(t, &x),
    }
}

enum Node {
    Const(bool),
    Atom(usize),
    Not(Box<Node>),
    And(Vec<Node>),
    Or(Vec<Node>),
}

/// A proposition prepared for repeated evaluation at integer points.
pub struct Checker {
    arity: usize,
    atoms: Vec<CAtom>,
    root: Node,
}

impl Checker {
    pub fn new(p: &Prop, arity: usize) -> Checker {
        let mut atoms = Vec::new();
        let root = Checker::build(p, arity, &mut atoms);
        Checker { arity, atoms, root }
    }

    fn build(p: &Prop, n: usize, atoms: &mut Vec<CAtom>) -> Node {
        match p {
            Prop::Const(b) => Node::Const(*b),
            Prop::Atom(rel, t) => {
                atoms.push(CAtom::new(*rel, t, n));
                Node::Atom(atoms.len() - 1)
            }
            Prop::Not(q) => Node::Not(Box::new(Checker::build(q, n, atoms))),
            Prop::And(qs) => Node::And(qs.iter().map(|q| Checker::build(q, n, atoms)).collect()),
            Prop::Or(qs) => Node::Or(qs.iter().map(|q| Checker::build(q, n, atoms)).collect()),
        }
    }

    fn eval(&self, node: &Node, z: &[i64], zf: &[f64]) -> bool {
        match node {
            Node::Const(b) => *b,
            Node::Atom(i) => self.atoms[*i].holds(z, zf),
            Node::Not(q) => !self.eval(q, z, zf),
            Node::And(qs) => qs.iter().all(|q| self.eval(q, z, zf)),
            Node::Or(qs) => qs.iter().any(|q| self.eval(q, z, zf)),
        }
    }

    pub fn holds(&self, z: &[i64]) -> bool {
        assert_eq!(z.len(), self.arity);
        let zf: Vec<f64> = z.iter().map(|&v| v as f64).collect();
        self.eval(&self.root, z, &zf)
    }

    /// First point of `[-bound, bound]^n` in lexicographic order where the
    /// proposition holds.
    pub fn search(&self, bound: i64) -> Option<Vec<i64>> {
        let n = self.arity;
        let mut z = vec![-bound; n];
        let mut zf = vec![-bound as f64; n];
        loop {
            if self.eval(&self.root, &z, &zf) {
                return Some(z);
            }
            let mut k = n;
            loop {
                if k == 0 {
                    return None;
                }
                k -= 1;
                if z[k] < bound {
                    z[k] += 1;
                    zf[k] = z[k] as f64;
                    break;
                }
                z[k] = -bound;
                zf[k] = -bound as f64;
            }
        }
    }
}
