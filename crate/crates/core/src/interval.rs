//! Certified interval arithmetic with directed rounding (MPFR).

use std::cmp::Ordering;

use rug::float::{Constant, Round};
use rug::Float;

use crate::arith::{Integer, Rational};
use crate::sine_eq::ground_is_zero;
use crate::term::NormalTerm;

/// Precision used for the first attempt at any ground sign.
pub const BASE_PRECISION: u32 = 53;

/// Refinement of a nonzero ground term gives up beyond this precision.
const MAX_GROUND_PRECISION: u32 = 1 << 20;

#[derive(Clone, Debug, PartialEq)]
pub struct Interval {
    lo: Float,
    hi: Float,
}

macro_rules! rounded {
    ($prec:expr, $val:expr, $round:expr) => {
        Float::with_val_round($prec, $val, $round).0
    };
}

impl Interval {
    pub fn new(lo: Float, hi: Float) -> Interval {
        assert!(lo <= hi, "empty interval");
        Interval { lo, hi }
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Interval {
        Interval {
            lo: rounded!(prec, q, Round::Down),
            hi: rounded!(prec, q, Round::Up),
        }
    }

    pub fn from_integer(z: &Integer, prec: u32) -> Interval {
        Interval {
            lo: rounded!(prec, z, Round::Down),
            hi: rounded!(prec, z, Round::Up),
        }
    }

    pub fn full_unit() -> Interval {
        Interval {
            lo: Float::with_val(BASE_PRECISION, -1),
            hi: Float::with_val(BASE_PRECISION, 1),
        }
    }

    pub fn lo(&self) -> &Float {
        &self.lo
    }

    pub fn hi(&self) -> &Float {
        &self.hi
    }

    /// Upper bound on `hi - lo`.
    pub fn width(&self) -> Float {
        let prec = self.lo.prec().max(self.hi.prec());
        rounded!(prec, &self.hi - &self.lo, Round::Up)
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= 0 && self.hi >= 0
    }

    pub fn contains_rational(&self, q: &Rational) -> bool {
        self.lo <= *q && self.hi >= *q
    }

    pub fn contains_float(&self, x: &Float) -> bool {
        self.lo <= *x && self.hi >= *x
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        self.lo >= other.lo && self.hi <= other.hi
    }

    /// `lo > c`.
    pub fn above(&self, c: &Rational) -> bool {
        self.lo > *c
    }

    /// `hi <= c`.
    pub fn at_most(&self, c: &Rational) -> bool {
        self.hi <= *c
    }

    pub fn add(&self, other: &Interval, prec: u32) -> Interval {
        Interval {
            lo: rounded!(prec, &self.lo + &other.lo, Round::Down),
            hi: rounded!(prec, &self.hi + &other.hi, Round::Up),
        }
    }

    pub fn sub(&self, other: &Interval, prec: u32) -> Interval {
        Interval {
            lo: rounded!(prec, &self.lo - &other.hi, Round::Down),
            hi: rounded!(prec, &self.hi - &other.lo, Round::Up),
        }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: Float::with_val(self.hi.prec(), -&self.hi),
            hi: Float::with_val(self.lo.prec(), -&self.lo),
        }
    }

    pub fn mul_rational(&self, q: &Rational, prec: u32) -> Interval {
        let (a, b) = if *q >= 0 {
            (&self.lo, &self.hi)
        } else {
            (&self.hi, &self.lo)
        };
        Interval {
            lo: rounded!(prec, a * q, Round::Down),
            hi: rounded!(prec, b * q, Round::Up),
        }
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().min(&other.lo),
            hi: self.hi.clone().max(&other.hi),
        }
    }

    /// Split at the rounded midpoint; `None` when the midpoint is not
    /// strictly inside at this precision.
    pub fn bisect(&self, prec: u32) -> Option<(Interval, Interval)> {
        let sum = Float::with_val(prec + 2, &self.lo + &self.hi);
        let mid = Float::with_val(prec, sum / 2u32);
        if mid <= self.lo || mid >= self.hi {
            return None;
        }
        Some((
            Interval {
                lo: self.lo.clone(),
                hi: mid.clone(),
            },
            Interval {
                lo: mid,
                hi: self.hi.clone(),
            },
        ))
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (
            self.lo.to_f64_round(Round::Down),
            self.hi.to_f64_round(Round::Up),
        )
    }
}

/// An interval containing π, of width at most `2^(3 - prec)`.
pub fn pi_enclosure(prec: u32) -> Interval {
    assert!(prec >= 16, "precision below 16 bits");
    Interval {
        lo: rounded!(prec, Constant::Pi, Round::Down),
        hi: rounded!(prec, Constant::Pi, Round::Up),
    }
}

/// Enclosure of `{sin t : t in x}`. Critical points `π/2 + mπ` are located
/// with the enclosure of π and included whenever they may lie in `x`.
pub fn interval_sin(x: &Interval, prec: u32) -> Interval {
    if x.width() > 6 {
        return Interval::full_unit();
    }
    let pi = pi_enclosure(prec + 10);
    // m ranges over integers with (m + 1/2)π possibly inside [lo, hi]
    let lo_div = if x.lo >= 0 { &pi.hi } else { &pi.lo };
    let hi_div = if x.hi >= 0 { &pi.lo } else { &pi.hi };
    let u_lo = rounded!(prec + 10, &x.lo / lo_div, Round::Down);
    let u_hi = rounded!(prec + 10, &x.hi / hi_div, Round::Up);
    let half = Float::with_val(2, 0.5);
    let m_lo = rounded!(prec + 10, &u_lo - &half, Round::Down).ceil();
    let m_hi = rounded!(prec + 10, &u_hi - &half, Round::Up).floor();
    let (mut has_max, mut has_min) = (false, false);
    if m_lo <= m_hi {
        if m_hi > m_lo {
            has_max = true;
            has_min = true;
        } else {
            let m = m_lo.to_integer().expect("finite");
            if m.is_even() {
                has_max = true;
            } else {
                has_min = true;
            }
        }
    }
    let sin_lo = (
        rounded!(prec, x.lo.sin_ref(), Round::Down),
        rounded!(prec, x.lo.sin_ref(), Round::Up),
    );
    let sin_hi = (
        rounded!(prec, x.hi.sin_ref(), Round::Down),
        rounded!(prec, x.hi.sin_ref(), Round::Up),
    );
    let lo = if has_min {
        Float::with_val(prec, -1)
    } else {
        sin_lo.0.min(&sin_hi.0).max(&Float::with_val(prec, -1))
    };
    let hi = if has_max {
        Float::with_val(prec, 1)
    } else {
        sin_lo.1.max(&sin_hi.1).min(&Float::with_val(prec, 1))
    };
    Interval { lo, hi }
}

/// A Cartesian product of intervals, one per variable.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalBox {
    pub dims: Vec<Interval>,
}

impl IntervalBox {
    pub fn new(dims: Vec<Interval>) -> IntervalBox {
        IntervalBox { dims }
    }

    pub fn point(coords: &[Rational], prec: u32) -> IntervalBox {
        IntervalBox {
            dims: coords
                .iter()
                .map(|q| Interval::from_rational(q, prec))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dims.len()
    }
}

fn affine_enclosure(v: &[Rational], b: &IntervalBox, atoms: &[Interval], prec: u32) -> Interval {
    let n = b.dim();
    let mut acc = Interval::from_rational(&v[n], prec);
    for (c, x) in v[..n].iter().zip(&b.dims) {
        if *c != 0 {
            acc = acc.add(&x.mul_rational(c, prec), prec);
        }
    }
    for (c, t) in v[n + 1..].iter().zip(atoms) {
        if *c != 0 {
            acc = acc.add(&t.mul_rational(c, prec), prec);
        }
    }
    acc
}

/// Enclosure of `{t(z) : z in b}`; atoms are evaluated once, bottom-up.
pub fn eval_term(t: &NormalTerm, b: &IntervalBox, prec: u32) -> Interval {
    assert_eq!(t.arity(), b.dim(), "box dimension must match the arity");
    let mut atoms: Vec<Interval> = Vec::with_capacity(t.atoms().len());
    for a in t.atoms() {
        let arg = affine_enclosure(&a.coeffs, b, &atoms, prec);
        atoms.push(interval_sin(&arg, prec));
    }
    let mut acc = affine_enclosure(t.linear(), b, &[], prec);
    for s in t.summands() {
        let arg = affine_enclosure(&s.arg, b, &atoms, prec);
        acc = acc.add(&interval_sin(&arg, prec).mul_rational(&s.coeff, prec), prec);
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(o: Ordering) -> Sign {
        match o {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }
}

/// The sign of a variable-free term if one evaluation at `prec` separates
/// it from zero.
pub fn eval_ground(t: &NormalTerm, prec: u32) -> Option<Sign> {
    let zero = Rational::new();
    let b = IntervalBox::point(&vec![zero; t.arity()], prec);
    let v = eval_term(t, &b, prec);
    if v.lo > 0 {
        Some(Sign::Positive)
    } else if v.hi < 0 {
        Some(Sign::Negative)
    } else {
        None
    }
}

/// Exact sign of a variable-free term: zero is recognised symbolically,
/// anything else by refining the enclosure until it excludes zero.
pub fn sign_of_ground(t: &NormalTerm) -> Sign {
    assert!(t.is_ground(), "ground term expected");
    if t.summands().is_empty() {
        return Sign::of(t.constant_term().cmp0());
    }
    if let Some(s) = eval_ground(t, BASE_PRECISION) {
        return s;
    }
    if ground_is_zero(t) {
        return Sign::Zero;
    }
    let mut prec = 2 * BASE_PRECISION;
    while prec <= MAX_GROUND_PRECISION {
        if let Some(s) = eval_ground(t, prec) {
            return s;
        }
        prec *= 2;
    }
    panic!("nonzero ground term {t} could not be separated from zero");
}
