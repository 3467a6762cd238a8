//! Reference arithmetic: binary fixed point on big integers, with its own
//! Machin π and Taylor sine. Values are `m / 2^FRAC`.

use std::cmp::Ordering;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use sinpa::{NormalTerm, RawTerm};

/// Fractional bits, about 212 decimal digits.
pub const FRAC: u32 = 704;
const GUARD: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fixed(pub BigInt);

pub fn rational(q: &sinpa::Rational) -> BigRational {
    q.to_string().parse().expect("rug prints n/d")
}

pub fn float_rational(x: &rug::Float) -> BigRational {
    rational(&x.to_rational().expect("finite endpoint"))
}

impl Fixed {
    pub fn zero() -> Fixed {
        Fixed(BigInt::zero())
    }

    pub fn from_int(z: i64) -> Fixed {
        Fixed(BigInt::from(z) << FRAC)
    }

    pub fn from_rational(q: &BigRational) -> Fixed {
        Fixed((q.numer() << FRAC).div_floor(q.denom()))
    }

    pub fn from_rug(q: &sinpa::Rational) -> Fixed {
        Fixed::from_rational(&rational(q))
    }

    pub fn add(&self, o: &Fixed) -> Fixed {
        Fixed(&self.0 + &o.0)
    }

    pub fn sub(&self, o: &Fixed) -> Fixed {
        Fixed(&self.0 - &o.0)
    }

    pub fn mul_rational(&self, q: &BigRational) -> Fixed {
        Fixed((&self.0 * q.numer()).div_floor(q.denom()))
    }

    pub fn mul_int(&self, k: &BigInt) -> Fixed {
        Fixed(&self.0 * k)
    }

    pub fn to_f64(&self) -> f64 {
        let shift = FRAC - 60;
        let m: BigInt = &self.0 >> shift;
        m.to_f64().unwrap() / 2f64.powi(60)
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.0.clone(), BigInt::one() << FRAC)
    }

    /// `|self| < 10^-digits`.
    pub fn below_pow10(&self, digits: u32) -> bool {
        self.0.abs() * BigInt::from(10).pow(digits) < (BigInt::one() << FRAC)
    }

    /// Sign, reading anything below `10^-digits` in magnitude as zero.
    pub fn sign(&self, digits: u32) -> Ordering {
        if self.below_pow10(digits) {
            Ordering::Equal
        } else {
            self.0.sign().cmp(&num_bigint::Sign::NoSign)
        }
    }

    pub fn sin(&self) -> Fixed {
        let w = FRAC + GUARD;
        let x: BigInt = &self.0 << GUARD;
        let two_pi: BigInt = pi_bits(w) << 1;
        // nearest multiple of 2π
        let twice: BigInt = &x * 2 + &two_pi;
        let k: BigInt = twice.div_floor(&(&two_pi * 2));
        let r: BigInt = x - k * &two_pi;
        let r2 = (&r * &r) >> w;
        let mut term = r.clone();
        let mut sum = r;
        let mut i: u64 = 1;
        loop {
            term = -((term * &r2) >> w) / BigInt::from((2 * i) * (2 * i + 1));
            if term.is_zero() {
                break;
            }
            sum += &term;
            i += 1;
        }
        Fixed(sum >> GUARD)
    }
}

/// arctan(1/m) scaled by 2^bits.
fn atan_inv(m: u32, bits: u32) -> BigInt {
    let m2 = BigInt::from(m) * m;
    let mut power = (BigInt::one() << bits) / m;
    let mut sum = BigInt::zero();
    let mut k: u32 = 0;
    while !power.is_zero() {
        let term = &power / (2 * k + 1);
        if k.is_even() {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &m2;
        k += 1;
    }
    sum
}

fn pi_bits(bits: u32) -> BigInt {
    static PI: OnceLock<BigInt> = OnceLock::new();
    let top = FRAC + GUARD;
    assert!(bits <= top);
    let p = PI.get_or_init(|| {
        let b = top + 32;
        (atan_inv(5, b) * 16 - atan_inv(239, b) * 4) >> 32
    });
    p >> (top - bits)
}

pub fn pi() -> Fixed {
    Fixed(pi_bits(FRAC))
}

pub fn eval_raw(t: &RawTerm, x: &[Fixed]) -> Fixed {
    match t {
        RawTerm::Const(q) => Fixed::from_rug(q),
        RawTerm::Var(i) => x[*i].clone(),
        RawTerm::Sum(ts) => ts
            .iter()
            .fold(Fixed::zero(), |acc, t| acc.add(&eval_raw(t, x))),
        RawTerm::Scale(q, t) => eval_raw(t, x).mul_rational(&rational(q)),
        RawTerm::Sin(t) => eval_raw(t, x).sin(),
    }
}

/// Evaluate a normal form from its layout: atom `i` reads
/// `(x, 1, t_1..t_{i-1})`, the linear part reads `(x, 1)` and every summand
/// argument reads `(x, 1, t_1..t_m)`.
pub fn eval_normal(t: &NormalTerm, x: &[Fixed]) -> Fixed {
    let n = t.arity();
    let dot = |v: &[sinpa::Rational], atoms: &[Fixed]| {
        let mut s = Fixed::from_rug(&v[n]);
        for (c, xi) in v[..n].iter().zip(x) {
            if *c != 0 {
                s = s.add(&xi.mul_rational(&rational(c)));
            }
        }
        for (c, a) in v[n + 1..].iter().zip(atoms) {
            if *c != 0 {
                s = s.add(&a.mul_rational(&rational(c)));
            }
        }
        s
    };
    let mut atoms: Vec<Fixed> = Vec::new();
    for a in t.atoms() {
        let v = dot(&a.coeffs, &atoms).sin();
        atoms.push(v);
    }
    let mut total = dot(t.linear(), &[]);
    for s in t.summands() {
        total = total.add(&dot(&s.arg, &atoms).sin().mul_rational(&rational(&s.coeff)));
    }
    total
}

pub fn point(z: &[i64]) -> Vec<Fixed> {
    z.iter().map(|&v| Fixed::from_int(v)).collect()
}
