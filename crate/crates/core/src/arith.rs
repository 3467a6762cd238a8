//! Exact scalar arithmetic on top of GMP integers and rationals.

pub use rug::{Integer, Rational};

use crate::error::Error;

/// `gcd(a/b, c/d) = gcd(a, c) / lcm(b, d)` folded over the list, with
/// `gcd(q, 0) = |q|`. The gcd of an all-zero list is zero.
pub fn rational_gcd(qs: &[Rational]) -> Result<Rational, Error> {
    let (first, rest) = qs.split_first().ok_or(Error::EmptyGcd)?;
    Ok(rest
        .iter()
        .fold(first.clone().abs(), |acc, q| gcd2(&acc, q)))
}

fn gcd2(a: &Rational, b: &Rational) -> Rational {
    if *a.numer() == 0 {
        return b.clone().abs();
    }
    if *b.numer() == 0 {
        return a.clone().abs();
    }
    let num = a.numer().clone().gcd(b.numer());
    let den = a.denom().clone().lcm(b.denom());
    Rational::from((num, den))
}

/// Least common multiple of a list of integers; 1 for the empty list.
pub fn lcm_all<'a>(xs: impl IntoIterator<Item = &'a Integer>) -> Integer {
    xs.into_iter().fold(Integer::from(1), |acc, x| acc.lcm(x))
}

/// Least common multiple of the denominators.
pub fn denominator_lcm<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> Integer {
    qs.into_iter()
        .fold(Integer::from(1), |acc, q| acc.lcm(q.denom()))
}

pub fn floor(q: &Rational) -> Integer {
    q.clone().floor().into_numer_denom().0
}

pub fn ceil(q: &Rational) -> Integer {
    q.clone().ceil().into_numer_denom().0
}

pub fn is_integer(q: &Rational) -> bool {
    *q.denom() == 1
}

/// Sign of the first nonzero entry, or 0.
pub fn leading_sign<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> i32 {
    for q in qs {
        let s = q.cmp0();
        if s != std::cmp::Ordering::Equal {
            return if s == std::cmp::Ordering::Less { -1 } else { 1 };
        }
    }
    0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(rational_gcd(&[r(2, 3), r(1, 2)]).unwrap(), r(1, 6));
        assert_eq!(rational_gcd(&[r(4, 1), r(6, 1)]).unwrap(), r(2, 1));
        assert_eq!(rational_gcd(&[r(0, 1), r(5, 7)]).unwrap(), r(5, 7));
        assert_eq!(rational_gcd(&[r(0, 1), r(0, 1)]).unwrap(), r(0, 1));
        assert_eq!(rational_gcd(&[r(-3, 4)]).unwrap(), r(3, 4));
        assert_eq!(rational_gcd(&[]), Err(Error::EmptyGcd));
    }

    #[test]
    fn lcm_of_nothing_is_one() {
        assert_eq!(lcm_all([]), 1);
        assert_eq!(lcm_all(&[Integer::from(4), Integer::from(6)]), 12);
    }

    #[test]
    fn rounding() {
        assert_eq!(floor(&r(-7, 2)), -4);
        assert_eq!(ceil(&r(-7, 2)), -3);
        assert_eq!(ceil(&r(6, 3)), 2);
    }
}
