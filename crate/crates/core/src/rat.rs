//! Exact arbitrary-precision rational numbers.
//!
//! `Rat` is the coefficient domain for the whole crate.  It is always stored
//! in lowest terms with a positive denominator, and every operation is exact.
//! The canonical text form is `a/b`, with `/b` omitted when the denominator
//! is one.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, reduced, with positive denominator.
pub type Rat = BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` as a reduced rational.  Panics on `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical text form: `a/b`, or just `a` when `b == 1`.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses the canonical `a/b` form (or a plain integer).
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let make_err = || Error::InvalidRational(s.to_string());
    match s.split_once('/') {
        None => {
            let n: BigInt = s.parse().map_err(|_| make_err())?;
            Ok(Rat::from_integer(n))
        }
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| make_err())?;
            let d: BigInt = d.trim().parse().map_err(|_| make_err())?;
            if d.is_zero() {
                return Err(make_err());
            }
            Ok(Rat::new(n, d))
        }
    }
}

/// True when the rational is an integer.
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Extracts the integer value, failing when the rational is not integral.
pub fn to_integer(r: &Rat, context: &str) -> Result<BigInt> {
    if is_integer(r) {
        Ok(r.numer().clone())
    } else {
        Err(Error::NonExactDivision {
            divisor: r.denom().to_string(),
            context: context.to_string(),
        })
    }
}

/// Falling power `n (n-1) ... (n-k+1)`.
pub fn falling_power(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        if i >= n {
            return BigInt::zero();
        }
        acc *= BigInt::from(n - i);
    }
    acc
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    falling_power(n, n)
}

/// Binomial coefficient `C(n, k)` for non-negative `n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `|r|`.
pub fn rat_abs(r: &Rat) -> Rat {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_string_round_trip() {
        for (n, d) in [(1i64, 2i64), (-3, 4), (5, 1), (0, 7), (-6, 3)] {
            let r = ratio(n, d);
            let s = rat_to_string(&r);
            assert_eq!(parse_rat(&s).unwrap(), r);
        }
        assert_eq!(rat_to_string(&ratio(-6, 3)), "-2");
        assert_eq!(rat_to_string(&ratio(1, 2)), "1/2");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert!(parse_rat("1/2/3").is_err());
    }

    #[test]
    fn falling_powers() {
        assert_eq!(falling_power(5, 2), BigInt::from(20));
        assert_eq!(falling_power(3, 5), BigInt::zero());
        assert_eq!(falling_power(4, 0), BigInt::one());
        assert_eq!(factorial(6), BigInt::from(720));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(10, 0), BigInt::one());
        assert_eq!(binomial(3, 5), BigInt::zero());
    }
}
