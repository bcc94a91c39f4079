//! Integers, rationals and the combinatorial primitives everything else is
//! built from.
//!
//! The binomial coefficient follows the polynomial convention: `C(x, j)` is
//! the value of the degree-`j` polynomial `x(x-1)…(x-j+1)/j!`, and it is the
//! zero polynomial for every `j < 0`. The `j < 0` test comes first, so
//! `C(-1, -1) = 0` even though a Gamma-function continuation could give 1.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `C(x, j)` under the polynomial convention.
pub fn binom(x: i64, j: i64) -> BigInt {
    if j < 0 {
        return BigInt::zero();
    }
    if x >= 0 && j > x {
        return BigInt::zero();
    }
    // C(x, j) = C(x, x - j) only for x >= 0; keep the cheaper side there.
    let j = if x >= 0 && j > x - j { x - j } else { j };
    let mut acc = BigInt::one();
    for t in 1..=j {
        // Each prefix product x(x-1)…(x-t+1)/t! is itself a binomial value,
        // so the division is exact at every step.
        acc *= x - t + 1;
        acc /= t;
    }
    acc
}

/// `n!`. Negative input is a caller bug.
pub fn factorial(n: i64) -> BigInt {
    assert!(n >= 0, "factorial of negative number {n}");
    (2..=n).fold(BigInt::one(), |acc, t| acc * t)
}

/// The `i`-th Catalan number `C(2i, i) / (i + 1)`.
pub fn catalan(i: i64) -> Result<BigInt> {
    if i < 0 {
        return Err(Error::Negative { what: "catalan", value: i });
    }
    let (q, r) = binom(2 * i, i).div_rem(&BigInt::from(i + 1));
    debug_assert!(r.is_zero());
    Ok(q)
}

/// Exponent of the prime `p` in `n!` via Legendre's formula.
pub fn legendre_valuation(n: u64, p: u64) -> u64 {
    assert!(p >= 2, "legendre_valuation needs p >= 2");
    let mut total = 0;
    let mut rest = n;
    while rest > 0 {
        rest /= p;
        total += rest;
    }
    total
}

/// Exponent of `p` in a nonzero integer.
pub fn valuation(x: &BigInt, p: u64) -> u64 {
    assert!(!x.is_zero(), "valuation of zero");
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut e = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return e;
        }
        x = q;
        e += 1;
    }
}

/// p-adic valuation of a nonzero rational.
pub fn rational_valuation(x: &BigRational, p: u64) -> i64 {
    valuation(x.numer(), p) as i64 - valuation(x.denom(), p) as i64
}

pub fn is_integer(x: &BigRational) -> bool {
    x.denom().is_one()
}

/// True when the reduced denominator is a power of two, i.e. `x ∈ Z[1/2]`.
pub fn in_z_half(x: &BigRational) -> bool {
    let d = x.denom();
    let tz = d.trailing_zeros().unwrap_or(0);
    (d >> tz).is_one()
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `p/q` in lowest terms, or a bare integer.
pub fn format_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n.trim().parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.trim().parse().ok()?)),
    }
}

/// `(-1)^e` for any integer exponent.
pub fn sign_pow(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub fn to_i64(x: &BigInt) -> Option<i64> {
    x.to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(x: i64, j: i64) -> i64 {
        binom(x, j).to_i64().unwrap()
    }

    #[test]
    fn binom_examples() {
        assert_eq!(b(5, 2), 10);
        assert_eq!(b(-1, -1), 0);
        assert_eq!(b(-1, 2), 1);
        assert_eq!(b(3, 5), 0);
        assert_eq!(b(0, 0), 1);
        assert_eq!(b(-3, 0), 1);
        assert_eq!(b(-2, 3), -4);
    }

    #[test]
    fn negative_lower_index_is_zero_everywhere() {
        for x in -10..10 {
            for j in -5..0 {
                assert_eq!(b(x, j), 0, "C({x},{j})");
            }
        }
    }

    #[test]
    fn factorial_examples() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(factorial(10), BigInt::from(3628800));
    }

    #[test]
    #[should_panic]
    fn factorial_rejects_negative() {
        factorial(-1);
    }

    #[test]
    fn catalan_examples() {
        assert_eq!(catalan(0).unwrap(), BigInt::from(1));
        assert_eq!(catalan(2).unwrap(), BigInt::from(2));
        assert_eq!(catalan(3).unwrap(), BigInt::from(5));
        assert!(catalan(-1).is_err());
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_valuation(10, 3), 4);
        assert_eq!(legendre_valuation(0, 5), 0);
        assert_eq!(legendre_valuation(100, 2), 97);
    }

    #[test]
    fn binom_matches_factorial_ratio() {
        for x in 0..=60 {
            for j in 0..=x {
                let expect = factorial(x) / (factorial(j) * factorial(x - j));
                assert_eq!(binom(x, j), expect, "C({x},{j})");
            }
        }
    }

    #[test]
    fn pascal_rule_under_polynomial_convention() {
        for x in -60..=60 {
            for j in 1..=60 {
                assert_eq!(binom(x, j), binom(x - 1, j - 1) + binom(x - 1, j), "x={x} j={j}");
            }
        }
    }

    #[test]
    fn legendre_matches_trial_division() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            let mut f = BigInt::one();
            for n in 0..=500u64 {
                if n > 0 {
                    f *= n;
                }
                assert_eq!(legendre_valuation(n, p), valuation(&f, p), "n={n} p={p}");
            }
        }
    }

    #[test]
    fn catalan_times_successor_is_central_binomial() {
        for i in 0..=60 {
            assert_eq!(catalan(i).unwrap() * (i + 1), binom(2 * i, i));
        }
    }

    #[test]
    fn rational_formatting() {
        assert_eq!(format_rational(&rat(3, 2)), "3/2");
        assert_eq!(format_rational(&rat(-6, 3)), "-2");
        assert_eq!(format_rational(&rat(0, 7)), "0");
        assert_eq!(parse_rational("-4/6"), Some(rat(-2, 3)));
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn z_half_membership() {
        assert!(in_z_half(&rat(3, 8)));
        assert!(in_z_half(&rat(5, 1)));
        assert!(!in_z_half(&rat(1, 6)));
    }

    proptest! {
        #[test]
        fn rational_format_roundtrip(n in -10_000i64..10_000, d in 1i64..10_000) {
            let x = rat(n, d);
            prop_assert_eq!(parse_rational(&format_rational(&x)), Some(x));
        }

        #[test]
        fn binom_symmetry_for_nonnegative_top(x in 0i64..200, j in 0i64..200) {
            prop_assume!(j <= x);
            prop_assert_eq!(binom(x, j), binom(x, x - j));
        }
    }
}
