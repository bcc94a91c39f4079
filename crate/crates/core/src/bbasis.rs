//! The even basis `B_k(x) = C(x+k, 2k) + C(-x+k, 2k)`.
//!
//! `B_k(i) = 0` for `|i| < k`, `B_k(k) = 1` for `k >= 1` and `B_0 = 2`, so
//! the evaluation matrix on `0..=m` is lower triangular and an even
//! polynomial of degree `2m` is recovered from its values at `0..=m` by
//! forward substitution.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::exact::binom;

/// Values `f(0), …, f(m)` of an even polynomial of degree at most `2m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenPolyValues {
    pub values: Vec<BigRational>,
}

impl EvenPolyValues {
    pub fn new(values: Vec<BigRational>) -> Self {
        assert!(!values.is_empty(), "need at least f(0)");
        Self { values }
    }

    pub fn m(&self) -> usize {
        self.values.len() - 1
    }
}

/// Coefficients `c_0, …, c_m` of `Σ c_k B_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BCoeffs {
    pub coeffs: Vec<BigRational>,
}

impl BCoeffs {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        Self { coeffs }
    }

    pub fn m(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

pub fn eval_b(k: i64, x: i64) -> BigInt {
    assert!(k >= 0, "B_k needs k >= 0");
    binom(x + k, 2 * k) + binom(-x + k, 2 * k)
}

pub fn decompose(values: &EvenPolyValues) -> BCoeffs {
    let m = values.m();
    let mut coeffs: Vec<BigRational> = Vec::with_capacity(m + 1);
    for k in 0..=m {
        let mut rest = values.values[k].clone();
        for (j, c) in coeffs.iter().enumerate() {
            rest -= c * BigRational::from_integer(eval_b(j as i64, k as i64));
        }
        if k == 0 {
            rest /= BigInt::from(2);
        }
        coeffs.push(rest);
    }
    BCoeffs { coeffs }
}

pub fn recompose(coeffs: &BCoeffs, x: i64) -> BigRational {
    coeffs
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(BigRational::zero(), |acc, (k, c)| {
            acc + c * BigRational::from_integer(eval_b(k as i64, x))
        })
}

/// Values at `0..=m` of the polynomial with the given coefficients.
pub fn values_of(coeffs: &BCoeffs) -> EvenPolyValues {
    EvenPolyValues::new((0..=coeffs.m() as i64).map(|t| recompose(coeffs, t)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(eval_b(0, 7), BigInt::from(2));
        assert_eq!(eval_b(3, 2), BigInt::from(0));
        assert_eq!(eval_b(1, 2), BigInt::from(4));
        assert_eq!(eval_b(0, 0), BigInt::from(2));
    }

    #[test]
    fn decompose_examples() {
        let c = decompose(&EvenPolyValues::new(ints(&[2, 0])));
        assert_eq!(c.coeffs, ints(&[1, -2]));
        let c = decompose(&EvenPolyValues::new(ints(&[0, 0, 6])));
        assert_eq!(c.coeffs, ints(&[0, 0, 6]));
        let c = decompose(&EvenPolyValues::new(ints(&[3])));
        assert_eq!(c.coeffs, vec![rat(3, 2)]);
    }

    #[test]
    fn recompose_examples() {
        assert_eq!(recompose(&BCoeffs::new(ints(&[1, -2])), 2), int(-6));
        assert_eq!(recompose(&BCoeffs::new(ints(&[0, 0, 6])), 2), int(6));
    }

    #[test]
    fn triangular_with_unit_diagonal() {
        for k in 0..=40 {
            for i in 0..k {
                assert_eq!(eval_b(k, i), BigInt::zero(), "B_{k}({i})");
            }
            let diag = if k == 0 { 2 } else { 1 };
            assert_eq!(eval_b(k, k), BigInt::from(diag));
        }
    }

    #[test]
    fn even_in_x() {
        for k in 0..=20 {
            for x in -30..=30 {
                assert_eq!(eval_b(k, x), eval_b(k, -x));
            }
        }
    }

    proptest! {
        #[test]
        fn decompose_inverts_recompose(v in proptest::collection::vec(-1000i64..1000, 1..=12)) {
            let coeffs = BCoeffs::new(ints(&v));
            prop_assert_eq!(decompose(&values_of(&coeffs)), coeffs);
        }

        #[test]
        fn recompose_is_even(v in proptest::collection::vec(-50i64..50, 1..=8), x in -40i64..40) {
            let coeffs = BCoeffs::new(ints(&v));
            prop_assert_eq!(recompose(&coeffs, x), recompose(&coeffs, -x));
        }
    }
}
