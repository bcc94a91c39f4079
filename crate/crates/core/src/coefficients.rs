//! Summand families and the coefficients `d(m,k)` of `P_m` in the `B_k`
//! basis.
//!
//! Every sum runs over an explicit finite support; all summands outside it
//! vanish through the binomial convention.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{binom, sign_pow};
use crate::relations::rel1_coefficients;

/// One summand of `P_m(x)`.
pub fn pterm(m: i64, x: i64, i: i64, j: i64) -> BigRational {
    let num = binom(x + j, j) * binom(x - 1, j) * binom(j, i) * binom(m, i) * binom(i, m - j);
    if num.is_zero() {
        return BigRational::zero();
    }
    let den = (2 * i - 1) * (2 * j + 1) * (2 * m - 2 * i - 1);
    BigRational::new(num * 3, BigInt::from(den))
}

/// `P_m(x)`, summed over `0 <= i <= m`, `max(0, m-i) <= j <= m`.
pub fn eval_p(m: i64, x: i64) -> BigRational {
    assert!(m >= 0, "P_m needs m >= 0");
    let mut acc = BigRational::zero();
    for i in 0..=m {
        for j in (m - i).max(0)..=m {
            acc += pterm(m, x, i, j);
        }
    }
    acc
}

/// Summand of the double sum for `d(m,k)`, including the bracket `[m >= 0]`.
pub fn term(m: i64, k: i64, i: i64, j: i64) -> BigRational {
    if m < 0 {
        return BigRational::zero();
    }
    let num = binom(2 * k, k) * binom(j, i) * binom(m, i) * binom(i, m - j);
    if num.is_zero() {
        return BigRational::zero();
    }
    let den = 2 * (2 * i - 1) * (2 * j + 1) * (2 * m - 2 * i - 1);
    BigRational::new(num * (3 * sign_pow(k + j)), BigInt::from(den))
}

pub fn iterm(m: i64, k: i64, i: i64) -> BigRational {
    term(m, k, i, k) * BigInt::from(2 * (2 * k + 1))
}

/// `Σ_i iterm(m, k, i)` over `0 <= i <= m`.
pub fn iterm_sum(m: i64, k: i64) -> BigRational {
    (0..=m.max(-1)).map(|i| iterm(m, k, i)).sum()
}

/// `d(m,k)` from the explicit double sum. Zero for `m < 0`, `k < 0` and
/// `k > m`.
pub fn d_direct(m: i64, k: i64) -> BigRational {
    if m < 0 || k < 0 || k > m {
        return BigRational::zero();
    }
    let mut acc = BigRational::zero();
    for i in 0..=m {
        for j in k..=m {
            acc += term(m, k, i, j);
        }
    }
    acc
}

/// `(d(2k-2, k), d(2k-3, k))` from the single surviving summands of `P`.
pub fn d_boundary(k: i64) -> Result<(BigRational, BigRational)> {
    if k < 3 {
        return Err(Error::BoundaryOutOfRange(k));
    }
    let even = pterm(2 * k - 2, k, k - 1, k - 1);
    // Surviving summands at (i, j) = (k-2, k-1) and (k-1, k-1).
    let odd = pterm(2 * k - 3, k, k - 2, k - 1) + pterm(2 * k - 3, k, k - 1, k - 1);
    Ok((even, odd))
}

/// `d(m,k)` by solving `rel1(m,t) = 0` for `d(m,t)` upward from the lowest
/// nonzero entry of row `m`.
///
/// Row `m >= 2` vanishes below `k0 = ⌈(m+2)/2⌉` and `d(m, k0)` is a boundary
/// closed form, so the recursion only needs rows with `m >= 3`.
pub fn d_via_recursion(m: i64, k: i64) -> Result<BigRational> {
    if m < 0 || k < 0 || k > m {
        return Ok(BigRational::zero());
    }
    if m < 3 {
        return Err(Error::RecursionInapplicable {
            m,
            k,
            reason: "no boundary seed below m = 3",
        });
    }
    let k0 = if m % 2 == 0 { (m + 2) / 2 } else { (m + 3) / 2 };
    if k < k0 {
        return Ok(BigRational::zero());
    }
    let (even, odd) = d_boundary(k0)?;
    let seed = if m % 2 == 0 { even } else { odd };

    let mut below = BigRational::zero();
    let mut cur = seed;
    for t in k0 + 1..=k {
        let [c_lo, c_mid, c_top] = rel1_coefficients(m, t);
        if c_top.is_zero() {
            return Err(Error::RecursionInapplicable {
                m,
                k: t,
                reason: "vanishing pivot",
            });
        }
        let rest = below * c_lo + &cur * c_mid;
        let next = -rest / c_top;
        below = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// `d(m,k)` for `0 <= m, k <= max_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DMatrix {
    pub max_m: usize,
    pub entries: Vec<Vec<BigRational>>,
}

impl DMatrix {
    pub fn get(&self, m: usize, k: usize) -> &BigRational {
        &self.entries[m][k]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigRational]> {
        self.entries.iter().map(Vec::as_slice)
    }

    /// Largest absolute entry, handy for sanity output.
    pub fn max_abs(&self) -> BigRational {
        self.entries
            .iter()
            .flatten()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}

pub fn d_matrix(max_m: usize) -> DMatrix {
    let n = max_m as i64;
    let entries = (0..=n)
        .into_par_iter()
        .map(|m| (0..=n).map(|k| d_direct(m, k)).collect())
        .collect();
    DMatrix { max_m, entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bbasis::{decompose, eval_b, recompose, BCoeffs, EvenPolyValues};
    use crate::exact::{int, is_integer, rat};

    pub(crate) const GOLDEN_MATRIX: [[i64; 11]; 11] = [
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0], // d(0,0) = 3/2 patched in below
        [1, -2, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 6, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 24, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 4, 118, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 60, 696, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 12, 720, 4824, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 336, 8288, 38240, 0, 0, 0],
        [0, 0, 0, 0, 0, 60, 6516, 95928, 336822, 0, 0],
        [0, 0, 0, 0, 0, 0, 2520, 109872, 1131732, 3215544, 0],
        [0, 0, 0, 0, 0, 0, 392, 67904, 1735320, 13647840, 32651544],
    ];

    fn expected(m: usize, k: usize) -> BigRational {
        if (m, k) == (0, 0) {
            rat(3, 2)
        } else {
            int(GOLDEN_MATRIX[m][k])
        }
    }

    #[test]
    fn matrix_matches_golden_values() {
        let d = d_matrix(10);
        for m in 0..=10 {
            for k in 0..=10 {
                assert_eq!(d.get(m, k), &expected(m, k), "d({m},{k})");
            }
        }
    }

    #[test]
    fn small_matrices() {
        let d = d_matrix(1);
        assert_eq!(d.entries, vec![vec![rat(3, 2), int(0)], vec![int(1), int(-2)]]);
        let d = d_matrix(6);
        let row: Vec<_> = [0, 0, 0, 0, 12, 720, 4824].iter().map(|&x| int(x)).collect();
        assert_eq!(d.entries[6], row);
    }

    #[test]
    fn d_direct_examples_and_conventions() {
        assert_eq!(d_direct(0, 0), rat(3, 2));
        assert_eq!(d_direct(4, 4), int(118));
        assert_eq!(d_direct(10, 10), int(32651544));
        assert_eq!(d_direct(-1, 0), int(0));
        assert_eq!(d_direct(3, 4), int(0));
        assert_eq!(d_direct(3, -1), int(0));
    }

    #[test]
    fn pterm_examples() {
        assert_eq!(pterm(4, 3, 2, 2), int(4));
        assert_eq!(pterm(4, 3, 3, 3), int(0));
        assert_eq!(pterm(0, 0, 0, 0), int(3));
        for i in -3..8 {
            for j in -3..8 {
                assert_eq!(pterm(3, 1, i, j), int(0), "pterm(3,1,{i},{j})");
            }
        }
    }

    #[test]
    fn eval_p_examples() {
        assert_eq!(eval_p(2, 2), int(6));
        assert_eq!(eval_p(5, 2), int(0));
        assert_eq!(eval_p(1, 2), int(-6));
        assert_eq!(eval_p(0, 5), rat(3, 1));
    }

    #[test]
    fn term_examples() {
        for (k, i, j) in [(0, 0, 0), (2, 1, 3), (5, 5, 5)] {
            assert_eq!(term(-3, k, i, j), int(0));
        }
        assert_eq!(term(0, 0, 0, 0), rat(3, 2));
        let total: BigRational = (0..=4)
            .flat_map(|i| (3..=4).map(move |j| term(4, 3, i, j)))
            .sum();
        assert_eq!(total, int(4));
    }

    #[test]
    fn iterm_examples() {
        assert_eq!(iterm_sum(2, 2), int(60));
        assert_eq!(iterm_sum(1, 1), int(-12));
        for k in 0..4 {
            assert_eq!(iterm(3, k, -1), int(0));
            assert_eq!(iterm(3, k, 4), int(0));
        }
    }

    #[test]
    fn boundary_examples() {
        assert!(d_boundary(2).is_err());
        let (even3, odd3) = d_boundary(3).unwrap();
        assert_eq!(even3, int(4));
        assert_eq!(odd3, int(24));
        assert_eq!(d_boundary(4).unwrap().1, int(60));
    }

    #[test]
    fn recursion_examples() {
        assert_eq!(d_via_recursion(4, 3).unwrap(), int(4));
        assert_eq!(d_via_recursion(6, 5).unwrap(), int(720));
        for m in 0..12 {
            assert_eq!(d_via_recursion(m, m + 1).unwrap(), int(0));
        }
        assert!(matches!(
            d_via_recursion(2, 2),
            Err(Error::RecursionInapplicable { .. })
        ));
    }

    #[test]
    fn widened_supports_change_nothing() {
        for m in 0..=8 {
            for k in 0..=m {
                let wide: BigRational = (-3..=m + 3)
                    .flat_map(|i| (k..=m + 3).map(move |j| term(m, k, i, j)))
                    .sum();
                assert_eq!(wide, d_direct(m, k));
            }
            for x in -4..=4 {
                let wide: BigRational = (-3..=m + 3)
                    .flat_map(|i| (-3..=m + 3).map(move |j| pterm(m, x, i, j)))
                    .sum();
                assert_eq!(wide, eval_p(m, x), "m={m} x={x}");
            }
        }
    }

    #[test]
    fn row_decomposition_matches_matrix() {
        let d = d_matrix(12);
        for m in 0..=12 {
            let values = EvenPolyValues::new((0..=m as i64).map(|x| eval_p(m as i64, x)).collect());
            assert_eq!(decompose(&values).coeffs, d.entries[m][..=m].to_vec(), "row {m}");
            let row = BCoeffs::new(d.entries[m].clone());
            for x in -6..=6 {
                assert_eq!(recompose(&row, x), eval_p(m as i64, x));
            }
        }
    }

    #[test]
    fn telescoping_identity_small() {
        for j in 0..=8i64 {
            for x in -8..=8 {
                let lhs = binom(x + j, j) * binom(x - 1, j) * sign_pow(j);
                let rhs: BigRational = (0..=j)
                    .map(|k| {
                        BigRational::new(binom(2 * k, k) * eval_b(k, x) * sign_pow(k), 2.into())
                    })
                    .sum();
                assert_eq!(BigRational::from_integer(lhs), rhs, "j={j} x={x}");
            }
        }
    }

    #[test]
    fn rows_from_one_are_integral() {
        let d = d_matrix(14);
        for m in 1..=14 {
            assert!(d.entries[m].iter().all(is_integer), "row {m}");
        }
    }
}
