//! The linear relations `rel1`, `rel2` between the coefficients `d(m,k)`,
//! the telescoping certificate `g`, the `frac1`/`frac2` split, and residual
//! evaluators for every compound identity built from them.
//!
//! Relations are generic over a [`DSource`] so the purely algebraic
//! identities can also be exercised on arbitrary tables, where they must
//! still hold.

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::coefficients::{d_direct, iterm, iterm_sum};
use crate::error::{Error, Result};
use crate::exact::{binom, factorial};

/// Anything that can supply `d(m,k)`.
pub trait DSource: Sync {
    fn d(&self, m: i64, k: i64) -> BigRational;
}

/// Evaluates [`d_direct`] on every request.
pub struct Direct;

impl DSource for Direct {
    fn d(&self, m: i64, k: i64) -> BigRational {
        d_direct(m, k)
    }
}

impl<F> DSource for F
where
    F: Fn(i64, i64) -> BigRational + Sync,
{
    fn d(&self, m: i64, k: i64) -> BigRational {
        self(m, k)
    }
}

/// Precomputed `d(m,k)` for `0 <= m <= max_m`; rows beyond fall back to the
/// double sum.
#[derive(Debug, Clone)]
pub struct DTable {
    max_m: i64,
    rows: Vec<Vec<BigRational>>,
}

impl DTable {
    pub fn new(max_m: i64) -> Self {
        let max_m = max_m.max(0);
        let rows = (0..=max_m)
            .into_par_iter()
            .map(|m| (0..=m).map(|k| d_direct(m, k)).collect())
            .collect();
        Self { max_m, rows }
    }

    pub fn max_m(&self) -> i64 {
        self.max_m
    }
}

impl DSource for DTable {
    fn d(&self, m: i64, k: i64) -> BigRational {
        if m < 0 || k < 0 || k > m {
            BigRational::zero()
        } else if m <= self.max_m {
            self.rows[m as usize][k as usize].clone()
        } else {
            d_direct(m, k)
        }
    }
}

fn bi(x: i64) -> BigInt {
    BigInt::from(x)
}

/// Coefficients of `d(m,k-2)`, `d(m,k-1)`, `d(m,k)` in `rel1(m,k)`.
pub fn rel1_coefficients(m: i64, k: i64) -> [BigInt; 3] {
    let lo = -32 * (3 - 2 * k).pow(2) * (-k + m + 1) * (-k + m + 2);
    let mid = 4
        * (-k + m + 1)
        * (2 * k * m * m - 2 * (k - 1) * (8 * k - 9) * m + (2 * k - 3) * (8 * (k - 2) * k + 9));
    let top = k * (-2 * k + m + 2) * (-2 * k + m + 3) * (-2 * k + 2 * m + 1);
    [bi(lo), bi(mid), bi(top)]
}

/// Coefficients of `d(m-1,k-1)`, `d(m,k-1)`, `d(m,k)` in `rel2(m,k)`.
pub fn rel2_coefficients(m: i64, k: i64) -> [BigInt; 3] {
    let prev_row = -4 * ((m - 1).pow(2) - 1);
    let mid = -4 * (2 * (k - 1) + m + 1) * (-k + m + 1);
    let top = k * (2 * k - m - 2);
    [bi(prev_row), bi(mid), bi(top)]
}

pub fn rel1_with<D: DSource + ?Sized>(d: &D, m: i64, k: i64) -> BigRational {
    let [a, b, c] = rel1_coefficients(m, k);
    d.d(m, k - 2) * a + d.d(m, k - 1) * b + d.d(m, k) * c
}

pub fn rel2_with<D: DSource + ?Sized>(d: &D, m: i64, k: i64) -> BigRational {
    let [a, b, c] = rel2_coefficients(m, k);
    d.d(m - 1, k - 1) * a + d.d(m, k - 1) * b + d.d(m, k) * c
}

pub fn rel1(m: i64, k: i64) -> BigRational {
    rel1_with(&Direct, m, k)
}

pub fn rel2(m: i64, k: i64) -> BigRational {
    rel2_with(&Direct, m, k)
}

/// The telescoping certificate `g(m,k,i)`.
///
/// `Γ(k+3/2)/Γ(1/2) = Π_{t=0..k} (2t+1) / 2^{k+1}`, which folds into the
/// `2^{2k+3}` prefactor, and `Γ(k+2) = (k+1)!`.
pub fn certificate_g(m: i64, k: i64, i: i64) -> Result<BigRational> {
    if k < 0 {
        return Err(Error::Negative { what: "certificate_g (k)", value: k });
    }
    let binoms = binom(k + 1, i - 1) * binom(m - 1, k + 1) * binom(k + 1, m - i);
    if binoms.is_zero() {
        return Ok(BigRational::zero());
    }
    let odd_double_factorial: BigInt = (0..=k).map(|t| bi(2 * t + 1)).product();
    let num = bi(3) * (BigInt::from(1) << (k + 2)) * m * (m + 1 - 2 * i)
        * odd_double_factorial
        * binoms;
    Ok(BigRational::new(num, factorial(k + 1)))
}

pub fn frac1(m: i64, k: i64, i: i64) -> BigRational {
    let num = bi(3 * (m - 1) * m * (-2 * k + 2 * m + 1))
        * binom(2 * (k - 1), k - 1)
        * binom(k - 1, i)
        * binom(m, i)
        * binom(i, -k + m + 1);
    if num.is_zero() {
        return BigRational::zero();
    }
    BigRational::new(num, bi((2 * i - 1) * (2 * m - 2 * i - 1)))
}

pub fn frac2(m: i64, k: i64, i: i64) -> BigRational {
    let v = bi(6 * (k - m - 1))
        * binom(2 * (k - 1), k - 1)
        * binom(k - 1, i)
        * binom(m, i)
        * binom(i, -k + m + 1);
    BigRational::from_integer(v)
}

/// The certificate relation summed over `i`, written in terms of `d` via
/// `Σ_i iterm(m,k,i) = 2(2k+1) d(m,k) + (k+1) d(m,k+1)`.
pub fn summed_certificate_relation<D: DSource + ?Sized>(d: &D, m: i64, k: i64) -> BigRational {
    let s = |k: i64| d.d(m, k) * bi(2 * (2 * k + 1)) + d.d(m, k + 1) * bi(k + 1);
    let [a, b, c] = certificate_coefficients(m, k);
    s(k) * a + s(k + 1) * b + s(k + 2) * c
}

/// Coefficients of `iterm(m,k,i)`, `iterm(m,k+1,i)`, `iterm(m,k+2,i)` in the
/// certificate identity.
pub fn certificate_coefficients(m: i64, k: i64) -> [BigInt; 3] {
    let a = -32 * (1 + 2 * k) * (3 + 2 * k) * (k - m) * (1 + k - m);
    let b = -4
        * (1 + k - m)
        * (57 + 110 * k + 72 * k * k + 16 * k.pow(3) - 34 * m - 46 * k * m - 16 * k * k * m
            + 4 * m * m
            + 2 * k * m * m);
    let c = -(2 + k) * (5 + 2 * k - 2 * m) * (3 + 2 * k - m) * (4 + 2 * k - m);
    [bi(a), bi(b), bi(c)]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum IdentityId {
    /// Certificate identity in `iterm` and `g` at `(m, k, i)`.
    CertG,
    /// `2(3+2k) rel1(m,k+2) + (2+k) rel1(m,k+3)` at `(m, k)`.
    Rel1Recursion,
    /// The six-term rel1/rel2 combination at `(m, k)`.
    MixedRel1Rel2,
    /// The three-term recursion for rel2 at `(m, k)`.
    Rel2Recursion,
    /// rel1 rewritten through `Σ_i iterm` at `(m, k)`.
    SigmaIRewrite,
    /// `frac1 + frac2` against the iterm combination at `(m, k, i)`.
    FracSplit,
    /// `(2k-7) rel2(2k-4,k) - rel1(2k-4,k)` at `(k)`.
    Rel2Corner,
}

impl IdentityId {
    pub const ALL: [IdentityId; 7] = [
        IdentityId::CertG,
        IdentityId::Rel1Recursion,
        IdentityId::MixedRel1Rel2,
        IdentityId::Rel2Recursion,
        IdentityId::SigmaIRewrite,
        IdentityId::FracSplit,
        IdentityId::Rel2Corner,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::CertG => "CERT_G",
            IdentityId::Rel1Recursion => "REL1_RECURSION",
            IdentityId::MixedRel1Rel2 => "MIXED_REL1_REL2",
            IdentityId::Rel2Recursion => "REL2_RECURSION",
            IdentityId::SigmaIRewrite => "SIGMA_I_REWRITE",
            IdentityId::FracSplit => "FRAC_SPLIT",
            IdentityId::Rel2Corner => "REL2_CORNER",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            IdentityId::CertG | IdentityId::FracSplit => 3,
            IdentityId::Rel2Corner => 1,
            _ => 2,
        }
    }

    pub fn variables(self) -> &'static [&'static str] {
        match self.arity() {
            3 => &["m", "k", "i"],
            2 => &["m", "k"],
            _ => &["k"],
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn identity_residual(id: IdentityId, point: &[i64]) -> Result<BigRational> {
    identity_residual_with(id, point, &Direct)
}

/// Left side minus right side of the identity, as printed, at `point`.
pub fn identity_residual_with<D: DSource + ?Sized>(
    id: IdentityId,
    point: &[i64],
    d: &D,
) -> Result<BigRational> {
    if point.len() != id.arity() {
        return Err(Error::Arity { id: id.name(), expected: id.arity(), got: point.len() });
    }
    let r1 = |m, k| rel1_with(d, m, k);
    let r2 = |m, k| rel2_with(d, m, k);
    let v = match id {
        IdentityId::CertG => {
            let (m, k, i) = (point[0], point[1], point[2]);
            let [a, b, c] = certificate_coefficients(m, k);
            iterm(m, k, i) * a + iterm(m, k + 1, i) * b + iterm(m, k + 2, i) * c
                - certificate_g(m, k, i + 1)?
                + certificate_g(m, k, i)?
        }
        IdentityId::Rel1Recursion => {
            let (m, k) = (point[0], point[1]);
            r1(m, k + 2) * bi(2 * (3 + 2 * k)) + r1(m, k + 3) * bi(2 + k)
        }
        IdentityId::MixedRel1Rel2 => {
            let (m, k) = (point[0], point[1]);
            r2(m, k) * bi((-1 + k) * (-1 + 2 * k - 2 * m) * (-3 + 2 * k - m) * (4 - 2 * k + m))
                + r1(m - 1, k - 1) * bi(4 * (-1 + (-1 + m).pow(2)))
                - r2(m, k - 2) * bi(32 * (5 - 2 * k).pow(2) * (-2 + k - m) * (-1 + k - m))
                + r2(m, k - 1) * rel2_recursion_mid(m, k)
                - r1(m, k) * bi((-1 + k) * (-4 + 2 * k - m))
                - r1(m, k - 1) * bi(4 * (-1 + k - m) * (-5 + 2 * k + m))
        }
        IdentityId::Rel2Recursion => {
            let (m, k) = (point[0], point[1]);
            r2(m, k) * bi((-1 + k) * (-1 + 2 * k - 2 * m) * (-3 + 2 * k - m) * (4 - 2 * k + m))
                - r2(m, k - 2) * bi(32 * (5 - 2 * k).pow(2) * (-2 + k - m) * (-1 + k - m))
                + r2(m, k - 1) * rel2_recursion_mid(m, k)
        }
        IdentityId::SigmaIRewrite => {
            let (m, k) = (point[0], point[1]);
            d.d(m, k - 1) * bi(2 * (m - 1) * m * (2 * m + 1))
                + iterm_sum(m, k - 1) * bi((2 - 2 * k + m) * (3 - 2 * k + m) * (1 - 2 * k + 2 * m))
                + iterm_sum(m, k - 2) * bi(16 * (3 - 2 * k) * (-2 + k - m) * (-1 + k - m))
        }
        IdentityId::FracSplit => {
            let (m, k, i) = (point[0], point[1], point[2]);
            frac1(m, k, i) + frac2(m, k, i) - frac_split_target(m, k, i)
        }
        IdentityId::Rel2Corner => {
            let k = point[0];
            r2(2 * k - 4, k) * bi(2 * k - 7) - r1(2 * k - 4, k)
        }
    };
    Ok(v)
}

fn rel2_recursion_mid(m: i64, k: i64) -> BigInt {
    bi(4 * (1 - k + m)
        * (-99 + 16 * k.pow(3) - 2 * m * (32 + m) - 8 * k * k * (11 + 2 * m)
            + 2 * k * (81 + m * (31 + m))))
}

/// The iterm combination that `frac1 + frac2` splits.
pub fn frac_split_target(m: i64, k: i64, i: i64) -> BigRational {
    iterm(m, k - 1, i) * bi((2 - 2 * k + m) * (3 - 2 * k + m) * (1 - 2 * k + 2 * m))
        + iterm(m, k - 2, i) * bi(16 * (3 - 2 * k) * (-2 + k - m) * (-1 + k - m))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub id: IdentityId,
    pub range: String,
    pub points: usize,
    #[serde(serialize_with = "crate::audit::ser_rational")]
    pub max_abs_residual: BigRational,
    pub failures: Vec<Vec<i64>>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn describe_ranges(vars: &[&str], ranges: &[RangeInclusive<i64>]) -> String {
    vars.iter()
        .zip(ranges)
        .map(|(v, r)| format!("{v}∈[{},{}]", r.start(), r.end()))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Every lattice point of a box, first coordinate slowest.
pub fn lattice(ranges: &[RangeInclusive<i64>]) -> Vec<Vec<i64>> {
    ranges.iter().fold(vec![Vec::new()], |acc, r| {
        acc.into_iter()
            .flat_map(|p| {
                r.clone().map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect()
    })
}

pub fn verify_identity(id: IdentityId, ranges: &[RangeInclusive<i64>]) -> Result<IdentityReport> {
    let max_m = ranges.first().map(|r| *r.end()).unwrap_or(0);
    // REL2_CORNER touches rows up to 2k-4.
    let rows = if id == IdentityId::Rel2Corner { 2 * max_m } else { max_m + 1 };
    verify_identity_with(id, ranges, &DTable::new(rows))
}

pub fn verify_identity_with<D: DSource + ?Sized>(
    id: IdentityId,
    ranges: &[RangeInclusive<i64>],
    d: &D,
) -> Result<IdentityReport> {
    if ranges.len() != id.arity() {
        return Err(Error::Arity { id: id.name(), expected: id.arity(), got: ranges.len() });
    }
    let points = lattice(ranges);
    let residuals = points
        .par_iter()
        .map(|p| identity_residual_with(id, p, d).map(|r| (p, r)))
        .collect::<Result<Vec<_>>>()?;
    let mut failures: Vec<Vec<i64>> = residuals
        .iter()
        .filter(|(_, r)| !r.is_zero())
        .map(|(p, _)| (*p).clone())
        .collect();
    failures.sort();
    let max_abs_residual = residuals
        .iter()
        .map(|(_, r)| r.abs())
        .max()
        .unwrap_or_else(BigRational::zero);
    Ok(IdentityReport {
        id,
        range: describe_ranges(id.variables(), ranges),
        points: points.len(),
        max_abs_residual,
        failures,
    })
}
