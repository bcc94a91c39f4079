//! Brute-force check of `Z[1/2]` membership by exact evaluation of the
//! factorial ratio, independent of any floor analysis.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use super::form::{Assignment, LinearForm};
use super::spec::FactorialRatioSpec;
use crate::error::{Error, Result};
use crate::exact::{factorial, format_rational, in_z_half};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub assignment: Assignment,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub points_in_region: usize,
    pub violations: Vec<Violation>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn max_abs_over_box(f: &LinearForm, ranges: &BTreeMap<String, RangeInclusive<i64>>) -> i64 {
    f.coeffs.iter().fold(f.constant.abs(), |acc, (v, c)| {
        let r = &ranges[v];
        acc + c.abs() * r.start().abs().max(r.end().abs())
    })
}

/// Exact value of `2^pow2 · Π num! / Π den!` at a point where every
/// factorial argument is nonnegative.
pub fn ratio_at(spec: &FactorialRatioSpec, point: &Assignment, table: &[BigInt]) -> Result<BigRational> {
    let fact = |f: &LinearForm| -> Result<&BigInt> {
        let x = f.eval(point, 0);
        if x < 0 {
            return Err(Error::RegionInconsistent {
                point: super::certificate::fmt_assignment(point),
                value: x,
            });
        }
        Ok(&table[x as usize])
    };
    let mut num = BigInt::one();
    for f in &spec.numerator {
        num *= fact(f)?;
    }
    let mut den = BigInt::one();
    for f in &spec.denominator {
        den *= fact(f)?;
    }
    if spec.scalar_pow2 >= 0 {
        num <<= spec.scalar_pow2 as usize;
    } else {
        den <<= (-spec.scalar_pow2) as usize;
    }
    Ok(BigRational::new(num, den))
}

/// Evaluates the ratio at every point of the box that lies in the region
/// and reports the points whose reduced denominator is not a power of two.
pub fn oracle_membership(
    spec: &FactorialRatioSpec,
    ranges: &BTreeMap<String, RangeInclusive<i64>>,
) -> Result<OracleReport> {
    let missing: Vec<&String> = spec.variables.iter().filter(|v| !ranges.contains_key(*v)).collect();
    if !missing.is_empty() {
        return Err(Error::BadOrder(format!("no range for {missing:?}")));
    }
    let top = spec
        .numerator
        .iter()
        .chain(&spec.denominator)
        .map(|f| max_abs_over_box(f, ranges))
        .max()
        .unwrap_or(0);
    let mut table = Vec::with_capacity(top as usize + 1);
    let mut acc = BigInt::one();
    table.push(acc.clone());
    for t in 1..=top {
        acc *= t;
        table.push(acc.clone());
    }
    debug_assert_eq!(table.last(), Some(&factorial(top)));

    let boxes: Vec<RangeInclusive<i64>> = spec.variables.iter().map(|v| ranges[v].clone()).collect();
    let points: Vec<Assignment> = crate::relations::lattice(&boxes)
        .into_iter()
        .map(|p| spec.variables.iter().cloned().zip(p).collect::<Assignment>())
        .filter(|a| spec.in_region(a))
        .collect();

    let checked = points
        .par_iter()
        .map(|a| ratio_at(spec, a, &table).map(|r| (a, r)))
        .collect::<Result<Vec<_>>>()?;
    let violations = checked
        .into_iter()
        .filter(|(_, r)| !in_z_half(r))
        .map(|(a, r)| Violation { assignment: a.clone(), value: format_rational(&r) })
        .collect();
    Ok(OracleReport { points_in_region: points.len(), violations })
}

/// Every variable of `spec` over `0..=max`.
pub fn uniform_ranges(spec: &FactorialRatioSpec, max: i64) -> BTreeMap<String, RangeInclusive<i64>> {
    spec.variables.iter().map(|v| (v.clone(), 0..=max)).collect()
}
