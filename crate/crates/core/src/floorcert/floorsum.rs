use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::form::{Assignment, LinearForm};
use super::spec::FactorialRatioSpec;
use crate::error::{Error, Result};

/// `weight · ⌊form / q⌋` with `q = 2n + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FloorTerm {
    pub weight: i64,
    pub form: LinearForm,
}

/// Signed sum of floors over the odd modulus `q = 2n + 1`.
///
/// Terms are kept sorted by form with equal forms merged, so two sums that
/// agree term by term compare equal.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct FloorSum {
    pub terms: Vec<FloorTerm>,
}

impl FloorSum {
    pub fn from_weighted(items: impl IntoIterator<Item = (i64, LinearForm)>) -> Self {
        let mut merged: BTreeMap<LinearForm, i64> = BTreeMap::new();
        for (w, f) in items {
            *merged.entry(f).or_insert(0) += w;
        }
        Self {
            terms: merged
                .into_iter()
                .filter(|(_, w)| *w != 0)
                .map(|(form, weight)| FloorTerm { weight, form })
                .collect(),
        }
    }

    /// Variables (other than `n`) that occur with nonzero coefficient.
    pub fn variables(&self) -> Vec<String> {
        let mut vs: Vec<String> =
            self.terms.iter().flat_map(|t| t.form.coeffs.keys().cloned()).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn evaluate(&self, assignment: &Assignment, q: i64) -> Result<i64> {
        if q < 3 || q % 2 == 0 {
            return Err(Error::BadModulus(q));
        }
        Ok(self.evaluate_unchecked(assignment, q))
    }

    pub(crate) fn evaluate_unchecked(&self, assignment: &Assignment, q: i64) -> i64 {
        let n = (q - 1) / 2;
        self.terms
            .iter()
            .map(|t| t.weight * t.form.eval(assignment, n).div_euclid(q))
            .sum()
    }

    /// Shift of the sum when `var` grows by `q`; zero means periodic in `var`.
    pub fn drift(&self, var: &str) -> i64 {
        self.terms.iter().map(|t| t.weight * t.form.coeff(var)).sum()
    }

    pub fn substitute(&self, var: &str, value: &LinearForm) -> Self {
        Self::from_weighted(self.terms.iter().map(|t| (t.weight, t.form.substitute(var, value))))
    }

    pub fn negated(&self) -> Self {
        Self::from_weighted(self.terms.iter().map(|t| (-t.weight, t.form.clone())))
    }
}

impl fmt::Display for FloorSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, t) in self.terms.iter().enumerate() {
            let mag = t.weight.abs();
            match (idx, t.weight < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mag != 1 {
                write!(f, "{mag}")?;
            }
            write!(f, "[{}]", t.form)?;
        }
        Ok(())
    }
}

/// One floor per factorial: `+` for numerator forms, `-` for denominator
/// forms, with equal forms merged and cancelled.
pub fn build_floor_sum(spec: &FactorialRatioSpec) -> FloorSum {
    FloorSum::from_weighted(
        spec.numerator
            .iter()
            .map(|f| (1, f.clone()))
            .chain(spec.denominator.iter().map(|f| (-1, f.clone()))),
    )
}

pub fn evaluate_floor_sum(fs: &FloorSum, assignment: &Assignment, q: i64) -> Result<i64> {
    fs.evaluate(assignment, q)
}

/// Odd moduli `3, 5, …` strictly below `q_max`, and the minimum of the sum
/// over one full period in every variable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmallQReport {
    pub q_max: i64,
    pub rows: Vec<SmallQRow>,
    pub witnesses: Vec<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmallQRow {
    pub q: i64,
    pub points: u64,
    pub min: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub q: i64,
    pub assignment: Assignment,
    pub value: i64,
}

const MAX_WITNESSES: usize = 16;

impl SmallQReport {
    pub fn min(&self) -> Option<i64> {
        self.rows.iter().map(|r| r.min).min()
    }

    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// Calls `visit` on every point of `[0, q)^vars`, last variable fastest.
pub fn for_each_in_period(vars: &[String], q: i64, mut visit: impl FnMut(&Assignment)) {
    let mut point: Assignment = vars.iter().map(|v| (v.clone(), 0)).collect();
    if vars.is_empty() {
        visit(&point);
        return;
    }
    loop {
        visit(&point);
        let mut idx = vars.len();
        loop {
            if idx == 0 {
                return;
            }
            idx -= 1;
            let x = point.get_mut(&vars[idx]).unwrap();
            *x += 1;
            if *x < q {
                break;
            }
            *x = 0;
        }
    }
}

pub fn brute_force_small_q(fs: &FloorSum, q_max: i64) -> SmallQReport {
    let vars = fs.variables();
    let mut rows = Vec::new();
    let mut witnesses = Vec::new();
    for q in (3..q_max).step_by(2) {
        let mut min = i64::MAX;
        let mut points = 0u64;
        for_each_in_period(&vars, q, |a| {
            let v = fs.evaluate_unchecked(a, q);
            points += 1;
            min = min.min(v);
            if v < 0 && witnesses.len() < MAX_WITNESSES {
                witnesses.push(Witness { q, assignment: a.clone(), value: v });
            }
        });
        rows.push(SmallQRow { q, points, min });
    }
    SmallQReport { q_max, rows, witnesses }
}
