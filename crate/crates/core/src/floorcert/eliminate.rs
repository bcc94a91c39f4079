//! Removing one variable from a floor sum at a time.
//!
//! For fixed `q = 2n + 1` the sum is periodic in every variable and constant
//! between consecutive jumps, so its values over a full period are all
//! attained within one step of the points where some floor changes. Those
//! points are solved symbolically modulo `q`, using `2⁻¹ ≡ n + 1`.

use super::floorsum::FloorSum;
use super::form::LinearForm;
use crate::error::{Error, Result};

/// Sampling offsets around each jump point.
pub const OFFSETS: [i64; 3] = [-1, 0, 1];

fn not_eliminable(var: &str, why: impl Into<String>) -> Error {
    Error::NotEliminable(var.to_string(), why.into())
}

/// `s / 2` modulo `2n + 1`, as a linear form.
///
/// Variable coefficients and the `n` coefficient must be even. An odd
/// constant `b` becomes `(b ± (2n+1)) / 2`, rounding away from zero.
fn half_mod_q(var: &str, s: &LinearForm) -> Result<LinearForm> {
    if let Some((v, c)) = s.coeffs.iter().find(|(_, c)| *c % 2 != 0) {
        return Err(not_eliminable(var, format!("halving needs an even coefficient on `{v}`, found {c}")));
    }
    if s.n % 2 != 0 {
        return Err(not_eliminable(var, format!("halving needs an even coefficient on n, found {}", s.n)));
    }
    let mut out = LinearForm {
        coeffs: s.coeffs.iter().map(|(v, c)| (v.clone(), c / 2)).collect(),
        n: s.n / 2,
        constant: s.constant / 2,
    };
    if s.constant % 2 != 0 {
        let away = s.constant.signum();
        out.n += away;
        out.constant = (s.constant + away) / 2;
    }
    Ok(out)
}

/// Symbolic values of `var` (mod `q`) at which some floor of `fs` jumps.
///
/// A floor `⌊(c·v + R)/q⌋` is anchored where `c·v + R ≡ 0`; for `|c| = 2`
/// the numerator moves in steps of two, so the residue `-sgn(c)` is added.
pub fn jump_candidates(fs: &FloorSum, var: &str) -> Result<Vec<LinearForm>> {
    let drift = fs.drift(var);
    if drift != 0 {
        return Err(not_eliminable(var, format!("sum is not periodic (drift {drift})")));
    }
    let mut out: Vec<LinearForm> = Vec::new();
    for t in &fs.terms {
        let c = t.form.coeff(var);
        if c == 0 {
            continue;
        }
        let rest = t.form.without(var);
        let targets: &[i64] = match c.abs() {
            1 => &[0],
            2 => &[0, -c.signum()],
            _ => return Err(not_eliminable(var, format!("unsupported coefficient {c}"))),
        };
        for &target in targets {
            // c·v ≡ target - R
            let s = LinearForm::constant(target).minus(&rest);
            let v = if c.abs() == 1 { s.scaled(c) } else { half_mod_q(var, &s.scaled(c.signum()))? };
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }
    Ok(out)
}

/// The values substituted for `var`: every jump point shifted by
/// [`OFFSETS`], deduplicated in generation order. A variable without jumps
/// gets the single value `0`.
pub fn case_values(fs: &FloorSum, var: &str) -> Result<Vec<LinearForm>> {
    let jumps = jump_candidates(fs, var)?;
    if jumps.is_empty() {
        return Ok(vec![LinearForm::default()]);
    }
    let mut out: Vec<LinearForm> = Vec::with_capacity(jumps.len() * OFFSETS.len());
    for j in &jumps {
        for off in OFFSETS {
            let v = j.shifted(off);
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }
    Ok(out)
}

/// One reduced floor sum per sampled value of `var`.
pub fn eliminate(fs: &FloorSum, var: &str) -> Result<Vec<(LinearForm, FloorSum)>> {
    Ok(case_values(fs, var)?
        .into_iter()
        .map(|v| {
            let reduced = fs.substitute(var, &v);
            (v, reduced)
        })
        .collect())
}

/// `(N, v)` with `⌊(a·n + b)/(2n+1)⌋ = v` for every `n >= N`, `N >= 1`
/// minimal.
///
/// The limit is `a/2`: for odd `a` the floor settles at `(a-1)/2`, for even
/// `a` at `a/2` or `a/2 - 1` depending on the sign of `b - a/2`. `N` is the
/// smallest `n >= 1` satisfying both halves of
/// `v(2n+1) <= a·n + b < (v+1)(2n+1)`.
pub fn stabilization_bound(a: i64, b: i64) -> (i64, i64) {
    let v = if a % 2 != 0 {
        (a - 1).div_euclid(2)
    } else if b - a / 2 >= 0 {
        a / 2
    } else {
        a / 2 - 1
    };
    let mut bound = 1;
    // (2v - a)·n <= b - v
    let (c1, r1) = (2 * v - a, b - v);
    if c1 < 0 {
        bound = bound.max(ceil_div(-r1, -c1));
    } else {
        debug_assert!(c1 == 0 && r1 >= 0);
    }
    // (a - 2v - 2)·n < v + 1 - b
    let (c2, r2) = (a - 2 * v - 2, v + 1 - b);
    if c2 < 0 {
        // n > r2 / c2 = (-r2) / (-c2)
        bound = bound.max((-r2).div_euclid(-c2) + 1);
    } else {
        debug_assert!(c2 == 0 && r2 > 0);
    }
    debug_assert_eq!(floor_at(a, b, bound), v);
    debug_assert_eq!(floor_at(a, b, bound + 1), v);
    (bound, v)
}

fn ceil_div(x: i64, y: i64) -> i64 {
    -(-x).div_euclid(y)
}

/// `⌊(a·n + b)/(2n+1)⌋`.
pub fn floor_at(a: i64, b: i64, n: i64) -> i64 {
    (a * n + b).div_euclid(2 * n + 1)
}
