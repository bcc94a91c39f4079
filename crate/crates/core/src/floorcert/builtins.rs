//! The three factorial ratios whose `Z[1/2]` membership carries the
//! divisibility argument for `frac1` and `frac2`.

use super::spec::{parse_spec, FactorialRatioSpec};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct Instance {
    pub name: &'static str,
    pub spec: FactorialRatioSpec,
    pub order: Vec<String>,
}

/// `frac1(m, m+1, i) / (6m(m-1))` for `0 < i < m`, up to sign.
pub const FRAC1_DIAG: &str = "\
# frac1 on the diagonal m = k - 1
vars i m
assume i > 0
assume m - i > 0
num 2i - 2
num 2m
num 2m - 2i - 2
den i
den i
den 2i - 1
den m - i
den m - i
den 2m - 2i - 1
pow2 -1
";

/// `frac1(m, k, i) / (6m(m-1) C(i-1))` for `m > k-1 >= i >= m+1-k >= 0`.
pub const FRAC1_GENERAL: &str = "\
# frac1 off the diagonal, Catalan factor removed
vars k m i
assume m - k + 1 > 0
assume k - 1 - i >= 0
assume i - m - 1 + k >= 0
assume m + 1 - k >= 0
num i
num 2k - 2
num m
num 2m - 2i - 2
num 2m - 2k + 1
den 2i
den k - 1
den k - i - 1
den m - i
den 2m - 2i - 1
den m - k + 1
den 2m - 2k
den i + k - m - 1
";

/// `frac2(m, k, i) / (6m(m-1))` for `m > k-1 >= i >= m+1-k > 0`, up to sign.
pub const FRAC2: &str = "\
# frac2
vars k m i
assume m - k + 1 > 0
assume k - 1 - i >= 0
assume i - m - 1 + k >= 0
assume m + 1 - k > 0
num 2k - 2
num m - 2
den i
den k - 1
den k - i - 1
den m - i
den m - k
den i + k - m - 1
";

pub const NAMES: [&str; 3] = ["frac1-diag", "frac1-general", "frac2"];

fn order(vars: &[&str]) -> Vec<String> {
    vars.iter().map(|s| s.to_string()).collect()
}

pub fn builtin(name: &str) -> Result<Instance> {
    let (text, ord) = match name {
        "frac1-diag" => (FRAC1_DIAG, order(&["i", "m"])),
        "frac1-general" => (FRAC1_GENERAL, order(&["k", "m", "i"])),
        "frac2" => (FRAC2, order(&["k", "m", "i"])),
        other => return Err(Error::UnknownInstance(other.to_string())),
    };
    Ok(Instance {
        name: NAMES.iter().find(|n| **n == name).unwrap(),
        spec: parse_spec(text).expect("built-in spec parses"),
        order: ord,
    })
}

pub fn builtin_instances() -> Vec<Instance> {
    NAMES.iter().map(|n| builtin(n).unwrap()).collect()
}
