use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

/// Integer linear form in named variables, the symbolic modulus parameter
/// `n` (with `q = 2n + 1`), and a constant.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LinearForm {
    pub coeffs: BTreeMap<String, i64>,
    pub n: i64,
    pub constant: i64,
}

pub type Assignment = BTreeMap<String, i64>;

impl LinearForm {
    pub fn constant(c: i64) -> Self {
        Self { constant: c, ..Self::default() }
    }

    pub fn var(name: &str) -> Self {
        Self::term(name, 1)
    }

    pub fn term(name: &str, c: i64) -> Self {
        let mut f = Self::default();
        f.add_var(name, c);
        f
    }

    pub fn n_term(c: i64) -> Self {
        Self { n: c, ..Self::default() }
    }

    pub fn add_var(&mut self, name: &str, c: i64) {
        let e = self.coeffs.entry(name.to_string()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(name);
        }
    }

    pub fn coeff(&self, name: &str) -> i64 {
        self.coeffs.get(name).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.n == 0 && self.constant == 0
    }

    pub fn has_vars(&self) -> bool {
        !self.coeffs.is_empty()
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (v, c) in &other.coeffs {
            out.add_var(v, *c);
        }
        out.n += other.n;
        out.constant += other.constant;
        out
    }

    pub fn scaled(&self, s: i64) -> Self {
        if s == 0 {
            return Self::default();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(v, c)| (v.clone(), c * s)).collect(),
            n: self.n * s,
            constant: self.constant * s,
        }
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scaled(-1))
    }

    pub fn shifted(&self, c: i64) -> Self {
        let mut out = self.clone();
        out.constant += c;
        out
    }

    /// The form with `var` dropped.
    pub fn without(&self, var: &str) -> Self {
        let mut out = self.clone();
        out.coeffs.remove(var);
        out
    }

    /// Replace `var` by `value`.
    pub fn substitute(&self, var: &str, value: &Self) -> Self {
        match self.coeffs.get(var) {
            None => self.clone(),
            Some(&c) => self.without(var).plus(&value.scaled(c)),
        }
    }

    /// Value at an integer assignment and a given `n`. Missing variables are
    /// a caller bug.
    pub fn eval(&self, assignment: &Assignment, n: i64) -> i64 {
        self.coeffs.iter().fold(self.n * n + self.constant, |acc, (v, c)| {
            let x = assignment
                .get(v)
                .unwrap_or_else(|| panic!("variable `{v}` missing from assignment"));
            acc + c * x
        })
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(i64, &str)> = self.coeffs.iter().map(|(v, c)| (*c, v.as_str())).collect();
        if self.n != 0 {
            parts.push((self.n, "n"));
        }
        if self.constant != 0 {
            parts.push((self.constant, ""));
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        for (idx, (c, name)) in parts.iter().enumerate() {
            let mag = c.abs();
            if idx == 0 {
                if *c < 0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if *c < 0 { " - " } else { " + " })?;
            }
            match (mag, name.is_empty()) {
                (_, true) => write!(f, "{mag}")?,
                (1, false) => f.write_str(name)?,
                _ => write!(f, "{mag}{name}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(pairs: &[(&str, i64)], c: i64) -> LinearForm {
        let mut f = LinearForm::constant(c);
        for (v, k) in pairs {
            f.add_var(v, *k);
        }
        f
    }

    #[test]
    fn display() {
        assert_eq!(form(&[("m", 2), ("i", -2)], -1).to_string(), "-2i + 2m - 1");
        assert_eq!(LinearForm::default().to_string(), "0");
        assert_eq!(form(&[("i", -1)], 0).plus(&LinearForm::n_term(1)).to_string(), "-i + n");
    }

    #[test]
    fn substitution() {
        let f = form(&[("m", 2), ("i", -2)], -2);
        let v = form(&[("m", 1)], -2).plus(&LinearForm::n_term(-1));
        let g = f.substitute("i", &v);
        assert_eq!(g, LinearForm { n: 2, constant: 2, ..LinearForm::default() });
    }

    #[test]
    fn evaluation() {
        let f = form(&[("m", 2), ("i", -2)], -1).plus(&LinearForm::n_term(3));
        let a: Assignment = [("m".to_string(), 5), ("i".to_string(), 1)].into();
        assert_eq!(f.eval(&a, 2), 10 - 2 - 1 + 6);
    }
}
