//! Factorial-ratio specifications and their line-oriented text format.
//!
//! ```text
//! vars i m
//! assume i > 0          # normalized to i - 1 >= 0
//! assume m - i > 0
//! num 2m                # (2m)! in the numerator
//! den i                 # i! in the denominator, repeat for multiplicity
//! pow2 -1               # global factor 2^-1
//! ```

use std::fmt::Write as _;

use serde::Serialize;

use super::form::{Assignment, LinearForm};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorialRatioSpec {
    pub variables: Vec<String>,
    pub numerator: Vec<LinearForm>,
    pub denominator: Vec<LinearForm>,
    /// Each form is constrained to be `>= 0`.
    pub region: Vec<LinearForm>,
    pub scalar_pow2: i64,
}

const RESERVED: [&str; 2] = ["n", "q"];

impl FactorialRatioSpec {
    pub fn in_region(&self, point: &Assignment) -> bool {
        self.region.iter().all(|f| f.eval(point, 0) >= 0)
    }

    /// Canonical text that [`parse_spec`] reads back to an equal spec.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "vars {}", self.variables.join(" ")).unwrap();
        for r in &self.region {
            writeln!(out, "assume {r} >= 0").unwrap();
        }
        for f in &self.numerator {
            writeln!(out, "num {f}").unwrap();
        }
        for f in &self.denominator {
            writeln!(out, "den {f}").unwrap();
        }
        if self.scalar_pow2 != 0 {
            writeln!(out, "pow2 {}", self.scalar_pow2).unwrap();
        }
        out
    }
}

struct Cursor<'a> {
    line: usize,
    col0: usize,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Syntax { line: self.line, column: self.col0 + self.pos + 1, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<i64> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        if matches!(self.bytes.get(self.pos), Some(b'.') | Some(b'/')) {
            return Err(self.err("non-integer coefficient"));
        }
        text.parse().map_err(|_| self.err(format!("integer `{text}` out of range")))
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned()
    }

    /// `term (('+'|'-') term)*` where `term = [int ['*']] ident | int`.
    fn form(&mut self, vars: &[String]) -> Result<LinearForm> {
        let mut out = LinearForm::default();
        let mut sign = 1;
        match self.peek() {
            Some(b'-') => {
                sign = -1;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            self.term(vars, sign, &mut out)?;
            match self.peek() {
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                _ => return Ok(out),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self, vars: &[String], sign: i64, out: &mut LinearForm) -> Result<()> {
        let c = match self.peek() {
            Some(b) if b.is_ascii_digit() => Some(self.number()?),
            Some(b) if b.is_ascii_alphabetic() || b == b'_' => None,
            Some(b) => return Err(self.err(format!("unexpected `{}`", b as char))),
            None => return Err(self.err("expected a term")),
        };
        if self.peek() == Some(b'*') {
            if c.is_none() {
                return Err(self.err("unexpected `*`"));
            }
            self.pos += 1;
            self.skip_ws();
        }
        match self.bytes.get(self.pos) {
            Some(b) if b.is_ascii_alphabetic() || *b == b'_' => {
                let name = self.ident();
                if !vars.contains(&name) {
                    return Err(Error::UnboundVariable { line: self.line, name });
                }
                out.add_var(&name, sign * c.unwrap_or(1));
            }
            _ => match c {
                Some(c) => out.constant += sign * c,
                None => return Err(self.err("expected a term")),
            },
        }
        Ok(())
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

pub fn parse_spec(text: &str) -> Result<FactorialRatioSpec> {
    let mut variables: Option<Vec<String>> = None;
    let mut spec = FactorialRatioSpec {
        variables: Vec::new(),
        numerator: Vec::new(),
        denominator: Vec::new(),
        region: Vec::new(),
        scalar_pow2: 0,
    };

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let indent = body.len() - trimmed.len();
        let (keyword, rest) = match trimmed.find(char::is_whitespace) {
            Some(p) => (&trimmed[..p], &trimmed[p..]),
            None => (trimmed, ""),
        };
        let mut cur = Cursor {
            line,
            col0: indent + keyword.len(),
            bytes: rest.as_bytes(),
            pos: 0,
        };
        let syntax = |column: usize, message: String| Error::Syntax { line, column, message };

        if keyword == "vars" {
            if variables.is_some() {
                return Err(syntax(indent + 1, "duplicate `vars` line".into()));
            }
            let mut names = Vec::new();
            for name in rest.split_whitespace() {
                let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                    && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
                if !valid {
                    return Err(syntax(indent + 1, format!("invalid variable name `{name}`")));
                }
                if RESERVED.contains(&name) {
                    return Err(syntax(indent + 1, format!("`{name}` is reserved for the modulus")));
                }
                if names.iter().any(|n| n == name) {
                    return Err(syntax(indent + 1, format!("variable `{name}` declared twice")));
                }
                names.push(name.to_string());
            }
            if names.is_empty() {
                return Err(syntax(indent + 1, "`vars` needs at least one name".into()));
            }
            variables = Some(names);
            continue;
        }

        let vars = match &variables {
            Some(v) => v.as_slice(),
            None if matches!(keyword, "num" | "den" | "assume") => {
                return Err(syntax(indent + 1, "`vars` must come first".into()));
            }
            None => &[],
        };

        match keyword {
            "num" | "den" => {
                let f = cur.form(vars)?;
                if !cur.at_end() {
                    return Err(cur.err("trailing input"));
                }
                if keyword == "num" {
                    spec.numerator.push(f);
                } else {
                    spec.denominator.push(f);
                }
            }
            "assume" => {
                let lhs = cur.form(vars)?;
                cur.skip_ws();
                let strict = match (cur.bytes.get(cur.pos), cur.bytes.get(cur.pos + 1)) {
                    (Some(b'>'), Some(b'=')) => {
                        cur.pos += 2;
                        false
                    }
                    (Some(b'>'), _) => {
                        cur.pos += 1;
                        true
                    }
                    _ => return Err(cur.err("expected `>=` or `>`")),
                };
                let rhs = cur.form(vars)?;
                if !cur.at_end() {
                    return Err(cur.err("trailing input"));
                }
                let f = lhs.minus(&rhs);
                spec.region.push(if strict { f.shifted(-1) } else { f });
            }
            "pow2" => {
                let v = rest.trim();
                spec.scalar_pow2 = v
                    .parse()
                    .map_err(|_| syntax(indent + keyword.len() + 2, format!("bad integer `{v}`")))?;
            }
            other => {
                return Err(syntax(indent + 1, format!("unknown keyword `{other}`")));
            }
        }
    }

    spec.variables = variables.ok_or(Error::Syntax {
        line: text.lines().count().max(1),
        column: 1,
        message: "missing `vars` line".into(),
    })?;
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_form() {
        let s = parse_spec("vars m\nnum 2m").unwrap();
        assert_eq!(s.numerator, vec![LinearForm::term("m", 2)]);
    }

    #[test]
    fn coefficient_styles() {
        let s = parse_spec("vars m i\nnum 2*m - i + 3\nden -m\nden 4").unwrap();
        let mut f = LinearForm::term("m", 2);
        f.add_var("i", -1);
        assert_eq!(s.numerator[0], f.shifted(3));
        assert_eq!(s.denominator[0], LinearForm::term("m", -1));
        assert_eq!(s.denominator[1], LinearForm::constant(4));
    }

    #[test]
    fn trailing_operator_is_a_syntax_error() {
        let e = parse_spec("vars m\nnum 2m+").unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 2, .. }), "{e:?}");
    }

    #[test]
    fn unbound_variable() {
        let e = parse_spec("vars m\nnum 2k").unwrap_err();
        assert_eq!(e, Error::UnboundVariable { line: 2, name: "k".into() });
    }

    #[test]
    fn fractional_coefficient() {
        let e = parse_spec("vars m\nnum 1.5m").unwrap_err();
        assert!(matches!(e, Error::Syntax { ref message, .. } if message.contains("non-integer")));
        assert!(parse_spec("vars m\nnum 1/2m").is_err());
    }

    #[test]
    fn strict_inequality_normalizes() {
        let s = parse_spec("vars m i\nassume m > i\nassume i >= 0").unwrap();
        let mut f = LinearForm::var("m");
        f.add_var("i", -1);
        assert_eq!(s.region, vec![f.shifted(-1), LinearForm::var("i")]);
    }

    #[test]
    fn comments_blank_lines_and_pow2() {
        let s = parse_spec("# header\n\nvars m   # one var\npow2 -3\nnum m # trailing\n").unwrap();
        assert_eq!(s.scalar_pow2, -3);
        assert_eq!(s.numerator.len(), 1);
    }

    #[test]
    fn structural_errors() {
        assert!(parse_spec("num m").is_err());
        assert!(parse_spec("vars n").is_err());
        assert!(parse_spec("vars m m").is_err());
        assert!(parse_spec("vars m\nfoo m").is_err());
        assert!(parse_spec("vars m\nassume m = 0").is_err());
        assert!(parse_spec("").is_err());
        assert!(parse_spec("vars m\nnum m m").is_err());
    }

    #[test]
    fn error_column_points_at_problem() {
        match parse_spec("vars m\nnum 2m + ?").unwrap_err() {
            Error::Syntax { line, column, .. } => {
                assert_eq!(line, 2);
                assert_eq!(column, 10);
            }
            e => panic!("{e:?}"),
        }
    }
}
