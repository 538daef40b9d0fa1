//! Text grammar for mixed polynomials.
//!
//! ```text
//! poly   := ws term (ws ('+'|'-') ws term)* ws
//! term   := [coeff '*'] factor ('*' factor)* | coeff
//! factor := ('z'|'zbar') INDEX ['^' POSINT]
//! coeff  := DECIMAL | '(' DECIMAL ',' DECIMAL ')'
//! ```
//!
//! A leading sign on the first term is accepted, and the real and imaginary
//! parts inside `(re,im)` may carry a sign. The printer emits the same
//! grammar with terms in canonical order and unit coefficients elided.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mixedpoly::{ExponentPair, MixedMonomial, MixedPolynomial, MAX_VARS};

struct RawTerm {
    coeff: Complex64,
    factors: Vec<(usize, bool, u32)>,
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn starts_with(&self, lit: &str) -> bool {
        self.s[self.pos..].starts_with(lit.as_bytes())
    }

    fn integer(&mut self, what: &str) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            self.pos = start;
            return self.err(format!("expected {what}"));
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        text.parse::<u64>().or_else(|_| {
            self.pos = start;
            self.err(format!("{what} out of range"))
        })
    }

    fn decimal(&mut self, signed: bool) -> Result<f64> {
        let start = self.pos;
        if signed && matches!(self.peek(), Some(b'+' | b'-')) {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit() || c == b'.') {
            self.pos += 1;
        }
        if self.pos > digits_start && matches!(self.peek(), Some(b'e' | b'E')) {
            let save = self.pos;
            self.pos += 1;
            if matches!(self.peek(), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos = save;
            }
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        match text.parse::<f64>() {
            Ok(v) if v.is_finite() && self.pos > digits_start => Ok(v),
            _ => {
                self.pos = start;
                self.err("expected decimal number")
            }
        }
    }

    fn coeff(&mut self) -> Result<Complex64> {
        if self.eat(b'(') {
            self.skip_ws();
            let re = self.decimal(true)?;
            self.skip_ws();
            if !self.eat(b',') {
                return self.err("expected ',' in complex coefficient");
            }
            self.skip_ws();
            let im = self.decimal(true)?;
            self.skip_ws();
            if !self.eat(b')') {
                return self.err("expected ')' closing complex coefficient");
            }
            Ok(Complex64::new(re, im))
        } else {
            Ok(Complex64::new(self.decimal(false)?, 0.0))
        }
    }

    fn factor(&mut self) -> Result<(usize, bool, u32)> {
        let conj = if self.starts_with("zbar") {
            self.pos += 4;
            true
        } else if self.eat(b'z') {
            false
        } else {
            return self.err("expected 'z' or 'zbar'");
        };
        let idx_pos = self.pos;
        let idx = self.integer("variable index")?;
        if idx == 0 {
            self.pos = idx_pos;
            return self.err("variable indices are 1-based; index 0 is not allowed");
        }
        if idx as usize > MAX_VARS {
            return Err(Error::TooManyVariables(idx as usize));
        }
        let mut power = 1u32;
        if self.eat(b'^') {
            let p_pos = self.pos;
            let p = self.integer("exponent")?;
            if p == 0 || p > u64::from(u32::MAX) {
                self.pos = p_pos;
                return self.err("exponent must be a positive integer");
            }
            power = p as u32;
        }
        Ok((idx as usize, conj, power))
    }

    fn term(&mut self) -> Result<RawTerm> {
        let mut coeff = Complex64::new(1.0, 0.0);
        let mut factors = Vec::new();
        let coeff_pos = self.pos;
        let has_coeff = matches!(self.peek(), Some(b'0'..=b'9' | b'.' | b'('));
        if has_coeff {
            coeff = self.coeff()?;
            if coeff.re == 0.0 && coeff.im == 0.0 {
                self.pos = coeff_pos;
                return self.err("zero coefficient");
            }
            let save = self.pos;
            self.skip_ws();
            if !self.eat(b'*') {
                self.pos = save;
                return Ok(RawTerm { coeff, factors });
            }
            self.skip_ws();
        }
        factors.push(self.factor()?);
        loop {
            let save = self.pos;
            self.skip_ws();
            if !self.eat(b'*') {
                self.pos = save;
                break;
            }
            self.skip_ws();
            factors.push(self.factor()?);
        }
        Ok(RawTerm { coeff, factors })
    }

    fn poly(&mut self) -> Result<Vec<RawTerm>> {
        self.skip_ws();
        let mut terms = Vec::new();
        let mut sign = 1.0;
        if self.eat(b'-') {
            sign = -1.0;
            self.skip_ws();
        } else if self.eat(b'+') {
            self.skip_ws();
        }
        loop {
            let mut t = self.term()?;
            t.coeff *= sign;
            terms.push(t);
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') => sign = 1.0,
                Some(b'-') => sign = -1.0,
                Some(_) => return self.err("expected '+', '-' or end of input"),
            }
            self.pos += 1;
            self.skip_ws();
        }
        Ok(terms)
    }
}

pub(crate) fn parse(text: &str, n: Option<usize>) -> Result<MixedPolynomial> {
    let mut p = Parser {
        s: text.as_bytes(),
        pos: 0,
    };
    let raw = p.poly()?;
    let max_idx = raw
        .iter()
        .flat_map(|t| t.factors.iter().map(|f| f.0))
        .max()
        .unwrap_or(0);
    let n = match n {
        Some(n) if n < max_idx => {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("variable z{max_idx} exceeds declared count n={n}"),
            })
        }
        Some(n) => n,
        None => max_idx.max(1),
    };
    if n > MAX_VARS {
        return Err(Error::TooManyVariables(n));
    }
    let terms = raw
        .into_iter()
        .map(|t| {
            let mut nu = vec![0u32; n];
            let mut mu = vec![0u32; n];
            for (idx, conj, power) in t.factors {
                let slot = if conj { &mut mu[idx - 1] } else { &mut nu[idx - 1] };
                *slot = slot.checked_add(power).ok_or(Error::Overflow("exponent"))?;
            }
            Ok(MixedMonomial {
                coeff: t.coeff,
                exps: ExponentPair { nu, mu },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    MixedPolynomial::new(n, terms)
}

fn write_body(t: &MixedMonomial, out: &mut String) {
    let mut first = true;
    for j in 0..t.exps.n() {
        for (name, e) in [("z", t.exps.nu[j]), ("zbar", t.exps.mu[j])] {
            if e == 0 {
                continue;
            }
            if !first {
                out.push('*');
            }
            first = false;
            out.push_str(&format!("{name}{}", j + 1));
            if e > 1 {
                out.push_str(&format!("^{e}"));
            }
        }
    }
}

pub(crate) fn write_canonical(p: &MixedPolynomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut out = String::new();
    for (i, t) in p.terms().iter().enumerate() {
        let mut body = String::new();
        write_body(t, &mut body);
        let c = t.coeff;
        let (negative, coeff_text) = if c.im == 0.0 {
            let mag = c.re.abs();
            let text = if mag == 1.0 && !body.is_empty() {
                String::new()
            } else {
                format!("{mag}")
            };
            (c.re < 0.0, text)
        } else {
            (false, format!("({},{})", c.re, c.im))
        };
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&coeff_text);
        if !coeff_text.is_empty() && !body.is_empty() {
            out.push('*');
        }
        out.push_str(&body);
    }
    f.write_str(&out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_mixed_example() {
        let f = parse("z1^3*zbar1 + z2^3*zbar2 + z2^5", None).unwrap();
        assert_eq!(f.n(), 2);
        assert_eq!(f.terms().len(), 3);
        assert_eq!(f.terms()[0].exps.nu, vec![3, 0]);
        assert_eq!(f.terms()[0].exps.mu, vec![1, 0]);
    }

    #[test]
    fn single_variable() {
        let f = parse("z1", None).unwrap();
        assert_eq!(f.n(), 1);
        assert_eq!(f.terms()[0].coeff, Complex64::new(1.0, 0.0));
        assert_eq!(f.terms()[0].exps.nu, vec![1]);
        assert_eq!(f.terms()[0].exps.mu, vec![0]);
    }

    #[test]
    fn cancellation_is_an_error() {
        assert!(matches!(parse("z1^2 - z1^2", None), Err(Error::EmptyPolynomial)));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse("z0", None), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!(parse("0*z1", None), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse("z1 +", None), Err(Error::Parse { .. })));
        assert!(matches!(parse("2z1", None), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!(parse("z1^0", None), Err(Error::Parse { .. })));
        assert!(matches!(parse("z1 z2", None), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse("z3", Some(2)), Err(Error::Parse { .. })));
    }

    #[test]
    fn signs_and_complex_coefficients() {
        let f = parse("-2*z1 + z2 - (0.5,-1.5)*zbar1*z2^2", None).unwrap();
        let printed = f.to_string();
        assert_eq!(printed, "-2*z1 + (-0.5,1.5)*zbar1*z2^2 + z2");
        assert_eq!(parse(&printed, None).unwrap(), f);
    }

    #[test]
    fn repeated_factors_accumulate() {
        let f = parse("z1*z1*zbar1", None).unwrap();
        assert_eq!(f.to_string(), "z1^2*zbar1");
    }

    #[test]
    fn constant_terms() {
        let f = parse("3 + z1", None).unwrap();
        assert_eq!(f.to_string(), "z1 + 3");
    }
}
