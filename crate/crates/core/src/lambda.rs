//! A small language for bivectors in the `v`-frame, e.g. `2 v1^v4 - v2^v3`.
//!
//! ```text
//! expr  := [sign] term (sign term)*
//! term  := [coeff ['*']] 'v' INT '^' 'v' INT
//! coeff := rational ['i'] | 'i' | '(' [sign] part (sign part)* ')'
//! part  := rational ['i'] | 'i'
//! ```
//!
//! Whitespace between tokens is ignored. Indices are 1-based. Terms are normalized to `i < j`,
//! absorbing the sign of the swap; repeated pairs are summed and zero terms dropped.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, LambdaParseError, Result};
use crate::exterior::{MixedElement, MixedMonomial};
use crate::linalg::{GaussRational, Rational};

/// `Σ c_{ij} v_i ∧ v_j` with `1 ≤ i < j` and every `c_{ij} ≠ 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LambdaExpr {
    terms: BTreeMap<(usize, usize), GaussRational>,
}

impl LambdaExpr {
    pub fn zero() -> LambdaExpr {
        LambdaExpr::default()
    }

    /// Adds `c · v_i ∧ v_j` for 1-based `i ≠ j`.
    pub fn add_term(&mut self, i: usize, j: usize, c: GaussRational) {
        assert!(i != j && i > 0 && j > 0, "degenerate or zero-based term");
        let (key, c) = if i < j { ((i, j), c) } else { ((j, i), -c) };
        let entry = self.terms.entry(key).or_insert_with(GaussRational::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &GaussRational)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The largest index used, or 0.
    pub fn max_index(&self) -> usize {
        self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    /// The bivector in `g^{2,0}` for complex dimension `n_c`.
    pub fn bind(&self, n_c: usize) -> Result<MixedElement> {
        if self.max_index() > n_c {
            return Err(Error::InvalidParameter(format!(
                "index v{} is out of range for complex dimension {n_c}",
                self.max_index()
            )));
        }
        let mut e = MixedElement::zero();
        for (&(i, j), c) in &self.terms {
            e.add_term(MixedMonomial::new(&[i - 1, j - 1], &[]), c.clone());
        }
        Ok(e)
    }

    /// The expression of a bivector; `None` unless it has bidegree `(2, 0)`.
    pub fn from_element(e: &MixedElement) -> Option<LambdaExpr> {
        if !e.is_homogeneous_of(2, 0) {
            return None;
        }
        let mut out = LambdaExpr::zero();
        for (m, c) in e.terms() {
            let v = m.vec_indices();
            out.add_term(v[0] + 1, v[1] + 1, c.clone());
        }
        Some(out)
    }
}

pub fn parse_lambda(src: &str) -> std::result::Result<LambdaExpr, LambdaParseError> {
    Parser { src: src.as_bytes(), pos: 0 }.expr()
}

impl FromStr for LambdaExpr {
    type Err = LambdaParseError;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        parse_lambda(s)
    }
}

impl fmt::Display for LambdaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (&(i, j), c)) in self.terms.iter().enumerate() {
            let (negative, magnitude) = split_sign(c);
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !magnitude.is_one() {
                write!(f, "{} ", coefficient_text(&magnitude))?;
            }
            write!(f, "v{i}^v{j}")?;
        }
        Ok(())
    }
}

/// Pulls a sign out of real or purely imaginary coefficients.
fn split_sign(c: &GaussRational) -> (bool, GaussRational) {
    let negative = if c.re.is_zero() { c.im.is_negative() } else { c.re.is_negative() && c.im.is_zero() };
    if negative {
        (true, -c)
    } else {
        (false, c.clone())
    }
}

fn coefficient_text(c: &GaussRational) -> String {
    if c.im.is_zero() {
        c.re.to_string()
    } else if c.re.is_zero() {
        if c.im.is_one() {
            "i".to_string()
        } else {
            format!("{}i", c.im)
        }
    } else {
        format!("({c})")
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error<T>(&self, message: impl Into<String>) -> std::result::Result<T, LambdaParseError> {
        Err(LambdaParseError { position: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sign(&mut self) -> Option<bool> {
        if self.eat(b'+') {
            Some(false)
        } else if self.eat(b'-') {
            Some(true)
        } else {
            None
        }
    }

    fn expr(&mut self) -> std::result::Result<LambdaExpr, LambdaParseError> {
        let mut out = LambdaExpr::zero();
        if self.peek().is_none() {
            return self.error("empty expression");
        }
        if std::str::from_utf8(self.src).is_ok_and(|s| s.trim() == "0") {
            return Ok(out);
        }
        let mut negative = self.sign().unwrap_or(false);
        loop {
            self.term(negative, &mut out)?;
            match self.peek() {
                None => return Ok(out),
                Some(_) => match self.sign() {
                    Some(s) => negative = s,
                    None => return self.error("expected `+` or `-` between terms"),
                },
            }
        }
    }

    fn term(&mut self, negative: bool, out: &mut LambdaExpr) -> std::result::Result<(), LambdaParseError> {
        let mut c = match self.peek() {
            Some(b'v') => GaussRational::one(),
            Some(b'(') => self.parenthesized()?,
            Some(b'i') | Some(b'0'..=b'9') => {
                let c = self.part()?;
                self.eat(b'*');
                c
            }
            Some(_) => return self.error("expected a coefficient or `v`"),
            None => return self.error("expected a term"),
        };
        if negative {
            c = -c;
        }
        let start = self.pos;
        let i = self.vector()?;
        if !self.eat(b'^') {
            return self.error("expected `^`");
        }
        let j = self.vector()?;
        if i == j {
            return Err(LambdaParseError { position: start, message: format!("v{i}^v{i} is a degenerate wedge") });
        }
        out.add_term(i, j, c);
        Ok(())
    }

    fn parenthesized(&mut self) -> std::result::Result<GaussRational, LambdaParseError> {
        self.eat(b'(');
        let mut total = GaussRational::zero();
        let mut negative = self.sign().unwrap_or(false);
        loop {
            let part = self.part()?;
            total += &if negative { -part } else { part };
            if self.eat(b')') {
                break;
            }
            match self.sign() {
                Some(s) => negative = s,
                None => return self.error("expected `+`, `-` or `)`"),
            }
        }
        self.eat(b'*');
        Ok(total)
    }

    /// `rational ['i'] | 'i'`.
    fn part(&mut self) -> std::result::Result<GaussRational, LambdaParseError> {
        if self.eat(b'i') {
            return Ok(GaussRational::i());
        }
        let r = self.rational()?;
        if self.eat(b'i') {
            Ok(GaussRational::new(Rational::zero(), r))
        } else {
            Ok(GaussRational::real(r))
        }
    }

    fn rational(&mut self) -> std::result::Result<Rational, LambdaParseError> {
        let numer = self.integer()?;
        if self.eat(b'/') {
            let at = self.pos;
            let denom = self.integer()?;
            if denom == BigInt::from(0) {
                return Err(LambdaParseError { position: at, message: "zero denominator".into() });
            }
            Ok(Rational::from_bigints(numer, denom))
        } else {
            Ok(Rational::from_bigints(numer, BigInt::from(1)))
        }
    }

    fn integer(&mut self) -> std::result::Result<BigInt, LambdaParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected a number");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("ascii digits parse"))
    }

    fn vector(&mut self) -> std::result::Result<usize, LambdaParseError> {
        if !self.eat(b'v') {
            return self.error("expected `v`");
        }
        let at = self.pos;
        let n = self.integer()?;
        match usize::try_from(n) {
            Ok(0) => Err(LambdaParseError { position: at, message: "indices start at 1".into() }),
            Ok(k) if k <= crate::exterior::MAX_COMPLEX_DIM => Ok(k),
            _ => Err(LambdaParseError { position: at, message: "index is too large".into() }),
        }
    }
}
