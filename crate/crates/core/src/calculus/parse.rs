//! Text formats: polynomial literals like `3*z1^2*t - z2 + 7` and the
//! series file format with one `α_1 ... α_n : coeff` line per term.

use num_bigint::BigInt;

use crate::exact::Rational;
use crate::rings::RingDescriptor;
use crate::{Error, Result};

use super::{MultiSeries, Trunc};

/// The standard variable-name layout: z1..zN, t, then optionally
/// w1..wN, s (translation parameters) and r (dilation parameter).
pub fn heis_var_names(n: usize, with_translation: bool, with_r: bool) -> Vec<String> {
    let mut names = Vec::new();
    for j in 1..=n {
        names.push(format!("z{j}"));
    }
    names.push("t".to_string());
    if with_translation {
        for j in 1..=n {
            names.push(format!("w{j}"));
        }
        names.push("s".to_string());
    }
    if with_r {
        names.push("r".to_string());
    }
    names
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    names: &'a [String],
    ring: &'a RingDescriptor,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn expr(&mut self) -> Result<MultiSeries> {
        self.skip_ws();
        let mut negate = false;
        if matches!(self.chars.peek(), Some('-')) {
            self.chars.next();
            negate = true;
        } else if matches!(self.chars.peek(), Some('+')) {
            self.chars.next();
        }
        let first = self.term()?;
        let mut acc = if negate { first.neg() } else { first };
        loop {
            self.skip_ws();
            match self.chars.peek() {
                Some('+') => {
                    self.chars.next();
                    let t = self.term()?;
                    acc = acc.add(&t)?;
                }
                Some('-') => {
                    self.chars.next();
                    let t = self.term()?;
                    acc = acc.sub(&t)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiSeries> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if matches!(self.chars.peek(), Some('*')) {
                self.chars.next();
                let f = self.factor()?;
                acc = acc.mul(&f)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<MultiSeries> {
        self.skip_ws();
        match self.chars.peek() {
            Some('(') => {
                self.chars.next();
                let inner = self.expr()?;
                self.skip_ws();
                if self.chars.next() != Some(')') {
                    return Err(Error::ParseError("missing closing parenthesis".into()));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let q = self.number()?;
                let c = self.ring.from_rational(&q)?;
                Ok(MultiSeries::constant(c, self.names.len()))
            }
            Some(c) if c.is_alphabetic() => {
                let name = self.ident();
                let idx = self
                    .names
                    .iter()
                    .position(|n| n == &name)
                    .ok_or_else(|| Error::ParseError(format!("unknown variable {name}")))?;
                let exp = self.exponent()?;
                let one = self.ring.one()?;
                let mut alpha = vec![0u32; self.names.len()];
                alpha[idx] = exp;
                MultiSeries::from_terms(
                    self.ring.clone(),
                    self.names.len(),
                    vec![(alpha, one)],
                    Trunc::Exact,
                )
            }
            other => Err(Error::ParseError(format!("unexpected token {other:?}"))),
        }
    }

    fn exponent(&mut self) -> Result<u32> {
        self.skip_ws();
        if matches!(self.chars.peek(), Some('^')) {
            self.chars.next();
            self.skip_ws();
            let mut digits = String::new();
            while matches!(self.chars.peek(), Some(c) if c.is_ascii_digit()) {
                digits.push(self.chars.next().expect("peeked"));
            }
            digits
                .parse()
                .map_err(|_| Error::ParseError("bad exponent".into()))
        } else {
            Ok(1)
        }
    }

    fn ident(&mut self) -> String {
        let mut s = String::new();
        while matches!(self.chars.peek(), Some(c) if c.is_alphanumeric()) {
            s.push(self.chars.next().expect("peeked"));
        }
        s
    }

    fn number(&mut self) -> Result<Rational> {
        let mut digits = String::new();
        while matches!(self.chars.peek(), Some(c) if c.is_ascii_digit()) {
            digits.push(self.chars.next().expect("peeked"));
        }
        let numer: BigInt = digits
            .parse()
            .map_err(|_| Error::ParseError("bad number".into()))?;
        self.skip_ws();
        if matches!(self.chars.peek(), Some('/')) {
            self.chars.next();
            self.skip_ws();
            let mut den = String::new();
            while matches!(self.chars.peek(), Some(c) if c.is_ascii_digit()) {
                den.push(self.chars.next().expect("peeked"));
            }
            let denom: BigInt = den
                .parse()
                .map_err(|_| Error::ParseError("bad denominator".into()))?;
            if denom == BigInt::from(0) {
                return Err(Error::ParseError("zero denominator".into()));
            }
            Ok(Rational::new(numer, denom))
        } else {
            Ok(Rational::from(numer))
        }
    }
}

/// Parse a polynomial literal over `ring` in the given variable names.
pub fn parse_poly(text: &str, names: &[String], ring: &RingDescriptor) -> Result<MultiSeries> {
    let mut p = Parser {
        chars: text.chars().peekable(),
        names,
        ring,
    };
    let result = p.expr()?;
    p.skip_ws();
    if let Some(c) = p.chars.next() {
        return Err(Error::ParseError(format!("trailing input at {c:?}")));
    }
    Ok(result)
}

/// Parse the series file format: each line `α_1 ... α_n : coeff`, with
/// rational coefficients embedded into the ring. Blank lines and
/// `#`-comments are skipped.
pub fn parse_series_file(text: &str, ring: &RingDescriptor, nvars: usize) -> Result<MultiSeries> {
    let mut terms = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (idx_part, coeff_part) = line.split_once(':').ok_or_else(|| {
            Error::ParseError(format!(
                "line {}: expected `α_1 .. α_n : coeff`",
                lineno + 1
            ))
        })?;
        let alpha: Vec<u32> = idx_part
            .split_whitespace()
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| Error::ParseError(format!("bad exponent {t:?}")))
            })
            .collect::<Result<_>>()?;
        if alpha.len() != nvars {
            return Err(Error::DimensionError {
                expected: nvars,
                got: alpha.len(),
            });
        }
        let coeff = parse_rational(coeff_part.trim())?;
        terms.push((alpha, ring.from_rational(&coeff)?));
    }
    MultiSeries::from_terms(ring.clone(), nvars, terms, Trunc::Exact)
}

/// Render a series in the file format.
pub fn series_file_text(f: &MultiSeries) -> String {
    let mut out = String::new();
    for (alpha, c) in f.coeffs() {
        let idx: Vec<String> = alpha.iter().map(|e| e.to_string()).collect();
        out.push_str(&format!("{} : {}\n", idx.join(" "), c));
    }
    out
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let q = match body.split_once('/') {
        Some((n, d)) => {
            let numer: BigInt = n
                .trim()
                .parse()
                .map_err(|_| Error::ParseError(format!("bad numerator {n:?}")))?;
            let denom: BigInt = d
                .trim()
                .parse()
                .map_err(|_| Error::ParseError(format!("bad denominator {d:?}")))?;
            if denom == BigInt::from(0) {
                return Err(Error::ParseError("zero denominator".into()));
            }
            Rational::new(numer, denom)
        }
        None => {
            let numer: BigInt = body
                .trim()
                .parse()
                .map_err(|_| Error::ParseError(format!("bad integer {body:?}")))?;
            Rational::from(numer)
        }
    };
    Ok(if neg { -q } else { q })
}
