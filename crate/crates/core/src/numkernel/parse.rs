//! Text grammar for polynomials:
//!
//! ```text
//! poly    := [sign] term { sign term }      sign := '+' | '-'
//! term    := coeff ['*'] { varpow } | varpow { varpow }
//! coeff   := int [ '/' posint ]
//! varpow  := var [ '^' posint ]             var  := 'x' posint
//! ```
//!
//! Whitespace is insignificant. A `*` is also accepted between variable
//! factors. For univariate input a bare `x` stands for `x1`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::mpoly::{indexed_vars, Monomial, MultiPoly};
use super::rational::Rational;
use super::upoly::UniPoly;
use crate::error::{Error, Result};

struct Term {
    coeff: Rational,
    powers: Vec<(usize, u32)>,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    bare_x: bool,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos,
            message: message.into(),
        })
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

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn posint(&mut self) -> Result<BigInt> {
        match self.digits() {
            Some(d) => {
                let v: BigInt = d.parse().unwrap();
                if v.is_zero() {
                    return self.err("expected a positive integer");
                }
                Ok(v)
            }
            None => self.err("expected a positive integer"),
        }
    }

    fn varpow(&mut self) -> Result<(usize, u32)> {
        // caller guarantees the next byte is 'x'
        self.pos += 1;
        let index = if self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            let v = self.posint()?;
            match usize::try_from(v) {
                Ok(i) => i,
                Err(_) => return self.err("variable index too large"),
            }
        } else if self.bare_x {
            1
        } else {
            return self.err("expected a variable index after 'x'");
        };
        let mut power = 1u32;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let p = self.posint()?;
            power = match u32::try_from(p) {
                Ok(p) => p,
                Err(_) => return self.err("exponent too large"),
            };
        }
        Ok((index, power))
    }

    fn term(&mut self) -> Result<Term> {
        let mut coeff = Rational::one();
        let mut saw_coeff = false;
        if let Some(num) = self.digits() {
            let num: BigInt = num.parse().unwrap();
            let mut den = BigInt::one();
            if self.peek() == Some(b'/') {
                self.pos += 1;
                den = self.posint()?;
            }
            coeff = Rational::new(num, den);
            saw_coeff = true;
            if self.peek() == Some(b'*') {
                self.pos += 1;
                if self.peek() != Some(b'x') {
                    return self.err("expected a variable after '*'");
                }
            }
        }
        let mut powers = Vec::new();
        loop {
            match self.peek() {
                Some(b'x') => powers.push(self.varpow()?),
                Some(b'*') if !powers.is_empty() => {
                    self.pos += 1;
                    if self.peek() != Some(b'x') {
                        return self.err("expected a variable after '*'");
                    }
                }
                _ => break,
            }
        }
        if !saw_coeff && powers.is_empty() {
            return self.err("expected a coefficient or a variable");
        }
        Ok(Term { coeff, powers })
    }

    fn poly(&mut self) -> Result<Vec<Term>> {
        let mut terms = Vec::new();
        let mut negative = false;
        match self.peek() {
            Some(b'+') => self.pos += 1,
            Some(b'-') => {
                self.pos += 1;
                negative = true;
            }
            None => return self.err("empty polynomial"),
            _ => {}
        }
        loop {
            let mut t = self.term()?;
            if negative {
                t.coeff = -t.coeff;
            }
            terms.push(t);
            match self.peek() {
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                None => break,
                Some(c) => return self.err(format!("unexpected character '{}'", c as char)),
            }
            self.pos += 1;
        }
        Ok(terms)
    }
}

fn parse_terms(text: &str, bare_x: bool) -> Result<Vec<Term>> {
    Parser {
        src: text.as_bytes(),
        pos: 0,
        bare_x,
    }
    .poly()
}

/// Parses a polynomial in `x1, …, xN`. With `nvars = None`, `N` is the largest
/// index that occurs (at least 1); otherwise every index must be `≤ nvars`.
pub fn parse_poly(text: &str, nvars: Option<usize>) -> Result<MultiPoly> {
    let terms = parse_terms(text, false)?;
    let max_index = terms
        .iter()
        .flat_map(|t| t.powers.iter().map(|&(i, _)| i))
        .max()
        .unwrap_or(1);
    let n = match nvars {
        Some(n) if max_index > n => {
            return Err(Error::Parse {
                position: 0,
                message: format!("variable x{max_index} exceeds the {n} declared variables"),
            })
        }
        Some(n) => n,
        None => max_index,
    };
    let vars = indexed_vars("x", n);
    let mut p = MultiPoly::zero(vars);
    for t in terms {
        let mut e = vec![0u32; n];
        for (i, k) in t.powers {
            e[i - 1] += k;
        }
        p.add_term(Monomial::new(e), t.coeff);
    }
    Ok(p)
}

/// Parses a univariate polynomial written in `x` (or `x1`).
pub fn parse_upoly(text: &str) -> Result<UniPoly> {
    let terms = parse_terms(text, true)?;
    let mut coeffs: Vec<Rational> = Vec::new();
    for t in terms {
        let mut deg = 0usize;
        for (i, k) in t.powers {
            if i != 1 {
                return Err(Error::Parse {
                    position: 0,
                    message: format!("univariate input may only use x or x1, found x{i}"),
                });
            }
            deg += k as usize;
        }
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, Rational::zero());
        }
        coeffs[deg] += t.coeff;
    }
    Ok(UniPoly::new(coeffs))
}
