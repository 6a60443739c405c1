//! Sturm chains, Tarski queries and univariate existential decisions.

mod cells;
mod intpoly;
mod query;

use std::fmt;

use crate::error::{Error, Result};
use crate::numkernel::UniPoly;
pub(crate) use intpoly::{from_upoly as int_from_upoly, IntPoly};

pub use cells::common_positive_point;
pub use query::{count_pos_pos, exists_both_positive, nu, tarski_query, univariate_nonneg, ChainStats};
pub(crate) use query::{exists_both_positive_int, nonneg_by_multiplicity};


#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn from_i8(s: i8) -> Self {
        if s > 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Infinity {
    Pos,
    Neg,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SignVector(pub Vec<Sign>);

impl SignVector {
    /// Number of adjacent sign changes.
    pub fn variations(&self) -> usize {
        self.0.windows(2).filter(|w| w[0] != w[1]).count()
    }
}

/// A chain of nonzero univariate polynomials `(h0, …, hm)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SturmChain {
    elements: Vec<UniPoly>,
}

impl SturmChain {
    /// Wraps an arbitrary list; rejects an empty list or a zero element.
    pub fn new(elements: Vec<UniPoly>) -> Result<Self> {
        if elements.is_empty() || elements.iter().any(UniPoly::is_zero) {
            return Err(Error::ZeroPolynomial("chain element"));
        }
        Ok(SturmChain { elements })
    }

    pub fn elements(&self) -> &[UniPoly] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn last(&self) -> &UniPoly {
        self.elements.last().unwrap()
    }

    pub fn signs_at(&self, end: Infinity) -> SignVector {
        SignVector(
            self.elements
                .iter()
                .map(|h| sign_at_infinity(h, end).unwrap())
                .collect(),
        )
    }

    /// `λ(σ_{−∞}) − λ(σ_{+∞})`.
    pub fn variation_difference(&self) -> i64 {
        self.signs_at(Infinity::Neg).variations() as i64 - self.signs_at(Infinity::Pos).variations() as i64
    }
}

impl fmt::Display for SturmChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, h) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{h}")?;
        }
        write!(f, ")")
    }
}

pub fn sign_at_infinity(h: &UniPoly, end: Infinity) -> Result<Sign> {
    let deg = h
        .degree()
        .finite()
        .ok_or(Error::ZeroPolynomial("sign at infinity"))?;
    let mut s = h.leading_sign();
    if end == Infinity::Neg && deg % 2 == 1 {
        s = -s;
    }
    Ok(Sign::from_i8(s))
}

/// Signed remainder sequence on primitive integer polynomials. Each element
/// is a positive multiple of the rational one.
pub(crate) fn int_sequence(p: IntPoly, q: IntPoly) -> Vec<IntPoly> {
    let mut seq = vec![p, q];
    loop {
        let n = seq.len();
        let mut r = intpoly::pos_rem(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            return seq;
        }
        for c in r.iter_mut() {
            *c = -&*c;
        }
        intpoly::make_primitive(&mut r);
        seq.push(r);
    }
}

fn checked_int(p: &UniPoly, what: &'static str) -> Result<IntPoly> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial(what));
    }
    Ok(intpoly::from_upoly(p))
}

/// `h0 = p`, `h1 = q`, `h_{k+1} = −rem(h_{k−1}, h_k)` until the last element
/// divides its predecessor. Elements are normalized to primitive integer
/// polynomials (a positive rescaling).
pub fn canonical_sequence(p: &UniPoly, q: &UniPoly) -> Result<SturmChain> {
    let seq = int_sequence(checked_int(p, "p")?, checked_int(q, "q")?);
    Ok(SturmChain {
        elements: seq.iter().map(intpoly::to_upoly).collect(),
    })
}

/// The canonical sequence with every element divided by its last element.
pub fn canonical_sturm_sequence(p: &UniPoly, q: &UniPoly) -> Result<SturmChain> {
    let seq = int_sequence(checked_int(p, "p")?, checked_int(q, "q")?);
    let last = seq.last().unwrap().clone();
    let elements = seq
        .iter()
        .map(|h| {
            let h = intpoly::to_upoly(h);
            let (quot, rem) = h.divmod(&intpoly::to_upoly(&last))?;
            if !rem.is_zero() {
                return Err(Error::Internal("last chain element is not a common divisor".into()));
            }
            Ok(quot)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SturmChain { elements })
}
