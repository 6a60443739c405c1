//! Rational sample points for `{p > 0, q > 0}`: one point in every open
//! cell cut out by the real roots of `pq`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::int_sequence;
use super::intpoly::{self, IntPoly};
use super::query::exists_both_positive_int;
use crate::error::{Error, Result};
use crate::numkernel::{Rational, UniPoly};

/// Strict upper bound on the absolute value of every real root.
fn root_bound(s: &IntPoly) -> BigInt {
    let lead = s.last().unwrap().abs();
    let max = s[..s.len() - 1].iter().map(Signed::abs).max().unwrap_or_default();
    // 1 + max|a_i| / |a_n|, rounded up, plus one for strictness
    let (q, r) = max.div_rem(&lead);
    q + if r.is_zero() { 1 } else { 2 } + 1
}

struct Counter {
    chain: Vec<IntPoly>,
}

impl Counter {
    /// Sign variations of the divided chain at a rational that is not a root.
    fn variations(&self, x: &Rational) -> usize {
        let (n, d) = (x.numer(), x.denom());
        let last = intpoly::sign_at(self.chain.last().unwrap(), n, d);
        let mut prev = 0i8;
        let mut count = 0;
        for h in &self.chain {
            let s = intpoly::sign_at(h, n, d) * last;
            if s != 0 {
                if prev != 0 && s != prev {
                    count += 1;
                }
                prev = s;
            }
        }
        count
    }
}

/// A point strictly between `a` and `b` where `s` does not vanish.
fn split_point(s: &IntPoly, a: &Rational, b: &Rational) -> Rational {
    let mut k = 2i64;
    loop {
        for i in 1..k {
            let t = a + (b - a) * Rational::new(BigInt::from(i), BigInt::from(k));
            if intpoly::sign_at(s, t.numer(), t.denom()) != 0 {
                return t;
            }
        }
        k += 1;
    }
}

/// Sample points: one in each connected component of `ℝ \ roots(s)`.
fn cell_samples(s: &IntPoly) -> Vec<Rational> {
    if s.len() <= 1 {
        return vec![Rational::zero()];
    }
    let counter = Counter {
        chain: int_sequence(s.clone(), intpoly::derivative(s)),
    };
    let b = Rational::from_integer(root_bound(s));
    let lo = -b.clone();
    let mut stack = vec![(lo.clone(), b)];
    let mut right_ends = Vec::new();
    while let Some((a, c)) = stack.pop() {
        let roots = counter.variations(&a) - counter.variations(&c);
        match roots {
            0 => {}
            1 => right_ends.push(c),
            _ => {
                let m = split_point(s, &a, &c);
                stack.push((a, m.clone()));
                stack.push((m, c));
            }
        }
    }
    right_ends.sort();
    let mut out = vec![lo];
    out.extend(right_ends);
    out
}

/// A rational `t` with `p(t) > 0` and `q(t) > 0`, or `None` if no such real
/// point exists.
pub fn common_positive_point(p: &UniPoly, q: &UniPoly) -> Result<Option<Rational>> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial("common_positive_point"));
    }
    let pi = intpoly::from_upoly(p);
    let qi = intpoly::from_upoly(q);
    let s = intpoly::mul(&pi, &qi);
    for t in cell_samples(&s) {
        let (n, d) = (t.numer(), t.denom());
        if intpoly::sign_at(&pi, n, d) > 0 && intpoly::sign_at(&qi, n, d) > 0 {
            return Ok(Some(t));
        }
    }
    if exists_both_positive_int(&pi, &qi, &mut super::ChainStats::default())? {
        return Err(Error::Internal("no sample found in a nonempty positivity set".into()));
    }
    Ok(None)
}
