//! Integer polynomial helpers for remainder sequences. Every routine returns
//! a positive multiple of the rational result it stands for, so signs and
//! root sets are preserved.

use num_bigint::{BigInt, Sign as BigSign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::numkernel::UniPoly;

/// Ascending coefficients, no trailing zeros.
pub(crate) type IntPoly = Vec<BigInt>;

pub(crate) fn trim(p: &mut IntPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn from_upoly(p: &UniPoly) -> IntPoly {
    p.primitive_integer()
}

pub(crate) fn to_upoly(p: &IntPoly) -> UniPoly {
    UniPoly::from_bigints(p.clone())
}

pub(crate) fn lead_sign(p: &IntPoly) -> i8 {
    match p.last().map(BigInt::sign) {
        Some(BigSign::Plus) => 1,
        Some(BigSign::Minus) => -1,
        _ => 0,
    }
}

/// Divides out the (positive) content.
pub(crate) fn make_primitive(p: &mut IntPoly) {
    trim(p);
    if p.is_empty() {
        return;
    }
    let mut order: Vec<usize> = (0..p.len()).filter(|&i| !p[i].is_zero()).collect();
    // start from the smallest coefficient so the running gcd collapses early
    order.sort_by_key(|&i| p[i].bits());
    let mut g = BigInt::zero();
    for i in order {
        g = g.gcd(&p[i]);
        if g.is_one() {
            return;
        }
    }
    if !g.is_one() {
        for c in p.iter_mut() {
            *c /= &g;
        }
    }
}

pub(crate) fn mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn derivative(a: &IntPoly) -> IntPoly {
    let mut out: IntPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigInt::from(k))
        .collect();
    trim(&mut out);
    out
}

/// A positive multiple of `rem(a, b)`: the pseudo-remainder, negated when the
/// accumulated multiplier `lc(b)^e` is negative. `b` must be nonzero.
pub(crate) fn pos_rem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    debug_assert!(!b.is_empty());
    let db = b.len() - 1;
    let mut r = a.clone();
    trim(&mut r);
    if r.len() <= db {
        return r;
    }
    let lc = b.last().unwrap().clone();
    let lc_neg = lc.is_negative();
    let mut flips = false;
    while r.len() > db {
        let k = r.len() - 1 - db;
        let t = r.last().unwrap().clone();
        // r <- lc·r − t·x^k·b
        if !lc.is_one() {
            for c in r.iter_mut() {
                *c *= &lc;
            }
            if lc_neg {
                flips = !flips;
            }
        }
        for (i, bi) in b.iter().enumerate() {
            r[k + i] -= &t * bi;
        }
        trim(&mut r);
    }
    if flips {
        for c in r.iter_mut() {
            *c = -&*c;
        }
    }
    r
}

/// A primitive integer multiple of `a / b`, for `b` dividing `a` over ℚ.
pub(crate) fn exact_quo(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let db = b.len() - 1;
    if a.len() <= db {
        return vec![BigInt::one()];
    }
    let lc = b.last().unwrap();
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - db];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let t = r.last().unwrap().clone();
        if !lc.is_one() {
            for c in r.iter_mut().chain(q.iter_mut()) {
                *c *= lc;
            }
        }
        q[k] += &t;
        for (i, bi) in b.iter().enumerate() {
            r[k + i] -= &t * bi;
        }
        trim(&mut r);
    }
    debug_assert!(r.is_empty(), "inexact division");
    make_primitive(&mut q);
    q
}

/// Sign of `p(x)` for a rational `x = num/den` (`den > 0`), via the
/// homogenized value `Σ c_k num^k den^{deg−k}`.
pub(crate) fn sign_at(p: &IntPoly, num: &BigInt, den: &BigInt) -> i8 {
    if p.is_empty() {
        return 0;
    }
    let deg = p.len() - 1;
    let mut total = BigInt::zero();
    let mut npow = BigInt::one();
    let mut dpows = vec![BigInt::one(); deg + 1];
    for k in 1..=deg {
        dpows[k] = &dpows[k - 1] * den;
    }
    for (k, c) in p.iter().enumerate() {
        if !c.is_zero() {
            total += c * &npow * &dpows[deg - k];
        }
        npow *= num;
    }
    match total.sign() {
        BigSign::Plus => 1,
        BigSign::Minus => -1,
        BigSign::NoSign => 0,
    }
}
