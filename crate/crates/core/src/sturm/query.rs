use num_bigint::BigInt;
use num_traits::Signed;

use super::intpoly::{self, IntPoly};
use super::{checked_int, int_sequence};
use crate::error::{Error, Result};
use crate::numkernel::UniPoly;

fn parity_sign(deg: usize) -> i8 {
    if deg % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Counters over every chain built through the internal entry points.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ChainStats {
    pub chains: u64,
    pub elements: u64,
    pub longest: usize,
}

impl ChainStats {
    fn record(&mut self, len: usize) {
        self.chains += 1;
        self.elements += len as u64;
        self.longest = self.longest.max(len);
    }
}

/// `ν` for nonzero integer inputs. The division by the last element is done
/// on signs only: `sgn(h_i/h_m) = sgn(h_i)·sgn(h_m)` at either end.
pub(crate) fn nu_int(p: IntPoly, q: IntPoly, stats: &mut ChainStats) -> i64 {
    let seq = int_sequence(p, q);
    stats.record(seq.len());
    let last = seq.last().unwrap();
    let (dm, sm) = (last.len() - 1, intpoly::lead_sign(last));
    let mut pos = Vec::with_capacity(seq.len());
    let mut neg = Vec::with_capacity(seq.len());
    for h in &seq {
        let s = intpoly::lead_sign(h) * sm;
        pos.push(s);
        neg.push(s * parity_sign(h.len() - 1 + dm));
    }
    let changes = |v: &[i8]| v.windows(2).filter(|w| w[0] != w[1]).count() as i64;
    changes(&neg) - changes(&pos)
}

pub fn nu(p: &UniPoly, q: &UniPoly) -> Result<i64> {
    Ok(nu_int(checked_int(p, "p")?, checked_int(q, "q")?, &mut ChainStats::default()))
}

/// `N(f, g)` for integer inputs; `g = 0` contributes nothing.
pub(crate) fn tarski_int(f: &IntPoly, g: &IntPoly, stats: &mut ChainStats) -> i64 {
    if f.len() <= 1 || g.is_empty() {
        return 0;
    }
    let mut fg = intpoly::mul(&intpoly::derivative(f), g);
    intpoly::make_primitive(&mut fg);
    nu_int(f.clone(), fg, stats)
}

/// `N(f, g) = #{f = 0, g > 0} − #{f = 0, g < 0}`, computed as `ν(f, f′g)`.
pub fn tarski_query(f: &UniPoly, g: &UniPoly) -> Result<i64> {
    let fi = checked_int(f, "f")?;
    if fi.len() == 1 {
        return Ok(0);
    }
    if g.is_zero() {
        return Err(Error::ZeroPolynomial("f'g"));
    }
    Ok(tarski_int(&fi, &intpoly::from_upoly(g), &mut ChainStats::default()))
}

fn reduce(a: &IntPoly, f: &IntPoly) -> IntPoly {
    let mut r = intpoly::pos_rem(a, f);
    intpoly::make_primitive(&mut r);
    r
}

pub(crate) fn count_pos_pos_int(f: &IntPoly, p: &IntPoly, q: &IntPoly, stats: &mut ChainStats) -> Result<u64> {
    if f.len() <= 1 {
        return Ok(0);
    }
    // Only the signs at the roots of f matter, so every factor may be
    // replaced by a positive multiple of its remainder modulo f.
    let pr = reduce(p, f);
    let qr = reduce(q, f);
    if pr.is_empty() || qr.is_empty() {
        return Ok(0);
    }
    let p2 = reduce(&intpoly::mul(&pr, &pr), f);
    let q2 = reduce(&intpoly::mul(&qr, &qr), f);
    let products = [
        reduce(&intpoly::mul(&p2, &q2), f),
        reduce(&intpoly::mul(&p2, &qr), f),
        reduce(&intpoly::mul(&pr, &q2), f),
        reduce(&intpoly::mul(&pr, &qr), f),
    ];
    let mut sum = 0i64;
    let mut seen: Vec<(&IntPoly, i64)> = Vec::new();
    for g in &products {
        let n = match seen.iter().find(|(h, _)| *h == g) {
            Some(&(_, n)) => n,
            None => {
                let n = tarski_int(f, g, stats);
                seen.push((g, n));
                n
            }
        };
        sum += n;
    }
    let degree = (f.len() - 1) as i64;
    if sum % 4 != 0 || sum < 0 || sum / 4 > degree {
        return Err(Error::Internal(format!(
            "quarter-sum {sum}/4 is not a count of at most {degree} roots"
        )));
    }
    Ok((sum / 4) as u64)
}

/// Number of real roots of `f` at which both `p` and `q` are positive.
pub fn count_pos_pos(f: &UniPoly, p: &UniPoly, q: &UniPoly) -> Result<u64> {
    let fi = checked_int(f, "f")?;
    let pi = checked_int(p, "p")?;
    let qi = checked_int(q, "q")?;
    count_pos_pos_int(&fi, &pi, &qi, &mut ChainStats::default())
}

/// Sign of the polynomial for large `|x|` on the given side: the leading
/// sign, flipped at −∞ for odd degree. Positive constants count as positive.
fn eventual_sign(p: &IntPoly, at_neg: bool) -> i8 {
    let s = intpoly::lead_sign(p);
    if at_neg {
        s * parity_sign(p.len() - 1)
    } else {
        s
    }
}

pub(crate) fn exists_both_positive_int(p: &IntPoly, q: &IntPoly, stats: &mut ChainStats) -> Result<bool> {
    if p.len() == 1 && q.len() == 1 {
        return Ok(p[0].is_positive() && q[0].is_positive());
    }
    for at_neg in [false, true] {
        if eventual_sign(p, at_neg) > 0 && eventual_sign(q, at_neg) > 0 {
            return Ok(true);
        }
    }
    // Otherwise {p > 0, q > 0} is bounded; any component is an interval on
    // which pq is positive and vanishes at both ends, so it contains a
    // critical point of pq.
    let mut d = intpoly::derivative(&intpoly::mul(p, q));
    intpoly::make_primitive(&mut d);
    if d.is_empty() {
        return Err(Error::Internal("(pq)' vanished for nonconstant input".into()));
    }
    Ok(count_pos_pos_int(&d, p, q, stats)? != 0)
}

/// Decides `∃x p(x) > 0 ∧ q(x) > 0`.
pub fn exists_both_positive(p: &UniPoly, q: &UniPoly) -> Result<bool> {
    exists_both_positive_int(&checked_int(p, "p")?, &checked_int(q, "q")?, &mut ChainStats::default())
}

pub(crate) fn nonneg_int(r: &IntPoly, stats: &mut ChainStats) -> bool {
    if r.is_empty() {
        return true;
    }
    let neg: IntPoly = r.iter().map(|c| -c).collect();
    let one = vec![BigInt::from(1)];
    !exists_both_positive_int(&neg, &one, stats).expect("nonzero inputs")
}

/// Number of distinct real roots of a nonconstant `p` and the last chain
/// element, which is `± gcd(p, p′)` up to a positive factor.
fn distinct_real_roots(p: &IntPoly, stats: &mut ChainStats) -> (i64, IntPoly) {
    let mut dp = intpoly::derivative(p);
    intpoly::make_primitive(&mut dp);
    let seq = int_sequence(p.clone(), dp);
    stats.record(seq.len());
    let last = seq.last().unwrap();
    let changes = |at_neg: bool| {
        let signs: Vec<i8> = seq
            .iter()
            .map(|h| {
                let s = intpoly::lead_sign(h) * intpoly::lead_sign(last);
                if at_neg {
                    s * parity_sign(h.len() - 1) * parity_sign(last.len() - 1)
                } else {
                    s
                }
            })
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count() as i64
    };
    (changes(true) - changes(false), last.clone())
}

/// Same answer as [`nonneg_int`], by squarefree decomposition: `r ≥ 0` iff
/// its leading coefficient is positive and no factor of odd multiplicity has
/// a real root.
pub(crate) fn nonneg_by_multiplicity(r: &IntPoly, stats: &mut ChainStats) -> bool {
    if r.is_empty() {
        return true;
    }
    if r.len() == 1 {
        return r[0].is_positive();
    }
    if intpoly::lead_sign(r) < 0 || (r.len() - 1) % 2 == 1 || r[0].is_negative() {
        return false;
    }
    // q_k: product of the distinct factors of multiplicity ≥ k
    let (roots, mut g) = distinct_real_roots(r, stats);
    if roots == 0 {
        return true;
    }
    if g.len() == 1 {
        return false;
    }
    let mut q = intpoly::exact_quo(r, &g);
    let mut k = 1;
    loop {
        let (next_g, next_q) = if g.len() == 1 {
            (g.clone(), g.clone())
        } else {
            let (_, g2) = distinct_real_roots(&g, stats);
            let q2 = intpoly::exact_quo(&g, &g2);
            (g2, q2)
        };
        if k % 2 == 1 {
            let s = intpoly::exact_quo(&q, &next_q);
            if s.len() > 1 && distinct_real_roots(&s, stats).0 > 0 {
                return false;
            }
        }
        if next_q.len() == 1 {
            return true;
        }
        g = next_g;
        q = next_q;
        k += 1;
    }
}

/// Decides `∀x r(x) ≥ 0`. The zero polynomial is nonnegative.
pub fn univariate_nonneg(r: &UniPoly) -> bool {
    if r.is_zero() {
        return true;
    }
    nonneg_int(&intpoly::from_upoly(r), &mut ChainStats::default())
}
