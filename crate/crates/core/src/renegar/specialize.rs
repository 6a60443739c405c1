use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numkernel::{MultiPoly, Rational, UniPoly};

/// One `(j, β, r)` triple; `r` is an index into `R_g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleIndex {
    pub j: usize,
    pub beta: Vec<u32>,
    pub r: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Specialization {
    pub g_plus: UniPoly,
    pub g_minus: UniPoly,
    pub r_last: UniPoly,
}

/// `n·d^{2n}`, the largest `j` and the largest `i` in the `β` pattern.
pub fn j_max(n: usize, d: usize) -> u64 {
    (n as u64).saturating_mul((d as u64).saturating_pow(2 * n as u32))
}

fn beta_for(n: usize, i: u64) -> Vec<u32> {
    let mut b: Vec<u32> = (0..n).map(|k| i.pow((n - 1 - k) as u32) as u32).collect();
    b.push(0);
    b
}

/// `(i^{n−1}, …, i, 1, 0)` for `i = 0..=n·d^{2n}` with repeats removed.
/// Returns the list and whether anything was removed.
pub fn beta_set(n: usize, d: usize) -> (Vec<Vec<u32>>, bool) {
    if n == 1 {
        return (vec![vec![1, 0]], j_max(n, d) > 0);
    }
    ((0..=j_max(n, d)).map(|i| beta_for(n, i)).collect(), false)
}

/// The univariate curves `r_i(t) = ∂r/∂u_i (β + t·e_{n+1})`, `i = 1..n+1`.
pub fn curves(beta: &[u32], r: &MultiPoly) -> Result<Vec<UniPoly>> {
    let m = beta.len();
    if r.nvars() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: r.nvars(),
        });
    }
    let mut args: Vec<UniPoly> = beta[..m - 1]
        .iter()
        .map(|&b| UniPoly::constant(Rational::from_integer(b.into())))
        .collect();
    args.push(UniPoly::new(vec![Rational::from_integer(beta[m - 1].into()), Rational::from_integer(1.into())]));
    (0..m).map(|i| r.partial_at(i).compose_univariate(&args)).collect()
}

/// `g` along the `j`-th derivatives of the first `n` curves, and its mirror.
pub fn along(g: &MultiPoly, j: usize, curves: &[UniPoly]) -> Result<(UniPoly, UniPoly)> {
    let n = curves.len() - 1;
    if g.nvars() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: g.nvars(),
        });
    }
    let plus: Vec<UniPoly> = curves[..n].iter().map(|c| c.nth_derivative(j)).collect();
    if plus.iter().all(UniPoly::is_zero) {
        let z = UniPoly::constant(g.eval(&vec![Rational::zero(); n])?);
        return Ok((z.clone(), z));
    }
    let minus: Vec<UniPoly> = plus.iter().map(|c| c.scale(&Rational::from_integer((-1).into()))).collect();
    Ok((g.compose_univariate(&plus)?, g.compose_univariate(&minus)?))
}

pub fn specialize(g: &MultiPoly, j: usize, beta: &[u32], r: &MultiPoly) -> Result<Specialization> {
    let cs = curves(beta, r)?;
    let (g_plus, g_minus) = along(g, j, &cs)?;
    Ok(Specialization {
        g_plus,
        g_minus,
        r_last: cs[cs.len() - 1].clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::{indexed_vars, parse_poly, parse_upoly};

    fn upoly_in_u(s: &str, n: usize) -> MultiPoly {
        let p = parse_poly(s, Some(n)).unwrap();
        MultiPoly::from_terms(indexed_vars("u", n), p.terms().map(|(m, c)| (m.clone(), c.clone())))
    }

    #[test]
    fn derivative_examples() {
        let g = parse_poly("x1^2", None).unwrap();
        let r = upoly_in_u("x1^2 + x2", 2);
        let s = specialize(&g, 0, &[1, 0], &r).unwrap();
        assert_eq!(s.g_plus, parse_upoly("4").unwrap());
        assert_eq!(s.g_minus, parse_upoly("4").unwrap());
        assert_eq!(s.r_last, parse_upoly("1").unwrap());
        let s = specialize(&g, 1, &[1, 0], &r).unwrap();
        assert!(s.g_plus.is_zero() && s.g_minus.is_zero());
    }

    #[test]
    fn curve_moves_last_coordinate() {
        // r = u1·u3^2 + u2^2·u3 at β = (2, 1, 0): r1 = t^2, r2 = 2t, r3 = 2·2t + 1
        let r = upoly_in_u("x1x3^2 + x2^2x3", 3);
        let cs = curves(&[2, 1, 0], &r).unwrap();
        assert_eq!(cs[0], parse_upoly("x^2").unwrap());
        assert_eq!(cs[1], parse_upoly("2x").unwrap());
        assert_eq!(cs[2], parse_upoly("4x + 1").unwrap());
    }

    #[test]
    fn index_sets() {
        assert_eq!(j_max(2, 2), 32);
        assert_eq!(j_max(1, 4), 16);
        let (b, dedup) = beta_set(2, 2);
        assert_eq!(b.len(), 33);
        assert_eq!(b[0], vec![0, 1, 0]);
        assert_eq!(b[5], vec![5, 1, 0]);
        assert!(!dedup);
        let (b, dedup) = beta_set(1, 2);
        assert_eq!(b, vec![vec![1, 0]]);
        assert!(dedup);
        for beta in beta_set(3, 2).0 {
            assert_eq!(beta.len(), 4);
            assert_eq!(beta[2..], [1, 0]);
        }
    }

    #[test]
    fn mirror_equals_plus_for_even_forms() {
        let g = parse_poly("x1^2 - 3x1x2 + 5x2^2", None).unwrap();
        let r = upoly_in_u("x1^2x3 - x2x3^3 + 2x1x2", 3);
        for j in 0..4 {
            let s = specialize(&g, j, &[3, 1, 0], &r).unwrap();
            assert_eq!(s.g_plus, s.g_minus);
        }
    }
}
