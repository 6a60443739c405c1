use super::mpoly::MultiPoly;
use crate::error::{Error, Result};

/// Determinant of a square matrix of polynomials by Bareiss' fraction-free
/// elimination. Every intermediate entry is a minor of the input, so each
/// division is exact.
pub fn fraction_free_det(rows: &[Vec<MultiPoly>]) -> Result<MultiPoly> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::NotSquare { rows: 0, cols: 0 });
    }
    if let Some(r) = rows.iter().find(|r| r.len() != n) {
        return Err(Error::NotSquare {
            rows: n,
            cols: r.len(),
        });
    }
    let vars = rows[0][0].vars().clone();
    let mut a: Vec<Vec<MultiPoly>> = rows.to_vec();
    let mut prev = MultiPoly::one(vars.clone());
    let mut negate = false;
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            // smallest nonzero pivot keeps intermediate sizes down
            let pivot = (k + 1..n)
                .filter(|&r| !a[r][k].is_zero())
                .min_by_key(|&r| a[r][k].num_terms());
            match pivot {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(MultiPoly::zero(vars)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num
                    .exact_div(&prev)?
                    .ok_or_else(|| Error::Internal("inexact Bareiss division".into()))?;
            }
            a[i][k] = MultiPoly::zero(vars.clone());
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::mpoly::{indexed_vars, Monomial};
    use crate::numkernel::parse::parse_poly;
    use crate::numkernel::rational::rat;
    use proptest::prelude::*;

    /// Laplace expansion along the first row; independent oracle.
    fn cofactor_det(m: &[Vec<MultiPoly>]) -> MultiPoly {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = MultiPoly::zero(m[0][0].vars().clone());
        for j in 0..n {
            if m[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<MultiPoly>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, e)| e.clone()).collect())
                .collect();
            let t = &m[0][j] * &cofactor_det(&minor);
            acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
        }
        acc
    }

    fn p(s: &str) -> MultiPoly {
        parse_poly(s, Some(3)).unwrap()
    }

    #[test]
    fn small_cases() {
        let f = p("x1^2 - x3");
        assert_eq!(fraction_free_det(&[vec![f.clone()]]).unwrap(), f);
        let (a, b, c, d) = (p("x1 + 1"), p("x2"), p("x3^2"), p("x1 x2 - 2"));
        let det = fraction_free_det(&[vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]]).unwrap();
        assert_eq!(det, &(&a * &d) - &(&b * &c));
        let rep = vec![
            vec![p("x1"), p("x2 + 1"), p("3")],
            vec![p("x3"), p("x1 x2"), p("x2")],
            vec![p("x1"), p("x2 + 1"), p("3")],
        ];
        assert!(fraction_free_det(&rep).unwrap().is_zero());
    }

    #[test]
    fn zero_pivot_needs_a_swap() {
        let m = vec![
            vec![p("0"), p("x1"), p("1")],
            vec![p("x2"), p("0"), p("x3")],
            vec![p("1"), p("x3"), p("0")],
        ];
        assert_eq!(fraction_free_det(&m).unwrap(), cofactor_det(&m));
    }

    #[test]
    fn rejects_non_square() {
        assert_eq!(
            fraction_free_det(&[vec![p("1"), p("2")]]),
            Err(Error::NotSquare { rows: 1, cols: 2 })
        );
        assert!(fraction_free_det(&[]).is_err());
    }

    fn entry() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec(((0u32..2, 0u32..2), -4i64..=4), 0..3).prop_map(|ts| {
            MultiPoly::from_terms(
                indexed_vars("x", 2),
                ts.into_iter().map(|((a, b), c)| (Monomial::new(vec![a, b]), rat(c, 1))),
            )
        })
    }

    fn matrix() -> impl Strategy<Value = Vec<Vec<MultiPoly>>> {
        (1usize..=5).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(entry(), n), n))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]
        #[test]
        fn agrees_with_cofactor_expansion(m in matrix()) {
            prop_assert_eq!(fraction_free_det(&m).unwrap(), cofactor_det(&m));
        }
    }
}
