use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rsystem::{build_r_system_with, RSystem, RSystemOptions};
use crate::error::{Error, Result};
use crate::numkernel::{Degree, Monomial, MultiPoly, Rational, Vars};

/// Everything built from `g` on the way to `R_g`.
#[derive(Clone, Debug)]
pub struct RGData {
    pub n: usize,
    pub d: usize,
    /// Variables `x1..xn, delta, gamma` shared by the six polynomials.
    pub vars: Vars,
    pub f: MultiPoly,
    pub g_delta: MultiPoly,
    pub h0: MultiPoly,
    pub h1: MultiPoly,
    pub h0_tilde: MultiPoly,
    pub h1_tilde: MultiPoly,
    pub h0_partials: Vec<MultiPoly>,
    pub h1_partials: Vec<MultiPoly>,
    pub h0_system: RSystem,
    pub h1_system: RSystem,
    /// Polynomials in `u1..u{n+1}`, zero ones dropped, one representative
    /// per class of positive-scalar multiples.
    pub r_g: Vec<MultiPoly>,
}

/// Validates `g` and returns its even degree.
pub fn check_even_form(g: &MultiPoly) -> Result<usize> {
    if !g.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    match g.total_degree() {
        Degree::NegInfinity => Ok(0),
        Degree::Finite(d) if d % 2 == 1 => Err(Error::OddDegree(d)),
        Degree::Finite(d) => Ok(d),
    }
}

/// The six polynomials and the `2n` partials, without the determinants.
pub struct Polys {
    pub vars: Vars,
    pub f: MultiPoly,
    pub g_delta: MultiPoly,
    pub h0: MultiPoly,
    pub h1: MultiPoly,
    pub h0_tilde: MultiPoly,
    pub h1_tilde: MultiPoly,
    pub h0_partials: Vec<MultiPoly>,
    pub h1_partials: Vec<MultiPoly>,
}

fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn build_polys(g: &MultiPoly, n: usize, d: usize) -> Result<Polys> {
    if g.nvars() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: g.nvars(),
        });
    }
    if check_even_form(g)? != d || d < 2 {
        return Err(Error::DegreeBound {
            bound: d,
            degree: g.total_degree().finite().unwrap_or(0),
        });
    }
    let mut names: Vec<String> = g.vars().iter().cloned().collect();
    names.push("delta".into());
    names.push("gamma".into());
    let vars: Vars = names.into();
    let nv = n + 2;
    let g = g.with_vars(&vars)?;
    let x = |i: usize, k: usize| MultiPoly::monomial(vars.clone(), Monomial::var(nv, i, k as u32), Rational::one());
    let delta = MultiPoly::var_at(vars.clone(), n);
    let gamma = MultiPoly::var_at(vars.clone(), n + 1);
    let one = MultiPoly::one(vars.clone());

    let mut f = MultiPoly::zero(vars.clone());
    let mut sum_xd = one.clone();
    let mut sum_0 = MultiPoly::zero(vars.clone());
    let mut sum_1 = MultiPoly::zero(vars.clone());
    for i in 0..n {
        f = &f + &x(i, d).scale(&r(1i64 << (i + 1)));
        sum_xd = &sum_xd + &x(i, d);
        sum_0 = &sum_0 + &x(i, 2 * d - 2);
        sum_1 = &sum_1 + &x(i, 4 * d - 2);
    }
    let g_delta = &(&(&one - &delta) * &g) + &(&delta * &sum_xd);

    let grad_f: Vec<MultiPoly> = (0..n).map(|i| f.partial_at(i)).collect();
    let grad_g: Vec<MultiPoly> = (0..n).map(|i| g_delta.partial_at(i)).collect();
    let dot = |a: &[MultiPoly], b: &[MultiPoly]| {
        a.iter()
            .zip(b)
            .fold(MultiPoly::zero(vars.clone()), |acc, (p, q)| &acc + &(p * q))
    };
    let h0 = dot(&grad_f, &grad_f);
    let gg = dot(&grad_g, &grad_g);
    let gf = dot(&grad_g, &grad_f);
    let gram = &(&gg * &h0) - &(&gf * &gf);
    let h1 = &gram + &(&g_delta * &g_delta);
    let h0_tilde = &(&(&one - &gamma) * &h0) - &(&sum_0 * &gamma);
    let h1_tilde = &(&(&one - &gamma) * &h1) - &(&sum_1 * &gamma);
    let h0_partials = (0..n).map(|i| h0_tilde.partial_at(i)).collect();
    let h1_partials = (0..n).map(|i| h1_tilde.partial_at(i)).collect();
    Ok(Polys {
        vars,
        f,
        g_delta,
        h0,
        h1,
        h0_tilde,
        h1_tilde,
        h0_partials,
        h1_partials,
    })
}

/// Largest degree in `x1..xn` across a family.
pub fn family_degree(family: &[MultiPoly], n: usize) -> usize {
    let xs: Vec<usize> = (0..n).collect();
    family
        .iter()
        .filter_map(|p| p.degree_in(&xs).finite())
        .max()
        .unwrap_or(0)
}

/// Order of the two matrices, computed without building them.
pub fn system_sizes(n: usize, d: usize) -> [usize; 2] {
    // x-degrees of the partials: 2d−3 and 4d−3
    [super::rsystem::support_size(n, 2 * d - 3), super::rsystem::support_size(n, 4 * d - 3)]
}

pub fn build_rg(g: &MultiPoly, n: usize, d: usize) -> Result<RGData> {
    build_rg_with(g, n, d, RSystemOptions::default())
}

pub fn build_rg_with(g: &MultiPoly, n: usize, d: usize, opts: RSystemOptions) -> Result<RGData> {
    let p = build_polys(g, n, d)?;
    let h0_system = build_r_system_with(&p.h0_partials, family_degree(&p.h0_partials, n), opts)?;
    let h1_system = build_r_system_with(&p.h1_partials, family_degree(&p.h1_partials, n), opts)?;
    let mut seen = BTreeSet::new();
    let mut r_g = Vec::new();
    for (_, c) in h0_system.coefficients().iter().chain(h1_system.coefficients()) {
        let c = normalize(c);
        if seen.insert(c.to_text()) {
            r_g.push(c);
        }
    }
    Ok(RGData {
        n,
        d,
        vars: p.vars,
        f: p.f,
        g_delta: p.g_delta,
        h0: p.h0,
        h1: p.h1,
        h0_tilde: p.h0_tilde,
        h1_tilde: p.h1_tilde,
        h0_partials: p.h0_partials,
        h1_partials: p.h1_partials,
        h0_system,
        h1_system,
        r_g,
    })
}

/// Positive rescaling to a primitive integer polynomial with positive
/// leading coefficient; a sign flip is allowed since `(∗)` is symmetric
/// under `r → −r`.
pub(crate) fn normalize(p: &MultiPoly) -> MultiPoly {
    let mut den = BigInt::one();
    let mut num = BigInt::zero();
    for (_, c) in p.terms() {
        den = den.lcm(c.denom());
        num = num.gcd(c.numer());
    }
    if num.is_zero() {
        return p.clone();
    }
    let lead_neg = p.leading_term().map(|(_, c)| c.is_negative()).unwrap_or(false);
    let mut s = Rational::new(den, num);
    if lead_neg {
        s = -s;
    }
    p.scale(&s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::parse_poly;

    // x{n+1} and x{n+2} stand for delta and gamma
    fn poly(s: &str, vars: &Vars) -> MultiPoly {
        let p = parse_poly(s, Some(vars.len())).unwrap();
        MultiPoly::from_terms(vars.clone(), p.terms().map(|(m, c)| (m.clone(), c.clone())))
    }

    #[test]
    fn univariate_square() {
        let g = parse_poly("x1^2", None).unwrap();
        let p = build_polys(&g, 1, 2).unwrap();
        let v = &p.vars;
        assert_eq!(p.f, poly("2x1^2", v));
        assert_eq!(p.g_delta, poly("x1^2 + x2", v));
        assert_eq!(p.h0, poly("16x1^2", v));
        assert_eq!(p.h1, poly("x1^4 + 2x1^2x2 + x2^2", v));
        assert_eq!(p.h0_tilde, poly("16x1^2 - 17x1^2x3", v));
    }

    #[test]
    fn h0_closed_form() {
        for (n, d, g) in [(2, 2, "x1^2 + x2^2"), (2, 4, "x1^4 - x2^4"), (3, 2, "x1*x2 + x3^2")] {
            let g = parse_poly(g, Some(n)).unwrap();
            let p = build_polys(&g, n, d).unwrap();
            let mut expect = MultiPoly::zero(p.vars.clone());
            for i in 0..n {
                let c = Rational::from_integer(BigInt::from(1u64 << (2 * (i + 1))) * BigInt::from(d * d));
                expect.add_term(Monomial::var(n + 2, i, (2 * d - 2) as u32), c);
            }
            assert_eq!(p.h0, expect);
        }
        let g = parse_poly("x1^2 + x2^2", None).unwrap();
        let p = build_polys(&g, 2, 2).unwrap();
        assert_eq!(p.h0, poly("16x1^2 + 64x2^2", &p.vars));
    }

    #[test]
    fn tilde_degrees() {
        for (n, d, g) in [(1, 2, "x1^2"), (2, 2, "x1*x2"), (1, 4, "-x1^4"), (2, 4, "x1^4 + x2^4")] {
            let g = parse_poly(g, Some(n)).unwrap();
            let p = build_polys(&g, n, d).unwrap();
            assert_eq!(p.h0_tilde.total_degree(), Degree::Finite(2 * d - 1));
            assert_eq!(p.h1_tilde.total_degree(), Degree::Finite(4 * d - 1));
            assert_eq!(family_degree(&p.h0_partials, n), 2 * d - 3);
            assert_eq!(family_degree(&p.h1_partials, n), 4 * d - 3);
        }
    }

    #[test]
    fn rejects_bad_input() {
        let g = parse_poly("x1^2 + x2", None).unwrap();
        assert_eq!(build_polys(&g, 2, 2).err(), Some(Error::NotHomogeneous));
        let g = parse_poly("x1^3", None).unwrap();
        assert_eq!(build_polys(&g, 1, 3).err(), Some(Error::OddDegree(3)));
    }

    #[test]
    fn rg_small() {
        let g = parse_poly("x1^2", None).unwrap();
        let data = build_rg(&g, 1, 2).unwrap();
        assert_eq!(data.h0_system.support().len(), 2);
        assert_eq!(data.h1_system.support().len(), system_sizes(1, 2)[1]);
        assert!(!data.r_g.is_empty());
        assert!(data.r_g.iter().all(|r| !r.is_zero() && r.nvars() == 2));
        let texts: BTreeSet<String> = data.r_g.iter().map(|r| r.to_text()).collect();
        assert_eq!(texts.len(), data.r_g.len());
    }
}
