use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use super::map::HermMap;
use super::operator::{choi_matrix, ChoiOperator};
use crate::error::{Error, Result};
use crate::numkernel::{indexed_vars, ComplexRational, MultiPoly, Rational, Vars};

/// Real-variable layout: `x_i = x(2i−1) + x(2i)·ι`, `y_i = x(2n+2i−1) + x(2n+2i)·ι`,
/// so the variables are `x1..x4n` in the order `x₁¹, x₁², …, xₙ², y₁¹, …, yₙ²`.
pub fn positivity_vars(n: usize) -> Vars {
    indexed_vars("x", 4 * n)
}

/// A polynomial in `re + im·ι` form with real polynomial parts.
#[derive(Clone)]
struct ComplexPoly {
    re: MultiPoly,
    im: MultiPoly,
}

impl ComplexPoly {
    fn zero(vars: &Vars) -> Self {
        ComplexPoly {
            re: MultiPoly::zero(vars.clone()),
            im: MultiPoly::zero(vars.clone()),
        }
    }

    fn mul(&self, other: &ComplexPoly) -> ComplexPoly {
        ComplexPoly {
            re: &(&self.re * &other.re) - &(&self.im * &other.im),
            im: &(&self.re * &other.im) + &(&self.im * &other.re),
        }
    }

    fn scale(&self, c: &ComplexRational) -> ComplexPoly {
        ComplexPoly {
            re: &self.re.scale(&c.re) - &self.im.scale(&c.im),
            im: &self.re.scale(&c.im) + &self.im.scale(&c.re),
        }
    }

    fn add_assign(&mut self, other: &ComplexPoly) {
        self.re = &self.re + &other.re;
        self.im = &self.im + &other.im;
    }

    fn conj(&self) -> ComplexPoly {
        ComplexPoly {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    fn norm_sqr(&self) -> MultiPoly {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }
}

/// The products `w_ij = x_i·y_j = α_ij + β_ij·ι` (0-based `i, j`).
fn products(n: usize, vars: &Vars) -> Vec<Vec<ComplexPoly>> {
    let v = |k: usize| MultiPoly::var_at(vars.clone(), k);
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let (x1, x2) = (v(2 * i), v(2 * i + 1));
                    let (y1, y2) = (v(2 * n + 2 * j), v(2 * n + 2 * j + 1));
                    ComplexPoly {
                        re: &(&x1 * &y1) - &(&x2 * &y2),
                        im: &(&x1 * &y2) + &(&x2 * &y1),
                    }
                })
                .collect()
        })
        .collect()
}

/// Real quartic form in `4n` variables, of degree 2 in the `x` block and 2
/// in the `y` block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivityPolynomial {
    n: usize,
    poly: MultiPoly,
}

impl PositivityPolynomial {
    pub fn new(n: usize, poly: MultiPoly) -> Result<Self> {
        if poly.nvars() != 4 * n {
            return Err(Error::DimensionMismatch {
                expected: 4 * n,
                found: poly.nvars(),
            });
        }
        let p = PositivityPolynomial { n, poly };
        if !p.has_bidegree_2_2() {
            return Err(Error::Internal("positivity polynomial is not of bidegree (2,2)".into()));
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn into_poly(self) -> MultiPoly {
        self.poly
    }

    /// Every term has x-block degree 2 and y-block degree 2.
    pub fn has_bidegree_2_2(&self) -> bool {
        let half = 2 * self.n;
        self.poly.terms().all(|(m, _)| {
            let e = m.exponents();
            e[..half].iter().sum::<u32>() == 2 && e[half..].iter().sum::<u32>() == 2
        })
    }

    /// The real point `(x₁¹, x₁², …, yₙ²)` for complex vectors `x`, `y`.
    pub fn point(x: &[ComplexRational], y: &[ComplexRational]) -> Vec<Rational> {
        x.iter()
            .chain(y)
            .flat_map(|z| [z.re.clone(), z.im.clone()])
            .collect()
    }

    pub fn eval(&self, x: &[ComplexRational], y: &[ComplexRational]) -> Result<Rational> {
        self.poly.eval(&Self::point(x, y))
    }
}

impl fmt::Display for PositivityPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

/// `Σ σ_(ij) + Σ_{(ij)<(kl)} τ_(ij)(kl)` with `σ_(ij) = t_(ij)(ij)(α_ij² + β_ij²)`
/// and `τ = 2t¹(α_kl α_ij + β_kl β_ij) − 2t²(α_kl β_ij − β_kl α_ij)`.
pub fn positivity_poly_from_choi(t: &ChoiOperator) -> Result<PositivityPolynomial> {
    t.check_selfadjoint()?;
    let n = t.dim();
    let vars = positivity_vars(n);
    let w = products(n, &vars);
    let two = Rational::from_integer(2.into());
    let mut p = MultiPoly::zero(vars.clone());
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect();
    for (a, &(i, j)) in pairs.iter().enumerate() {
        let wij = &w[i - 1][j - 1];
        let diag = t.entry(i, j, i, j);
        if !diag.re.is_zero() {
            p = &p + &wij.norm_sqr().scale(&diag.re);
        }
        for &(k, l) in &pairs[a + 1..] {
            let tv = t.entry(i, j, k, l);
            if tv.is_zero() {
                continue;
            }
            let wkl = &w[k - 1][l - 1];
            let (ai, bi, ak, bk) = (&wij.re, &wij.im, &wkl.re, &wkl.im);
            if !tv.re.is_zero() {
                let sym = &(ak * ai) + &(bk * bi);
                p = &p + &sym.scale(&(&two * &tv.re));
            }
            if !tv.im.is_zero() {
                let anti = &(ak * bi) - &(bk * ai);
                p = &p - &anti.scale(&(&two * &tv.im));
            }
        }
    }
    PositivityPolynomial::new(n, p)
}

/// `Σ_r α_r |Σ_ij conj(a^r_ji) x_i y_j|²`.
pub fn positivity_poly_from_kraus(phi: &HermMap) -> PositivityPolynomial {
    let n = phi.dim();
    let vars = positivity_vars(n);
    let w = products(n, &vars);
    let mut p = MultiPoly::zero(vars.clone());
    for term in phi.terms() {
        let mut z = ComplexPoly::zero(&vars);
        for i in 0..n {
            for j in 0..n {
                let c = term.matrix.get(j, i).conj();
                if !c.is_zero() {
                    z.add_assign(&w[i][j].scale(&c));
                }
            }
        }
        p = &p + &z.norm_sqr().scale(&term.alpha);
    }
    PositivityPolynomial::new(n, p).expect("Kraus form has bidegree (2,2)")
}

/// `Σ T_(ij)(kl)·conj(x_k y_l)·x_i y_j`; the imaginary part must cancel.
pub fn positivity_poly_double_sum(t: &ChoiOperator) -> Result<PositivityPolynomial> {
    let n = t.dim();
    let vars = positivity_vars(n);
    let w = products(n, &vars);
    let mut acc = ComplexPoly::zero(&vars);
    for ((i, j, k, l), tv) in t.iter() {
        if tv.is_zero() {
            continue;
        }
        let term = w[k - 1][l - 1].conj().mul(&w[i - 1][j - 1]).scale(tv);
        acc.add_assign(&term);
    }
    if !acc.im.is_zero() {
        return Err(Error::Internal("double sum has a nonzero imaginary part".into()));
    }
    PositivityPolynomial::new(n, acc.re)
}

/// Which of the three equivalent constructions to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    Kraus,
    Choi,
    DoubleSum,
}

impl Route {
    pub const ALL: [Route; 3] = [Route::Kraus, Route::Choi, Route::DoubleSum];

    pub fn name(self) -> &'static str {
        match self {
            Route::Kraus => "kraus",
            Route::Choi => "choi",
            Route::DoubleSum => "doublesum",
        }
    }
}

impl FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kraus" => Ok(Route::Kraus),
            "choi" => Ok(Route::Choi),
            "doublesum" => Ok(Route::DoubleSum),
            other => Err(Error::Parse {
                position: 0,
                message: format!("unknown route '{other}' (expected kraus, choi or doublesum)"),
            }),
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn positivity_poly(phi: &HermMap, route: Route) -> Result<PositivityPolynomial> {
    match route {
        Route::Kraus => Ok(positivity_poly_from_kraus(phi)),
        Route::Choi => positivity_poly_from_choi(&choi_matrix(phi)),
        Route::DoubleSum => positivity_poly_double_sum(&choi_matrix(phi)),
    }
}

/// True iff all three constructions give the same term map.
pub fn cross_check_routes(phi: &HermMap) -> bool {
    let kraus = positivity_poly_from_kraus(phi);
    let t = choi_matrix(phi);
    let same = |r: Result<PositivityPolynomial>| r.map(|p| p == kraus).unwrap_or(false);
    same(positivity_poly_from_choi(&t)) && same(positivity_poly_double_sum(&t))
}
