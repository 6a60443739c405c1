use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, Rational};
use super::upoly::{Degree, UniPoly};
use crate::error::{Error, Result};

/// Exponent vector, one entry per variable. The derived ordering is the
/// lexicographic order with the first variable most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Self(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize, power: u32) -> Self {
        let mut e = vec![0; nvars];
        e[index] = power;
        Self(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }
}

/// Shared, ordered variable list.
pub type Vars = Arc<[String]>;

pub fn vars<S: AsRef<str>>(names: &[S]) -> Vars {
    names.iter().map(|s| s.as_ref().to_string()).collect()
}

/// `x1, …, xn`.
pub fn indexed_vars(prefix: &str, n: usize) -> Vars {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// Sparse multivariate polynomial with exact rational coefficients. Terms are
/// kept in a lex-ordered map and never store a zero coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vars,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(vars: Vars) -> Self {
        Self {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Vars, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        let n = p.nvars();
        p.add_term(Monomial::one(n), c);
        p
    }

    pub fn one(vars: Vars) -> Self {
        Self::constant(vars, Rational::one())
    }

    /// The polynomial consisting of the single variable `name`.
    pub fn var(vars: Vars, name: &str) -> Result<Self> {
        let i = index_of(&vars, name)?;
        Ok(Self::var_at(vars, i))
    }

    pub fn var_at(vars: Vars, index: usize) -> Self {
        let n = vars.len();
        Self::monomial(vars, Monomial::var(n, index, 1), Rational::one())
    }

    pub fn monomial(vars: Vars, m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(vars: Vars, terms: I) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        index_of(&self.vars, name)
    }

    /// Terms in ascending lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c·m`, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.0.len(), self.nvars());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn total_degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|m| m.degree() as usize)
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// Largest total degree counted over the given variable indices only.
    pub fn degree_in(&self, indices: &[usize]) -> Degree {
        self.terms
            .keys()
            .map(|m| indices.iter().map(|&i| m.0[i] as usize).sum())
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Leading term under lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars.clone());
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars.clone());
        }
        Self {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.mul(m), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.vars.clone());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to the variable called `name`.
    pub fn partial(&self, name: &str) -> Result<Self> {
        let i = self.var_index(name)?;
        Ok(self.partial_at(i))
    }

    pub fn partial_at(&self, i: usize) -> Self {
        let mut out = Self::zero(self.vars.clone());
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            out.add_term(m2, c * Rational::from_integer(e.into()));
        }
        out
    }

    /// `d`-homogenization: appends the variable `new_var` and pads every term
    /// `a_α x^α` to `a_α x^α new_var^{d−|α|}`.
    pub fn homogenize(&self, d: usize, new_var: &str) -> Result<Self> {
        let all: Vec<usize> = (0..self.nvars()).collect();
        self.homogenize_in(&all, d, new_var)
    }

    /// Homogenization counting degree only over `indices`; the remaining
    /// variables behave as coefficients. The new variable is appended last.
    pub fn homogenize_in(&self, indices: &[usize], d: usize, new_var: &str) -> Result<Self> {
        if let Degree::Finite(deg) = self.degree_in(indices) {
            if deg > d {
                return Err(Error::DegreeBound { bound: d, degree: deg });
            }
        }
        let mut names: Vec<String> = self.vars.iter().cloned().collect();
        names.push(new_var.to_string());
        let mut out = Self::zero(names.into());
        for (m, c) in &self.terms {
            let deg: u32 = indices.iter().map(|&i| m.0[i]).sum();
            let mut e = m.0.clone();
            e.push(d as u32 - deg);
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                found: point.len(),
            });
        }
        let mut pows: Vec<Vec<Rational>> = point.iter().map(|x| vec![Rational::one(), x.clone()]).collect();
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut pows[i];
                while table.len() <= e as usize {
                    let next = table.last().unwrap() * &point[i];
                    table.push(next);
                }
                t *= &table[e as usize];
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitutes univariate polynomials for every variable.
    pub fn compose_univariate(&self, args: &[UniPoly]) -> Result<UniPoly> {
        if args.len() != self.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                found: args.len(),
            });
        }
        if args.iter().all(|a| a.coeffs().iter().all(Rational::is_integer)) {
            return Ok(self.compose_integer(args));
        }
        Ok(self.compose_rational(args))
    }

    fn compose_rational(&self, args: &[UniPoly]) -> UniPoly {
        let mut cache: Vec<Vec<UniPoly>> = args.iter().map(|a| vec![UniPoly::one(), a.clone()]).collect();
        let mut acc = UniPoly::zero();
        for (m, c) in &self.terms {
            let mut t = UniPoly::constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut cache[i];
                while table.len() <= e as usize {
                    let next = table.last().unwrap() * &args[i];
                    table.push(next);
                }
                t = &t * &table[e as usize];
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Composition with integer arguments, carried out on `L·self` with `L`
    /// the common denominator of the coefficients.
    fn compose_integer(&self, args: &[UniPoly]) -> UniPoly {
        fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
            if a.is_empty() || b.is_empty() {
                return Vec::new();
            }
            let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b.iter().enumerate() {
                    c[i + j] += x * y;
                }
            }
            c
        }
        let lcm = self.terms.values().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<Vec<BigInt>> = args.iter().map(|a| a.coeffs().iter().map(|c| c.to_integer()).collect()).collect();
        let mut cache: Vec<Vec<Vec<BigInt>>> = ints.iter().map(|a| vec![vec![BigInt::one()], a.clone()]).collect();
        let mut acc: Vec<BigInt> = Vec::new();
        for (m, c) in &self.terms {
            let mut t = vec![(c * Rational::from_integer(lcm.clone())).to_integer()];
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut cache[i];
                while table.len() <= e as usize {
                    let next = mul(table.last().unwrap(), &ints[i]);
                    table.push(next);
                }
                t = mul(&t, &table[e as usize]);
            }
            if acc.len() < t.len() {
                acc.resize(t.len(), BigInt::zero());
            }
            for (a, x) in acc.iter_mut().zip(t) {
                *a += x;
            }
        }
        UniPoly::new(acc.into_iter().map(|a| Rational::new(a, lcm.clone())).collect())
    }

    /// Re-embeds into a variable list that contains all of this polynomial's
    /// variables (matched by name).
    pub fn with_vars(&self, target: &Vars) -> Result<Self> {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| index_of(target, v))
            .collect::<Result<_>>()?;
        let mut out = Self::zero(target.clone());
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (k, &t) in map.iter().enumerate() {
                e[t] = m.0[k];
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Splits by the exponents of `selected` variables: each key is the
    /// exponent vector over `selected`, each value the coefficient polynomial
    /// in the remaining variables (in their original order).
    pub fn coefficients_in(&self, selected: &[usize]) -> BTreeMap<Vec<u32>, MultiPoly> {
        let rest: Vec<usize> = (0..self.nvars()).filter(|i| !selected.contains(i)).collect();
        let rest_vars: Vars = rest.iter().map(|&i| self.vars[i].clone()).collect();
        let mut out: BTreeMap<Vec<u32>, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key: Vec<u32> = selected.iter().map(|&i| m.0[i]).collect();
            let mono = Monomial(rest.iter().map(|&i| m.0[i]).collect());
            out.entry(key)
                .or_insert_with(|| MultiPoly::zero(rest_vars.clone()))
                .add_term(mono, c.clone());
        }
        out
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &MultiPoly) -> Result<Option<MultiPoly>> {
        let (lm, lc) = divisor.leading_term().ok_or(Error::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.vars.clone());
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return Ok(None);
            }
            let qm = lm.quotient_of(m);
            let qc = c / lc;
            rem = &rem - &divisor.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Ok(Some(quot))
    }

    fn check_vars(&self, other: &MultiPoly) {
        assert!(
            Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars,
            "polynomials over different variable lists: {:?} vs {:?}",
            self.vars,
            other.vars
        );
    }

    /// Renders in the text grammar understood by [`super::parse`], terms in
    /// descending lex order.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

fn index_of(vars: &Vars, name: &str) -> Result<usize> {
    vars.iter()
        .position(|v| v == name)
        .ok_or_else(|| Error::UnknownVariable(name.to_string()))
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let a = c.abs();
            let constant = m.degree() == 0;
            if !a.is_one() || constant {
                write!(f, "{}", format_rational(&a))?;
            }
            let mut first_var = a.is_one() && !constant;
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first_var {
                    write!(f, " ")?;
                }
                first_var = false;
                write!(f, "{}", self.vars[i])?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut out = MultiPoly::zero(self.vars.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::parse::parse_poly;
    use crate::numkernel::rational::{int, rat};
    use proptest::prelude::*;

    fn poly(s: &str) -> MultiPoly {
        parse_poly(s, None).unwrap()
    }

    fn poly_n(s: &str, n: usize) -> MultiPoly {
        parse_poly(s, Some(n)).unwrap()
    }

    #[test]
    fn partial_derivatives() {
        assert_eq!(poly("x1^2 x2").partial("x1").unwrap(), poly("2 x1 x2"));
        assert!(poly_n("7", 1).partial("x1").unwrap().is_zero());
        assert_eq!(poly("x1^3 + x2^3").partial("x2").unwrap(), poly_n("3 x2^2", 2));
        assert_eq!(
            poly("x1").partial("y"),
            Err(Error::UnknownVariable("y".into()))
        );
    }

    #[test]
    fn homogenize_examples() {
        let g = poly("x1^2 + 1").homogenize(2, "x2").unwrap();
        assert_eq!(g, poly("x1^2 + x2^2"));
        let g = poly("x1").homogenize(3, "x2").unwrap();
        assert_eq!(g, poly("x1 x2^2"));
        let h = poly("x1^2 - x1 x2").homogenize(2, "x3").unwrap();
        assert_eq!(h, poly_n("x1^2 - x1 x2", 3));
        assert_eq!(
            poly("x1^3").homogenize(2, "x2"),
            Err(Error::DegreeBound { bound: 2, degree: 3 })
        );
    }

    #[test]
    fn evaluation() {
        assert_eq!(poly("x1 x2").eval(&[int(2), int(3)]).unwrap(), int(6));
        assert_eq!(poly("x1^2 - x2 + 5").eval(&[int(0), int(0)]).unwrap(), int(5));
        assert_eq!(poly("x1^2 - x2").eval(&[rat(3, 2), rat(9, 4)]).unwrap(), int(0));
        assert!(poly("x1 x2").eval(&[int(1)]).is_err());
    }

    #[test]
    fn exact_division() {
        let a = poly("x1^2 - x2^2");
        let b = poly("x1 + x2");
        assert_eq!(a.exact_div(&b).unwrap(), Some(poly("x1 - x2")));
        assert_eq!(poly_n("x1^2 + 1", 2).exact_div(&b).unwrap(), None);
    }

    #[test]
    fn coefficient_extraction() {
        let p = poly("3 x1 x2 + 2 x1 x3^2 - x2 x3^2");
        let parts = p.coefficients_in(&[1, 2]);
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[&vec![1, 0]].to_string(), "3 x1");
        assert_eq!(parts[&vec![0, 2]].to_string(), "2 x1");
        assert_eq!(parts[&vec![1, 2]].to_string(), "-1");
        assert_eq!(parts[&vec![1, 2]].vars().as_ref(), &["x1".to_string()]);
    }

    fn small_mpoly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -20i64..=20, 1i64..=5), 0..6).prop_map(|ts| {
            MultiPoly::from_terms(
                indexed_vars("x", 3),
                ts.into_iter()
                    .map(|((a, b, c), n, d)| (Monomial::new(vec![a, b, c]), rat(n, d))),
            )
        })
    }

    fn point() -> impl Strategy<Value = Vec<Rational>> {
        prop::collection::vec((-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d)), 3)
    }

    proptest! {
        #[test]
        fn ring_axioms(f in small_mpoly(), g in small_mpoly(), h in small_mpoly()) {
            let lhs = &(&f + &g) * &h;
            let rhs = &(&f * &h) + &(&g * &h);
            prop_assert_eq!(&lhs, &rhs);
            prop_assert!(lhs.terms().all(|(_, c)| !c.is_zero()));
            prop_assert!((&f - &f).is_zero());
        }

        #[test]
        fn evaluation_is_a_homomorphism(f in small_mpoly(), g in small_mpoly(), x in point()) {
            let (fx, gx) = (f.eval(&x).unwrap(), g.eval(&x).unwrap());
            prop_assert_eq!((&f + &g).eval(&x).unwrap(), &fx + &gx);
            prop_assert_eq!((&f * &g).eval(&x).unwrap(), &fx * &gx);
        }

        #[test]
        fn homogenization_dehomogenizes(f in small_mpoly(), x in point()) {
            let d = f.total_degree().finite().unwrap_or(0) + 1;
            let h = f.homogenize(d, "x4").unwrap();
            prop_assert!(h.is_homogeneous());
            let mut y = x.clone();
            y.push(int(1));
            prop_assert_eq!(h.eval(&y).unwrap(), f.eval(&x).unwrap());
        }

        #[test]
        fn partial_is_linear_and_leibniz(f in small_mpoly(), g in small_mpoly()) {
            let d = |p: &MultiPoly| p.partial("x2").unwrap();
            prop_assert_eq!(d(&(&f + &g)), &d(&f) + &d(&g));
            prop_assert_eq!(d(&(&f * &g)), &(&d(&f) * &g) + &(&f * &d(&g)));
        }

        #[test]
        fn integer_composition_matches_rational(
            f in small_mpoly(),
            a in proptest::collection::vec(proptest::collection::vec(-6i64..6, 0..4), 3),
        ) {
            let args: Vec<UniPoly> = a.iter().map(|c| UniPoly::from_ints(c)).collect();
            prop_assert_eq!(f.compose_integer(&args), f.compose_rational(&args));
        }
    }
}
