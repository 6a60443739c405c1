use std::collections::{BTreeMap, HashMap};

use num_traits::One;

use super::moddet::{modular_det, ParamPoly, StructuredMatrix};
use crate::error::{Error, Result};
use crate::numkernel::{fraction_free_det, indexed_vars, Degree, Monomial, MultiPoly, Rational, Vars};

/// Row and column order of the matrix.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SupportOrder {
    #[default]
    Lex,
    ReverseLex,
}

/// How `det(M)` is expanded.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DetMethod {
    /// Evaluation at parameter and `u` points modulo primes, then
    /// interpolation and Chinese remaindering.
    #[default]
    Modular,
    /// Bareiss elimination over the full polynomial ring.
    FractionFree,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RSystemOptions {
    pub order: SupportOrder,
    pub method: DetMethod,
}

/// How a row polynomial `t_α` was formed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowKind {
    /// `x^shift · g_i^hom` (0-based generator index).
    Generator { index: usize, shift: Vec<u32> },
    /// `x^shift · Σ u_i x_i`.
    Linear { shift: Vec<u32> },
}

#[derive(Clone, Debug)]
pub struct RSystem {
    n: usize,
    degree: usize,
    generators: Vec<MultiPoly>,
    support: Vec<Vec<u32>>,
    rows: Vec<RowKind>,
    matrix: Vec<Vec<MultiPoly>>,
    determinant: MultiPoly,
    coefficients: Vec<(Vec<u32>, MultiPoly)>,
}

/// All `α ∈ ℕ^{n+1}` with `|α| = n(d−1)+1`, lex ascending.
pub fn support(n: usize, d: usize) -> Vec<Vec<u32>> {
    let total = (n * (d - 1) + 1) as u32;
    fn go(len: usize, remaining: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == len {
            prefix.push(remaining);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in 0..=remaining {
            prefix.push(e);
            go(len, remaining - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n + 1, total, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// `binomial(n(d−1)+1+n, n)`.
pub fn support_size(n: usize, d: usize) -> usize {
    let top = n * (d - 1) + 1 + n;
    (0..n).fold(1usize, |acc, i| acc * (top - i) / (i + 1))
}

impl RSystem {
    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn support(&self) -> &[Vec<u32>] {
        &self.support
    }

    pub fn rows(&self) -> &[RowKind] {
        &self.rows
    }

    pub fn matrix(&self) -> &[Vec<MultiPoly>] {
        &self.matrix
    }

    /// `det(M)` over `u_1..u_{n+1}` followed by the parameters.
    pub fn determinant(&self) -> &MultiPoly {
        &self.determinant
    }

    /// The nonzero `g_ij` keyed by parameter exponents, each a polynomial in
    /// `u_1..u_{n+1}`.
    pub fn coefficients(&self) -> &[(Vec<u32>, MultiPoly)] {
        &self.coefficients
    }
}

pub fn build_r_system(gens: &[MultiPoly], d: usize) -> Result<RSystem> {
    build_r_system_with(gens, d, RSystemOptions::default())
}

/// Builds the matrix for generators `g_1..g_n` whose first `n` variables are
/// `x_1..x_n`; any further variables are parameters (typically δ, γ).
pub fn build_r_system_with(gens: &[MultiPoly], d: usize, opts: RSystemOptions) -> Result<RSystem> {
    let n = gens.len();
    if n == 0 {
        return Err(Error::InvalidMap("no generators".into()));
    }
    let vars = gens[0].vars().clone();
    if gens.iter().any(|g| g.vars() != &vars) || vars.len() < n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: vars.len(),
        });
    }
    let xs: Vec<usize> = (0..n).collect();
    let mut max_deg = 0usize;
    for g in gens {
        if let Degree::Finite(k) = g.degree_in(&xs) {
            if k > d {
                return Err(Error::DegreeBound { bound: d, degree: k });
            }
            max_deg = max_deg.max(k);
        }
    }
    if d == 0 || max_deg != d {
        return Err(Error::DegreeBound { bound: d, degree: max_deg });
    }
    let params: Vec<String> = vars[n..].to_vec();
    let np = params.len();
    let mut names: Vec<String> = indexed_vars("u", n + 1).iter().cloned().collect();
    names.extend(params.iter().cloned());
    let mvars: Vars = names.into();

    let mut sup = support(n, d);
    if opts.order == SupportOrder::ReverseLex {
        sup.reverse();
    }
    let column: HashMap<&[u32], usize> = sup.iter().enumerate().map(|(i, a)| (a.as_slice(), i)).collect();
    let homs: Vec<MultiPoly> = gens
        .iter()
        .map(|g| g.homogenize_in(&xs, d, "x_hom"))
        .collect::<Result<_>>()?;

    let mut rows = Vec::with_capacity(sup.len());
    let mut fixed = Vec::new();
    let mut linear = Vec::new();
    for (r, alpha) in sup.iter().enumerate() {
        match (0..n).find(|&i| alpha[i] as usize >= d) {
            Some(i) => {
                let mut shift = alpha.clone();
                shift[i] -= d as u32;
                // gather entries column by column
                let mut entries: BTreeMap<usize, ParamPoly> = BTreeMap::new();
                for (m, c) in homs[i].terms() {
                    let e = m.exponents();
                    let mut beta: Vec<u32> = shift.clone();
                    for k in 0..n {
                        beta[k] += e[k];
                    }
                    beta[n] += e[vars.len()];
                    let col = column[beta.as_slice()];
                    entries.entry(col).or_default().push((e[n..vars.len()].to_vec(), c.clone()));
                }
                fixed.push((r, entries.into_iter().collect::<Vec<_>>()));
                rows.push(RowKind::Generator { index: i, shift });
            }
            None => {
                let mut shift = alpha.clone();
                shift[n] -= 1;
                let entries: Vec<(usize, usize)> = (0..=n)
                    .map(|i| {
                        let mut beta = shift.clone();
                        beta[i] += 1;
                        (column[beta.as_slice()], i)
                    })
                    .collect();
                linear.push((r, entries));
                rows.push(RowKind::Linear { shift });
            }
        }
    }

    let size = sup.len();
    let mut matrix = vec![vec![MultiPoly::zero(mvars.clone()); size]; size];
    for (r, entries) in &fixed {
        for (col, poly) in entries {
            for (pe, c) in poly {
                let mut e = vec![0u32; n + 1];
                e.extend_from_slice(pe);
                matrix[*r][*col].add_term(Monomial::new(e), c.clone());
            }
        }
    }
    for (r, entries) in &linear {
        for &(col, ui) in entries {
            matrix[*r][col].add_term(Monomial::var(n + 1 + np, ui, 1), Rational::one());
        }
    }

    let determinant = match opts.method {
        DetMethod::FractionFree => fraction_free_det(&matrix)?,
        DetMethod::Modular => {
            let sm = StructuredMatrix {
                n_u: n + 1,
                n_params: np,
                size,
                fixed,
                linear,
            };
            let coeffs = modular_det(&sm);
            MultiPoly::from_terms(
                mvars.clone(),
                coeffs.into_iter().map(|((ue, pe), c)| {
                    let mut e = ue;
                    e.extend(pe);
                    (Monomial::new(e), c)
                }),
            )
        }
    };
    let param_idx: Vec<usize> = (n + 1..n + 1 + np).collect();
    let coefficients = determinant
        .coefficients_in(&param_idx)
        .into_iter()
        .filter(|(_, p)| !p.is_zero())
        .collect();
    Ok(RSystem {
        n,
        degree: d,
        generators: gens.to_vec(),
        support: sup,
        rows,
        matrix,
        determinant,
        coefficients,
    })
}
