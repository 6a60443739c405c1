use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkernel::rational::{format_rational, parse_rational};
use crate::numkernel::{ComplexRational, Rational};

/// Dense square matrix over the Gaussian rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CMatrix {
    n: usize,
    entries: Vec<ComplexRational>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix {
            n,
            entries: vec![ComplexRational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = ComplexRational::one();
        }
        m
    }

    /// Matrix unit `E_ij` (0-based).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n);
        m.entries[i * n + j] = ComplexRational::one();
        m
    }

    pub fn from_rows(rows: Vec<Vec<ComplexRational>>) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::NotSquare { rows: n, cols: r.len() });
        }
        Ok(CMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &ComplexRational {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, z: ComplexRational) {
        self.entries[i * self.n + j] = z;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[ComplexRational]> {
        self.entries.chunks(self.n.max(1))
    }

    pub fn adjoint(&self) -> Self {
        let n = self.n;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.entries[j * n + i] = self.get(i, j).conj();
            }
        }
        m
    }

    pub fn is_hermitian(&self) -> bool {
        *self == self.adjoint()
    }

    pub fn mul(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let n = self.n;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        m.entries[i * n + j] = &m.entries[i * n + j] + &(a * b);
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn add(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(CMatrix {
            n: self.n,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> CMatrix {
        CMatrix {
            n: self.n,
            entries: self.entries.iter().map(|z| z.scale(c)).collect(),
        }
    }
}

impl fmt::Display for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, row) in self.rows().enumerate() {
            if r > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// One summand `α·A X A*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KrausTerm {
    pub alpha: Rational,
    pub matrix: CMatrix,
}

/// `Φ(X) = Σ_r α_r A_r X A_r*` with real nonzero `α_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermMap {
    n: usize,
    terms: Vec<KrausTerm>,
}

impl HermMap {
    pub fn new(n: usize, terms: Vec<KrausTerm>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidMap("dimension n must be positive".into()));
        }
        if terms.is_empty() {
            return Err(Error::InvalidMap("a map needs at least one term".into()));
        }
        for (r, t) in terms.iter().enumerate() {
            if t.alpha.is_zero() {
                return Err(Error::InvalidMap(format!("terms[{r}].alpha is zero")));
            }
            if t.matrix.dim() != n {
                return Err(Error::InvalidMap(format!(
                    "terms[{r}].matrix is {}x{}, expected {n}x{n}",
                    t.matrix.dim(),
                    t.matrix.dim()
                )));
            }
        }
        Ok(HermMap { n, terms })
    }

    /// `X ↦ X`.
    pub fn identity(n: usize) -> Self {
        Self::single(n, Rational::one(), CMatrix::identity(n))
    }

    /// `X ↦ −X`.
    pub fn negation(n: usize) -> Self {
        Self::single(n, -Rational::one(), CMatrix::identity(n))
    }

    /// The transpose map on 2×2 matrices,
    /// `½(id + σx·σx − σy·σy + σz·σz)` in Pauli form.
    pub fn transpose2() -> Self {
        let c = |re: i64, im: i64| ComplexRational::new(Rational::from_integer(re.into()), Rational::from_integer(im.into()));
        let half = Rational::new(1.into(), 2.into());
        let pauli = |rows: [[(i64, i64); 2]; 2]| {
            CMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&(a, b)| c(a, b)).collect()).collect()).unwrap()
        };
        let terms = vec![
            KrausTerm { alpha: half.clone(), matrix: CMatrix::identity(2) },
            KrausTerm { alpha: half.clone(), matrix: pauli([[(0, 0), (1, 0)], [(1, 0), (0, 0)]]) },
            KrausTerm { alpha: -half.clone(), matrix: pauli([[(0, 0), (0, -1)], [(0, 1), (0, 0)]]) },
            KrausTerm { alpha: half, matrix: pauli([[(1, 0), (0, 0)], [(0, 0), (-1, 0)]]) },
        ];
        HermMap::new(2, terms).unwrap()
    }

    fn single(n: usize, alpha: Rational, matrix: CMatrix) -> Self {
        HermMap::new(n, vec![KrausTerm { alpha, matrix }]).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[KrausTerm] {
        &self.terms
    }

    pub fn scale(&self, c: &Rational) -> Result<Self> {
        HermMap::new(
            self.n,
            self.terms
                .iter()
                .map(|t| KrausTerm {
                    alpha: &t.alpha * c,
                    matrix: t.matrix.clone(),
                })
                .collect(),
        )
    }

    /// Reads the JSON map format. Diagnostics name the offending field.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawMap = serde_json::from_str(text).map_err(|e| {
            Error::InvalidMap(format!("line {} column {}: {e}", e.line(), e.column()))
        })?;
        raw.into_map()
    }

    pub fn to_json(&self) -> String {
        let raw = RawMap {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|t| RawTerm {
                    alpha: format_rational(&t.alpha),
                    matrix: t
                        .matrix
                        .rows()
                        .map(|row| {
                            row.iter()
                                .map(|z| RawEntry {
                                    re: format_rational(&z.re),
                                    im: format_rational(&z.im),
                                })
                                .collect()
                        })
                        .collect(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("map serializes")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMap {
    n: usize,
    terms: Vec<RawTerm>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    alpha: String,
    matrix: Vec<Vec<RawEntry>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    re: String,
    im: String,
}

impl RawMap {
    fn into_map(self) -> Result<HermMap> {
        let field = |path: String, text: &str| {
            parse_rational(text).map_err(|e| Error::InvalidMap(format!("{path}: {e}")))
        };
        let mut terms = Vec::with_capacity(self.terms.len());
        for (r, t) in self.terms.into_iter().enumerate() {
            let alpha = field(format!("terms[{r}].alpha"), &t.alpha)?;
            if t.matrix.len() != self.n {
                return Err(Error::InvalidMap(format!(
                    "terms[{r}].matrix has {} rows, expected {}",
                    t.matrix.len(),
                    self.n
                )));
            }
            let mut rows = Vec::with_capacity(self.n);
            for (i, row) in t.matrix.into_iter().enumerate() {
                if row.len() != self.n {
                    return Err(Error::InvalidMap(format!(
                        "terms[{r}].matrix[{i}] has {} entries, expected {}",
                        row.len(),
                        self.n
                    )));
                }
                let mut out = Vec::with_capacity(self.n);
                for (j, e) in row.into_iter().enumerate() {
                    let re = field(format!("terms[{r}].matrix[{i}][{j}].re"), &e.re)?;
                    let im = field(format!("terms[{r}].matrix[{i}][{j}].im"), &e.im)?;
                    out.push(ComplexRational::new(re, im));
                }
                rows.push(out);
            }
            terms.push(KrausTerm {
                alpha,
                matrix: CMatrix::from_rows(rows)?,
            });
        }
        HermMap::new(self.n, terms)
    }
}

/// `Φ(X) = Σ α_r A_r X A_r*`.
pub fn apply_map(phi: &HermMap, x: &CMatrix) -> Result<CMatrix> {
    if x.dim() != phi.n {
        return Err(Error::DimensionMismatch {
            expected: phi.n,
            found: x.dim(),
        });
    }
    let mut acc = CMatrix::zeros(phi.n);
    for t in &phi.terms {
        let y = t.matrix.mul(x)?.mul(&t.matrix.adjoint())?;
        acc = acc.add(&y.scale(&t.alpha))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::rational::{int, rat};

    fn c(re: i64, im: i64) -> ComplexRational {
        ComplexRational::new(int(re), int(im))
    }

    #[test]
    fn identity_and_negation() {
        let x = CMatrix::from_rows(vec![vec![c(1, 2), c(0, -1)], vec![c(3, 0), c(-2, 5)]]).unwrap();
        assert_eq!(apply_map(&HermMap::identity(2), &x).unwrap(), x);
        assert_eq!(
            apply_map(&HermMap::negation(2), &CMatrix::identity(2)).unwrap(),
            CMatrix::identity(2).scale(&int(-1))
        );
    }

    #[test]
    fn matrix_unit_map() {
        let phi = HermMap::new(2, vec![KrausTerm { alpha: int(1), matrix: CMatrix::unit(2, 0, 1) }]).unwrap();
        assert_eq!(apply_map(&phi, &CMatrix::unit(2, 1, 1)).unwrap(), CMatrix::unit(2, 0, 0));
    }

    #[test]
    fn transpose_map_transposes() {
        let phi = HermMap::transpose2();
        let x = CMatrix::from_rows(vec![vec![c(1, 0), c(2, 3)], vec![c(-4, 1), c(5, -7)]]).unwrap();
        let mut t = CMatrix::zeros(2);
        for i in 0..2 {
            for j in 0..2 {
                t.set(i, j, x.get(j, i).clone());
            }
        }
        assert_eq!(apply_map(&phi, &x).unwrap(), t);
    }

    #[test]
    fn hermitian_in_hermitian_out() {
        let a = CMatrix::from_rows(vec![vec![c(1, 1), c(0, 2)], vec![c(3, 0), c(-1, 0)]]).unwrap();
        let phi = HermMap::new(2, vec![KrausTerm { alpha: rat(-3, 2), matrix: a }]).unwrap();
        let x = CMatrix::from_rows(vec![vec![c(2, 0), c(1, -1)], vec![c(1, 1), c(-5, 0)]]).unwrap();
        assert!(apply_map(&phi, &x).unwrap().is_hermitian());
        assert!(apply_map(&phi, &CMatrix::identity(3)).is_err());
    }

    #[test]
    fn validation() {
        let zero_alpha = KrausTerm { alpha: int(0), matrix: CMatrix::identity(2) };
        assert!(HermMap::new(2, vec![zero_alpha]).is_err());
        assert!(HermMap::new(2, vec![]).is_err());
        let wrong = KrausTerm { alpha: int(1), matrix: CMatrix::identity(3) };
        assert!(HermMap::new(2, vec![wrong]).is_err());
    }

    #[test]
    fn json_round_trip_and_diagnostics() {
        let phi = HermMap::transpose2();
        assert_eq!(HermMap::from_json(&phi.to_json()).unwrap(), phi);
        let bad = r#"{"n": 1, "terms": [{"alpha": "1", "matrix": [[{"re": "0.5", "im": "0"}]]}]}"#;
        let err = HermMap::from_json(bad).unwrap_err().to_string();
        assert!(err.contains("terms[0].matrix[0][0].re"), "{err}");
        let zero = r#"{"n": 1, "terms": [{"alpha": "0/3", "matrix": [[{"re": "1", "im": "0"}]]}]}"#;
        assert!(HermMap::from_json(zero).unwrap_err().to_string().contains("alpha"));
        let extra = r#"{"n": 1, "terms": [], "x": 1}"#;
        assert!(HermMap::from_json(extra).is_err());
        let short = r#"{"n": 2, "terms": [{"alpha": "1", "matrix": [[{"re": "1", "im": "0"}]]}]}"#;
        assert!(HermMap::from_json(short).unwrap_err().to_string().contains("rows"));
    }
}
