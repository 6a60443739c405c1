use super::map::{CMatrix, HermMap};
use crate::error::{Error, Result};
use crate::numkernel::ComplexRational;

/// The Choi operator of a map, stored by double-index entries `T_(ij)(kl)`
/// (indices 1-based in the public accessors).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChoiOperator {
    n: usize,
    entries: Vec<ComplexRational>,
}

impl ChoiOperator {
    fn index(n: usize, i: usize, j: usize, k: usize, l: usize) -> usize {
        (((i - 1) * n + (j - 1)) * n + (k - 1)) * n + (l - 1)
    }

    /// Builds an operator from a function of `(i, j, k, l)` and checks
    /// `T_(ij)(kl) = conj(T_(kl)(ij))`.
    pub fn from_fn<F>(n: usize, mut entry: F) -> Result<Self>
    where
        F: FnMut(usize, usize, usize, usize) -> ComplexRational,
    {
        let mut entries = Vec::with_capacity(n.pow(4));
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    for l in 1..=n {
                        entries.push(entry(i, j, k, l));
                    }
                }
            }
        }
        let op = ChoiOperator { n, entries };
        op.check_selfadjoint()?;
        Ok(op)
    }

    pub fn zero(n: usize) -> Self {
        ChoiOperator {
            n,
            entries: vec![ComplexRational::zero(); n.pow(4)],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize, k: usize, l: usize) -> &ComplexRational {
        &self.entries[Self::index(self.n, i, j, k, l)]
    }

    pub fn check_selfadjoint(&self) -> Result<()> {
        let n = self.n;
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    for l in 1..=n {
                        if *self.entry(i, j, k, l) != self.entry(k, l, i, j).conj() {
                            return Err(Error::NotSelfadjoint { i, j, k, l });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// All entries in lex order of `(i, j, k, l)`.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize, usize, usize), &ComplexRational)> {
        let n = self.n;
        self.entries.iter().enumerate().map(move |(idx, z)| {
            let l = idx % n + 1;
            let k = idx / n % n + 1;
            let j = idx / (n * n) % n + 1;
            let i = idx / (n * n * n) + 1;
            ((i, j, k, l), z)
        })
    }
}

/// `J(Φ)_(ij)(kl) = Σ_r α_r a^r_lk conj(a^r_ji)`.
pub fn choi_matrix(phi: &HermMap) -> ChoiOperator {
    let n = phi.dim();
    ChoiOperator::from_fn(n, |i, j, k, l| {
        let mut acc = ComplexRational::zero();
        for t in phi.terms() {
            let a_lk = t.matrix.get(l - 1, k - 1);
            let a_ji = t.matrix.get(j - 1, i - 1);
            acc = &acc + &(a_lk * &a_ji.conj()).scale(&t.alpha);
        }
        acc
    })
    .expect("Choi matrices of hermiticity-preserving maps are selfadjoint")
}

impl ChoiOperator {
    /// The `n²×n²` matrix `Σ_ij E_ij ⊗ Φ(E_ij)`, rows and columns indexed by
    /// `(i, l) ↦ i·n + l` (0-based).
    pub fn to_dense(&self) -> CMatrix {
        let n = self.n;
        let mut m = CMatrix::zeros(n * n);
        // block (i, j) is Φ(E_ij), and Φ(E_ij)[l, m] = T_(jm)(il)
        for i in 1..=n {
            for j in 1..=n {
                for l in 1..=n {
                    for c in 1..=n {
                        m.set((i - 1) * n + (l - 1), (j - 1) * n + (c - 1), self.entry(j, c, i, l).clone());
                    }
                }
            }
        }
        m
    }
}
