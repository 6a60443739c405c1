//! Seeded generators for maps and points, shared by tests and benches.

use num_bigint::BigInt;
use rand::Rng;

use super::map::{CMatrix, HermMap, KrausTerm};
use crate::numkernel::{ComplexRational, Rational};

/// A rational `a/b` with `|a| ≤ max_num` and `1 ≤ b ≤ max_den`.
pub fn random_rational<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> Rational {
    let a = rng.gen_range(-max_num..=max_num);
    let b = rng.gen_range(1..=max_den);
    Rational::new(BigInt::from(a), BigInt::from(b))
}

pub fn random_complex<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> ComplexRational {
    ComplexRational::new(random_rational(rng, max_num, max_den), random_rational(rng, max_num, max_den))
}

/// A map with `s` terms on `n×n` matrices; integer entries of magnitude at
/// most `max`. With `completely_positive` all weights are positive.
pub fn random_herm_map<R: Rng>(rng: &mut R, n: usize, s: usize, max: i64, completely_positive: bool) -> HermMap {
    let terms = (0..s)
        .map(|_| {
            let mut alpha = 0;
            while alpha == 0 {
                alpha = if completely_positive {
                    rng.gen_range(1..=max)
                } else {
                    rng.gen_range(-max..=max)
                };
            }
            let rows = (0..n)
                .map(|_| (0..n).map(|_| random_complex(rng, max, 1)).collect())
                .collect();
            KrausTerm {
                alpha: Rational::from_integer(alpha.into()),
                matrix: CMatrix::from_rows(rows).unwrap(),
            }
        })
        .collect();
    HermMap::new(n, terms).unwrap()
}
