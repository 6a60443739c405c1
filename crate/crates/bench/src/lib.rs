//! Deterministic inputs for the criterion benches.

use posmap_core::choi::random::random_herm_map;
use posmap_core::choi::HermMap;
use posmap_core::numkernel::{rat, UniPoly};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `Π (x − k/2)` over `k = −m..m`, excluding 0.
pub fn rooted(m: i64) -> UniPoly {
    let roots: Vec<_> = (-m..=m).filter(|&k| k != 0).map(|k| rat(k, 2)).collect();
    UniPoly::from_roots(&roots)
}

/// Dense polynomial with coefficients cycling through small signed integers.
pub fn dense(degree: usize) -> UniPoly {
    let coeffs: Vec<i64> = (0..=degree as i64).map(|k| (k * 7 % 11) - 5).collect();
    UniPoly::from_ints(&coeffs)
}

pub fn maps(n: usize, s: usize, count: usize, seed: u64) -> Vec<HermMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_herm_map(&mut rng, n, s, 5, false)).collect()
}
