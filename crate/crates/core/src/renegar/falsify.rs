use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::numkernel::{MultiPoly, Rational};

/// Result of a sampling run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sampling {
    pub witness: Option<Vec<Rational>>,
    /// 0-based index of the witness sample, or the full count when none.
    pub drawn: u64,
}

/// Point `k` of the stream: coordinates `a/b` with `1 ≤ b ≤ 4` and
/// `|a/b| ≤ 1 + ⌊√k⌋`, so the box grows with the index.
fn sample_point(rng: &mut ChaCha8Rng, k: u64, n: usize) -> Vec<Rational> {
    let radius = 1 + k.sqrt() as i64;
    (0..n)
        .map(|_| {
            let den = rng.gen_range(1..=4i64);
            let num = rng.gen_range(-radius * den..=radius * den);
            Rational::new(BigInt::from(num), BigInt::from(den))
        })
        .collect()
}

pub fn falsify_with_count(g: &MultiPoly, samples: u64, seed: u64) -> Sampling {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.nvars();
    for k in 0..samples {
        let x = sample_point(&mut rng, k, n);
        if x.iter().all(Zero::is_zero) {
            continue;
        }
        if g.eval(&x).map(|v| v.is_negative()).unwrap_or(false) {
            return Sampling {
                witness: Some(x),
                drawn: k + 1,
            };
        }
    }
    Sampling {
        witness: None,
        drawn: samples,
    }
}

/// The first sampled point where `g < 0`. Only ever supports a "no".
pub fn falsify_by_sampling(g: &MultiPoly, samples: u64, seed: u64) -> Option<Vec<Rational>> {
    falsify_with_count(g, samples, seed).witness
}
