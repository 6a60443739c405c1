//! Word-size prime fields, Chinese remaindering and Newton interpolation.
//! Used to recover large integer determinants from many small images.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Arithmetic modulo a prime `p < 2^31`, so products fit in a `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Zp {
    p: u64,
    /// `⌊(2^64 − 1)/p⌋` for Barrett reduction.
    mu: u64,
}

impl Zp {
    pub fn new(p: u64) -> Self {
        assert!(p > 2 && p < (1 << 31) && is_prime(p), "{p} is not an odd prime below 2^31");
        Zp { p, mu: u64::MAX / p }
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        let x = a * b;
        let q = ((x as u128 * self.mu as u128) >> 64) as u64;
        let mut r = x - q * self.p;
        while r >= self.p {
            r -= self.p;
        }
        r
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Inverse of a nonzero element.
    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        self.pow(a, self.p - 2)
    }

    pub fn from_i64(self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    pub fn from_bigint(self, a: &BigInt) -> u64 {
        let r = a.mod_floor(&BigInt::from(self.p));
        r.to_u64().unwrap()
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13] {
        if n % small == 0 {
            return n == small;
        }
    }
    // deterministic Miller-Rabin for n < 2^32
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    'witness: for a in [2u64, 7, 61] {
        if a % n == 0 {
            continue;
        }
        let mut x = 1u64;
        let (mut base, mut e) = (a, d);
        while e > 0 {
            if e & 1 == 1 {
                x = mulmod(x, base);
            }
            base = mulmod(base, base);
            e >>= 1;
        }
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes below `2^31` in decreasing order.
pub fn primes() -> impl Iterator<Item = u64> {
    (3..(1u64 << 31)).rev().step_by(2).filter(|&n| is_prime(n))
}

/// Determinant modulo `f.modulus()` by Gaussian elimination; the matrix is
/// consumed as scratch space.
pub fn det_mod(m: &mut [Vec<u64>], f: Zp) -> u64 {
    let n = m.len();
    let mut det = 1u64;
    for k in 0..n {
        let Some(piv) = (k..n).find(|&r| m[r][k] != 0) else {
            return 0;
        };
        if piv != k {
            m.swap(piv, k);
            det = f.neg(det);
        }
        det = f.mul(det, m[k][k]);
        let inv = f.inv(m[k][k]);
        let (top, bottom) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            if row[k] == 0 {
                continue;
            }
            let factor = f.mul(row[k], inv);
            for j in k..n {
                if pivot_row[j] != 0 {
                    row[j] = f.sub(row[j], f.mul(factor, pivot_row[j]));
                }
            }
        }
    }
    det
}

/// Coefficients (ascending) of the unique polynomial of degree `< xs.len()`
/// through the points; the `xs` must be distinct modulo `p`.
pub fn interpolate(xs: &[u64], ys: &[u64], f: Zp) -> Vec<u64> {
    let n = xs.len();
    assert_eq!(n, ys.len());
    // divided differences
    let mut c = ys.to_vec();
    for k in 1..n {
        for i in (k..n).rev() {
            let num = f.sub(c[i], c[i - 1]);
            let den = f.sub(xs[i], xs[i - k]);
            c[i] = f.mul(num, f.inv(den));
        }
    }
    // Newton form to monomial basis, Horner style from the top
    let mut out = vec![0u64; n];
    for k in (0..n).rev() {
        // out <- out·(x − xs[k]) + c[k]
        for i in (1..n).rev() {
            out[i] = f.sub(out[i - 1], f.mul(out[i], xs[k]));
        }
        out[0] = f.sub(c[k], f.mul(out[0], xs[k]));
    }
    out
}

/// Incremental Chinese remaindering of a vector of residues.
#[derive(Clone, Debug)]
pub struct Crt {
    modulus: BigInt,
    values: Vec<BigInt>,
}

impl Crt {
    pub fn new(len: usize) -> Self {
        Crt {
            modulus: BigInt::one(),
            values: vec![BigInt::zero(); len],
        }
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn push(&mut self, f: Zp, residues: &[u64]) {
        assert_eq!(residues.len(), self.values.len());
        let p = f.modulus();
        let m_inv = f.inv(f.from_bigint(&self.modulus));
        for (v, &r) in self.values.iter_mut().zip(residues) {
            // v + M·((r − v)·M⁻¹ mod p)
            let t = f.mul(f.sub(r, f.from_bigint(v)), m_inv);
            if t != 0 {
                *v += &self.modulus * BigInt::from(t);
            }
        }
        self.modulus *= BigInt::from(p);
    }

    /// Values mapped to the symmetric range `(−M/2, M/2]`.
    pub fn symmetric(&self) -> Vec<BigInt> {
        let half = &self.modulus >> 1;
        self.values
            .iter()
            .map(|v| if v > &half { v - &self.modulus } else { v.clone() })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn barrett_matches_remainder() {
        for &p in &[3u64, 1_000_003, 2_147_483_647] {
            let f = Zp::new(p);
            let mut x = 12345u64;
            for _ in 0..10_000 {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let (a, b) = ((x >> 7) % p, (x >> 33) % p);
                assert_eq!(f.mul(a, b), a * b % p);
            }
            assert_eq!(f.mul(p - 1, p - 1), 1);
        }
    }
    use proptest::prelude::*;

    #[test]
    fn primality() {
        let first: Vec<u64> = primes().take(3).collect();
        assert_eq!(first, vec![2147483647, 2147483629, 2147483587]);
        assert!(is_prime(97) && !is_prime(91) && !is_prime(1));
    }

    #[test]
    fn det_small() {
        let f = Zp::new(101);
        let mut m = vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 9]];
        // det = 0·(36−35) − 1·(27−30) + 2·(21−24) = 3 − 6 = −3
        assert_eq!(det_mod(&mut m, f), 98);
    }

    #[test]
    fn crt_recovers_negative_values() {
        let values = [BigInt::from(-123456789012345i64), BigInt::from(42), BigInt::zero()];
        let mut crt = Crt::new(3);
        for p in primes().take(3) {
            let f = Zp::new(p);
            let r: Vec<u64> = values.iter().map(|v| f.from_bigint(v)).collect();
            crt.push(f, &r);
        }
        assert_eq!(crt.symmetric(), values.to_vec());
    }

    proptest! {
        #[test]
        fn interpolation_recovers_coefficients(coeffs in prop::collection::vec(0u64..1000, 1..12)) {
            let f = Zp::new(1_000_003);
            let xs: Vec<u64> = (0..coeffs.len() as u64).collect();
            let ys: Vec<u64> = xs
                .iter()
                .map(|&x| coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c)))
                .collect();
            prop_assert_eq!(interpolate(&xs, &ys, f), coeffs);
        }
    }
}
