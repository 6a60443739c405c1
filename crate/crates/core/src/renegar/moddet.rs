//! Determinant of an R-system matrix by evaluation and interpolation modulo
//! word-size primes.
//!
//! Rows split into "fixed" rows, whose entries are polynomials in the
//! parameters only, and "linear" rows, whose entries are single `u_i`. At a
//! parameter point the fixed block is reduced to echelon form and the
//! determinant factors as `det(C_P)·det(U_Q − U_P·C_P⁻¹·C_Q)`. The result is
//! homogeneous of degree `m` (number of linear rows) in `u`, so it is
//! recovered on the simplex `{a ∈ ℕⁿ : |a| ≤ m}` with `u_{n+1} = 1`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::numkernel::modular::{det_mod, primes, Crt, Zp};
use crate::numkernel::Rational;

/// A polynomial in the parameters: `(exponents, coefficient)` pairs.
pub(crate) type ParamPoly = Vec<(Vec<u32>, Rational)>;

pub(crate) struct StructuredMatrix {
    /// Number of `u` variables (`n + 1`).
    pub n_u: usize,
    pub n_params: usize,
    pub size: usize,
    /// `(row position, [(column, entry)])`.
    pub fixed: Vec<(usize, Vec<(usize, ParamPoly)>)>,
    /// `(row position, [(column, u index)])`.
    pub linear: Vec<(usize, Vec<(usize, usize)>)>,
}

/// Sign of the permutation given as a sequence of distinct integers.
fn permutation_sign(seq: &[usize]) -> i8 {
    let mut seen = vec![false; seq.len()];
    let mut sign = 1i8;
    let pos: HashMap<usize, usize> = {
        let mut sorted: Vec<usize> = seq.to_vec();
        sorted.sort_unstable();
        sorted.into_iter().enumerate().map(|(i, v)| (v, i)).collect()
    };
    for start in 0..seq.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = pos[&seq[i]];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// All `a ∈ ℕ^k` with `|a| ≤ m`, in lex order.
pub(crate) fn simplex(k: usize, m: usize) -> Vec<Vec<u32>> {
    fn go(k: usize, m: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        let used: u32 = prefix.iter().sum();
        for e in 0..=(m as u32 - used) {
            prefix.push(e);
            go(k, m, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(k, m, &mut Vec::new(), &mut out);
    out
}

/// Coefficients of `Π_{b<k} (t − b)` modulo p, ascending.
fn falling_basis(k: usize, f: Zp) -> Vec<u64> {
    let mut c = vec![1u64];
    for b in 0..k as u64 {
        let mut next = vec![0u64; c.len() + 1];
        for (i, &ci) in c.iter().enumerate() {
            next[i + 1] = f.add(next[i + 1], ci);
            next[i] = f.sub(next[i], f.mul(ci, b));
        }
        c = next;
    }
    c
}

/// Interpolates a polynomial of total degree `≤ m` in `k` variables from its
/// values on the simplex `{|a| ≤ m}` (nodes `0, 1, 2, …`).
fn interpolate_simplex(
    f: Zp,
    k: usize,
    m: usize,
    inv: &[u64],
    vals: &dyn Fn(&[u32]) -> u64,
) -> BTreeMap<Vec<u32>, u64> {
    let mut out = BTreeMap::new();
    if k == 0 {
        out.insert(Vec::new(), vals(&[]));
        return out;
    }
    let mut newton: Vec<HashMap<Vec<u32>, u64>> = vec![HashMap::new(); m + 1];
    let mut point = Vec::with_capacity(k);
    for prefix in simplex(k - 1, m) {
        let top = m - prefix.iter().sum::<u32>() as usize;
        point.clear();
        point.extend_from_slice(&prefix);
        point.push(0);
        let mut c: Vec<u64> = (0..=top as u32)
            .map(|b| {
                point[k - 1] = b;
                vals(&point)
            })
            .collect();
        // divided differences on nodes 0..=top: denominators are i − (i − s) = s
        for s in 1..=top {
            for i in (s..=top).rev() {
                c[i] = f.mul(f.sub(c[i], c[i - 1]), inv[s]);
            }
        }
        for (s, v) in c.into_iter().enumerate() {
            newton[s].insert(prefix.clone(), v);
        }
    }
    for (s, table) in newton.iter().enumerate() {
        let sub = interpolate_simplex(f, k - 1, m - s, inv, &|a| table[a]);
        let basis = falling_basis(s, f);
        for (e, c) in sub {
            if c == 0 {
                continue;
            }
            for (t, &b) in basis.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let mut key = e.clone();
                key.push(t as u32);
                let slot = out.entry(key).or_insert(0);
                *slot = f.add(*slot, f.mul(c, b));
            }
        }
    }
    out
}

/// Inverse of the Vandermonde matrix on nodes `0..=b`: column `j` maps values
/// to monomial coefficients.
fn vandermonde_inverse(b: usize, f: Zp) -> Vec<Vec<u64>> {
    let n = b + 1;
    let xs: Vec<u64> = (0..n as u64).collect();
    (0..n)
        .map(|j| {
            let mut ys = vec![0u64; n];
            ys[j] = 1;
            crate::numkernel::modular::interpolate(&xs, &ys, f)
        })
        .collect()
}

struct Prepared {
    /// Fixed rows with integer entries: `(column, [(param exponents, integer)])`.
    fixed: Vec<Vec<(usize, Vec<(Vec<u32>, BigInt)>)>>,
    linear: Vec<Vec<(usize, usize)>>,
    sign: i8,
    scale: BigInt,
    bound: BigInt,
    param_bounds: Vec<usize>,
}

fn prepare(sm: &StructuredMatrix) -> Prepared {
    let mut fixed = Vec::new();
    let mut scale = BigInt::one();
    let mut bound = BigInt::one();
    let mut row_deg = vec![0usize; sm.n_params];
    let mut col_deg = vec![vec![0usize; sm.size]; sm.n_params];
    for (_, entries) in &sm.fixed {
        let lcm = entries
            .iter()
            .flat_map(|(_, p)| p.iter().map(|(_, c)| c.denom().clone()))
            .fold(BigInt::one(), |a, b| a.lcm(&b));
        scale *= &lcm;
        let mut norm2 = BigInt::zero();
        let mut row_max = vec![0usize; sm.n_params];
        let mut ints = Vec::with_capacity(entries.len());
        for (col, poly) in entries {
            let mut terms = Vec::with_capacity(poly.len());
            let mut norm = BigInt::zero();
            for (e, c) in poly {
                let v = (c * Rational::from_integer(lcm.clone())).to_integer();
                norm += v.abs();
                for (k, &ek) in e.iter().enumerate() {
                    row_max[k] = row_max[k].max(ek as usize);
                    col_deg[k][*col] = col_deg[k][*col].max(ek as usize);
                }
                terms.push((e.clone(), v));
            }
            norm2 += &norm * &norm;
            ints.push((*col, terms));
        }
        for k in 0..sm.n_params {
            row_deg[k] += row_max[k];
        }
        bound *= norm2;
        fixed.push(ints);
    }
    // |coefficient| ≤ max of |det| on the unit torus ≤ Π row 2-norms
    bound *= BigInt::from(sm.n_u).pow(sm.linear.len() as u32);
    let bound = bound.sqrt() + 1;
    let param_bounds = (0..sm.n_params)
        .map(|k| {
            let coarse = row_deg[k].min(col_deg[k].iter().sum());
            coarse.min(assignment_degree(sm, k).unwrap_or(0))
        })
        .collect();
    let rows: Vec<usize> = sm.fixed.iter().map(|(r, _)| *r).chain(sm.linear.iter().map(|(r, _)| *r)).collect();
    Prepared {
        fixed,
        linear: sm.linear.iter().map(|(_, e)| e.clone()).collect(),
        sign: permutation_sign(&rows),
        scale,
        bound,
        param_bounds,
    }
}

/// Largest `Σ deg_k M[r, σ(r)]` over permutations `σ` with every entry
/// nonzero, which bounds the degree of the determinant in parameter `k`.
/// `None` when no such permutation exists.
fn assignment_degree(sm: &StructuredMatrix, k: usize) -> Option<usize> {
    let n = sm.size;
    let mut weight: Vec<Vec<Option<i64>>> = vec![vec![None; n]; n];
    for (r, (_, entries)) in sm.fixed.iter().enumerate() {
        for (col, poly) in entries {
            weight[r][*col] = poly.iter().map(|(e, _)| e[k] as i64).max();
        }
    }
    for (r, (_, entries)) in sm.linear.iter().enumerate() {
        for &(col, _) in entries {
            weight[sm.fixed.len() + r][col] = Some(0);
        }
    }
    max_weight_assignment(&weight).map(|w| w as usize)
}

/// Hungarian algorithm on costs `−weight`; missing entries are forbidden.
fn max_weight_assignment(weight: &[Vec<Option<i64>>]) -> Option<i64> {
    let n = weight.len();
    let top = weight.iter().flatten().flatten().copied().max().unwrap_or(0);
    // forbidden cells cost more than any complete assignment of allowed ones
    let forbidden = (top + 1) * (n as i64 + 1);
    let cost = |i: usize, j: usize| weight[i][j].map_or(forbidden, |w| top - w);
    let (mut u, mut v) = (vec![0i64; n + 1], vec![0i64; n + 1]);
    let mut owner = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        owner[0] = i;
        let mut j0 = 0;
        let mut minv = vec![i64::MAX; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = owner[j0];
            let mut delta = i64::MAX;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut total = 0;
    for j in 1..=n {
        total += weight[owner[j] - 1][j - 1]?;
    }
    Some(total)
}

/// Mixed-radix enumeration of the parameter grid `Π [0, b_k]`.
fn grid(bounds: &[usize]) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for &b in bounds {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=b as u64).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

/// Values at one parameter point for every `u` point of the simplex.
fn values_at_param_point(
    prep: &Prepared,
    size: usize,
    n_u: usize,
    point: &[u64],
    upoints: &[Vec<u32>],
    f: Zp,
) -> Vec<u64> {
    let c = prep.fixed.len();
    let m = prep.linear.len();
    let mut a = vec![vec![0u64; size]; c];
    for (r, row) in prep.fixed.iter().enumerate() {
        for (col, terms) in row {
            let mut v = 0u64;
            for (e, coef) in terms {
                let mut t = f.from_bigint(coef);
                for (k, &ek) in e.iter().enumerate() {
                    t = f.mul(t, f.pow(point[k], ek as u64));
                }
                v = f.add(v, t);
            }
            a[r][*col] = v;
        }
    }
    // reduced row echelon form
    let mut det_c = 1u64;
    let mut pivots = Vec::with_capacity(c);
    let mut r = 0;
    for col in 0..size {
        if r == c {
            break;
        }
        let Some(piv) = (r..c).find(|&i| a[i][col] != 0) else {
            continue;
        };
        if piv != r {
            a.swap(piv, r);
            det_c = f.neg(det_c);
        }
        let pv = a[r][col];
        det_c = f.mul(det_c, pv);
        let inv = f.inv(pv);
        for x in a[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[col] == 0 {
                continue;
            }
            let factor = row[col];
            for (x, &p) in row.iter_mut().zip(&pivot_row) {
                if p != 0 {
                    *x = f.sub(*x, f.mul(factor, p));
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if r < c {
        return vec![0; upoints.len()];
    }
    let mut pivot_pos = vec![usize::MAX; size];
    for (k, &col) in pivots.iter().enumerate() {
        pivot_pos[col] = k;
    }
    let free: Vec<usize> = (0..size).filter(|&col| pivot_pos[col] == usize::MAX).collect();
    let mut free_pos = vec![usize::MAX; size];
    for (q, &col) in free.iter().enumerate() {
        free_pos[col] = q;
    }
    let col_order: Vec<usize> = pivots.iter().chain(&free).copied().collect();
    let mut sign = prep.sign * permutation_sign(&col_order);
    if det_c == 0 {
        sign = 0;
    }
    // Schur pieces: S_i[a][q]
    let mut s = vec![vec![vec![0u64; m]; m]; n_u];
    for (row, entries) in prep.linear.iter().enumerate() {
        for &(col, ui) in entries {
            if free_pos[col] != usize::MAX {
                s[ui][row][free_pos[col]] = f.add(s[ui][row][free_pos[col]], 1);
            } else {
                let k = pivot_pos[col];
                for (q, &fc) in free.iter().enumerate() {
                    let v = a[k][fc];
                    if v != 0 {
                        s[ui][row][q] = f.sub(s[ui][row][q], v);
                    }
                }
            }
        }
    }
    let factor = match sign {
        0 => 0,
        1 => det_c,
        _ => f.neg(det_c),
    };
    let mut work = vec![vec![0u64; m]; m];
    upoints
        .iter()
        .map(|u| {
            if factor == 0 {
                return 0;
            }
            for (i, row) in work.iter_mut().enumerate() {
                row.copy_from_slice(&s[n_u - 1][i]);
            }
            for (k, &uk) in u.iter().enumerate() {
                if uk == 0 {
                    continue;
                }
                for (i, row) in work.iter_mut().enumerate() {
                    for (x, &y) in row.iter_mut().zip(&s[k][i]) {
                        if y != 0 {
                            *x = f.add(*x, f.mul(uk as u64, y));
                        }
                    }
                }
            }
            f.mul(factor, det_mod(&mut work, f))
        })
        .collect()
}

/// Residues of all coefficients modulo one prime, indexed by
/// `(u exponent index) × (parameter exponent index)`.
fn residues(prep: &Prepared, sm: &StructuredMatrix, upoints: &[Vec<u32>], pgrid: &[Vec<u64>], f: Zp) -> Vec<u64> {
    let m = prep.linear.len();
    let nu = upoints.len();
    let mut inv = vec![0u64; m + 2];
    for (s, slot) in inv.iter_mut().enumerate().skip(1) {
        *slot = f.inv(s as u64);
    }
    let uindex: HashMap<&[u32], usize> = upoints.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    // per parameter point: coefficients over the u simplex
    let mut table = vec![0u64; pgrid.len() * nu];
    for (pi, point) in pgrid.iter().enumerate() {
        let vals = values_at_param_point(prep, sm.size, sm.n_u, point, upoints, f);
        let coeffs = interpolate_simplex(f, sm.n_u - 1, m, &inv, &|a| vals[uindex[a]]);
        for (e, c) in coeffs {
            table[pi * nu + uindex[e.as_slice()]] = c;
        }
    }
    // tensor interpolation along each parameter axis
    let mut stride = 1;
    for k in (0..sm.n_params).rev() {
        let b = prep.param_bounds[k];
        let vinv = vandermonde_inverse(b, f);
        let len = b + 1;
        let block = stride * len;
        let outer = pgrid.len() / block;
        for o in 0..outer {
            for s in 0..stride {
                let base = o * block + s;
                for ui in 0..nu {
                    let line: Vec<u64> = (0..len).map(|t| table[(base + t * stride) * nu + ui]).collect();
                    for t in 0..len {
                        let mut acc = 0u64;
                        for (j, &y) in line.iter().enumerate() {
                            if y != 0 {
                                acc = f.add(acc, f.mul(vinv[j][t], y));
                            }
                        }
                        table[(base + t * stride) * nu + ui] = acc;
                    }
                }
            }
        }
        stride *= len;
    }
    table
}

/// Coefficients of `det(M)` keyed by `(u exponents over u_1..u_{n+1},
/// parameter exponents)`.
pub(crate) fn modular_det(sm: &StructuredMatrix) -> BTreeMap<(Vec<u32>, Vec<u32>), Rational> {
    let prep = prepare(sm);
    let m = prep.linear.len();
    let upoints = simplex(sm.n_u - 1, m);
    let pgrid = grid(&prep.param_bounds);
    let target = &prep.bound * 2;
    let mut crt = Crt::new(upoints.len() * pgrid.len());
    for p in primes() {
        if crt.modulus() > &target {
            break;
        }
        let f = Zp::new(p);
        crt.push(f, &residues(&prep, sm, &upoints, &pgrid, f));
    }
    let values = crt.symmetric();
    let nu = upoints.len();
    let mut out = BTreeMap::new();
    for (idx, v) in values.into_iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let (pi, ui) = (idx / nu, idx % nu);
        let mut uexp = upoints[ui].clone();
        let used: u32 = uexp.iter().sum();
        uexp.push(m as u32 - used);
        let pexp: Vec<u32> = pgrid[pi].iter().map(|&x| x as u32).collect();
        out.insert((uexp, pexp), Rational::new(v, prep.scale.clone()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_signs() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[2, 0, 1]), 1);
        assert_eq!(permutation_sign(&[5, 9, 7]), -1);
    }

    #[test]
    fn simplex_sizes() {
        assert_eq!(simplex(2, 3).len(), 10);
        assert_eq!(simplex(0, 4), vec![Vec::<u32>::new()]);
        assert_eq!(simplex(1, 2), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn simplex_interpolation_round_trip() {
        let f = Zp::new(1_000_003);
        // 3 + 2a - ab + 5b^2 + a^3, total degree 3
        let poly = |a: u64, b: u64| {
            let v = 3 + 2 * a + 5 * b * b + a * a * a;
            f.sub(v % 1_000_003, a * b % 1_000_003)
        };
        let inv: Vec<u64> = (0..5).map(|s| if s == 0 { 0 } else { f.inv(s) }).collect();
        let got = interpolate_simplex(f, 2, 3, &inv, &|p| poly(p[0] as u64, p[1] as u64));
        let nonzero: BTreeMap<Vec<u32>, u64> = got.into_iter().filter(|(_, c)| *c != 0).collect();
        let mut expected = BTreeMap::new();
        expected.insert(vec![0, 0], 3);
        expected.insert(vec![1, 0], 2);
        expected.insert(vec![1, 1], f.neg(1));
        expected.insert(vec![0, 2], 5);
        expected.insert(vec![3, 0], 1);
        assert_eq!(nonzero, expected);
    }

    fn brute_assignment(w: &[Vec<Option<i64>>]) -> Option<i64> {
        fn go(w: &[Vec<Option<i64>>], r: usize, used: &mut Vec<bool>) -> Option<i64> {
            if r == w.len() {
                return Some(0);
            }
            let mut best = None;
            for c in 0..w.len() {
                if used[c] {
                    continue;
                }
                if let Some(x) = w[r][c] {
                    used[c] = true;
                    if let Some(rest) = go(w, r + 1, used) {
                        best = best.max(Some(x + rest));
                    }
                    used[c] = false;
                }
            }
            best
        }
        go(w, 0, &mut vec![false; w.len()])
    }

    #[test]
    fn assignment_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..300 {
            let n = rng.gen_range(1..=6);
            let w: Vec<Vec<Option<i64>>> = (0..n)
                .map(|_| (0..n).map(|_| rng.gen_bool(0.7).then(|| rng.gen_range(0..5))).collect())
                .collect();
            assert_eq!(max_weight_assignment(&w), brute_assignment(&w), "{w:?}");
        }
    }
}
