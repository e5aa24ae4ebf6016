//! Arithmetic modulo word-sized primes: prime search, roots of minimal
//! polynomials, reduction of field elements, dense elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::numberfield::{FieldElement, NumberField, Rational};

/// Upper end of the prime search; keeps products of residues below 2^62.
pub const PRIME_CEILING: u64 = 1 << 31;

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin, valid for all `n < 2^32`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 7, 61] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits")
}

/// `q mod p`, or `None` when `p` divides the denominator.
pub fn reduce_rational(q: &Rational, p: u64) -> Option<u64> {
    let den = reduce_bigint(q.denom(), p);
    if den == 0 {
        return None;
    }
    Some(mul_mod(reduce_bigint(q.numer(), p), inv_mod(den, p), p))
}

/// Image of a field element under `alpha -> root`.
pub fn reduce_element(x: &FieldElement, root: u64, p: u64) -> Option<u64> {
    let mut acc = 0u64;
    for c in x.coeffs().iter().rev() {
        acc = (mul_mod(acc, root, p) + reduce_rational(c, p)?) % p;
    }
    Some(acc)
}

// --- polynomials over F_p, constant term first -----------------------------

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    while r.len() > db {
        let lead = *r.last().unwrap();
        if lead != 0 {
            let f = mul_mod(lead, inv, p);
            let off = r.len() - 1 - db;
            for (j, &c) in b.iter().enumerate() {
                r[off + j] = (r[off + j] + p - mul_mod(f, c, p)) % p;
            }
        }
        r.pop();
    }
    trim(r)
}

fn poly_mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    poly_rem(&trim(out), m, p)
}

fn poly_pow_mod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul_mod(&acc, &b, m, p);
        }
        b = poly_mul_mod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&lead) = a.last() {
        let inv = inv_mod(lead, p);
        a.iter_mut().for_each(|c| *c = mul_mod(*c, inv, p));
    }
    a
}

fn sub_x(a: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    if a.len() < 2 {
        a.resize(2, 0);
    }
    a[1] = (a[1] + p - 1) % p;
    trim(a)
}

/// Splits a monic polynomial known to be a product of distinct linear factors.
fn split_linear(f: &[u64], p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<u64>) {
    let deg = f.len() - 1;
    if deg == 0 {
        return;
    }
    if deg == 1 {
        // x + c (monic)
        out.push((p - f[0]) % p);
        return;
    }
    loop {
        let a = rng.gen_range(0..p);
        let g = poly_pow_mod(&[a, 1], (p - 1) / 2, f, p);
        let mut g = g;
        if g.is_empty() {
            continue;
        }
        g[0] = (g[0] + p - 1) % p;
        let h = poly_gcd(f, &trim(g), p);
        let dh = h.len().saturating_sub(1);
        if dh > 0 && dh < deg {
            let q = poly_div_exact(f, &h, p);
            split_linear(&h, p, rng, out);
            split_linear(&q, p, rng, out);
            return;
        }
    }
}

fn poly_div_exact(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    let mut q = vec![0u64; a.len() - db];
    for k in (0..q.len()).rev() {
        let lead = r[k + db];
        let f = mul_mod(lead, inv, p);
        q[k] = f;
        for (j, &c) in b.iter().enumerate() {
            r[k + j] = (r[k + j] + p - mul_mod(f, c, p)) % p;
        }
    }
    q
}

/// Distinct roots in `F_p` of the reduction of a monic polynomial.
pub fn roots_mod_p(monic: &[u64], p: u64) -> Vec<u64> {
    let f = trim(monic.to_vec());
    if f.len() <= 1 {
        return vec![];
    }
    // gcd(x^p - x, f) collects the distinct linear factors
    let xp = poly_pow_mod(&[0, 1], p, &f, p);
    let g = poly_gcd(&f, &sub_x(&xp, p), p);
    let mut rng = ChaCha8Rng::seed_from_u64(p);
    let mut out = Vec::new();
    split_linear(&g, p, &mut rng, &mut out);
    out.sort_unstable();
    out
}

/// A prime at which the minimal polynomial splits into distinct linear factors.
#[derive(Clone, Debug)]
pub struct SplitPrime {
    pub p: u64,
    pub roots: Vec<u64>,
}

/// Descending stream of split primes for a field, starting below [`PRIME_CEILING`].
pub struct SplitPrimes<'a> {
    field: &'a NumberField,
    next: u64,
}

impl<'a> SplitPrimes<'a> {
    pub fn new(field: &'a NumberField) -> Self {
        SplitPrimes {
            field,
            next: PRIME_CEILING - 1,
        }
    }

    /// Starts the search below `start`, so independent users draw different primes.
    pub fn starting_below(field: &'a NumberField, start: u64) -> Self {
        SplitPrimes {
            field,
            next: start.saturating_sub(1),
        }
    }
}

impl Iterator for SplitPrimes<'_> {
    type Item = SplitPrime;

    fn next(&mut self) -> Option<SplitPrime> {
        let n = self.field.degree();
        while self.next > 1000 {
            let p = self.next;
            self.next -= 1;
            if !is_prime(p) {
                continue;
            }
            let coeffs: Option<Vec<u64>> = self
                .field
                .min_poly()
                .iter()
                .map(|c| reduce_rational(c, p))
                .collect();
            let Some(coeffs) = coeffs else { continue };
            let roots = roots_mod_p(&coeffs, p);
            if roots.len() == n {
                return Some(SplitPrime { p, roots });
            }
        }
        None
    }
}

/// Dense matrix over `F_p`, row-major.
#[derive(Clone, Debug)]
pub struct ModMatrix {
    pub p: u64,
    pub nrows: usize,
    pub ncols: usize,
    pub data: Vec<u64>,
}

impl ModMatrix {
    pub fn zeros(p: u64, nrows: usize, ncols: usize) -> Self {
        ModMatrix {
            p,
            nrows,
            ncols,
            data: vec![0; nrows * ncols],
        }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.ncols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.ncols + c] = v;
    }

    #[inline]
    pub fn add_to(&mut self, r: usize, c: usize, v: u64) {
        let i = r * self.ncols + c;
        self.data[i] = (self.data[i] + v) % self.p;
    }

    pub fn transpose(&self) -> ModMatrix {
        let mut t = ModMatrix::zeros(self.p, self.ncols, self.nrows);
        for r in 0..self.nrows {
            for c in 0..self.ncols {
                t.data[c * self.nrows + r] = self.data[r * self.ncols + c];
            }
        }
        t
    }

    /// Rank by forward elimination (consumes a copy).
    pub fn rank(&self) -> usize {
        // eliminating along the shorter side keeps rows short
        if self.ncols > self.nrows {
            return self.transpose().rank_in_place();
        }
        self.clone().rank_in_place()
    }

    fn rank_in_place(mut self) -> usize {
        let (p, nc) = (self.p, self.ncols);
        let mut rank = 0;
        for col in 0..nc {
            if rank == self.nrows {
                break;
            }
            let Some(piv) = (rank..self.nrows).find(|&r| self.data[r * nc + col] != 0) else {
                continue;
            };
            if piv != rank {
                for c in col..nc {
                    self.data.swap(piv * nc + c, rank * nc + c);
                }
            }
            let inv = inv_mod(self.data[rank * nc + col], p);
            for c in col..nc {
                let i = rank * nc + c;
                self.data[i] = mul_mod(self.data[i], inv, p);
            }
            let (head, tail) = self.data.split_at_mut((rank + 1) * nc);
            let pivot_row = &head[rank * nc..];
            tail.chunks_mut(nc).for_each(|row| {
                let f = row[col];
                if f != 0 {
                    let nf = p - f;
                    for c in col..nc {
                        row[c] = (row[c] + nf * pivot_row[c]) % p;
                    }
                }
            });
            rank += 1;
        }
        rank
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let (p, nc) = (self.p, self.ncols);
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..nc {
            if rank == self.nrows {
                break;
            }
            let Some(piv) = (rank..self.nrows).find(|&r| self.data[r * nc + col] != 0) else {
                continue;
            };
            if piv != rank {
                for c in 0..nc {
                    self.data.swap(piv * nc + c, rank * nc + c);
                }
            }
            let inv = inv_mod(self.data[rank * nc + col], p);
            for c in col..nc {
                let i = rank * nc + c;
                self.data[i] = mul_mod(self.data[i], inv, p);
            }
            let pivot_row: Vec<u64> = self.data[rank * nc..(rank + 1) * nc].to_vec();
            for r in 0..self.nrows {
                if r == rank {
                    continue;
                }
                let f = self.data[r * nc + col];
                if f != 0 {
                    let nf = p - f;
                    let row = &mut self.data[r * nc..(r + 1) * nc];
                    for c in col..nc {
                        row[c] = (row[c] + nf * pivot_row[c]) % p;
                    }
                }
            }
            pivots.push(col);
            rank += 1;
        }
        pivots
    }
}

/// Incremental row space over `F_p` for greedy independence tests.
pub struct RowBasis {
    p: u64,
    rows: Vec<(usize, Vec<u64>)>,
}

impl RowBasis {
    pub fn new(p: u64) -> Self {
        RowBasis { p, rows: vec![] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; keeps it and returns true when independent.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        let p = self.p;
        for (piv, row) in &self.rows {
            let f = v[*piv];
            if f != 0 {
                let nf = p - f;
                for (x, y) in v.iter_mut().zip(row) {
                    *x = (*x + nf * y) % p;
                }
            }
        }
        match v.iter().position(|&x| x != 0) {
            None => false,
            Some(piv) => {
                let inv = inv_mod(v[piv], p);
                v.iter_mut().for_each(|x| *x = mul_mod(*x, inv, p));
                // keep earlier rows reduced at the new pivot
                for (_, row) in self.rows.iter_mut() {
                    let f = row[piv];
                    if f != 0 {
                        let nf = p - f;
                        for (x, y) in row.iter_mut().zip(&v) {
                            *x = (*x + nf * y) % p;
                        }
                    }
                }
                self.rows.push((piv, v));
                true
            }
        }
    }
}

pub fn bigint_is_zero_mod(n: &BigInt, p: u64) -> bool {
    n.is_zero() || reduce_bigint(n, p) == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..50).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]);
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(2_147_483_649));
    }

    #[test]
    fn roots_of_x4_plus_1() {
        // 17 = 1 mod 8, so x^4 + 1 splits
        let r = roots_mod_p(&[1, 0, 0, 0, 1], 17);
        assert_eq!(r.len(), 4);
        for x in r {
            assert_eq!((pow_mod(x, 4, 17) + 1) % 17, 0);
        }
        // 7 = 7 mod 8: x^4 + 1 has no roots mod 7
        assert!(roots_mod_p(&[1, 0, 0, 0, 1], 7).is_empty());
    }

    #[test]
    fn split_primes_of_klein_field() {
        let f = NumberField::from_ints("e", &[2, 1, 1], 0).unwrap();
        let sp: Vec<SplitPrime> = SplitPrimes::new(&f).take(3).collect();
        for s in sp {
            for r in &s.roots {
                assert_eq!((mul_mod(*r, *r, s.p) + r + 2) % s.p, 0);
            }
        }
    }

    #[test]
    fn modular_rank_and_rref() {
        let p = 101;
        let mut m = ModMatrix::zeros(p, 3, 3);
        let vals = [[1, 2, 3], [2, 4, 6], [1, 0, 1]];
        for (r, row) in vals.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, *v);
            }
        }
        assert_eq!(m.rank(), 2);
        assert_eq!(m.transpose().rank(), 2);
        let pivots = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        let mut basis = RowBasis::new(p);
        assert!(basis.insert(vec![1, 2, 3]));
        assert!(!basis.insert(vec![2, 4, 6]));
        assert!(basis.insert(vec![1, 0, 1]));
        assert_eq!(basis.rank(), 2);
    }
}
