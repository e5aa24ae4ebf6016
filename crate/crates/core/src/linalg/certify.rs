//! Exact kernels by multimodular elimination, rational reconstruction and
//! exact verification.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modp::{inv_mod, mul_mod, reduce_bigint, ModMatrix, SplitPrimes};
use super::SparseMatrix;
use crate::error::{Error, Result};
use crate::numberfield::{FieldElement, Rational};

/// Hard cap on primes spent reconstructing one kernel.
const MAX_PRIMES: usize = 4096;

/// Kernel of a matrix in reduced form: vector `j` has entry 1 at `free[j]`,
/// 0 at the other free columns. Every vector has been checked exactly.
#[derive(Clone, Debug)]
pub struct ExactKernel {
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub free: Vec<usize>,
    pub basis: Vec<Vec<FieldElement>>,
}

/// Candidate data from one prime: values of the pivot entries of every
/// kernel vector, per power-basis coordinate.
struct PrimeImage {
    p: u64,
    /// indexed `[vector][pivot][coordinate]`, flattened
    values: Vec<u64>,
}

fn vandermonde_inverse(roots: &[u64], p: u64) -> Vec<Vec<u64>> {
    let n = roots.len();
    // augmented [V | I], V[k][l] = root_k^l
    let mut a: Vec<Vec<u64>> = roots
        .iter()
        .enumerate()
        .map(|(k, &r)| {
            let mut row = vec![0u64; 2 * n];
            let mut pw = 1 % p;
            for l in 0..n {
                row[l] = pw;
                pw = mul_mod(pw, r, p);
            }
            row[n + k] = 1;
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != 0).expect("distinct roots");
        a.swap(col, piv);
        let inv = inv_mod(a[col][col], p);
        for x in a[col].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let prow = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && row[col] != 0 {
                let f = p - row[col];
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x = (*x + mul_mod(f, *y, p)) % p;
                }
            }
        }
    }
    a.into_iter().map(|row| row[n..].to_vec()).collect()
}

/// Rational number with `|a|, b <= sqrt(m/2)` congruent to `u` mod `m`.
pub fn rational_reconstruction(u: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound || !s1.gcd(m).is_one() {
        return None;
    }
    Some(Rational::new(r1, s1))
}

/// Computes the kernel of `m` exactly.
///
/// Each split prime yields the reduced row echelon form at every root of the
/// minimal polynomial; images with the best pivot structure are combined by
/// CRT, reconstructed as rationals, and the resulting vectors are verified by
/// exact multiplication. Unlucky primes only cost time.
pub fn certified_kernel(m: &SparseMatrix) -> Result<ExactKernel> {
    let field = m.field().clone();
    let n = field.degree();
    let ncols = m.ncols();
    if ncols == 0 {
        return Ok(ExactKernel {
            rank: 0,
            pivots: vec![],
            free: vec![],
            basis: vec![],
        });
    }
    let mut best: Option<Vec<usize>> = None;
    let mut images: Vec<PrimeImage> = Vec::new();
    let mut next_attempt = 1usize;
    for (used, sp) in SplitPrimes::new(&field).enumerate() {
        if used >= MAX_PRIMES {
            break;
        }
        let p = sp.p;
        let reduced: Option<Vec<ModMatrix>> = sp.roots.iter().map(|&r| m.reduce(p, r)).collect();
        let Some(mut reduced) = reduced else { continue };
        let pivot_sets: Vec<Vec<usize>> = reduced.iter_mut().map(ModMatrix::rref).collect();
        if pivot_sets.iter().any(|s| *s != pivot_sets[0]) {
            continue;
        }
        let pivots = pivot_sets[0].clone();
        match &best {
            Some(b) if better(b, &pivots) => {
                continue;
            }
            Some(b) if *b == pivots => {}
            _ => {
                best = Some(pivots.clone());
                images.clear();
                next_attempt = 1;
            }
        }
        let free = free_columns(&pivots, ncols);
        if free.is_empty() {
            // full column rank mod p certifies full rank
            return Ok(ExactKernel {
                rank: ncols,
                pivots,
                free,
                basis: vec![],
            });
        }
        let vinv = vandermonde_inverse(&sp.roots, p);
        let r = pivots.len();
        let mut values = vec![0u64; free.len() * r * n];
        for (j, &fc) in free.iter().enumerate() {
            for i in 0..r {
                // kernel entry at pivot i is -R[i][fc], per root
                let at_roots: Vec<u64> = reduced.iter().map(|mm| (p - mm.get(i, fc)) % p).collect();
                for l in 0..n {
                    let mut acc = 0u64;
                    for (k, v) in at_roots.iter().enumerate() {
                        acc = (acc + mul_mod(vinv[l][k], *v, p)) % p;
                    }
                    values[(j * r + i) * n + l] = acc;
                }
            }
        }
        images.push(PrimeImage { p, values });
        if images.len() >= next_attempt {
            next_attempt = next_attempt + next_attempt / 2 + 1;
            if let Some(kernel) = try_reconstruct(m, &pivots, &free, &images) {
                return Ok(kernel);
            }
        }
    }
    Err(Error::Certification(format!(
        "kernel of a {}x{} matrix not reconstructed within {MAX_PRIMES} primes",
        m.nrows(),
        ncols
    )))
}

/// True when pivot set `a` shows strictly more structure than `b`: higher
/// rank, or equal rank with lexicographically earlier pivots.
fn better(a: &[usize], b: &[usize]) -> bool {
    a.len() > b.len() || (a.len() == b.len() && a < b)
}

fn free_columns(pivots: &[usize], ncols: usize) -> Vec<usize> {
    let mut is_pivot = vec![false; ncols];
    pivots.iter().for_each(|&c| is_pivot[c] = true);
    (0..ncols).filter(|&c| !is_pivot[c]).collect()
}

fn try_reconstruct(m: &SparseMatrix, pivots: &[usize], free: &[usize], images: &[PrimeImage]) -> Option<ExactKernel> {
    let field = m.field();
    let n = field.degree();
    let r = pivots.len();
    let count = images[0].values.len();
    let mut modulus = BigInt::one();
    let mut residues = vec![BigInt::zero(); count];
    for img in images {
        let p = img.p;
        let pb = BigInt::from(p);
        let m_mod_p = reduce_bigint(&modulus, p);
        let inv = inv_mod(m_mod_p, p);
        for (x, &v) in residues.iter_mut().zip(&img.values) {
            let cur = reduce_bigint(x, p);
            let delta = mul_mod((v + p - cur) % p, inv, p);
            if delta != 0 {
                *x += &modulus * BigInt::from(delta);
            }
        }
        modulus *= pb;
    }
    let mut basis = Vec::with_capacity(free.len());
    for (j, &fc) in free.iter().enumerate() {
        let mut v = vec![FieldElement::zero(field); m.ncols()];
        v[fc] = FieldElement::one(field);
        for (i, &pc) in pivots.iter().enumerate() {
            let offset = (j * r + i) * n;
            let coeffs: Option<Vec<Rational>> = residues[offset..offset + n]
                .iter()
                .map(|u| rational_reconstruction(u, &modulus))
                .collect();
            v[pc] = FieldElement::from_coeffs(field, coeffs?);
        }
        if !m.mul_vec(&v).iter().all(FieldElement::is_zero) {
            return None;
        }
        basis.push(v);
    }
    Some(ExactKernel {
        rank: r,
        pivots: pivots.to_vec(),
        free: free.to_vec(),
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::{rat, NumberField};

    #[test]
    fn reconstruction_roundtrip() {
        let m = BigInt::from(2_147_483_647i64) * BigInt::from(2_147_483_629i64);
        for (a, b) in [(3i64, 7i64), (-22, 5), (0, 1), (123_456, 1)] {
            let q = rat(a, b);
            let ext = BigInt::from(b).extended_gcd(&m);
            let u = (BigInt::from(a) * ext.x).mod_floor(&m);
            assert_eq!(rational_reconstruction(&u, &m), Some(q));
        }
    }

    #[test]
    fn matches_dense_kernel() {
        let k = NumberField::from_ints("e", &[2, 1, 1], 0).unwrap();
        let e = FieldElement::generator(&k);
        let c = |v: i64| FieldElement::from_int(&k, v);
        let mut m = SparseMatrix::new(&k, 3, 5);
        m.set_column(0, vec![(0, c(1)), (1, e.clone())]);
        m.set_column(1, vec![(0, e.clone()), (1, &e * &e), (2, c(3))]);
        m.set_column(2, vec![(0, &c(2) * &e), (1, &c(2) * &(&e * &e))]);
        m.set_column(3, vec![(2, c(7))]);
        m.set_column(4, vec![(0, c(5)), (2, e.inv().unwrap())]);
        let cert = certified_kernel(&m).unwrap();
        let dense = m.exact_kernel();
        assert_eq!(cert.basis.len(), dense.len());
        assert_eq!(cert.basis, dense);
        assert_eq!(cert.rank, m.exact_rank());
    }
}
