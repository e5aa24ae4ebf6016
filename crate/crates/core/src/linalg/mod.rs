//! Exact linear algebra over number fields.
//!
//! Ranks are certified from two sides: a modular elimination gives a lower
//! bound (a minor that is nonzero mod p is nonzero), and exactly verified
//! kernel vectors give the matching upper bound. Dense exact elimination is
//! kept for small matrices.

pub mod certify;
pub mod modp;

pub use certify::{certified_kernel, ExactKernel};
pub use modp::{ModMatrix, RowBasis, SplitPrime, SplitPrimes};

use crate::numberfield::{FieldElement, FieldRef};

/// Column-oriented sparse matrix over a number field.
///
/// Entries reference a table of distinct values so that reductions modulo a
/// prime touch every value once.
#[derive(Clone, Debug)]
pub struct SparseMatrix {
    field: FieldRef,
    nrows: usize,
    values: Vec<FieldElement>,
    cols: Vec<Vec<(u32, u32)>>,
}

impl SparseMatrix {
    pub fn new(field: &FieldRef, nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            field: field.clone(),
            nrows,
            values: Vec::new(),
            cols: vec![Vec::new(); ncols],
        }
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    /// Adds a value to the table and returns its index.
    pub fn push_value(&mut self, v: FieldElement) -> usize {
        self.values.push(v);
        self.values.len() - 1
    }

    pub fn values(&self) -> &[FieldElement] {
        &self.values
    }

    /// Sets column `j` from `(row, value-table index)` pairs.
    pub fn set_column_indexed(&mut self, j: usize, entries: Vec<(usize, usize)>) {
        let mut col: Vec<(u32, u32)> = entries
            .into_iter()
            .filter(|&(_, v)| !self.values[v].is_zero())
            .map(|(r, v)| {
                assert!(r < self.nrows, "row index out of range");
                (r as u32, v as u32)
            })
            .collect();
        col.sort_unstable();
        self.cols[j] = col;
    }

    /// Sets column `j`; repeated rows are accumulated.
    pub fn set_column(&mut self, j: usize, entries: Vec<(usize, FieldElement)>) {
        let mut acc: std::collections::BTreeMap<usize, FieldElement> = Default::default();
        for (r, v) in entries {
            let slot = acc.entry(r).or_insert_with(|| FieldElement::zero(&self.field));
            *slot = &*slot + &v;
        }
        let idx: Vec<(usize, usize)> = acc
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(r, v)| (r, self.push_value(v)))
            .collect();
        self.set_column_indexed(j, idx);
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = (usize, &FieldElement)> {
        self.cols[j]
            .iter()
            .map(|&(r, v)| (r as usize, &self.values[v as usize]))
    }

    /// Dense row-major copy.
    pub fn to_dense(&self) -> Vec<Vec<FieldElement>> {
        let zero = FieldElement::zero(&self.field);
        let mut rows = vec![vec![zero; self.ncols()]; self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for &(r, v) in col {
                rows[r as usize][j] = self.values[v as usize].clone();
            }
        }
        rows
    }

    /// Image under `alpha -> root` modulo `p`, or `None` if a value does not
    /// reduce (a denominator divisible by `p`).
    pub fn reduce(&self, p: u64, root: u64) -> Option<ModMatrix> {
        let vals: Option<Vec<u64>> = self
            .values
            .iter()
            .map(|v| modp::reduce_element(v, root, p))
            .collect();
        let vals = vals?;
        let mut m = ModMatrix::zeros(p, self.nrows, self.ncols());
        for (j, col) in self.cols.iter().enumerate() {
            for &(r, v) in col {
                m.add_to(r as usize, j, vals[v as usize]);
            }
        }
        Some(m)
    }

    /// Exact matrix-vector product.
    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.ncols());
        let mut out = vec![FieldElement::zero(&self.field); self.nrows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, a) in self.column(j) {
                out[r] = &out[r] + &(a * x);
            }
        }
        out
    }

    /// Rank by dense exact elimination. Intended for small matrices.
    pub fn exact_rank(&self) -> usize {
        dense_rank(self.to_dense())
    }

    /// Kernel basis by dense exact elimination, one vector per free column
    /// (entry 1 there, 0 at the other free columns).
    pub fn exact_kernel(&self) -> Vec<Vec<FieldElement>> {
        let (rref, pivots) = dense_rref(self.to_dense());
        kernel_from_rref(&self.field, &rref, &pivots, self.ncols())
    }
}

/// Reduced row echelon form over the field; returns rows and pivot columns.
pub fn dense_rref(mut rows: Vec<Vec<FieldElement>>) -> (Vec<Vec<FieldElement>>, Vec<usize>) {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = rows[rank][col].inv().expect("nonzero pivot");
        let pivot_row: Vec<FieldElement> = rows[rank].iter().map(|x| x * &inv).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for c in col..ncols {
                if !pivot_row[c].is_zero() {
                    row[c] = &row[c] - &(&f * &pivot_row[c]);
                }
            }
        }
        rows[rank] = pivot_row;
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    (rows, pivots)
}

pub fn dense_rank(rows: Vec<Vec<FieldElement>>) -> usize {
    dense_rref(rows).1.len()
}

pub(crate) fn kernel_from_rref(
    field: &FieldRef,
    rref: &[Vec<FieldElement>],
    pivots: &[usize],
    ncols: usize,
) -> Vec<Vec<FieldElement>> {
    let mut is_pivot = vec![false; ncols];
    pivots.iter().for_each(|&c| is_pivot[c] = true);
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![FieldElement::zero(field); ncols];
            v[free] = FieldElement::one(field);
            for (row, &pc) in rref.iter().zip(pivots) {
                v[pc] = -&row[free];
            }
            v
        })
        .collect()
}

/// Incremental exact row space, for independence tests on short vectors.
pub struct ExactRowBasis {
    rows: Vec<(usize, Vec<FieldElement>)>,
}

impl Default for ExactRowBasis {
    fn default() -> Self {
        Self::new()
    }
}

impl ExactRowBasis {
    pub fn new() -> Self {
        ExactRowBasis { rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Keeps `v` and returns true when it is independent of the rows so far.
    pub fn insert(&mut self, mut v: Vec<FieldElement>) -> bool {
        for (piv, row) in &self.rows {
            if v[*piv].is_zero() {
                continue;
            }
            let f = v[*piv].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(piv) => {
                let inv = v[piv].inv().expect("nonzero pivot");
                let v: Vec<FieldElement> = v.iter().map(|x| x * &inv).collect();
                self.rows.push((piv, v));
                true
            }
        }
    }
}
