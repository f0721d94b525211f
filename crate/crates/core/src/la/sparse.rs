use crate::error::{dim_err, Error, Result};

use super::DenseMatrix;

/// Compressed sparse row matrix with sorted, duplicate-free column indices.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    n_rows: usize,
    n_cols: usize,
    row_offsets: Vec<usize>,
    col_indices: Vec<usize>,
    values: Vec<f64>,
}

impl CsrMatrix {
    /// Validates the CSR triple.
    pub fn new(
        n_rows: usize,
        n_cols: usize,
        row_offsets: Vec<usize>,
        col_indices: Vec<usize>,
        values: Vec<f64>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidCsr(msg));
        if row_offsets.len() != n_rows + 1 {
            return bad(format!(
                "row_offsets has length {}, expected {}",
                row_offsets.len(),
                n_rows + 1
            ));
        }
        if row_offsets[0] != 0 {
            return bad("row_offsets[0] != 0".into());
        }
        if col_indices.len() != values.len() || row_offsets[n_rows] != values.len() {
            return bad(format!(
                "row_offsets[n_rows]={}, {} column indices, {} values",
                row_offsets[n_rows],
                col_indices.len(),
                values.len()
            ));
        }
        for i in 0..n_rows {
            let (lo, hi) = (row_offsets[i], row_offsets[i + 1]);
            if hi < lo {
                return bad(format!("row_offsets decreases at row {i}"));
            }
            let cols = &col_indices[lo..hi];
            if cols.windows(2).any(|w| w[0] >= w[1]) {
                return bad(format!("column indices of row {i} not strictly increasing"));
            }
            if cols.last().is_some_and(|&c| c >= n_cols) {
                return bad(format!("column index out of range in row {i}"));
            }
        }
        if values.iter().any(|v| !v.is_finite()) {
            return bad("non-finite value".into());
        }
        Ok(Self {
            n_rows,
            n_cols,
            row_offsets,
            col_indices,
            values,
        })
    }

    /// Assembles from `(row, col, value)` triplets, summing duplicates.
    /// Explicit zeros are kept so the sparsity pattern is what the caller
    /// asked for.
    pub fn from_triplets(
        n_rows: usize,
        n_cols: usize,
        triplets: &[(usize, usize, f64)],
    ) -> Result<Self> {
        let mut per_row: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n_rows];
        for &(i, j, v) in triplets {
            if i >= n_rows || j >= n_cols {
                return Err(Error::InvalidCsr(format!(
                    "triplet ({i}, {j}) outside {n_rows}x{n_cols}"
                )));
            }
            per_row[i].push((j, v));
        }
        let mut row_offsets = Vec::with_capacity(n_rows + 1);
        let mut col_indices = Vec::with_capacity(triplets.len());
        let mut values = Vec::with_capacity(triplets.len());
        row_offsets.push(0);
        for mut row in per_row {
            row.sort_by_key(|&(j, _)| j);
            for (j, v) in row {
                if col_indices.len() > *row_offsets.last().unwrap()
                    && *col_indices.last().unwrap() == j
                {
                    *values.last_mut().unwrap() += v;
                } else {
                    col_indices.push(j);
                    values.push(v);
                }
            }
            row_offsets.push(values.len());
        }
        Self::new(n_rows, n_cols, row_offsets, col_indices, values)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            n_rows: n,
            n_cols: n,
            row_offsets: (0..=n).collect(),
            col_indices: (0..n).collect(),
            values: vec![1.0; n],
        }
    }

    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Self {
            n_rows,
            n_cols,
            row_offsets: vec![0; n_rows + 1],
            col_indices: Vec::new(),
            values: Vec::new(),
        }
    }

    /// Keeps entries with `|a_ij| > drop_tol`.
    pub fn from_dense(a: &DenseMatrix, drop_tol: f64) -> Self {
        let mut row_offsets = vec![0];
        let mut col_indices = Vec::new();
        let mut values = Vec::new();
        for i in 0..a.n_rows() {
            for j in 0..a.n_cols() {
                if a[(i, j)].abs() > drop_tol {
                    col_indices.push(j);
                    values.push(a[(i, j)]);
                }
            }
            row_offsets.push(values.len());
        }
        Self {
            n_rows: a.n_rows(),
            n_cols: a.n_cols(),
            row_offsets,
            col_indices,
            values,
        }
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row_offsets(&self) -> &[usize] {
        &self.row_offsets
    }

    pub fn col_indices(&self) -> &[usize] {
        &self.col_indices
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Column indices and values of row `i`.
    pub fn row(&self, i: usize) -> (&[usize], &[f64]) {
        let (lo, hi) = (self.row_offsets[i], self.row_offsets[i + 1]);
        (&self.col_indices[lo..hi], &self.values[lo..hi])
    }

    /// Entry `(i, j)`, zero outside the pattern.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (cols, vals) = self.row(i);
        cols.binary_search(&j).map_or(0.0, |k| vals[k])
    }

    pub fn spmv(&self, v: &[f64]) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.n_rows];
        self.spmv_into(v, &mut out)?;
        Ok(out)
    }

    /// `out = A v`
    pub fn spmv_into(&self, v: &[f64], out: &mut [f64]) -> Result<()> {
        if v.len() != self.n_cols || out.len() != self.n_rows {
            return dim_err(format!(
                "spmv: {}x{} matrix, input length {}, output length {}",
                self.n_rows,
                self.n_cols,
                v.len(),
                out.len()
            ));
        }
        for (i, o) in out.iter_mut().enumerate() {
            let (cols, vals) = self.row(i);
            *o = cols.iter().zip(vals).map(|(&j, &a)| a * v[j]).sum();
        }
        Ok(())
    }

    /// `b - A x`
    pub fn residual(&self, x: &[f64], b: &[f64]) -> Result<Vec<f64>> {
        if b.len() != self.n_rows {
            return dim_err("residual: rhs length does not match rows");
        }
        let mut r = self.spmv(x)?;
        for (ri, bi) in r.iter_mut().zip(b) {
            *ri = bi - *ri;
        }
        Ok(r)
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.n_rows, self.n_cols);
        for i in 0..self.n_rows {
            let (cols, vals) = self.row(i);
            for (&j, &a) in cols.iter().zip(vals) {
                d[(i, j)] = a;
            }
        }
        d
    }

    pub fn frobenius_norm(&self) -> f64 {
        super::norm2(&self.values)
    }

    /// Largest absolute row sum; an upper bound on the 2-norm is
    /// `sqrt(norm_1 * norm_inf)`.
    pub fn norm_inf(&self) -> f64 {
        (0..self.n_rows)
            .map(|i| self.row(i).1.iter().map(|a| a.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn norm_1(&self) -> f64 {
        let mut sums = vec![0.0; self.n_cols];
        for (&j, a) in self.col_indices.iter().zip(&self.values) {
            sums[j] += a.abs();
        }
        sums.into_iter().fold(0.0, f64::max)
    }

    /// Entrywise difference on matrices that share a sparsity pattern.
    pub fn pattern_difference_norm(&self, other: &CsrMatrix) -> Result<f64> {
        if self.row_offsets != other.row_offsets || self.col_indices != other.col_indices {
            return dim_err("matrices do not share a sparsity pattern");
        }
        Ok(super::norm2(&super::sub(&self.values, &other.values)))
    }
}
