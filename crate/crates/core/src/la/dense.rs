use crate::error::{dim_err, Result};

/// Column-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n_rows: usize,
    n_cols: usize,
    values: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Self {
            n_rows,
            n_cols,
            values: vec![0.0; n_rows * n_cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_col_major(n_rows: usize, n_cols: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != n_rows * n_cols {
            return dim_err(format!(
                "{} values for a {}x{} matrix",
                values.len(),
                n_rows,
                n_cols
            ));
        }
        Ok(Self {
            n_rows,
            n_cols,
            values,
        })
    }

    /// Builds from row-major nested rows; convenient in tests.
    pub fn from_rows(rows: &[&[f64]]) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != n_cols) {
            return dim_err("ragged rows");
        }
        Ok(Self::from_fn(n_rows, n_cols, |i, j| rows[i][j]))
    }

    /// Stacks equally long columns side by side.
    pub fn from_columns<C: AsRef<[f64]>>(n_rows: usize, columns: &[C]) -> Result<Self> {
        let mut values = Vec::with_capacity(n_rows * columns.len());
        for (j, c) in columns.iter().enumerate() {
            let c = c.as_ref();
            if c.len() != n_rows {
                return dim_err(format!(
                    "column {j} has length {}, expected {n_rows}",
                    c.len()
                ));
            }
            values.extend_from_slice(c);
        }
        Ok(Self {
            n_rows,
            n_cols: columns.len(),
            values,
        })
    }

    pub fn from_fn(n_rows: usize, n_cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut values = Vec::with_capacity(n_rows * n_cols);
        for j in 0..n_cols {
            for i in 0..n_rows {
                values.push(f(i, j));
            }
        }
        Self {
            n_rows,
            n_cols,
            values,
        }
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn col(&self, j: usize) -> &[f64] {
        &self.values[j * self.n_rows..(j + 1) * self.n_rows]
    }

    pub fn col_mut(&mut self, j: usize) -> &mut [f64] {
        &mut self.values[j * self.n_rows..(j + 1) * self.n_rows]
    }

    pub fn columns(&self) -> impl Iterator<Item = &[f64]> {
        (0..self.n_cols).map(move |j| self.col(j))
    }

    pub fn row(&self, i: usize) -> Vec<f64> {
        (0..self.n_cols).map(|j| self[(i, j)]).collect()
    }

    /// First `k` columns.
    pub fn leading_columns(&self, k: usize) -> DenseMatrix {
        assert!(k <= self.n_cols);
        Self {
            n_rows: self.n_rows,
            n_cols: k,
            values: self.values[..k * self.n_rows].to_vec(),
        }
    }

    pub fn transpose(&self) -> DenseMatrix {
        Self::from_fn(self.n_cols, self.n_rows, |i, j| self[(j, i)])
    }

    /// `self * v`
    pub fn matvec(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.n_cols {
            return dim_err(format!(
                "matvec: {}x{} times vector of length {}",
                self.n_rows,
                self.n_cols,
                v.len()
            ));
        }
        let mut out = vec![0.0; self.n_rows];
        for (j, &vj) in v.iter().enumerate() {
            if vj != 0.0 {
                super::axpy(vj, self.col(j), &mut out);
            }
        }
        Ok(out)
    }

    /// `selfᵀ * v`
    pub fn tr_matvec(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.n_rows {
            return dim_err(format!(
                "tr_matvec: ({}x{})ᵀ times vector of length {}",
                self.n_rows,
                self.n_cols,
                v.len()
            ));
        }
        Ok(self.columns().map(|c| super::dot(c, v)).collect())
    }

    /// `self * other`
    pub fn matmul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.n_cols != other.n_rows {
            return dim_err(format!(
                "matmul: {}x{} times {}x{}",
                self.n_rows, self.n_cols, other.n_rows, other.n_cols
            ));
        }
        let mut out = DenseMatrix::zeros(self.n_rows, other.n_cols);
        for j in 0..other.n_cols {
            let dst = &mut out.values[j * self.n_rows..(j + 1) * self.n_rows];
            for (k, &bkj) in other.col(j).iter().enumerate() {
                if bkj != 0.0 {
                    super::axpy(bkj, self.col(k), dst);
                }
            }
        }
        Ok(out)
    }

    /// `selfᵀ * other`
    pub fn tr_matmul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.n_rows != other.n_rows {
            return dim_err(format!(
                "tr_matmul: ({}x{})ᵀ times {}x{}",
                self.n_rows, self.n_cols, other.n_rows, other.n_cols
            ));
        }
        Ok(DenseMatrix::from_fn(self.n_cols, other.n_cols, |i, j| {
            super::dot(self.col(i), other.col(j))
        }))
    }

    pub fn frobenius_norm(&self) -> f64 {
        super::norm2(&self.values)
    }

    /// `self - other`
    pub fn sub(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.n_rows != other.n_rows || self.n_cols != other.n_cols {
            return dim_err("sub: shape mismatch");
        }
        Ok(Self {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            values: super::sub(&self.values, &other.values),
        })
    }

    /// Rank-one update `self += alpha * u vᵀ`.
    pub fn rank_one_update(&mut self, alpha: f64, u: &[f64], v: &[f64]) -> Result<()> {
        if u.len() != self.n_rows || v.len() != self.n_cols {
            return dim_err("rank_one_update: vector lengths do not match the matrix");
        }
        for (j, &vj) in v.iter().enumerate() {
            let a = alpha * vj;
            if a != 0.0 {
                super::axpy(a, u, self.col_mut(j));
            }
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        debug_assert!(i < self.n_rows && j < self.n_cols);
        &self.values[j * self.n_rows + i]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        debug_assert!(i < self.n_rows && j < self.n_cols);
        &mut self.values[j * self.n_rows + i]
    }
}
