//! Householder QR and QR-based least squares.

use crate::error::{dim_err, Result};

use super::{dot, svd_thin, DenseMatrix};

/// `|R[i,i]| <= LSTSQ_RANK_TOL * max_j |R[j,j]|` marks a numerically rank
/// deficient least-squares matrix.
pub const LSTSQ_RANK_TOL: f64 = 1e-12;

/// Householder QR of a tall matrix `B` (n x m, n >= m), with the
/// reflectors kept so that `Qᵀ` can be applied without forming `Q`.
#[derive(Debug, Clone)]
pub struct HouseholderQr {
    n_rows: usize,
    n_cols: usize,
    /// Upper triangle holds R before sign normalization.
    packed: DenseMatrix,
    /// Unit Householder vectors `v_k` (length n - k); `None` where the
    /// column below the diagonal was already zero.
    reflectors: Vec<Option<Vec<f64>>>,
}

fn reflect(v: &[f64], x: &mut [f64]) {
    let s = 2.0 * dot(v, x);
    if s != 0.0 {
        super::axpy(-s, v, x);
    }
}

impl HouseholderQr {
    pub fn new(b: &DenseMatrix) -> Result<Self> {
        let (n, m) = (b.n_rows(), b.n_cols());
        if n < m {
            return dim_err(format!("QR needs a tall matrix, got {n}x{m}"));
        }
        let mut w = b.clone();
        let mut reflectors = Vec::with_capacity(m);
        for k in 0..m {
            let x = &w.col(k)[k..];
            let norm_x = super::norm2(x);
            if norm_x == 0.0 {
                reflectors.push(None);
                continue;
            }
            let alpha = if x[0] >= 0.0 { -norm_x } else { norm_x };
            let mut v = x.to_vec();
            v[0] -= alpha;
            let norm_v = super::norm2(&v);
            super::scale(1.0 / norm_v, &mut v);
            for j in k + 1..m {
                reflect(&v, &mut w.col_mut(j)[k..]);
            }
            let col = w.col_mut(k);
            col[k] = alpha;
            col[k + 1..].iter_mut().for_each(|c| *c = 0.0);
            reflectors.push(Some(v));
        }
        Ok(Self {
            n_rows: n,
            n_cols: m,
            packed: w,
            reflectors,
        })
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    /// `x <- Qᵀ x` with the full n x n orthogonal factor.
    pub fn apply_qt(&self, x: &mut [f64]) {
        assert_eq!(x.len(), self.n_rows);
        for (k, v) in self.reflectors.iter().enumerate() {
            if let Some(v) = v {
                reflect(v, &mut x[k..]);
            }
        }
    }

    /// `x <- Q x` with the full n x n orthogonal factor.
    pub fn apply_q(&self, x: &mut [f64]) {
        assert_eq!(x.len(), self.n_rows);
        for (k, v) in self.reflectors.iter().enumerate().rev() {
            if let Some(v) = v {
                reflect(v, &mut x[k..]);
            }
        }
    }

    fn raw_diag(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_cols).map(|k| self.packed[(k, k)])
    }

    /// Sign flips that make the diagonal of R nonnegative.
    fn signs(&self) -> Vec<f64> {
        self.raw_diag()
            .map(|d| if d < 0.0 { -1.0 } else { 1.0 })
            .collect()
    }

    /// m x m upper-triangular factor with nonnegative diagonal.
    pub fn r(&self) -> DenseMatrix {
        let signs = self.signs();
        DenseMatrix::from_fn(self.n_cols, self.n_cols, |i, j| {
            if i <= j {
                signs[i] * self.packed[(i, j)]
            } else {
                0.0
            }
        })
    }

    /// R paired with the raw reflector product used by [`Self::apply_q`].
    pub(crate) fn r_unnormalized(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.n_cols, self.n_cols, |i, j| {
            if i <= j {
                self.packed[(i, j)]
            } else {
                0.0
            }
        })
    }

    /// n x m factor with orthonormal columns, paired with [`Self::r`].
    pub fn q(&self) -> DenseMatrix {
        let signs = self.signs();
        let mut q = DenseMatrix::zeros(self.n_rows, self.n_cols);
        for (j, s) in signs.iter().enumerate() {
            let col = q.col_mut(j);
            col[j] = *s;
            self.apply_q(col);
        }
        q
    }

    /// True when some `|R[i,i]| <= tol * max |R[j,j]|`.
    pub fn is_rank_deficient(&self, tol: f64) -> bool {
        let max = self.raw_diag().fold(0.0_f64, |a, d| a.max(d.abs()));
        self.raw_diag().any(|d| d.abs() <= tol * max)
    }

    /// Least-squares solution `argmin ‖B z − rhs‖` by back substitution.
    /// Components whose diagonal entry falls below the rank threshold are
    /// set to zero; [`lstsq`] avoids this path for deficient matrices.
    pub fn solve_lstsq(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        if rhs.len() != self.n_rows {
            return dim_err(format!(
                "lstsq: rhs length {} for {} rows",
                rhs.len(),
                self.n_rows
            ));
        }
        let mut y = rhs.to_vec();
        self.apply_qt(&mut y);
        let m = self.n_cols;
        let max = self.raw_diag().fold(0.0_f64, |a, d| a.max(d.abs()));
        let mut z = vec![0.0; m];
        for i in (0..m).rev() {
            let rii = self.packed[(i, i)];
            if rii.abs() <= LSTSQ_RANK_TOL * max || rii == 0.0 {
                continue;
            }
            let mut s = y[i];
            for (j, zj) in z.iter().enumerate().skip(i + 1) {
                s -= self.packed[(i, j)] * zj;
            }
            z[i] = s / rii;
        }
        Ok(z)
    }
}

/// Reduced QR `B = Q R` with Householder reflections; `R` has a nonnegative
/// diagonal. Rank-deficient input is accepted and yields zeros on the
/// diagonal of `R` while `Q` stays orthonormal.
pub fn qr_reduced(b: &DenseMatrix) -> Result<(DenseMatrix, DenseMatrix)> {
    let qr = HouseholderQr::new(b)?;
    Ok((qr.q(), qr.r()))
}

/// Minimizer of `‖B z − rhs‖₂`.
///
/// Full-rank problems go through Householder QR. When the R diagonal
/// signals rank deficiency the minimum-norm minimizer is computed from the
/// thin SVD instead, discarding singular values below the same relative
/// threshold.
pub fn lstsq(b: &DenseMatrix, rhs: &[f64]) -> Result<Vec<f64>> {
    if rhs.len() != b.n_rows() {
        return dim_err(format!(
            "lstsq: rhs length {} for {} rows",
            rhs.len(),
            b.n_rows()
        ));
    }
    let qr = HouseholderQr::new(b)?;
    if !qr.is_rank_deficient(LSTSQ_RANK_TOL) {
        return qr.solve_lstsq(rhs);
    }
    let svd = svd_thin(b)?;
    let smax = svd.singular_values.first().copied().unwrap_or(0.0);
    let mut z = vec![0.0; b.n_cols()];
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if s <= LSTSQ_RANK_TOL * smax || s == 0.0 {
            break;
        }
        let coef = dot(svd.u.col(k), rhs) / s;
        super::axpy(coef, svd.v.col(k), &mut z);
    }
    Ok(z)
}
