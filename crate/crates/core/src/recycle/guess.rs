use std::time::Instant;

use crate::error::{dim_err, Result};
use crate::la::{lstsq, norm2, CsrMatrix, DenseMatrix};

/// Where a guess came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GuessSource {
    /// No history yet.
    Zero,
    /// Previous solution (baseline, or warm-up before the window is full).
    Previous,
    /// Residual-minimizing element of a compressed history subspace.
    Projected,
}

#[derive(Debug, Clone)]
pub struct GuessReport {
    pub guess: Vec<f64>,
    pub source: GuessSource,
    /// Dimension of the projection subspace; 0 when not projected.
    pub reduced_dim: usize,
    /// `‖A s* − b‖₂`
    pub guess_residual: f64,
    /// Seconds spent building the basis (sketch update + QR, or SVD).
    pub basis_time: f64,
    /// Seconds spent forming `A Q`, solving the small least-squares problem
    /// and expanding the guess.
    pub lstsq_time: f64,
}

/// `s* = Q z*` with `z* = argmin_z ‖A Q z − b‖₂`.
///
/// `A Q` is formed column by column with sparse mat-vecs.
pub fn compute_initial_guess(a: &CsrMatrix, b: &[f64], q: &DenseMatrix) -> Result<GuessReport> {
    let n = a.n_rows();
    if a.n_cols() != n || q.n_rows() != n || b.len() != n {
        return dim_err(format!(
            "guess: A is {}x{}, Q is {}x{}, b has length {}",
            n,
            a.n_cols(),
            q.n_rows(),
            q.n_cols(),
            b.len()
        ));
    }
    let start = Instant::now();
    let m = q.n_cols();
    let mut w = DenseMatrix::zeros(n, m);
    for j in 0..m {
        a.spmv_into(q.col(j), w.col_mut(j))?;
    }
    let z = lstsq(&w, b)?;
    let guess = q.matvec(&z)?;
    let lstsq_time = start.elapsed().as_secs_f64();

    let mut r = w.matvec(&z)?;
    for (ri, bi) in r.iter_mut().zip(b) {
        *ri -= bi;
    }
    Ok(GuessReport {
        guess,
        source: GuessSource::Projected,
        reduced_dim: m,
        guess_residual: norm2(&r),
        basis_time: 0.0,
        lstsq_time,
    })
}
