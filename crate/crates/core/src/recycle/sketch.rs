//! Gaussian sketch of the history matrix with progressive rank-one updates.
//!
//! With `Z = [z₁ | … | z_M]ᵀ` the sketch is `Ω = X Z`. When the window
//! slides, the leaving column `x_old` is removed with `Ω −= x_old z₁ᵀ`, the
//! rows of `Z` move up one place, a fresh Gaussian row `z_M` is drawn and the
//! new column is added with `Ω += x_new z_Mᵀ`. Every `refresh_period`
//! updates `Z` is redrawn and `Ω` recomputed from the window to flush the
//! cancellation error accumulated by the add/subtract pairs.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{dim_err, Error, Result};
use crate::la::{qr_reduced, DenseMatrix};

use super::HistoryWindow;

pub const DEFAULT_REFRESH_PERIOD: usize = 50;

#[derive(Debug, Clone)]
pub struct SketchState {
    /// M x m Gaussian test matrix, row k pairs with window column k.
    z: DenseMatrix,
    /// n x m sketch `X Z`.
    omega: DenseMatrix,
    age: usize,
    refresh_period: usize,
}

fn gaussian_row<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Vec<f64> {
    (0..m).map(|_| rng.sample(StandardNormal)).collect()
}

impl SketchState {
    /// Draws `Z` row by row and forms `Ω = X Z`. The window must be full.
    pub fn from_scratch<R: Rng + ?Sized>(
        h: &HistoryWindow,
        m: usize,
        refresh_period: usize,
        rng: &mut R,
    ) -> Result<Self> {
        let cap = h.capacity();
        if m == 0 || m > cap {
            return Err(Error::InvalidArgument(format!(
                "sketch width {m} must be in 1..={cap}"
            )));
        }
        let mut z = DenseMatrix::zeros(cap, m);
        for k in 0..cap {
            for (j, v) in gaussian_row(m, rng).into_iter().enumerate() {
                z[(k, j)] = v;
            }
        }
        Self::with_test_matrix(h, z, refresh_period)
    }

    /// Builds the sketch for a caller-supplied `Z` (M x m).
    pub fn with_test_matrix(
        h: &HistoryWindow,
        z: DenseMatrix,
        refresh_period: usize,
    ) -> Result<Self> {
        if refresh_period == 0 {
            return Err(Error::InvalidArgument("refresh_period must be >= 1".into()));
        }
        if !h.is_full() {
            return Err(Error::InvalidArgument(format!(
                "sketch needs a full window ({} of {} columns)",
                h.len(),
                h.capacity()
            )));
        }
        if z.n_rows() != h.capacity() || z.n_cols() == 0 || z.n_cols() > h.capacity() {
            return dim_err(format!(
                "test matrix is {}x{}, window holds {} columns",
                z.n_rows(),
                z.n_cols(),
                h.capacity()
            ));
        }
        let omega = h.matrix().matmul(&z)?;
        Ok(Self {
            z,
            omega,
            age: 0,
            refresh_period,
        })
    }

    pub fn z(&self) -> &DenseMatrix {
        &self.z
    }

    pub fn omega(&self) -> &DenseMatrix {
        &self.omega
    }

    pub fn age(&self) -> usize {
        self.age
    }

    pub fn refresh_period(&self) -> usize {
        self.refresh_period
    }

    pub fn width(&self) -> usize {
        self.z.n_cols()
    }

    /// `Ω −= x_old z₁ᵀ`, then shifts the rows of `Z` up; the last row is
    /// left zero until [`Self::append_newest`] fills it.
    pub fn remove_oldest(&mut self, x_old: &[f64]) -> Result<()> {
        if x_old.len() != self.omega.n_rows() {
            return dim_err("evicted column length differs from the sketch");
        }
        let z1 = self.z.row(0);
        self.omega.rank_one_update(-1.0, x_old, &z1)?;
        let (rows, m) = (self.z.n_rows(), self.z.n_cols());
        for j in 0..m {
            let col = self.z.col_mut(j);
            col.copy_within(1..rows, 0);
            col[rows - 1] = 0.0;
        }
        Ok(())
    }

    /// Stores `z_row` as the last row of `Z` and adds `x_new z_rowᵀ` to `Ω`.
    pub fn append_newest(&mut self, x_new: &[f64], z_row: &[f64]) -> Result<()> {
        if x_new.len() != self.omega.n_rows() || z_row.len() != self.z.n_cols() {
            return dim_err("new column or Gaussian row has the wrong length");
        }
        let last = self.z.n_rows() - 1;
        for (j, &v) in z_row.iter().enumerate() {
            self.z[(last, j)] = v;
        }
        self.omega.rank_one_update(1.0, x_new, z_row)
    }

    /// Advances the sketch after `h` has slid by one column; `x_old` is the
    /// column that left and `h.newest()` the one that entered. Rebuilds from
    /// scratch with a fresh `Z` when the update count reaches the refresh
    /// period.
    pub fn progressive_update<R: Rng + ?Sized>(
        &mut self,
        h: &HistoryWindow,
        x_old: &[f64],
        rng: &mut R,
    ) -> Result<()> {
        if h.capacity() != self.z.n_rows() || h.dim() != self.omega.n_rows() {
            return dim_err("window shape differs from the sketch");
        }
        let x_new = h
            .newest()
            .ok_or_else(|| Error::InvalidArgument("empty window".into()))?;
        if self.age + 1 >= self.refresh_period {
            *self = Self::from_scratch(h, self.width(), self.refresh_period, rng)?;
            return Ok(());
        }
        self.remove_oldest(x_old)?;
        let z_row = gaussian_row(self.width(), rng);
        self.append_newest(x_new, &z_row)?;
        self.age += 1;
        Ok(())
    }

    /// Orthonormal basis of `range(Ω)` from a reduced QR.
    pub fn basis(&self) -> Result<DenseMatrix> {
        Ok(qr_reduced(&self.omega)?.0)
    }
}
