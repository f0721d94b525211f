use std::collections::VecDeque;

use crate::error::{dim_err, Error, Result};
use crate::la::DenseMatrix;

/// Sliding window over the most recent solutions, oldest first.
#[derive(Debug, Clone)]
pub struct HistoryWindow {
    n: usize,
    capacity: usize,
    columns: VecDeque<Vec<f64>>,
}

impl HistoryWindow {
    pub fn new(n: usize, capacity: usize) -> Result<Self> {
        if capacity == 0 {
            return Err(Error::InvalidArgument("history capacity must be >= 1".into()));
        }
        Ok(Self {
            n,
            capacity,
            columns: VecDeque::with_capacity(capacity + 1),
        })
    }

    /// Appends `x` as the newest column. When the window was full the oldest
    /// column is removed and returned; the sketch downdate needs it.
    pub fn push(&mut self, x: Vec<f64>) -> Result<Option<Vec<f64>>> {
        if x.len() != self.n {
            return dim_err(format!(
                "history holds vectors of length {}, got {}",
                self.n,
                x.len()
            ));
        }
        self.columns.push_back(x);
        Ok(if self.columns.len() > self.capacity {
            self.columns.pop_front()
        } else {
            None
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.columns.len() == self.capacity
    }

    pub fn columns(&self) -> impl ExactSizeIterator<Item = &[f64]> {
        self.columns.iter().map(Vec::as_slice)
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.columns[j]
    }

    pub fn newest(&self) -> Option<&[f64]> {
        self.columns.back().map(Vec::as_slice)
    }

    /// The n x len history matrix.
    pub fn matrix(&self) -> DenseMatrix {
        let cols: Vec<&[f64]> = self.columns().collect();
        DenseMatrix::from_columns(self.n, &cols).expect("columns share the window length")
    }
}
