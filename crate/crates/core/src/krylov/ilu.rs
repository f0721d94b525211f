use crate::error::{dim_err, Error, Result};
use crate::la::CsrMatrix;

/// Zero-fill incomplete LU factors of a square CSR matrix.
///
/// `lower` holds the strictly lower part of L (unit diagonal implied),
/// `upper` holds U including its diagonal. Together their patterns are
/// exactly the pattern of the factored matrix.
#[derive(Debug, Clone)]
pub struct Ilu0Factors {
    lower: CsrMatrix,
    upper: CsrMatrix,
}

impl Ilu0Factors {
    /// IKJ-ordered ILU(0). Fails with [`Error::ZeroPivot`] naming the row
    /// whose pivot is zero or structurally missing.
    pub fn factor(a: &CsrMatrix) -> Result<Self> {
        let n = a.n_rows();
        if a.n_cols() != n {
            return dim_err(format!("ILU(0) needs a square matrix, got {n}x{}", a.n_cols()));
        }
        let offsets = a.row_offsets();
        let cols = a.col_indices();
        let mut w = a.values().to_vec();

        let mut diag = vec![usize::MAX; n];
        for (i, d) in diag.iter_mut().enumerate() {
            if let Some(k) = (offsets[i]..offsets[i + 1]).find(|&p| cols[p] == i) {
                *d = k;
            } else {
                return Err(Error::ZeroPivot { row: i });
            }
        }

        // position of column j within the current row, or usize::MAX
        let mut slot = vec![usize::MAX; n];
        for i in 0..n {
            let row = offsets[i]..offsets[i + 1];
            for p in row.clone() {
                slot[cols[p]] = p;
            }
            for p in offsets[i]..diag[i] {
                let k = cols[p];
                let lik = w[p] / w[diag[k]];
                w[p] = lik;
                for q in diag[k] + 1..offsets[k + 1] {
                    let s = slot[cols[q]];
                    if s != usize::MAX {
                        w[s] -= lik * w[q];
                    }
                }
            }
            for p in row {
                slot[cols[p]] = usize::MAX;
            }
            if w[diag[i]] == 0.0 || !w[diag[i]].is_finite() {
                return Err(Error::ZeroPivot { row: i });
            }
        }

        let mut l_off = vec![0];
        let mut l_cols = Vec::new();
        let mut l_vals = Vec::new();
        let mut u_off = vec![0];
        let mut u_cols = Vec::new();
        let mut u_vals = Vec::new();
        for i in 0..n {
            for p in offsets[i]..offsets[i + 1] {
                if p < diag[i] {
                    l_cols.push(cols[p]);
                    l_vals.push(w[p]);
                } else {
                    u_cols.push(cols[p]);
                    u_vals.push(w[p]);
                }
            }
            l_off.push(l_cols.len());
            u_off.push(u_cols.len());
        }
        Ok(Self {
            lower: CsrMatrix::new(n, n, l_off, l_cols, l_vals)?,
            upper: CsrMatrix::new(n, n, u_off, u_cols, u_vals)?,
        })
    }

    pub fn dim(&self) -> usize {
        self.upper.n_rows()
    }

    /// Strictly lower part of L; the unit diagonal is implicit.
    pub fn lower(&self) -> &CsrMatrix {
        &self.lower
    }

    pub fn upper(&self) -> &CsrMatrix {
        &self.upper
    }

    /// Solves `L U z = r` in place.
    pub fn apply_in_place(&self, z: &mut [f64]) {
        assert_eq!(z.len(), self.dim());
        for i in 0..z.len() {
            let (cols, vals) = self.lower.row(i);
            let s: f64 = cols.iter().zip(vals).map(|(&j, &l)| l * z[j]).sum();
            z[i] -= s;
        }
        for i in (0..z.len()).rev() {
            let (cols, vals) = self.upper.row(i);
            // the diagonal is the first stored entry of each U row
            let s: f64 = cols[1..]
                .iter()
                .zip(&vals[1..])
                .map(|(&j, &u)| u * z[j])
                .sum();
            z[i] = (z[i] - s) / vals[0];
        }
    }

    pub fn apply(&self, r: &[f64]) -> Vec<f64> {
        let mut z = r.to_vec();
        self.apply_in_place(&mut z);
        z
    }
}
