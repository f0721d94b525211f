//! Thin SVD of tall matrices: Householder QR followed by one-sided Jacobi
//! on the small triangular factor.

use crate::error::{dim_err, Result};

use super::{dot, DenseMatrix, HouseholderQr};

const MAX_SWEEPS: usize = 80;

/// `B = U diag(S) Vᵀ` with singular values in nonincreasing order.
#[derive(Debug, Clone)]
pub struct ThinSvd {
    pub u: DenseMatrix,
    pub singular_values: Vec<f64>,
    pub v: DenseMatrix,
}

/// Thin SVD of an n x M matrix with n >= M.
///
/// Cost is one QR of `B` (O(nM²)) plus Jacobi sweeps on the M x M factor.
/// Left singular vectors for singular values at roundoff level
/// (`<= M·eps·σ₁`) are completed to an orthonormal set instead of being
/// obtained by division.
pub fn svd_thin(b: &DenseMatrix) -> Result<ThinSvd> {
    let (n, m) = (b.n_rows(), b.n_cols());
    if n < m {
        return dim_err(format!("thin SVD needs n >= M, got {n}x{m}"));
    }
    if m == 0 {
        return Ok(ThinSvd {
            u: DenseMatrix::zeros(n, 0),
            singular_values: Vec::new(),
            v: DenseMatrix::zeros(0, 0),
        });
    }
    let qr = HouseholderQr::new(b)?;
    let (w, v) = one_sided_jacobi(qr.r_unnormalized());

    let mut order: Vec<usize> = (0..m).collect();
    let norms: Vec<f64> = w.columns().map(super::norm2).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));

    let singular_values: Vec<f64> = order.iter().map(|&k| norms[k]).collect();
    let smax = singular_values[0];
    let tiny = m as f64 * f64::EPSILON * smax;

    let mut u_small = DenseMatrix::zeros(m, m);
    let mut v_sorted = DenseMatrix::zeros(m, m);
    let mut deficient = Vec::new();
    for (dst, &src) in order.iter().enumerate() {
        v_sorted.col_mut(dst).copy_from_slice(v.col(src));
        let s = norms[src];
        if s > tiny && s > 0.0 {
            let col = u_small.col_mut(dst);
            col.copy_from_slice(w.col(src));
            super::scale(1.0 / s, col);
        } else {
            deficient.push(dst);
        }
    }
    complete_orthonormal(&mut u_small, &deficient);

    let mut u = DenseMatrix::zeros(n, m);
    for j in 0..m {
        let col = u.col_mut(j);
        col[..m].copy_from_slice(u_small.col(j));
        qr.apply_q(col);
    }
    Ok(ThinSvd {
        u,
        singular_values,
        v: v_sorted,
    })
}

/// Rotates the columns of `a` until they are mutually orthogonal.
/// Returns `(A V, V)`.
fn one_sided_jacobi(mut a: DenseMatrix) -> (DenseMatrix, DenseMatrix) {
    let m = a.n_cols();
    let mut v = DenseMatrix::identity(m);
    let tol = f64::EPSILON * m as f64;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..m {
            for q in p + 1..m {
                let alpha = dot(a.col(p), a.col(p));
                let beta = dot(a.col(q), a.col(q));
                let gamma = dot(a.col(p), a.col(q));
                if gamma == 0.0 || gamma.abs() <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate_columns(&mut a, p, q, c, s);
                rotate_columns(&mut v, p, q, c, s);
            }
        }
        if !rotated {
            break;
        }
    }
    (a, v)
}

fn rotate_columns(a: &mut DenseMatrix, p: usize, q: usize, c: f64, s: f64) {
    let n = a.n_rows();
    let data = a.as_mut_slice();
    let (lo, hi) = data.split_at_mut(q * n);
    let cp = &mut lo[p * n..(p + 1) * n];
    let cq = &mut hi[..n];
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let (xp, xq) = (*x, *y);
        *x = c * xp - s * xq;
        *y = s * xp + c * xq;
    }
}

/// Fills the listed columns of a square matrix with unit vectors orthogonal
/// to every other filled column (two passes of Gram–Schmidt on candidate
/// coordinate vectors).
fn complete_orthonormal(u: &mut DenseMatrix, missing: &[usize]) {
    let m = u.n_rows();
    let mut filled: Vec<bool> = (0..u.n_cols()).map(|j| !missing.contains(&j)).collect();
    let mut candidate = 0;
    for &j in missing {
        loop {
            assert!(candidate < m, "no orthogonal completion available");
            let mut e = vec![0.0; m];
            e[candidate] = 1.0;
            candidate += 1;
            for _ in 0..2 {
                for k in (0..u.n_cols()).filter(|&k| filled[k]) {
                    let c = dot(u.col(k), &e);
                    super::axpy(-c, u.col(k), &mut e);
                }
            }
            let norm = super::norm2(&e);
            if norm > 0.5 {
                super::scale(1.0 / norm, &mut e);
                u.col_mut(j).copy_from_slice(&e);
                filled[j] = true;
                break;
            }
        }
    }
}
