//! Right-preconditioned GMRES with modified Gram–Schmidt Arnoldi and one
//! reorthogonalization pass.
//!
//! With right preconditioning the Arnoldi least-squares residual is the
//! residual of the original system, so the stopping test
//! `‖b − A x_k‖₂ <= tol · ‖b‖₂` is evaluated on the computable recurrence
//! value and confirmed with an explicit residual before returning.

use crate::error::{dim_err, Error, Result};
use crate::la::{axpy, dot, norm2, scale, CsrMatrix};

use super::Ilu0Factors;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GmresConfig {
    /// Relative residual tolerance.
    pub tol: f64,
    pub max_iters: usize,
    /// Krylov dimension per cycle; `None` runs full GMRES.
    pub restart: Option<usize>,
}

impl Default for GmresConfig {
    fn default() -> Self {
        Self {
            tol: 1e-7,
            max_iters: 1000,
            restart: None,
        }
    }
}

impl GmresConfig {
    pub fn validate(&self) -> Result<()> {
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::InvalidArgument(format!("tol must be > 0, got {}", self.tol)));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidArgument("max_iters must be >= 1".into()));
        }
        if self.restart == Some(0) {
            return Err(Error::InvalidArgument("restart must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveStats {
    pub iterations: usize,
    /// Residual norm estimates, starting with the residual of the initial
    /// guess, then one entry per iteration.
    pub residual_history: Vec<f64>,
    pub converged: bool,
    /// `‖b − A x₀‖₂` for the supplied initial guess.
    pub initial_residual: f64,
    /// `‖b − A x‖₂` of the returned iterate, computed explicitly.
    pub final_residual: f64,
}

/// Solves `A x = b` starting from `x0`.
///
/// Returns the iterate with the smallest explicit residual seen at cycle
/// boundaries when `max_iters` is exhausted.
pub fn gmres(
    a: &CsrMatrix,
    prec: Option<&Ilu0Factors>,
    b: &[f64],
    x0: &[f64],
    cfg: &GmresConfig,
) -> Result<(Vec<f64>, SolveStats)> {
    cfg.validate()?;
    let n = a.n_rows();
    if a.n_cols() != n {
        return dim_err(format!("GMRES needs a square matrix, got {n}x{}", a.n_cols()));
    }
    if b.len() != n || x0.len() != n {
        return dim_err(format!(
            "GMRES: matrix order {n}, rhs length {}, guess length {}",
            b.len(),
            x0.len()
        ));
    }
    if prec.is_some_and(|p| p.dim() != n) {
        return dim_err("GMRES: preconditioner order differs from the matrix");
    }

    let b_norm = norm2(b);
    let mut x = x0.to_vec();
    let mut r = a.residual(&x, b)?;
    let mut beta = norm2(&r);
    let initial_residual = beta;
    let mut stats = SolveStats {
        iterations: 0,
        residual_history: vec![beta],
        converged: false,
        initial_residual,
        final_residual: beta,
    };
    let target = cfg.tol * b_norm;
    if beta <= target {
        stats.converged = true;
        return Ok((x, stats));
    }

    let cycle_len = cfg.restart.unwrap_or(cfg.max_iters).min(cfg.max_iters);
    let mut best = (beta, x.clone());

    while stats.iterations < cfg.max_iters {
        let max_j = cycle_len.min(cfg.max_iters - stats.iterations);
        let mut basis: Vec<Vec<f64>> = Vec::with_capacity(max_j + 1);
        scale(1.0 / beta, &mut r);
        basis.push(std::mem::take(&mut r));

        // Hessenberg columns after Givens rotations (upper triangular part)
        let mut h_cols: Vec<Vec<f64>> = Vec::with_capacity(max_j);
        let mut cs: Vec<f64> = Vec::with_capacity(max_j);
        let mut sn: Vec<f64> = Vec::with_capacity(max_j);
        let mut g = vec![beta];
        let mut w = vec![0.0; n];
        let mut inner_converged = false;

        for j in 0..max_j {
            let z = match prec {
                Some(p) => p.apply(&basis[j]),
                None => basis[j].clone(),
            };
            a.spmv_into(&z, &mut w)?;
            let w_norm0 = norm2(&w);

            let mut h = vec![0.0; j + 2];
            for _pass in 0..2 {
                for (i, v) in basis.iter().enumerate() {
                    let c = dot(&w, v);
                    h[i] += c;
                    axpy(-c, v, &mut w);
                }
            }
            let h_next = norm2(&w);
            h[j + 1] = h_next;

            for i in 0..j {
                let (hi, hi1) = (h[i], h[i + 1]);
                h[i] = cs[i] * hi + sn[i] * hi1;
                h[i + 1] = -sn[i] * hi + cs[i] * hi1;
            }
            let denom = h[j].hypot(h[j + 1]);
            let (c, s) = if denom == 0.0 {
                (1.0, 0.0)
            } else {
                (h[j] / denom, h[j + 1] / denom)
            };
            h[j] = denom;
            h[j + 1] = 0.0;
            cs.push(c);
            sn.push(s);
            let gj = g[j];
            g[j] = c * gj;
            g.push(-s * gj);
            h.truncate(j + 1);
            h_cols.push(h);

            stats.iterations += 1;
            let res = g[j + 1].abs();
            stats.residual_history.push(res);

            let breakdown = h_next <= f64::EPSILON * w_norm0;
            if res <= target || breakdown {
                inner_converged = true;
                break;
            }
            if j + 1 < max_j {
                let mut v = w.clone();
                scale(1.0 / h_next, &mut v);
                basis.push(v);
            }
        }

        // y = H⁻¹ g, x += M⁻¹ V y
        let k = h_cols.len();
        let mut y = vec![0.0; k];
        for i in (0..k).rev() {
            let s: f64 = (i + 1..k).map(|l| h_cols[l][i] * y[l]).sum();
            y[i] = if h_cols[i][i] == 0.0 {
                0.0
            } else {
                (g[i] - s) / h_cols[i][i]
            };
        }
        let mut update = vec![0.0; n];
        for (v, yi) in basis.iter().zip(&y) {
            axpy(*yi, v, &mut update);
        }
        if let Some(p) = prec {
            p.apply_in_place(&mut update);
        }
        axpy(1.0, &update, &mut x);

        r = a.residual(&x, b)?;
        beta = norm2(&r);
        if beta < best.0 {
            best = (beta, x.clone());
        }
        if beta <= target {
            stats.converged = true;
            break;
        }
        if inner_converged && beta == 0.0 {
            break;
        }
    }

    stats.final_residual = best.0;
    Ok((best.1, stats))
}
