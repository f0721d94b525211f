//! Linear-algebra kernels shared by the solver, the basis builders and the
//! theory oracles.
//!
//! Vectors are plain `[f64]` slices / `Vec<f64>`. Dense matrices are
//! column-major ([`DenseMatrix`]), sparse matrices are CSR ([`CsrMatrix`]).

mod dense;
mod qr;
mod sparse;
mod svd;

pub use dense::DenseMatrix;
pub use qr::{lstsq, qr_reduced, HouseholderQr, LSTSQ_RANK_TOL};
pub use sparse::CsrMatrix;
pub use svd::{svd_thin, ThinSvd};

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// `y += alpha * x`
pub fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    debug_assert_eq!(x.len(), y.len());
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

pub fn scale(alpha: f64, x: &mut [f64]) {
    for xi in x.iter_mut() {
        *xi *= alpha;
    }
}

/// `a - b`
pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vector_helpers() {
        let a = [3.0, 4.0];
        assert_eq!(norm2(&a), 5.0);
        let mut y = vec![1.0, 1.0];
        axpy(2.0, &a, &mut y);
        assert_eq!(y, vec![7.0, 9.0]);
        scale(0.5, &mut y);
        assert_eq!(y, vec![3.5, 4.5]);
        assert_eq!(sub(&y, &a), vec![0.5, 0.5]);
    }
}
