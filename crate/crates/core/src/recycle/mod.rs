//! Solution-history compression and the projected initial guess.
//!
//! Each timestep, the last `M` solutions form the history matrix
//! `X = [x(t_{i−M}) | … | x(t_{i−1})]`. An orthonormal basis `Q` of an
//! `m`-dimensional subspace of `span(X)` is built either by POD
//! ([`pod_basis`]) or from a Gaussian sketch `Ω = X Z` ([`SketchState`]).
//! The guess is `Q z*` with `z* = argmin ‖A Q z − b‖₂`
//! ([`compute_initial_guess`]).

mod accelerator;
mod guess;
mod history;
mod sketch;

pub use accelerator::{Accelerator, GuessMethod, RNG_NAME};
pub use guess::{compute_initial_guess, GuessReport, GuessSource};
pub use history::HistoryWindow;
pub use sketch::{SketchState, DEFAULT_REFRESH_PERIOD};

use crate::error::{Error, Result};
use crate::la::{svd_thin, DenseMatrix};

/// First `m` left singular vectors of the history matrix.
pub fn pod_basis(h: &HistoryWindow, m: usize) -> Result<DenseMatrix> {
    if m == 0 || m > h.len() {
        return Err(Error::InvalidArgument(format!(
            "POD basis of dimension {m} from {} stored solutions",
            h.len()
        )));
    }
    let svd = svd_thin(&h.matrix())?;
    Ok(svd.u.leading_columns(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::la::{norm2, DenseMatrix};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn window_from(x: &DenseMatrix) -> HistoryWindow {
        let mut h = HistoryWindow::new(x.n_rows(), x.n_cols()).unwrap();
        for c in x.columns() {
            h.push(c.to_vec()).unwrap();
        }
        h
    }

    fn projection_error(q: &DenseMatrix, x: &DenseMatrix) -> f64 {
        let p = q.matmul(&q.tr_matmul(x).unwrap()).unwrap();
        x.sub(&p).unwrap().frobenius_norm()
    }

    #[test]
    fn orthogonal_columns_pick_largest() {
        let x = DenseMatrix::from_rows(&[
            &[0.0, 2.0, 0.0],
            &[1.0, 0.0, 0.0],
            &[0.0, 0.0, 3.0],
            &[0.0, 0.0, 0.0],
        ])
        .unwrap();
        let q = pod_basis(&window_from(&x), 2).unwrap();
        // span{e3, e1}
        assert!((norm2(&q.row(2)) - 1.0).abs() < 1e-14);
        assert!((norm2(&q.row(0)) - 1.0).abs() < 1e-14);
        assert!(norm2(&q.row(1)) < 1e-14);
    }

    #[test]
    fn full_basis_reproduces_history() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = DenseMatrix::from_fn(20, 6, |_, _| rng.random_range(-1.0..1.0));
        let q = pod_basis(&window_from(&x), 6).unwrap();
        assert!(projection_error(&q, &x) <= 1e-10 * x.frobenius_norm());
    }

    #[test]
    fn truncation_error_is_singular_value_tail() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let x = DenseMatrix::from_fn(40, 8, |_, _| rng.random_range(-1.0..1.0));
        let q = pod_basis(&window_from(&x), 4).unwrap();
        let s = crate::la::svd_thin(&x).unwrap().singular_values;
        let tail: f64 = s[4..].iter().map(|v| v * v).sum();
        let err2 = projection_error(&q, &x).powi(2);
        assert!((err2 - tail).abs() <= 1e-9 * tail);
    }

    #[test]
    fn too_many_modes_rejected() {
        let x = DenseMatrix::identity(3);
        assert!(pod_basis(&window_from(&x), 4).is_err());
        assert!(pod_basis(&window_from(&x), 0).is_err());
    }
}
