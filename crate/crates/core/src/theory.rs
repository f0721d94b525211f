//! Chebyshev least-squares extrapolation of a solution history and
//! closed-form evaluation of the associated a-priori bounds.
//!
//! The history is taken on `M` equispaced nodes `t₁ = −1, …, t_M = 1`. The
//! fitted polynomial `p_R(t) = C_p q_R(t)` with `q_R = [T₀, …, T_R]ᵀ` is an
//! element of the span of the history columns, so its residual is an upper
//! bound for what a projected initial guess can achieve.
//!
//! Bounds are parametrized by a Bernstein ellipse `E_ρ` (foci ±1, semi-axis
//! sum ρ) on which the solution is assumed analytic, and by
//! `κ_ρ = max_{∂E_ρ} ‖x(t)‖₂`, which [`estimate_kappa_rho`] approximates by
//! sampling the boundary.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::la::{DenseMatrix, HouseholderQr};

/// `[T₀(t), …, T_R(t)]` by the three-term recurrence; valid for any real t.
pub fn cheb_vector(degree: usize, t: f64) -> Vec<f64> {
    let mut q = Vec::with_capacity(degree + 1);
    q.push(1.0);
    if degree >= 1 {
        q.push(t);
    }
    for k in 2..=degree {
        q.push(2.0 * t * q[k - 1] - q[k - 2]);
    }
    q
}

/// `M` equispaced nodes from −1 to 1.
pub fn equispaced_nodes(m: usize) -> Result<Vec<f64>> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 nodes, got {m}")));
    }
    let dt = 2.0 / (m - 1) as f64;
    Ok((0..m)
        .map(|k| if k == m - 1 { 1.0 } else { -1.0 + k as f64 * dt })
        .collect())
}

/// The `(R+1) × M` Chebyshev–Vandermonde matrix `Q_R(t)`, column k being
/// `q_R(t_k)`.
pub fn cheb_vandermonde(degree: usize, nodes: &[f64]) -> DenseMatrix {
    let cols: Vec<Vec<f64>> = nodes.iter().map(|&t| cheb_vector(degree, t)).collect();
    DenseMatrix::from_columns(degree + 1, &cols).expect("uniform column length")
}

/// Largest degree with `R ≤ ½√(M−1)`, decided in exact integer arithmetic
/// as `4R² ≤ M − 1`.
pub fn max_admissible_degree(m: usize) -> usize {
    if m == 0 {
        return 0;
    }
    let mut r = 0;
    while 4 * (r + 1) * (r + 1) < m {
        r += 1;
    }
    r
}

fn is_admissible(m: usize, degree: usize) -> bool {
    4 * degree * degree < m
}

/// Least-squares Chebyshev fit of a history on equispaced nodes.
#[derive(Debug, Clone)]
pub struct ChebFit {
    coefficients: DenseMatrix,
    degree: usize,
    nodes: Vec<f64>,
}

impl ChebFit {
    /// `C_p`, n × (R+1).
    pub fn coefficients(&self) -> &DenseMatrix {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// `C_p q_R(t)`.
    pub fn evaluate(&self, t: f64) -> Vec<f64> {
        self.coefficients
            .matvec(&cheb_vector(self.degree, t))
            .expect("coefficient width is R+1")
    }

    /// `‖X − C_p Q_R(t)‖_F` against the samples the fit was built from.
    pub fn residual_norm(&self, x: &DenseMatrix) -> Result<f64> {
        let fitted = self
            .coefficients
            .matmul(&cheb_vandermonde(self.degree, &self.nodes))?;
        Ok(x.sub(&fitted)?.frobenius_norm())
    }
}

/// `C_p = X Q_R(t)†`, one least-squares solve against `Q_R(t)ᵀ` per row of
/// `X` after a single Householder factorization.
pub fn cheb_lsq_fit(x: &DenseMatrix, degree: usize) -> Result<ChebFit> {
    let m = x.n_cols();
    if degree + 1 > m {
        return Err(Error::InvalidArgument(format!(
            "degree {degree} needs at least {} samples, got {m}",
            degree + 1
        )));
    }
    let nodes = equispaced_nodes(m)?;
    let qt = cheb_vandermonde(degree, &nodes).transpose();
    let qr = HouseholderQr::new(&qt)?;
    let n = x.n_rows();
    let mut coefficients = DenseMatrix::zeros(n, degree + 1);
    for i in 0..n {
        let c = qr.solve_lstsq(&x.row(i))?;
        for (k, ck) in c.into_iter().enumerate() {
            coefficients[(i, k)] = ck;
        }
    }
    Ok(ChebFit {
        coefficients,
        degree,
        nodes,
    })
}

pub fn extrapolate(fit: &ChebFit, t: f64) -> Vec<f64> {
    fit.evaluate(t)
}

/// Inputs shared by the bound formulas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BernsteinParams {
    pub rho: f64,
    pub kappa_rho: f64,
    /// Extrapolation target, `≥ 1`.
    pub t_next: f64,
    /// History size M.
    pub history_size: usize,
    /// Polynomial degree R.
    pub degree: usize,
}

impl BernsteinParams {
    pub fn new(rho: f64, kappa_rho: f64, t_next: f64, history_size: usize, degree: usize) -> Result<Self> {
        if rho.is_nan() || rho <= 1.0 || rho.is_infinite() {
            return Err(Error::InvalidArgument(format!("rho must exceed 1, got {rho}")));
        }
        if !kappa_rho.is_finite() || kappa_rho < 0.0 {
            return Err(Error::InvalidArgument(format!("kappa_rho must be finite and >= 0, got {kappa_rho}")));
        }
        if !t_next.is_finite() || t_next < 1.0 {
            return Err(Error::InvalidArgument(format!("t_next must be >= 1, got {t_next}")));
        }
        if history_size < 2 {
            return Err(Error::InvalidArgument(format!("history size must be >= 2, got {history_size}")));
        }
        Ok(Self {
            rho,
            kappa_rho,
            t_next,
            history_size,
            degree,
        })
    }

    /// `(t + √(t²−1)) / ρ`
    pub fn r(&self) -> f64 {
        let t = self.t_next;
        (t + (t * t - 1.0).sqrt()) / self.rho
    }

    fn check_applicable(&self) -> Result<f64> {
        let r = self.r();
        if r >= 1.0 {
            return Err(Error::BoundNotApplicable(format!(
                "target t={} lies outside the ellipse (r={r} >= 1)",
                self.t_next
            )));
        }
        if self.rho * r <= 1.0 {
            return Err(Error::BoundNotApplicable(format!(
                "rho*r = {} <= 1: the bound degenerates",
                self.rho * r
            )));
        }
        if !is_admissible(self.history_size, self.degree) {
            return Err(Error::BoundNotApplicable(format!(
                "degree {} exceeds sqrt(M-1)/2 for M={}",
                self.degree, self.history_size
            )));
        }
        Ok(r)
    }
}

/// `2ρκ_ρ√M ρ^{−k} / (1 − ρ⁻¹)`, bounding the k-th largest (1-based)
/// singular value of the history matrix. Only `rho`, `kappa_rho` and
/// `history_size` are used.
pub fn bound_sigma_decay(p: &BernsteinParams, k: usize) -> Result<f64> {
    if p.rho.is_nan() || p.rho <= 1.0 {
        return Err(Error::InvalidArgument(format!("rho must exceed 1, got {}", p.rho)));
    }
    let rho = p.rho;
    Ok(2.0 * rho * p.kappa_rho * (p.history_size as f64).sqrt() * rho.powi(-(k as i32)) / (1.0 - 1.0 / rho))
}

/// `5√5 √(2R+1) √M / √(2(M−1))`; infinite for `M = 1`.
pub fn c_of_m_r(m: usize, degree: usize) -> f64 {
    let (mf, rf) = (m as f64, degree as f64);
    5.0 * 5f64.sqrt() * (2.0 * rf + 1.0).sqrt() * mf.sqrt() / (2.0 * (mf - 1.0)).sqrt()
}

fn residual_bound(p: &BernsteinParams, norm_a: f64, eps: f64) -> Result<f64> {
    let r = p.check_applicable()?;
    let rho = p.rho;
    let c = c_of_m_r(p.history_size, p.degree);
    let compression = eps * rho.powi(p.degree as i32) / (2.0 * (p.history_size as f64).sqrt() * p.kappa_rho);
    // κ_ρ = 0 would turn the unused term into 0/0
    let compression = if eps == 0.0 { 0.0 } else { compression };
    let bracket = 1.0 / (1.0 - r) + c * rho / (rho * rho * r * r - 1.0).sqrt() * (1.0 / (rho - 1.0) + compression);
    Ok(2.0 * norm_a * p.kappa_rho * bracket * r.powi(p.degree as i32 + 1))
}

/// Residual bound for the projected guess built from the uncompressed
/// history:
/// `2‖A‖κ_ρ [1/(1−r) + C(M,R) ρ / ((ρ−1)√(ρ²r²−1))] r^{R+1}`.
///
/// With `norm_a = 1` this is the extrapolation error bound for `p_R(t)`.
pub fn bound_guess_residual(p: &BernsteinParams, norm_a: f64) -> Result<f64> {
    residual_bound(p, norm_a, 0.0)
}

/// Residual bound when the basis only captures the history up to
/// `‖(QQᵀ − I)X‖₂ ≤ eps`.
pub fn bound_compressed(p: &BernsteinParams, norm_a: f64, eps: f64) -> Result<f64> {
    if eps.is_nan() || eps < 0.0 {
        return Err(Error::InvalidArgument(format!("eps must be >= 0, got {eps}")));
    }
    residual_bound(p, norm_a, eps)
}

/// `(√2 / (5√5)) √(M−1) / √(2R+1)`, a lower bound on the smallest singular
/// value of the equispaced Chebyshev–Vandermonde matrix for admissible R.
pub fn sigma_min_lower_bound(m: usize, degree: usize) -> Result<f64> {
    if m < 2 || !is_admissible(m, degree) {
        return Err(Error::BoundNotApplicable(format!(
            "degree {degree} exceeds sqrt(M-1)/2 for M={m}"
        )));
    }
    Ok(2f64.sqrt() / (5.0 * 5f64.sqrt()) * ((m - 1) as f64).sqrt() / ((2 * degree + 1) as f64).sqrt())
}

/// Point of `∂E_ρ` at angle θ: `(ρe^{iθ} + ρ⁻¹e^{−iθ}) / 2`.
pub fn ellipse_point(rho: f64, theta: f64) -> Complex64 {
    let w = Complex64::from_polar(rho, theta);
    (w + w.inv()) * 0.5
}

/// Maximum of `norm(t)` over `samples` equispaced angles on `∂E_ρ`.
pub fn estimate_kappa_rho(rho: f64, samples: usize, norm: impl Fn(Complex64) -> f64) -> f64 {
    (0..samples)
        .map(|j| norm(ellipse_point(rho, std::f64::consts::TAU * j as f64 / samples as f64)))
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::la::svd_thin;

    #[test]
    fn cheb_vector_small_cases() {
        assert_eq!(cheb_vector(0, 0.3), vec![1.0]);
        assert_eq!(cheb_vector(1, -0.7), vec![1.0, -0.7]);
        assert_eq!(cheb_vector(2, 0.5), vec![1.0, 0.5, -0.5]);
    }

    #[test]
    fn cheb_vector_matches_closed_forms() {
        for &t in &[1.2, 1.02, 3.5] {
            let q = cheb_vector(12, t);
            for (k, qk) in q.iter().enumerate() {
                let want = (k as f64 * f64::acosh(t)).cosh();
                assert!((qk - want).abs() <= 1e-12 * want.abs(), "k={k} t={t}");
            }
        }
        for &t in &[-0.9, 0.0, 0.37, 1.0] {
            let q = cheb_vector(15, t);
            for (k, qk) in q.iter().enumerate() {
                assert!((qk - (k as f64 * t.acos()).cos()).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn nodes_are_equispaced() {
        let t = equispaced_nodes(5).unwrap();
        assert_eq!(t, vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
        assert!(equispaced_nodes(1).is_err());
    }

    #[test]
    fn admissible_degrees() {
        assert_eq!(max_admissible_degree(101), 5);
        assert_eq!(max_admissible_degree(100), 4);
        assert_eq!(max_admissible_degree(17), 2);
        assert_eq!(max_admissible_degree(2), 0);
    }

    fn sample_history(m: usize, f: impl Fn(f64) -> Vec<f64>) -> DenseMatrix {
        let cols: Vec<Vec<f64>> = equispaced_nodes(m).unwrap().into_iter().map(f).collect();
        DenseMatrix::from_columns(cols[0].len(), &cols).unwrap()
    }

    #[test]
    fn polynomial_history_is_reproduced() {
        let f = |t: f64| vec![1.0 + 2.0 * t - t * t * t, t * t, 0.5];
        let x = sample_history(9, f);
        let fit = cheb_lsq_fit(&x, 3).unwrap();
        assert!(fit.residual_norm(&x).unwrap() <= 1e-9 * x.frobenius_norm());
        let t = 1.25;
        for (got, want) in fit.evaluate(t).iter().zip(f(t)) {
            assert!((got - want).abs() < 1e-10);
        }
    }

    #[test]
    fn constant_fit_is_the_row_mean() {
        let x = DenseMatrix::from_rows(&[&[1.0, 2.0, 6.0], &[-1.0, 0.0, 4.0]]).unwrap();
        let fit = cheb_lsq_fit(&x, 0).unwrap();
        assert!((fit.coefficients()[(0, 0)] - 3.0).abs() < 1e-14);
        assert!((fit.coefficients()[(1, 0)] - 1.0).abs() < 1e-14);
        assert_eq!(extrapolate(&fit, 7.0), fit.evaluate(-3.0));
    }

    #[test]
    fn linear_extrapolation_is_exact() {
        let m = 11;
        let dt = 2.0 / (m - 1) as f64;
        let x = sample_history(m, |t| vec![3.0 * t - 1.0, -t]);
        for r in 1..4 {
            let fit = cheb_lsq_fit(&x, r).unwrap();
            let p = extrapolate(&fit, 1.0 + dt);
            assert!((p[0] - (3.0 * (1.0 + dt) - 1.0)).abs() < 1e-10);
            assert!((p[1] + 1.0 + dt).abs() < 1e-10);
        }
    }

    /// Normal equations `C (Q Qᵀ) = X Qᵀ` solved by Gaussian elimination.
    #[test]
    fn fit_matches_normal_equations() {
        let x = sample_history(9, |t| vec![t.exp() * (3.0 * t).sin(), 1.0 / (t - 3.0), (5.0 * t).cos()]);
        let r = 3;
        let fit = cheb_lsq_fit(&x, r).unwrap();
        let q = cheb_vandermonde(r, &equispaced_nodes(9).unwrap());
        let g = q.matmul(&q.transpose()).unwrap();
        for i in 0..3 {
            let rhs = q.matvec(&x.row(i)).unwrap();
            let c = gauss_solve(&g, &rhs);
            for (k, ck) in c.iter().enumerate() {
                assert!((ck - fit.coefficients()[(i, k)]).abs() < 1e-8);
            }
        }
        // the residual is a minimum: perturbing C can only increase it
        let base = fit.residual_norm(&x).unwrap();
        let mut other = fit.clone();
        other.coefficients[(1, 2)] += 1e-4;
        assert!(other.residual_norm(&x).unwrap() > base);
    }

    fn gauss_solve(a: &DenseMatrix, b: &[f64]) -> Vec<f64> {
        let n = b.len();
        let mut m: Vec<Vec<f64>> = (0..n).map(|i| {
            let mut row = a.row(i);
            row.push(b[i]);
            row
        }).collect();
        for k in 0..n {
            let p = (k..n).max_by(|&i, &j| m[i][k].abs().total_cmp(&m[j][k].abs())).unwrap();
            m.swap(k, p);
            let (top, rest) = m.split_at_mut(k + 1);
            let pivot = &top[k];
            for row in rest {
                let f = row[k] / pivot[k];
                for (v, p) in row[k..].iter_mut().zip(&pivot[k..]) {
                    *v -= f * p;
                }
            }
        }
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|j| m[i][j] * x[j]).sum();
            x[i] = (m[i][n] - s) / m[i][i];
        }
        x
    }

    #[test]
    fn fit_rejects_high_degree() {
        let x = DenseMatrix::zeros(2, 4);
        assert!(cheb_lsq_fit(&x, 4).is_err());
        assert!(cheb_lsq_fit(&x, 3).is_ok());
    }

    #[test]
    fn sigma_decay_spot_values() {
        let p = BernsteinParams::new(2.0, 1.0, 1.0, 16, 0).unwrap();
        assert!((bound_sigma_decay(&p, 4).unwrap() - 2.0).abs() < 1e-15);
        let ratio = bound_sigma_decay(&p, 5).unwrap() / bound_sigma_decay(&p, 4).unwrap();
        assert!((ratio - 0.5).abs() < 1e-15);
    }

    #[test]
    fn c_of_m_r_values() {
        assert!((c_of_m_r(5, 1) - 25.0 * 3f64.sqrt() / (2.0 * 2f64.sqrt())).abs() < 1e-12);
        assert!((c_of_m_r(5, 1) - 15.309_310_892_394_862).abs() < 1e-10);
        let limit = 5.0 * 5f64.sqrt() * 7f64.sqrt() / 2f64.sqrt();
        assert!((c_of_m_r(10_000_000, 3) - limit).abs() < 1e-5);
        // C scales with √(2R+1): R=1 -> 3, R=4 -> 9
        let ratio = c_of_m_r(50, 4) / c_of_m_r(50, 1);
        assert!((ratio - 3f64.sqrt()).abs() < 1e-12);
    }

    /// Independently typed-in evaluation of the residual bound.
    fn oracle(rho: f64, kappa: f64, m: f64, r_deg: f64, t: f64, norm_a: f64, eps: f64) -> f64 {
        let r = (t + (t.powi(2) - 1.0).sqrt()) / rho;
        let c = 5.0 * 5f64.sqrt() * (2.0 * r_deg + 1.0).sqrt() * m.sqrt() / (2.0 * (m - 1.0)).sqrt();
        let term = c * rho / ((rho * r).powi(2) - 1.0).sqrt();
        let tail = 1.0 / (rho - 1.0) + eps * rho.powf(r_deg) / (2.0 * m.sqrt() * kappa);
        2.0 * norm_a * kappa * (1.0 / (1.0 - r) + term * tail) * r.powf(r_deg + 1.0)
    }

    #[test]
    fn guess_residual_double_entry() {
        let t = 1.0 + 2.0 / 99.0;
        let p = BernsteinParams::new(3.0, 2.0, t, 100, 4).unwrap();
        let got = bound_guess_residual(&p, 1.0).unwrap();
        let want = oracle(3.0, 2.0, 100.0, 4.0, t, 1.0, 0.0);
        assert!((got - want).abs() <= 1e-13 * want, "{got} vs {want}");
        let got = bound_compressed(&p, 2.5, 1e-3).unwrap();
        let want = oracle(3.0, 2.0, 100.0, 4.0, t, 2.5, 1e-3);
        assert!((got - want).abs() <= 1e-13 * want);
    }

    #[test]
    fn compressed_reduces_exactly_and_is_affine() {
        let t = 1.0 + 2.0 / 99.0;
        let p = BernsteinParams::new(2.2, 1.7, t, 100, 3).unwrap();
        let base = bound_guess_residual(&p, 3.0).unwrap();
        assert_eq!(bound_compressed(&p, 3.0, 0.0).unwrap().to_bits(), base.to_bits());
        let b1 = bound_compressed(&p, 3.0, 1e-2).unwrap();
        let b2 = bound_compressed(&p, 3.0, 2e-2).unwrap();
        assert!(b1 > base);
        assert!(((b2 - b1) - (b1 - base)).abs() <= 1e-12 * b2);
        assert!(bound_compressed(&p, 3.0, -1.0).is_err());
    }

    #[test]
    fn degree_step_scales_by_r() {
        let t = 1.05;
        let p3 = BernsteinParams::new(3.0, 1.0, t, 200, 3).unwrap();
        let p4 = BernsteinParams { degree: 4, ..p3 };
        let r = p3.r();
        let c_ratio = (9.0f64 / 7.0).sqrt();
        let b3 = bound_guess_residual(&p3, 1.0).unwrap();
        let b4 = bound_guess_residual(&p4, 1.0).unwrap();
        // b4/b3 lies between r (first term) and r·C-ratio (second term)
        let ratio = b4 / b3;
        assert!(ratio >= r * (1.0 - 1e-14) && ratio <= r * c_ratio * (1.0 + 1e-14));
    }

    #[test]
    fn bound_guards() {
        // target outside the ellipse
        let p = BernsteinParams::new(1.1, 1.0, 1.1, 100, 2).unwrap();
        assert!(matches!(bound_guess_residual(&p, 1.0), Err(Error::BoundNotApplicable(_))));
        // rho r = 1 at t = 1
        let p = BernsteinParams::new(3.0, 1.0, 1.0, 100, 2).unwrap();
        assert!(matches!(bound_guess_residual(&p, 1.0), Err(Error::BoundNotApplicable(_))));
        // inadmissible degree
        let p = BernsteinParams::new(3.0, 1.0, 1.02, 100, 5).unwrap();
        assert!(matches!(bound_guess_residual(&p, 1.0), Err(Error::BoundNotApplicable(_))));
        assert!(BernsteinParams::new(1.0, 1.0, 1.02, 100, 2).is_err());
        assert!(BernsteinParams::new(2.0, 1.0, 0.5, 100, 2).is_err());
    }

    #[test]
    fn bound_vanishes_with_r() {
        let mut prev = f64::INFINITY;
        for rho in [4.0, 8.0, 16.0, 64.0] {
            let p = BernsteinParams::new(rho, 1.0, 1.5, 100, 4).unwrap();
            let b = bound_guess_residual(&p, 1.0).unwrap();
            assert!(b < prev);
            prev = b;
        }
        assert!(prev < 1e-5);
    }

    #[test]
    fn sigma_min_bound_values() {
        let want = 2f64.sqrt() / (5.0 * 5f64.sqrt()) * 10.0 / 11f64.sqrt();
        assert!((sigma_min_lower_bound(101, 5).unwrap() - want).abs() < 1e-15);
        assert!((want - 0.381_385).abs() < 1e-5);
        assert!(sigma_min_lower_bound(101, 6).is_err());
    }

    #[test]
    fn sigma_min_bound_holds_numerically() {
        for m in [5, 10, 17, 26, 50, 101, 401] {
            for r in 0..=max_admissible_degree(m) {
                let q = cheb_vandermonde(r, &equispaced_nodes(m).unwrap());
                let s = svd_thin(&q.transpose()).unwrap().singular_values;
                let smin = *s.last().unwrap();
                assert!(smin >= sigma_min_lower_bound(m, r).unwrap(), "M={m} R={r}");
            }
        }
    }

    #[test]
    fn ellipse_geometry() {
        let rho: f64 = 2.5;
        let a = (rho + 1.0 / rho) / 2.0;
        let b = (rho - 1.0 / rho) / 2.0;
        for j in 0..16 {
            let z = ellipse_point(rho, j as f64 * 0.4);
            assert!(((z.re / a).powi(2) + (z.im / b).powi(2) - 1.0).abs() < 1e-13);
            // foci at ±1: distance sum equals the major axis
            let d = (z - 1.0).norm() + (z + 1.0).norm();
            assert!((d - 2.0 * a).abs() < 1e-13);
        }
    }

    #[test]
    fn kappa_of_exponential_is_attained_at_the_right_vertex() {
        let rho: f64 = 3.0;
        let k = estimate_kappa_rho(rho, 512, |t| t.exp().norm());
        assert!((k - ((rho + 1.0 / rho) / 2.0).exp()).abs() < 1e-12);
        // cos(5t): maximum at the top of the ellipse, cosh(5b)
        let k = estimate_kappa_rho(rho, 512, |t| (t * 5.0).cos().norm());
        let top = (5.0 * (rho - 1.0 / rho) / 2.0).cosh();
        assert!(k <= top * (1.0 + 1e-12) && k >= top * 0.999);
    }

    /// Chebyshev coefficients of analytic functions decay like
    /// `2κ_ρ ρ^{−k}`; the interpolation coefficients on many Chebyshev
    /// points approximate them.
    #[test]
    fn coefficient_decay_for_analytic_functions() {
        let rho: f64 = 2.5;
        let f = |t: f64| vec![t.exp() * (3.0 * t).sin(), 1.0 / (t - 3.0), (5.0 * t).cos()];
        let kappa = estimate_kappa_rho(rho, 512, |t| {
            let v = [t.exp() * (t * 3.0).sin(), (t - 3.0).inv(), (t * 5.0).cos()];
            v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
        });
        let n = 64;
        let pts: Vec<f64> = (0..n)
            .map(|j| ((j as f64 + 0.5) * std::f64::consts::PI / n as f64).cos())
            .collect();
        let vals: Vec<Vec<f64>> = pts.iter().map(|&t| f(t)).collect();
        for k in 0..30 {
            let mut c = [0.0; 3];
            for (t, v) in pts.iter().zip(&vals) {
                let tk = (k as f64 * t.acos()).cos();
                for i in 0..3 {
                    c[i] += v[i] * tk;
                }
            }
            let scale = if k == 0 { 1.0 } else { 2.0 } / n as f64;
            let norm = c.iter().map(|ci| (ci * scale).powi(2)).sum::<f64>().sqrt();
            assert!(norm <= 2.0 * kappa * rho.powi(-k) * 1.05, "k={k}");
        }
    }
}
