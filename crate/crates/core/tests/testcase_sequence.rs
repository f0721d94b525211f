//! Whole-sequence properties of the elliptic test problem.

use seqaccel::krylov::{gmres, GmresConfig, Ilu0Factors};
use seqaccel::la::{svd_thin, DenseMatrix};
use seqaccel::testcase::{
    assemble_with, coefficient_a, exact_solution, system_sequence, Grid2d, RhsMode, TimeGrid,
};

fn max_error(n: usize, t: f64) -> f64 {
    let grid = Grid2d::new(n, n).unwrap();
    let (a, b) = assemble_with(&grid, t, RhsMode::Continuous).unwrap();
    let ilu = Ilu0Factors::factor(&a).unwrap();
    let cfg = GmresConfig { tol: 1e-13, max_iters: 2000, restart: None };
    let (x, stats) = gmres(&a, Some(&ilu), &b, &vec![0.0; b.len()], &cfg).unwrap();
    assert!(stats.converged);
    x.iter()
        .zip(exact_solution(&grid, t))
        .map(|(u, v)| (u - v).abs())
        .fold(0.0, f64::max)
}

/// Grid refinement with the analytic source term. A small time keeps the
/// oscillation resolved on the 20-point grid.
#[test]
fn fourth_order_convergence() {
    let t = 0.2;
    let errs: Vec<f64> = [20, 40, 80].iter().map(|&n| max_error(n, t)).collect();
    for w in errs.windows(2) {
        let ratio = w[0] / w[1];
        assert!((16.0 * 0.7..=16.0 * 1.3).contains(&ratio), "errors {errs:?}, ratio {ratio}");
    }
}

#[test]
fn every_step_is_elliptic_and_solvable() {
    let grid = Grid2d::new(20, 20).unwrap();
    let time = TimeGrid::new(2.3, 1e-3, 10).unwrap();
    let cfg = GmresConfig::default();
    for sys in system_sequence(grid, time, RhsMode::Discrete) {
        let sys = sys.unwrap();
        let amin = (0..=21)
            .flat_map(|i| (0..=21).map(move |j| (i, j)))
            .map(|(i, j)| coefficient_a(grid.x(i), grid.y(j), sys.t))
            .fold(f64::INFINITY, f64::min);
        assert!(amin >= 1.1);
        let ilu = Ilu0Factors::factor(&sys.matrix).unwrap();
        let (_, stats) = gmres(&sys.matrix, Some(&ilu), &sys.rhs, &vec![0.0; grid.n()], &cfg).unwrap();
        assert!(stats.converged, "step {}", sys.step);
    }
}

/// The exact-solution history at the reference step size has exponentially
/// decaying singular values.
#[test]
fn history_singular_values_decay() {
    let grid = Grid2d::new(100, 100).unwrap();
    let time = TimeGrid::new(2.3, 1e-3, 35).unwrap();
    let cols: Vec<Vec<f64>> = (0..time.nt).map(|i| exact_solution(&grid, time.t(i))).collect();
    let x = DenseMatrix::from_columns(grid.n(), &cols).unwrap();
    let s = svd_thin(&x).unwrap().singular_values;
    // fit log σ_k against k over the part above roundoff
    let pts: Vec<(f64, f64)> = s
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > 1e-13 * s[0])
        .map(|(k, &v)| (k as f64, v.ln()))
        .collect();
    assert!(pts.len() >= 5);
    let n = pts.len() as f64;
    let (mx, my) = (pts.iter().map(|p| p.0).sum::<f64>() / n, pts.iter().map(|p| p.1).sum::<f64>() / n);
    let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
        / pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    assert!(slope <= -0.1, "slope {slope}, sigma {s:?}");
}
