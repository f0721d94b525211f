//! Sequence of variable-coefficient elliptic systems used to exercise the
//! guess strategies.
//!
//! On the unit square, `∇·(a ∇f) = g` with
//!
//! ```text
//! a(x, y, t) = exp(−(x−½)² − (y−½)²) cos(t x) + 2.1
//! f(x, y, t) = sin(4π y t) sin(15π x t) [1 + sin(15π x t) cos(3π y t) exp((x−½)² + (y−½)² − ¼²)]
//! ```
//!
//! is discretized with fourth-order finite differences on an `nx × ny`
//! interior grid. The operator is expanded as
//! `a Δf + ∂ₓa ∂ₓf + ∂ᵧa ∂ᵧf` and each 1-D derivative uses the centered
//! five-point stencil away from the boundary; the first interior node next
//! to a wall uses a six-node one-sided-biased stencil. Unknowns are ordered
//! with x fastest: interior node `(i, j)` (1-based) has index
//! `(j − 1)·nx + (i − 1)`.
//!
//! By default the right-hand side is the discrete manufactured one,
//! `b = A(t) f(t)` sampled at the interior nodes, so the exact discrete
//! solution is known. [`RhsMode::Continuous`] instead samples the analytic
//! `g` and lifts the exact boundary values of `f` to the right-hand side;
//! it exists for convergence-order checks.

use crate::error::{Error, Result};
use crate::la::CsrMatrix;

pub const DEFAULT_T0: f64 = 2.3;
pub const DEFAULT_NT: usize = 200;

const MIN_POINTS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grid2d {
    nx: usize,
    ny: usize,
}

impl Grid2d {
    pub fn new(nx: usize, ny: usize) -> Result<Self> {
        if nx < MIN_POINTS || ny < MIN_POINTS {
            return Err(Error::InvalidArgument(format!(
                "grid {nx}x{ny} too small for the fourth-order stencil (need >= {MIN_POINTS} per direction)"
            )));
        }
        Ok(Self { nx, ny })
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn hx(&self) -> f64 {
        1.0 / (self.nx + 1) as f64
    }

    pub fn hy(&self) -> f64 {
        1.0 / (self.ny + 1) as f64
    }

    /// Number of unknowns.
    pub fn n(&self) -> usize {
        self.nx * self.ny
    }

    /// x coordinate of node `i`, `0 ..= nx + 1` (0 and nx+1 on the wall).
    pub fn x(&self, i: usize) -> f64 {
        i as f64 * self.hx()
    }

    pub fn y(&self, j: usize) -> f64 {
        j as f64 * self.hy()
    }

    /// Unknown index of interior node `(i, j)`, both 1-based.
    pub fn index(&self, i: usize, j: usize) -> usize {
        debug_assert!((1..=self.nx).contains(&i) && (1..=self.ny).contains(&j));
        (j - 1) * self.nx + (i - 1)
    }

    /// Samples `f` at the interior nodes in unknown order.
    pub fn sample(&self, f: impl Fn(f64, f64) -> f64) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.n());
        for j in 1..=self.ny {
            for i in 1..=self.nx {
                out.push(f(self.x(i), self.y(j)));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub t0: f64,
    pub dt: f64,
    pub nt: usize,
}

impl TimeGrid {
    /// `dt = 0` is accepted and gives a stationary sequence.
    pub fn new(t0: f64, dt: f64, nt: usize) -> Result<Self> {
        if !t0.is_finite() || !dt.is_finite() || dt < 0.0 {
            return Err(Error::InvalidArgument(format!("invalid time grid t0={t0}, dt={dt}")));
        }
        Ok(Self { t0, dt, nt })
    }

    /// `t0 = 2.3`, `nt = 200`.
    pub fn with_defaults(dt: f64) -> Result<Self> {
        Self::new(DEFAULT_T0, dt, DEFAULT_NT)
    }

    pub fn t(&self, i: usize) -> f64 {
        self.t0 + i as f64 * self.dt
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RhsMode {
    /// `b = A(t) · f(t)` at the interior nodes.
    #[default]
    Discrete,
    /// Analytic `g(t)` with the exact boundary values lifted.
    Continuous,
}

fn bump(x: f64, y: f64) -> f64 {
    (-(x - 0.5).powi(2) - (y - 0.5).powi(2)).exp()
}

pub fn coefficient_a(x: f64, y: f64, t: f64) -> f64 {
    bump(x, y) * (t * x).cos() + 2.1
}

/// `(∂ₓa, ∂ᵧa)`
pub fn coefficient_a_grad(x: f64, y: f64, t: f64) -> (f64, f64) {
    let e = bump(x, y);
    let (s, c) = (t * x).sin_cos();
    (
        e * (-2.0 * (x - 0.5) * c - t * s),
        e * (-2.0 * (y - 0.5) * c),
    )
}

pub fn exact_f(x: f64, y: f64, t: f64) -> f64 {
    let pi = std::f64::consts::PI;
    let s = (4.0 * pi * y * t).sin();
    let tx = (15.0 * pi * x * t).sin();
    let c = (3.0 * pi * y * t).cos();
    let e = ((x - 0.5).powi(2) + (y - 0.5).powi(2) - 0.0625).exp();
    s * tx * (1.0 + tx * c * e)
}

/// Value and first/second partial derivatives of the manufactured solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolutionDerivatives {
    pub f: f64,
    pub fx: f64,
    pub fy: f64,
    pub fxx: f64,
    pub fyy: f64,
}

/// Hand-expanded derivatives of `f = S T + S C T² E` with
/// `S = sin(4πyt)`, `T = sin(15πxt)`, `C = cos(3πyt)`,
/// `E = exp((x−½)² + (y−½)² − ¼²)`.
pub fn exact_f_derivatives(x: f64, y: f64, t: f64) -> SolutionDerivatives {
    let pi = std::f64::consts::PI;
    let (al, be, ga) = (15.0 * pi * t, 4.0 * pi * t, 3.0 * pi * t);
    let (dx, dy) = (x - 0.5, y - 0.5);

    let (s, s_cos) = (be * y).sin_cos();
    let s_y = be * s_cos;
    let s_yy = -be * be * s;

    let (tt, t_cos) = (al * x).sin_cos();
    let t_x = al * t_cos;
    let t_xx = -al * al * tt;

    let (c_sin, c) = (ga * y).sin_cos();
    let c_y = -ga * c_sin;
    let c_yy = -ga * ga * c;

    let e = (dx * dx + dy * dy - 0.0625).exp();
    let e_x = 2.0 * dx * e;
    let e_xx = (2.0 + 4.0 * dx * dx) * e;
    let e_y = 2.0 * dy * e;
    let e_yy = (2.0 + 4.0 * dy * dy) * e;

    let p = tt * tt * e;
    let p_x = 2.0 * tt * t_x * e + tt * tt * e_x;
    let p_xx = 2.0 * t_x * t_x * e + 2.0 * tt * t_xx * e + 4.0 * tt * t_x * e_x + tt * tt * e_xx;

    let q_y = s_y * c * e + s * c_y * e + s * c * e_y;
    let q_yy = s_yy * c * e
        + s * c_yy * e
        + s * c * e_yy
        + 2.0 * (s_y * c_y * e + s_y * c * e_y + s * c_y * e_y);

    SolutionDerivatives {
        f: s * tt + s * c * p,
        fx: s * t_x + s * c * p_x,
        fy: s_y * tt + tt * tt * q_y,
        fxx: s * t_xx + s * c * p_xx,
        fyy: s_yy * tt + tt * tt * q_yy,
    }
}

/// `g = ∇·(a ∇f) = a Δf + ∂ₓa ∂ₓf + ∂ᵧa ∂ᵧf` for the manufactured `f`.
pub fn source_g(x: f64, y: f64, t: f64) -> f64 {
    let d = exact_f_derivatives(x, y, t);
    let a = coefficient_a(x, y, t);
    let (ax, ay) = coefficient_a_grad(x, y, t);
    a * (d.fxx + d.fyy) + ax * d.fx + ay * d.fy
}

/// Finite-difference weights for the derivative of order `order` at 0 on
/// the given node offsets (Fornberg's recursion, unit spacing).
pub fn fd_weights(offsets: &[f64], order: usize) -> Vec<f64> {
    let n = offsets.len();
    assert!(order < n, "need more nodes than the derivative order");
    // c[k][j]: weight of node j for derivative k
    let mut c = vec![vec![0.0; n]; order + 1];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = offsets[0];
    for i in 1..n {
        let mn = i.min(order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = offsets[i];
        for j in 0..i {
            let c3 = offsets[i] - offsets[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c.swap_remove(order)
}

/// Stencil nodes (absolute node indices along one axis) and unit-spacing
/// first/second derivative weights at interior node `i` of `n_interior`.
struct AxisStencil {
    nodes: Vec<usize>,
    d1: Vec<f64>,
    d2: Vec<f64>,
}

fn axis_stencil(i: usize, n_interior: usize) -> AxisStencil {
    let first = if i == 1 {
        0
    } else if i == n_interior {
        n_interior - 4
    } else {
        i - 2
    };
    let len = if i == 1 || i == n_interior { 6 } else { 5 };
    let nodes: Vec<usize> = (first..first + len).collect();
    let offsets: Vec<f64> = nodes.iter().map(|&p| p as f64 - i as f64).collect();
    AxisStencil {
        d1: fd_weights(&offsets, 1),
        d2: fd_weights(&offsets, 2),
        nodes,
    }
}

/// Assembles the discrete `∇·(a ∇·)` for a coefficient given pointwise as
/// `(a, ∂ₓa, ∂ᵧa)`. Returns the matrix over interior unknowns and the
/// boundary lift `Σ w · u_boundary` per row, with `u_boundary` from
/// `boundary`; for homogeneous walls pass `|_, _| 0.0`.
pub fn assemble_operator(
    grid: &Grid2d,
    coeff: impl Fn(f64, f64) -> (f64, f64, f64),
    boundary: impl Fn(f64, f64) -> f64,
) -> Result<(CsrMatrix, Vec<f64>)> {
    let (nx, ny) = (grid.nx(), grid.ny());
    let (hx, hy) = (grid.hx(), grid.hy());
    let xs: Vec<AxisStencil> = (1..=nx).map(|i| axis_stencil(i, nx)).collect();
    let ys: Vec<AxisStencil> = (1..=ny).map(|j| axis_stencil(j, ny)).collect();

    let mut triplets = Vec::with_capacity(grid.n() * 11);
    let mut lift = vec![0.0; grid.n()];
    for j in 1..=ny {
        for i in 1..=nx {
            let row = grid.index(i, j);
            let (x, y) = (grid.x(i), grid.y(j));
            let (a, ax, ay) = coeff(x, y);
            let sx = &xs[i - 1];
            for (k, &p) in sx.nodes.iter().enumerate() {
                let w = a * sx.d2[k] / (hx * hx) + ax * sx.d1[k] / hx;
                if (1..=nx).contains(&p) {
                    triplets.push((row, grid.index(p, j), w));
                } else {
                    lift[row] += w * boundary(grid.x(p), y);
                }
            }
            let sy = &ys[j - 1];
            for (k, &q) in sy.nodes.iter().enumerate() {
                let w = a * sy.d2[k] / (hy * hy) + ay * sy.d1[k] / hy;
                if (1..=ny).contains(&q) {
                    triplets.push((row, grid.index(i, q), w));
                } else {
                    lift[row] += w * boundary(x, grid.y(q));
                }
            }
        }
    }
    let a = CsrMatrix::from_triplets(grid.n(), grid.n(), &triplets)?;
    Ok((a, lift))
}

pub fn exact_solution(grid: &Grid2d, t: f64) -> Vec<f64> {
    grid.sample(|x, y| exact_f(x, y, t))
}

fn reference_coefficient(t: f64) -> impl Fn(f64, f64) -> (f64, f64, f64) {
    move |x, y| {
        let (ax, ay) = coefficient_a_grad(x, y, t);
        (coefficient_a(x, y, t), ax, ay)
    }
}

/// `A(t)` and the discrete manufactured right-hand side `A(t) f(t)`.
pub fn assemble(grid: &Grid2d, t: f64) -> Result<(CsrMatrix, Vec<f64>)> {
    assemble_with(grid, t, RhsMode::Discrete)
}

pub fn assemble_with(grid: &Grid2d, t: f64, mode: RhsMode) -> Result<(CsrMatrix, Vec<f64>)> {
    match mode {
        RhsMode::Discrete => {
            let (a, _) = assemble_operator(grid, reference_coefficient(t), |_, _| 0.0)?;
            let b = a.spmv(&exact_solution(grid, t))?;
            Ok((a, b))
        }
        RhsMode::Continuous => {
            let (a, lift) =
                assemble_operator(grid, reference_coefficient(t), |x, y| exact_f(x, y, t))?;
            let g = grid.sample(|x, y| source_g(x, y, t));
            let b = g.iter().zip(&lift).map(|(g, l)| g - l).collect();
            Ok((a, b))
        }
    }
}

#[derive(Debug, Clone)]
pub struct LinearSystem {
    pub step: usize,
    pub t: f64,
    pub matrix: CsrMatrix,
    pub rhs: Vec<f64>,
}

/// Lazily assembled systems at `t_i = t0 + i·dt`, `i < nt`.
#[derive(Debug, Clone)]
pub struct SystemSequence {
    grid: Grid2d,
    time: TimeGrid,
    mode: RhsMode,
    next: usize,
}

impl Iterator for SystemSequence {
    type Item = Result<LinearSystem>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.next >= self.time.nt {
            return None;
        }
        let step = self.next;
        self.next += 1;
        let t = self.time.t(step);
        Some(assemble_with(&self.grid, t, self.mode).map(|(matrix, rhs)| LinearSystem {
            step,
            t,
            matrix,
            rhs,
        }))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.time.nt - self.next;
        (left, Some(left))
    }
}

impl ExactSizeIterator for SystemSequence {}

pub fn system_sequence(grid: Grid2d, time: TimeGrid, mode: RhsMode) -> SystemSequence {
    SystemSequence {
        grid,
        time,
        mode,
        next: 0,
    }
}
