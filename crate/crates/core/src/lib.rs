//! Initial-guess acceleration for sequences of slowly varying sparse linear
//! systems `A(t_i) x(t_i) = b(t_i)`.
//!
//! The solution history of the last `M` timesteps is compressed into an
//! `m`-dimensional orthonormal basis, either by POD (truncated SVD) or by a
//! randomized range finder whose sketch is updated with two rank-one
//! corrections per timestep. The next system is then projected onto that
//! basis and the residual-minimizing element is handed to GMRES as the
//! starting vector.
//!
//! Modules:
//!
//! - [`la`]: dense and CSR kernels, Householder QR, thin SVD, least squares.
//! - [`krylov`]: ILU(0) and right-preconditioned GMRES.
//! - [`recycle`]: history window, POD and sketch bases, projected guess.
//! - [`theory`]: Chebyshev least-squares extrapolation and the a-priori
//!   bounds for singular-value decay and guess quality.
//! - [`testcase`]: fourth-order finite-difference test problem.
//! - [`harness`]: experiment driver, telemetry and CSV reports.

pub mod error;
pub mod harness;
pub mod krylov;
pub mod la;
pub mod recycle;
pub mod testcase;
pub mod theory;

pub use error::{Error, Result};
