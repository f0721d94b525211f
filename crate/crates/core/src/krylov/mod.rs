//! Iterative solver used for every system in the sequence: ILU(0)
//! preconditioning and right-preconditioned GMRES.

mod gmres;
mod ilu;

pub use gmres::{gmres, GmresConfig, SolveStats};
pub use ilu::Ilu0Factors;
