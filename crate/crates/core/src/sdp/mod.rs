//! Conic programming: a dense Hermitian interior-point solver, the
//! equilibrium primal/dual program pair, and matrix-multiplicative-weights
//! self-play as an independent equilibrium oracle.

mod assemble;
mod mmw;
mod program;
mod solver;

pub use assemble::{
    assemble_equilibrium_dual, assemble_equilibrium_primal, extract_equilibrium,
};
pub use mmw::{mmw_selfplay, EtaSchedule, MmwOptions};
pub use program::{
    ConicProgram, ConicSolution, Constraint, DualValue, PointMargins, PrimalPoint, Sense,
    SolveOptions, SolveStatus,
};
pub use solver::solve;

/// Errors from program assembly, solving, and extraction.
#[derive(Debug, Clone, thiserror::Error)]
pub enum SdpError {
    #[error("malformed program: {0}")]
    Malformed(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("{0}")]
    Linalg(#[from] crate::linalg::LinalgError),
    #[error("{0}")]
    Game(#[from] crate::game::GameError),
    #[error("solution rejected: {0}")]
    Rejected(String),
}
