//! Semidefinite network games.
//!
//! A semidefinite network game places one player at each node of an
//! undirected graph. A player's strategy is a density matrix (Hermitian,
//! positive semidefinite, trace one) and each edge carries a two-player
//! bilinear game: the payoff of player `i` on edge `(i, j)` is
//! `⟨R_ij, X_i ⊗ X_j⟩` for a Hermitian payoff matrix `R_ij`.
//!
//! The crate provides:
//!
//! * [`linalg`] — complex Hermitian matrix algebra: Kronecker products,
//!   partial traces, Choi representations of superoperators, a Jacobi
//!   eigensolver, and the real symmetric embedding.
//! * [`game`] — the network game model, payoff operators, zero-sum
//!   structure, and game generators.
//! * [`equilibrium`] — best responses, exploitability, and Nash
//!   certification.
//! * [`sdp`] — a dense primal-dual interior-point solver for Hermitian
//!   conic programs, the equilibrium primal/dual program assemblers, and a
//!   matrix-multiplicative-weights self-play routine.
//! * [`recognizer`] — constant-sum / zero-sum recognition via per-player
//!   semidefinite programs plus an exact linear-algebra oracle.
//! * [`lcp`] — construction and verification of the semidefinite linear
//!   complementarity reformulation of the equilibrium conditions.

pub mod equilibrium;
pub mod game;
pub mod lcp;
pub mod linalg;
pub mod recognizer;
pub mod sdp;

pub use game::{NetworkGame, StrategyProfile};
pub use equilibrium::{best_response, best_response_value, certify_nash, exploitability, ExploitabilityReport};
pub use linalg::{DensityMatrix, HermMatrix, NumericContext, SuperOperator, C64};
pub use sdp::{ConicProgram, ConicSolution, SolveOptions, SolveStatus};
