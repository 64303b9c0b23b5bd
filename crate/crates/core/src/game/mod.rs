//! The semidefinite network game model.
//!
//! A game is an undirected graph with a player per node. Player `i` plays a
//! density matrix `X_i` on a space of dimension `dims[i]`, and each edge
//! `{i, j}` carries two Hermitian payoff matrices `R_ij`, `R_ji` on
//! `A_i ⊗ A_j`: player `i` receives `⟨R_ij, X_i ⊗ X_j⟩` and player `j`
//! receives `⟨R_ji, X_i ⊗ X_j⟩`.
//!
//! The transpose in the Choi recovery formula is folded into the payoff
//! operators at construction, so a directed payoff operator `Φ_ij` maps
//! neighbor strategies directly: `p_ij = ⟨X_i, Φ_ij(X_j)⟩`.

mod generators;
mod json;
mod model;

pub use generators::{
    constant_to_zero_sum, embed_polymatrix, matching_pennies, pairwise_zero_sum_random,
    security_game, security_game_constant_sum, symmetric_zero_sum_two_player, ClassicalEdge,
    ClassicalPolymatrix,
};
pub use json::{GameFile, ProfileFile, SCHEMA_VERSION};
pub use model::{GameEdge, NetworkGame, StrategyProfile};

/// Errors produced by game construction and payoff evaluation.
#[derive(Debug, Clone, thiserror::Error)]
pub enum GameError {
    #[error("{0}")]
    Linalg(#[from] crate::linalg::LinalgError),
    #[error("invalid edge ({i}, {j}): {reason}")]
    InvalidEdge { i: usize, j: usize, reason: String },
    #[error("edge ({i}, {j}) is not part of the game")]
    UnknownEdge { i: usize, j: usize },
    #[error("player index {player} out of range for {n_players} players")]
    PlayerOutOfRange { player: usize, n_players: usize },
    #[error("strategy for player {player} has dimension {got}, expected {want}")]
    StrategyDimMismatch { player: usize, got: usize, want: usize },
    #[error("missing strategy for neighbor {player}")]
    MissingNeighborStrategy { player: usize },
    #[error("profile has {got} strategies, expected {want}")]
    ProfileLenMismatch { got: usize, want: usize },
    #[error("game has no edges")]
    NoEdges,
    #[error("invalid game data: {0}")]
    Invalid(String),
}
