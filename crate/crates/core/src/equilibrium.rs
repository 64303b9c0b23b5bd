//! Best responses, exploitability, and Nash certification.
//!
//! For a profile `X`, player `i`'s best-response value is
//! `w_i(X) = λ_max(Φ_i(X_{N(i)}))`, the maximum payoff available over all
//! density deviations, and the exploitability is `e_i(X) = w_i(X) - p_i(X)`.
//! A profile is a Nash equilibrium exactly when every `e_i` vanishes; for
//! zero-sum games `Σ e_i = Σ w_i`, so the equilibrium condition becomes
//! `Σ w_i = 0`.

use serde::Serialize;

use crate::game::{GameError, NetworkGame, StrategyProfile};
use crate::linalg::{eig_herm, DensityMatrix};

/// Default aggregate exploitability tolerance for `is_nash`.
pub const DEFAULT_NASH_TOL: f64 = 1e-6;

/// Per-player exploitability data.
#[derive(Clone, Debug, Serialize)]
pub struct PlayerExploitability {
    /// Best-response value `w_i = λ_max(Φ_i(X_{N(i)}))`.
    pub best_response_value: f64,
    /// Current payoff `p_i(X)`.
    pub payoff: f64,
    /// Exploitability `e_i = w_i - p_i`, always nonnegative up to rounding.
    pub exploitability: f64,
}

/// Exploitability of a profile, per player and in aggregate.
#[derive(Clone, Debug, Serialize)]
pub struct ExploitabilityReport {
    pub players: Vec<PlayerExploitability>,
    /// `Σ w_i`.
    pub total_best_response: f64,
    /// `Σ e_i`.
    pub total_exploitability: f64,
    /// Whether `Σ e_i ≤ tol`.
    pub is_nash: bool,
    /// The tolerance used for `is_nash`.
    pub tol: f64,
}

/// Nash certification result; for games flagged zero-sum the report also
/// checks the identity `Σ e_i = Σ w_i`.
#[derive(Clone, Debug, Serialize)]
pub struct NashCertificate {
    pub is_nash: bool,
    pub report: ExploitabilityReport,
    /// `|Σ w_i - Σ e_i|` when the game was flagged zero-sum.
    pub zero_sum_identity_gap: Option<f64>,
}

/// `λ_max(Φ_i(X_{N(i)}))`: the best payoff player `i` can reach against the
/// neighbor strategies in `profile`. Depends only on the neighbors, not on
/// `X_i`; zero for isolated players.
pub fn best_response_value(
    game: &NetworkGame,
    player: usize,
    profile: &StrategyProfile,
) -> Result<f64, GameError> {
    let phi = game.phi_i(player, profile)?;
    if game.is_isolated(player) {
        return Ok(0.0);
    }
    Ok(eig_herm(&phi)?.lambda_max())
}

/// A pure-state best response `v v†` for `v` a unit top eigenvector of
/// `Φ_i(X_{N(i)})`. Ties in the top eigenspace are broken by the
/// eigensolver's ordering; any top eigenvector is a valid best response.
pub fn best_response(
    game: &NetworkGame,
    player: usize,
    profile: &StrategyProfile,
) -> Result<DensityMatrix, GameError> {
    let phi = game.phi_i(player, profile)?;
    let eig = eig_herm(&phi)?;
    Ok(DensityMatrix::pure(&eig.vector(0))?)
}

/// Exploitability of every player at `profile`, with `is_nash` decided by
/// `Σ e_i ≤ tol`.
pub fn exploitability_with_tol(
    game: &NetworkGame,
    profile: &StrategyProfile,
    tol: f64,
) -> Result<ExploitabilityReport, GameError> {
    let mut players = Vec::with_capacity(game.n_players());
    let mut total_w = 0.0;
    let mut total_e = 0.0;
    for i in 0..game.n_players() {
        let w = best_response_value(game, i, profile)?;
        let p = game.total_payoff(i, profile)?;
        let e = w - p;
        total_w += w;
        total_e += e;
        players.push(PlayerExploitability { best_response_value: w, payoff: p, exploitability: e });
    }
    Ok(ExploitabilityReport {
        players,
        total_best_response: total_w,
        total_exploitability: total_e,
        is_nash: total_e <= tol,
        tol,
    })
}

/// Exploitability at the default tolerance.
pub fn exploitability(
    game: &NetworkGame,
    profile: &StrategyProfile,
) -> Result<ExploitabilityReport, GameError> {
    exploitability_with_tol(game, profile, DEFAULT_NASH_TOL)
}

/// Certify whether `profile` is a Nash equilibrium at tolerance `tol`.
///
/// With `zero_sum` set, the certificate additionally reports the gap in the
/// zero-sum identity `Σ e_i = Σ w_i`.
pub fn certify_nash(
    game: &NetworkGame,
    profile: &StrategyProfile,
    tol: f64,
    zero_sum: bool,
) -> Result<NashCertificate, GameError> {
    let report = exploitability_with_tol(game, profile, tol)?;
    let zero_sum_identity_gap = zero_sum
        .then(|| (report.total_best_response - report.total_exploitability).abs());
    Ok(NashCertificate { is_nash: report.is_nash, report, zero_sum_identity_gap })
}
