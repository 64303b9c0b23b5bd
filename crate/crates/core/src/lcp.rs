//! The semidefinite linear complementarity reformulation of the equilibrium
//! conditions: build instances, verify candidate solutions, and convert
//! between the stationarity (KKT) form and the LCP form.
//!
//! The instance asks for blocks `X_i ⪰ 0` with
//!
//! ```text
//!   L(X) + Q ⪰ 0,   ⟨X, L(X) + Q⟩ = 0,   L(X) = -⊕_i Φ_i(X),   Q = ⊕_i I,
//! ```
//!
//! over the payoff operators of the internally shifted game, whose Choi
//! matrices are strictly positive definite so that every stationarity
//! multiplier is strictly positive. The all-zero tuple always solves the
//! LCP; it has trace-zero blocks and no game interpretation, and the
//! KKT-direction conversion rejects it.
//!
//! Construction and verification only; no LCP solver is provided.
//! Equilibria come from the SDP path (zero-sum games) or externally, and
//! candidates are checked here.

use serde::Serialize;

use crate::equilibrium::exploitability_with_tol;
use crate::game::{GameError, NetworkGame, StrategyProfile};
use crate::linalg::{eig_herm, inner, DensityMatrix, HermMatrix, LinMap};

/// Default acceptance tolerance for candidate LCP solutions.
pub const DEFAULT_LCP_TOL: f64 = 1e-6;

#[derive(Debug, Clone, thiserror::Error)]
pub enum LcpError {
    #[error("{0}")]
    Game(#[from] GameError),
    #[error("{0}")]
    Linalg(#[from] crate::linalg::LinalgError),
    #[error("every player is isolated; the instance would be empty")]
    AllPlayersIsolated,
    #[error("candidate has {got} blocks, expected {want}")]
    BlockCountMismatch { got: usize, want: usize },
    #[error("block {index} has dimension {got}, expected {want}")]
    BlockDimMismatch { index: usize, got: usize, want: usize },
    #[error("stationarity conditions violated: max residual {max_residual:.3e} exceeds {tol:.1e}")]
    KktViolated { max_residual: f64, tol: f64 },
    #[error("multiplier for player {player} is {value:.3e}; the strict shift guarantees positive multipliers, so the input violates the model")]
    NonpositiveMultiplier { player: usize, value: f64 },
    #[error("candidate rejected: max violation {max_violation:.3e} exceeds {tol:.1e}")]
    CandidateRejected { max_violation: f64, tol: f64 },
    #[error("block {index} has trace {trace:.3e}; the trivial zero solution carries no equilibrium")]
    ZeroTraceBlock { index: usize, trace: f64 },
}

/// The LCP instance data: one block per non-isolated player, the map `L`
/// stored through its action on the Hermitian basis of every block, and the
/// identity blocks `Q`.
#[derive(Clone, Debug)]
pub struct SdpLcpInstance {
    /// Original player index of each block.
    included: Vec<usize>,
    /// Block dimensions, aligned with `included`.
    dims: Vec<usize>,
    /// `l_maps[a][b]` is the map from block `b` to block `a` inside `L`
    /// (already negated), when the corresponding players are adjacent.
    l_maps: Vec<Vec<Option<LinMap>>>,
    /// The shift constant applied to the payoff matrices.
    shift: f64,
    /// The internally shifted game over the original player set.
    shifted: NetworkGame,
}

/// Residuals of one candidate block.
#[derive(Clone, Debug, Serialize)]
pub struct BlockResidual {
    pub player: usize,
    pub lambda_min_x: f64,
    pub lambda_min_slack: f64,
    pub complementarity: f64,
}

/// Residuals of the three LCP conditions for a candidate solution.
#[derive(Clone, Debug, Serialize)]
pub struct LcpResiduals {
    pub blocks: Vec<BlockResidual>,
    pub max_violation: f64,
    pub accepted: bool,
    pub tol: f64,
    /// All blocks have negligible trace: the trivial solution.
    pub trivial: bool,
}

impl SdpLcpInstance {
    pub fn included_players(&self) -> &[usize] {
        &self.included
    }

    pub fn block_dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    pub fn shifted_game(&self) -> &NetworkGame {
        &self.shifted
    }

    /// The `(a, b)` component of `L` as a linear map, when nonzero.
    pub fn l_map(&self, a: usize, b: usize) -> Option<&LinMap> {
        self.l_maps[a][b].as_ref()
    }

    /// Apply `L` to candidate blocks: block `a` of the image is
    /// `-Σ_b Φ_ab(X_b)` over the shifted payoff operators.
    pub fn l_apply(&self, blocks: &[HermMatrix]) -> Result<Vec<HermMatrix>, LcpError> {
        self.check_blocks(blocks)?;
        let mut out = Vec::with_capacity(self.dims.len());
        for a in 0..self.dims.len() {
            let mut acc = HermMatrix::zero(self.dims[a]);
            for (b, block) in blocks.iter().enumerate() {
                if let Some(map) = &self.l_maps[a][b] {
                    acc = acc.add(&map.apply(block));
                }
            }
            out.push(acc);
        }
        Ok(out)
    }

    fn check_blocks(&self, blocks: &[HermMatrix]) -> Result<(), LcpError> {
        if blocks.len() != self.dims.len() {
            return Err(LcpError::BlockCountMismatch { got: blocks.len(), want: self.dims.len() });
        }
        for (index, (block, &dim)) in blocks.iter().zip(&self.dims).enumerate() {
            if block.dim() != dim {
                return Err(LcpError::BlockDimMismatch { index, got: block.dim(), want: dim });
            }
        }
        Ok(())
    }
}

/// Build the LCP instance of a game. The shift is applied internally first,
/// isolated players are excluded (their multipliers vanish and the
/// rescaling is undefined for them), and a game where every player is
/// isolated is rejected.
pub fn build_lcp(game: &NetworkGame) -> Result<SdpLcpInstance, LcpError> {
    let included: Vec<usize> =
        (0..game.n_players()).filter(|&i| !game.is_isolated(i)).collect();
    if included.is_empty() {
        return Err(LcpError::AllPlayersIsolated);
    }
    let (shifted, shift) = game.cp_shift();
    let dims: Vec<usize> = included.iter().map(|&i| game.dim(i)).collect();
    let mut l_maps: Vec<Vec<Option<LinMap>>> = vec![vec![None; included.len()]; included.len()];
    for (a, &i) in included.iter().enumerate() {
        for (b, &j) in included.iter().enumerate() {
            if !shifted.neighbors(i).contains(&j) {
                continue;
            }
            let op = shifted.payoff_operator(i, j)?;
            l_maps[a][b] = Some(op.to_linmap().scale(-1.0));
        }
    }
    Ok(SdpLcpInstance { included, dims, l_maps, shift, shifted })
}

/// Residuals of the three conditions for a candidate, computed through the
/// stored `(L, Q)` representation. The candidate is accepted when the max
/// violation is at most `tol`.
pub fn verify_lcp(
    instance: &SdpLcpInstance,
    blocks: &[HermMatrix],
    tol: f64,
) -> Result<LcpResiduals, LcpError> {
    let l_x = instance.l_apply(blocks)?;
    let mut residuals = Vec::with_capacity(blocks.len());
    let mut max_violation = 0.0f64;
    let mut trivial = true;
    for (a, block) in blocks.iter().enumerate() {
        let lambda_min_x = eig_herm(block)?.lambda_min();
        let slack = l_x[a].shift(1.0);
        let lambda_min_slack = eig_herm(&slack)?.lambda_min();
        let complementarity = inner(block, &slack)?;
        max_violation = max_violation
            .max((-lambda_min_x).max(0.0))
            .max((-lambda_min_slack).max(0.0))
            .max(complementarity.abs());
        if block.trace().abs() > 1e-9 {
            trivial = false;
        }
        residuals.push(BlockResidual {
            player: instance.included[a],
            lambda_min_x,
            lambda_min_slack,
            complementarity,
        });
    }
    Ok(LcpResiduals {
        blocks: residuals,
        max_violation,
        accepted: max_violation <= tol,
        tol,
        trivial,
    })
}

/// Check the stationarity system of the shifted game at `(profile, λ)`:
/// `X_i ⪰ 0`, `λ_i I - Φ_i(X) ⪰ 0`, `tr X_i = 1`, and
/// `⟨X_i, λ_i I - Φ_i(X)⟩ = 0` for every non-isolated player. Returns the
/// max residual.
pub fn kkt_residual(
    shifted: &NetworkGame,
    profile: &StrategyProfile,
    lambdas: &[f64],
) -> Result<f64, LcpError> {
    let mut max_residual = 0.0f64;
    for i in 0..shifted.n_players() {
        if shifted.is_isolated(i) {
            continue;
        }
        let phi = shifted.phi_i(i, profile)?;
        let x = profile.strategy(i).as_herm();
        max_residual = max_residual.max(-eig_herm(x)?.lambda_min()).max(0.0);
        let slack = phi.scale(-1.0).shift(lambdas[i]);
        max_residual = max_residual.max(-eig_herm(&slack)?.lambda_min()).max(0.0);
        max_residual = max_residual.max((x.trace() - 1.0).abs());
        max_residual = max_residual.max(inner(x, &slack)?.abs());
    }
    Ok(max_residual)
}

/// Rescale a stationarity point of the shifted game into candidate LCP
/// blocks `X_i / λ_i` and verify that the instance accepts them.
///
/// The `(profile, λ)` pair must satisfy the stationarity system of the
/// shifted game within `tol` with every multiplier strictly positive (the
/// strict shift guarantees `λ_i ≥ deg(i)` at equilibria).
pub fn kkt_to_lcp(
    game: &NetworkGame,
    profile: &StrategyProfile,
    lambdas: &[f64],
    tol: f64,
) -> Result<Vec<HermMatrix>, LcpError> {
    let instance = build_lcp(game)?;
    let residual = kkt_residual(&instance.shifted, profile, lambdas)?;
    if residual > tol {
        return Err(LcpError::KktViolated { max_residual: residual, tol });
    }
    for &i in &instance.included {
        if lambdas[i] <= 1e-12 {
            return Err(LcpError::NonpositiveMultiplier { player: i, value: lambdas[i] });
        }
    }
    let blocks: Vec<HermMatrix> = instance
        .included
        .iter()
        .map(|&i| profile.strategy(i).as_herm().scale(1.0 / lambdas[i]))
        .collect();
    Ok(blocks)
}

/// Normalize accepted LCP blocks back to a stationarity point: the profile
/// `X_i / tr(X_i)` with multipliers `λ_i = 1 / tr(X_i)`, uniform strategies
/// re-attached for excluded players. The pair must satisfy the stationarity
/// system within `10·tol`, which certifies the profile as an equilibrium of
/// the shifted (hence the original) game.
pub fn lcp_to_kkt(
    instance: &SdpLcpInstance,
    blocks: &[HermMatrix],
    tol: f64,
) -> Result<(StrategyProfile, Vec<f64>), LcpError> {
    let residuals = verify_lcp(instance, blocks, tol)?;
    if !residuals.accepted {
        return Err(LcpError::CandidateRejected {
            max_violation: residuals.max_violation,
            tol,
        });
    }
    for (index, block) in blocks.iter().enumerate() {
        let trace = block.trace();
        if trace <= 1e-9 {
            return Err(LcpError::ZeroTraceBlock { index, trace });
        }
    }
    let shifted = &instance.shifted;
    let mut strategies: Vec<DensityMatrix> =
        shifted.dims().iter().map(|&d| DensityMatrix::uniform(d)).collect();
    let mut lambdas = vec![0.0; shifted.n_players()];
    for (a, &i) in instance.included.iter().enumerate() {
        let trace = blocks[a].trace();
        strategies[i] = DensityMatrix::project(&blocks[a].scale(1.0 / trace))?;
        lambdas[i] = 1.0 / trace;
    }
    let profile = StrategyProfile::for_game(shifted, strategies)?;
    let residual = kkt_residual(shifted, &profile, &lambdas)?;
    if residual > 10.0 * tol {
        return Err(LcpError::KktViolated { max_residual: residual, tol: 10.0 * tol });
    }
    Ok((profile, lambdas))
}

/// Best-response multipliers of the shifted game at a profile:
/// `λ_i = λ_max(Φ_i(X))`, the values fed into [`kkt_to_lcp`] along an
/// equilibrium pipeline.
pub fn shifted_multipliers(
    game: &NetworkGame,
    profile: &StrategyProfile,
) -> Result<(NetworkGame, Vec<f64>), LcpError> {
    let (shifted, _) = game.cp_shift();
    let mut lambdas = Vec::with_capacity(game.n_players());
    for i in 0..game.n_players() {
        if shifted.is_isolated(i) {
            lambdas.push(0.0);
            continue;
        }
        let phi = shifted.phi_i(i, profile)?;
        lambdas.push(eig_herm(&phi)?.lambda_max());
    }
    Ok((shifted, lambdas))
}

/// Exploitability certificate for a profile recovered from LCP blocks,
/// evaluated on the shifted game (exploitability is shift-invariant).
pub fn certify_recovered_profile(
    instance: &SdpLcpInstance,
    profile: &StrategyProfile,
    tol: f64,
) -> Result<f64, LcpError> {
    let report = exploitability_with_tol(&instance.shifted, profile, tol)?;
    Ok(report.total_exploitability)
}
