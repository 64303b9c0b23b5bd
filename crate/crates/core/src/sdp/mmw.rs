//! Matrix-multiplicative-weights self-play, an independent no-regret
//! cross-check for the SDP equilibrium path.

use crate::game::{GameError, NetworkGame, StrategyProfile};
use crate::linalg::{eig_herm, exp_herm, DensityMatrix, HermMatrix};

/// Step-size schedule for the multiplicative-weights update.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EtaSchedule {
    /// Fixed step size.
    Constant,
    /// `η_t = η / √t`, vanishing average regret.
    InvSqrt,
}

#[derive(Clone, Copy, Debug)]
pub struct MmwOptions {
    pub eta: f64,
    pub n_iters: usize,
    pub schedule: EtaSchedule,
}

impl Default for MmwOptions {
    fn default() -> Self {
        MmwOptions { eta: 0.1, n_iters: 5000, schedule: EtaSchedule::Constant }
    }
}

/// Run multiplicative-weights self-play from the uniform profile and return
/// the time-averaged profile.
///
/// Every player updates `X_i ∝ exp(η_t · Σ_{s≤t} Φ_i(X^{(s)}))`; the top
/// eigenvalue is subtracted before exponentiating so the update is
/// overflow-free (the normalization cancels the shift). For zero-sum games
/// the exploitability of the average decreases with the iteration count.
pub fn mmw_selfplay(
    game: &NetworkGame,
    options: &MmwOptions,
) -> Result<StrategyProfile, GameError> {
    assert!(options.eta > 0.0, "step size must be positive");
    assert!(options.n_iters >= 1, "need at least one iterate");
    let n = game.n_players();
    let mut current = StrategyProfile::uniform(game);
    let mut cumulative: Vec<HermMatrix> =
        (0..n).map(|i| HermMatrix::zero(game.dim(i))).collect();
    let mut average: Vec<HermMatrix> =
        (0..n).map(|i| HermMatrix::zero(game.dim(i))).collect();

    for t in 1..=options.n_iters {
        for (avg, strat) in average.iter_mut().zip(current.strategies()) {
            *avg = avg.add(strat.as_herm());
        }
        if t == options.n_iters {
            break;
        }
        let eta_t = match options.schedule {
            EtaSchedule::Constant => options.eta,
            EtaSchedule::InvSqrt => options.eta / (t as f64).sqrt(),
        };
        let mut next = Vec::with_capacity(n);
        for i in 0..n {
            let gain = game.phi_i(i, &current)?;
            cumulative[i] = cumulative[i].add(&gain);
            let weighted = cumulative[i].scale(eta_t);
            let top = eig_herm(&weighted)?.lambda_max();
            let expw = exp_herm(&weighted.shift(-top));
            let trace = expw.trace();
            next.push(DensityMatrix::new(expw.scale(1.0 / trace))?);
        }
        current = StrategyProfile::for_game(game, next)?;
    }

    let inv_t = 1.0 / options.n_iters as f64;
    let strategies = average
        .into_iter()
        .map(|sum| DensityMatrix::new(sum.scale(inv_t)))
        .collect::<Result<Vec<_>, _>>()?;
    StrategyProfile::for_game(game, strategies)
}
