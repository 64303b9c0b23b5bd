//! Assembly of the equilibrium primal/dual program pair and equilibrium
//! extraction from optimal primal solutions.
//!
//! For a zero-sum game the primal
//!
//! ```text
//!   min Σ_i w_i   s.t.  Φ_i(X_{N(i)}) ⪯ w_i I,  tr(X_i) = 1,  X_i ⪰ 0,
//! ```
//!
//! has optimal value zero and its optimal `X` blocks are exactly the Nash
//! equilibria. The dual
//!
//! ```text
//!   max Σ_i λ_i   s.t.  Ψ_i(Λ) ⪰ λ_i I,  tr(Λ_i) = 1,  Λ_i ⪰ 0,
//! ```
//!
//! attains the same value. Both assemblers attach a strictly feasible warm
//! start (`X_i = I/d_i` with `w_i` large; `Λ_i = I/d_i` with `λ_i` very
//! negative).

use crate::equilibrium::exploitability_with_tol;
use crate::game::{NetworkGame, StrategyProfile};
use crate::linalg::{eig_herm, DensityMatrix, HermMatrix, LinMap};

use super::program::{ConicProgram, Constraint, PrimalPoint};
use super::{ConicSolution, SdpError};

/// Build the equilibrium primal program `min Σ w_i`.
///
/// Block `i` is `X_i`; free variable `i` is `w_i`. The LMI for player `i`
/// expands each payoff operator over a Hermitian basis of the neighbor's
/// space once at assembly.
pub fn assemble_equilibrium_primal(game: &NetworkGame) -> Result<ConicProgram, SdpError> {
    let n = game.n_players();
    let mut p = ConicProgram::minimize();
    let blocks: Vec<usize> = (0..n).map(|i| p.add_psd_block(game.dim(i))).collect();
    let ws: Vec<usize> = (0..n).map(|_| p.add_free_var()).collect();
    for i in 0..n {
        p.set_free_objective(ws[i], 1.0);
        p.add_constraint(Constraint::Eq {
            block_terms: vec![(blocks[i], HermMatrix::identity(game.dim(i)))],
            free_terms: vec![],
            rhs: 1.0,
        });
    }
    for i in 0..n {
        let mut block_maps = Vec::new();
        for &j in game.neighbors(i) {
            let op = game.payoff_operator(i, j)?;
            block_maps.push((blocks[j], op.to_linmap()));
        }
        p.add_constraint(Constraint::Lmi {
            dim: game.dim(i),
            block_maps,
            free_terms: vec![(ws[i], HermMatrix::scaled_identity(game.dim(i), -1.0))],
            rhs: HermMatrix::zero(game.dim(i)),
        });
    }
    // Strictly feasible warm start: uniform densities with w_i one above the
    // top eigenvalue of Φ_i at the uniform profile.
    let uniform = StrategyProfile::uniform(game);
    let mut free = vec![0.0; n];
    for i in 0..n {
        let phi = game.phi_i(i, &uniform)?;
        free[i] = eig_herm(&phi)?.lambda_max() + 1.0;
    }
    p.set_warm_start(PrimalPoint {
        blocks: (0..n).map(|i| DensityMatrix::uniform(game.dim(i)).as_herm().clone()).collect(),
        free,
    });
    Ok(p)
}

/// Build the equilibrium dual program `max Σ λ_i`.
pub fn assemble_equilibrium_dual(game: &NetworkGame) -> Result<ConicProgram, SdpError> {
    let n = game.n_players();
    let mut p = ConicProgram::maximize();
    let blocks: Vec<usize> = (0..n).map(|i| p.add_psd_block(game.dim(i))).collect();
    let lambdas: Vec<usize> = (0..n).map(|_| p.add_free_var()).collect();
    for i in 0..n {
        p.set_free_objective(lambdas[i], 1.0);
        p.add_constraint(Constraint::Eq {
            block_terms: vec![(blocks[i], HermMatrix::identity(game.dim(i)))],
            free_terms: vec![],
            rhs: 1.0,
        });
    }
    // λ_i I - Ψ_i(Λ) ⪯ 0 with Ψ_i(Λ) = Σ_{j∈N(i)} Φ_ji†(Λ_j).
    for i in 0..n {
        let mut block_maps = Vec::new();
        for &j in game.neighbors(i) {
            let op = game.payoff_operator(j, i)?;
            let adjoint: LinMap = op.to_linmap().adjoint();
            block_maps.push((blocks[j], adjoint.scale(-1.0)));
        }
        p.add_constraint(Constraint::Lmi {
            dim: game.dim(i),
            block_maps,
            free_terms: vec![(lambdas[i], HermMatrix::identity(game.dim(i)))],
            rhs: HermMatrix::zero(game.dim(i)),
        });
    }
    // Strictly feasible warm start: uniform Λ with λ_i one below the bottom
    // eigenvalue of Ψ_i at the uniform blocks.
    let uniform_blocks: Vec<HermMatrix> =
        (0..n).map(|i| DensityMatrix::uniform(game.dim(i)).as_herm().clone()).collect();
    let psi = game.psi_apply(&uniform_blocks)?;
    let mut free = vec![0.0; n];
    for i in 0..n {
        free[i] = eig_herm(&psi[i])?.lambda_min() - 1.0;
    }
    p.set_warm_start(PrimalPoint { blocks: uniform_blocks, free });
    Ok(p)
}

/// Project the `X` blocks of an optimal primal solution back to exact
/// densities and certify the result.
///
/// Rejects solutions that are not optimal, whose objective exceeds
/// `obj_tol` (the game is not zero-sum or the solver failed), or whose
/// projected profile has total exploitability above `1e-5`.
pub fn extract_equilibrium(
    game: &NetworkGame,
    solution: &ConicSolution,
    obj_tol: f64,
) -> Result<StrategyProfile, SdpError> {
    if !solution.is_optimal() {
        return Err(SdpError::Rejected(format!(
            "solution status is {:?}, not optimal",
            solution.status
        )));
    }
    if solution.primal_objective.abs() > obj_tol {
        return Err(SdpError::Rejected(format!(
            "primal objective {:.3e} exceeds tolerance {:.1e}; the game is not zero-sum or the solver failed",
            solution.primal_objective, obj_tol
        )));
    }
    let n = game.n_players();
    if solution.primal.blocks.len() < n {
        return Err(SdpError::Rejected("solution block count does not match the game".into()));
    }
    let mut strategies = Vec::with_capacity(n);
    for block in solution.primal.blocks.iter().take(n) {
        strategies.push(DensityMatrix::project(block)?);
    }
    let profile = StrategyProfile::for_game(game, strategies)?;
    let report = exploitability_with_tol(game, &profile, 1e-5)?;
    if !report.is_nash {
        return Err(SdpError::Rejected(format!(
            "projected profile has total exploitability {:.3e} above 1e-5",
            report.total_exploitability
        )));
    }
    Ok(profile)
}
