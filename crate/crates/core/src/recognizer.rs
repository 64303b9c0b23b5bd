//! Constant-sum / zero-sum recognition.
//!
//! A game is constant-sum exactly when, for every player `i`, the total
//! payoff `W(X) = Σ_j p_j(X)` does not depend on `X_i`. Writing the
//! dependence through the payoff operators, that happens iff for every
//! traceless direction `D` of player `i`'s space and every neighbor `ℓ`,
//! the matrix `M_ℓ(D) = (Φ_iℓ† + Φ_ℓi)(D)` is a multiple of the identity
//! and the multiples sum to zero across neighbors. The linear oracle checks
//! exactly that on a spanning set of directions; it is exact linear algebra
//! with no optimization and is the authoritative classifier.
//!
//! The per-player recognition SDP
//!
//! ```text
//!   min Σ_ℓ w_ℓ   s.t.  (Φ_iℓ† + Φ_ℓi)(X_i - Y_i) ⪯ w_ℓ I,  X_i, Y_i densities,
//! ```
//!
//! is assembled verbatim and reported alongside. Its zero direction
//! `X_i = Y_i` is always feasible with value zero, so only its forward
//! direction (constant-sum implies all values vanish) is informative; the
//! oracle decides the converse.

use serde::Serialize;

use crate::game::{GameError, NetworkGame, StrategyProfile};
use crate::linalg::{eig_herm, traceless_directions, DensityMatrix, HermMatrix, LinMap};
use crate::sdp::{solve, ConicProgram, Constraint, PrimalPoint, SdpError, SolveOptions};

/// Entrywise tolerance for the linear oracle.
pub const ORACLE_TOL: f64 = 1e-8;
/// Zero-sum test tolerance on `W` at the uniform profile.
pub const ZERO_SUM_TOL: f64 = 1e-8;
/// Acceptance band for the recognition-SDP values on constant-sum games.
pub const SDP_VALUE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, thiserror::Error)]
pub enum RecognizerError {
    #[error("{0}")]
    Game(#[from] GameError),
    #[error("recognition SDP for player {player} failed: {source}")]
    Solver { player: usize, source: SdpError },
}

/// Verdict of the linear oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleVerdict {
    ConstantSum,
    NotConstantSum,
}

/// A direction along which the total payoff provably varies: player `i`
/// moving along the traceless direction `D` changes the coupling with the
/// neighbor block `ℓ`.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub player: usize,
    pub neighbor: usize,
    #[serde(serialize_with = "serialize_herm")]
    pub direction: HermMatrix,
    /// Max deviation of `M_ℓ(D)` from a multiple of the identity, or the
    /// absolute neighbor-sum of identity coefficients, whichever violated.
    pub violation: f64,
}

fn serialize_herm<S: serde::Serializer>(h: &HermMatrix, s: S) -> Result<S::Ok, S::Error> {
    crate::linalg::cmat_to_nested(h.mat()).serialize(s)
}

/// Recognition outcome: per-player SDP values, oracle verdict with witness,
/// the constant `C` when constant-sum, and the zero-sum flag.
#[derive(Clone, Debug, Serialize)]
pub struct RecognitionResult {
    pub sdp_values: Vec<f64>,
    pub oracle: OracleVerdict,
    pub witness: Option<Witness>,
    #[serde(rename = "C")]
    pub constant: Option<f64>,
    pub zero_sum: bool,
}

/// Total payoff `W(X) = Σ_i p_i(X)`.
pub fn total_payoff_sum(game: &NetworkGame, profile: &StrategyProfile) -> Result<f64, GameError> {
    let mut total = 0.0;
    for i in 0..game.n_players() {
        total += game.total_payoff(i, profile)?;
    }
    Ok(total)
}

/// The coupling map `D ↦ (Φ_iℓ† + Φ_ℓi)(D)` from player `i`'s space to
/// neighbor `ℓ`'s space.
fn coupling_map(game: &NetworkGame, i: usize, l: usize) -> Result<LinMap, GameError> {
    let phi_il = game.payoff_operator(i, l)?;
    let phi_li = game.payoff_operator(l, i)?;
    Ok(phi_il.to_linmap().adjoint().add(&phi_li.to_linmap()))
}

/// Exact linear-algebra classifier for the constant-sum property.
///
/// Checks every traceless basis direction of every player: each neighbor
/// coupling must be a multiple of the identity and the multiples must sum
/// to zero. Returns a witness direction on failure.
pub fn constant_sum_linear_oracle(
    game: &NetworkGame,
) -> Result<(OracleVerdict, Option<Witness>), GameError> {
    for i in 0..game.n_players() {
        let neighbors = game.neighbors(i).to_vec();
        if neighbors.is_empty() {
            continue;
        }
        let maps: Vec<(usize, LinMap)> = neighbors
            .iter()
            .map(|&l| Ok((l, coupling_map(game, i, l)?)))
            .collect::<Result<_, GameError>>()?;
        for dir in traceless_directions(game.dim(i)) {
            let mut coeff_sum = 0.0;
            let mut worst: Option<(usize, f64)> = None;
            for (l, map) in &maps {
                let m = map.apply(&dir);
                let d_l = game.dim(*l) as f64;
                let coeff = m.trace() / d_l;
                coeff_sum += coeff;
                let dev = m.sub(&HermMatrix::scaled_identity(game.dim(*l), coeff));
                let dev_norm = dev.mat().max_abs();
                if dev_norm > ORACLE_TOL {
                    if worst.map(|(_, w)| dev_norm > w).unwrap_or(true) {
                        worst = Some((*l, dev_norm));
                    }
                }
            }
            if let Some((l, dev_norm)) = worst {
                return Ok((
                    OracleVerdict::NotConstantSum,
                    Some(Witness { player: i, neighbor: l, direction: dir, violation: dev_norm }),
                ));
            }
            if coeff_sum.abs() > ORACLE_TOL {
                let neighbor = neighbors[0];
                return Ok((
                    OracleVerdict::NotConstantSum,
                    Some(Witness {
                        player: i,
                        neighbor,
                        direction: dir,
                        violation: coeff_sum.abs(),
                    }),
                ));
            }
        }
    }
    Ok((OracleVerdict::ConstantSum, None))
}

/// Assemble the per-player recognition SDP exactly as printed: variables
/// `X_i, Y_i` densities and one free `w_ℓ` per neighbor, LMIs
/// `(Φ_iℓ† + Φ_ℓi)(X_i - Y_i) ⪯ w_ℓ I`, objective `min Σ w_ℓ`.
///
/// For an isolated player the program has no objective and value zero.
pub fn assemble_recognition_sdp(game: &NetworkGame, i: usize) -> Result<ConicProgram, SdpError> {
    let d_i = game.dim(i);
    let mut p = ConicProgram::minimize();
    let x = p.add_psd_block(d_i);
    let y = p.add_psd_block(d_i);
    for block in [x, y] {
        p.add_constraint(Constraint::Eq {
            block_terms: vec![(block, HermMatrix::identity(d_i))],
            free_terms: vec![],
            rhs: 1.0,
        });
    }
    for &l in game.neighbors(i) {
        let w = p.add_free_var();
        p.set_free_objective(w, 1.0);
        let map = coupling_map(game, i, l)?;
        p.add_constraint(Constraint::Lmi {
            dim: game.dim(l),
            block_maps: vec![(x, map.clone()), (y, map.scale(-1.0))],
            free_terms: vec![(w, HermMatrix::scaled_identity(game.dim(l), -1.0))],
            rhs: HermMatrix::zero(game.dim(l)),
        });
    }
    // Interior warm start: X = Y = I/d with strictly positive w margins.
    let uniform = DensityMatrix::uniform(d_i).as_herm().clone();
    p.set_warm_start(PrimalPoint {
        blocks: vec![uniform.clone(), uniform],
        free: vec![1.0; game.degree(i)],
    });
    Ok(p)
}

/// Solve the recognition SDP of every player and report the values.
pub fn recognize_constant_sum_sdp(
    game: &NetworkGame,
    options: &SolveOptions,
) -> Result<Vec<f64>, RecognizerError> {
    let mut values = Vec::with_capacity(game.n_players());
    for i in 0..game.n_players() {
        let program = assemble_recognition_sdp(game, i)
            .map_err(|source| RecognizerError::Solver { player: i, source })?;
        let sol = solve(&program, options)
            .map_err(|source| RecognizerError::Solver { player: i, source })?;
        if !sol.is_optimal() {
            return Err(RecognizerError::Solver {
                player: i,
                source: SdpError::Numerical(format!("status {:?}", sol.status)),
            });
        }
        values.push(sol.primal_objective);
    }
    Ok(values)
}

/// Full recognition: linear oracle (authoritative), per-player SDP values
/// (reported alongside), the constant `C` evaluated at the uniform profile,
/// and the zero-sum flag.
///
/// The game is classified constant-sum only if every SDP value is at least
/// `-1e-6` and the oracle concurs.
pub fn recognize(
    game: &NetworkGame,
    options: &SolveOptions,
) -> Result<RecognitionResult, RecognizerError> {
    let (oracle, witness) = constant_sum_linear_oracle(game)?;
    let sdp_values = recognize_constant_sum_sdp(game, options)?;
    let sdp_agrees = sdp_values.iter().all(|&v| v >= -SDP_VALUE_TOL);
    let is_constant = oracle == OracleVerdict::ConstantSum && sdp_agrees;
    let constant = if is_constant {
        Some(total_payoff_sum(game, &StrategyProfile::uniform(game))?)
    } else {
        None
    };
    let zero_sum = constant.map(|c| c.abs() <= ZERO_SUM_TOL).unwrap_or(false);
    Ok(RecognitionResult { sdp_values, oracle, witness, constant, zero_sum })
}

/// Constant-sum check followed by evaluating the payoff sum at one
/// arbitrary profile (the uniform one).
pub fn is_zero_sum(game: &NetworkGame) -> Result<bool, GameError> {
    let (oracle, _) = constant_sum_linear_oracle(game)?;
    if oracle != OracleVerdict::ConstantSum {
        return Ok(false);
    }
    let c = total_payoff_sum(game, &StrategyProfile::uniform(game))?;
    Ok(c.abs() <= ZERO_SUM_TOL)
}

/// Build two explicit profiles whose total payoffs differ, exhibiting the
/// witness of a not-constant-sum verdict. Returns the pair with the largest
/// payoff-sum difference among a small candidate family.
pub fn witness_profiles(
    game: &NetworkGame,
    witness: &Witness,
) -> Result<(StrategyProfile, StrategyProfile), GameError> {
    let i = witness.player;
    let l = witness.neighbor;
    let d_i = game.dim(i);
    let dir = &witness.direction;
    let spread = eig_herm(dir)?;
    let radius = spread.lambda_max().abs().max(spread.lambda_min().abs()).max(1e-12);
    let eps = 0.5 / (d_i as f64 * radius);
    let x_plus = DensityMatrix::new(
        HermMatrix::scaled_identity(d_i, 1.0 / d_i as f64).add(&dir.scale(eps)),
    )?;
    let x_minus = DensityMatrix::new(
        HermMatrix::scaled_identity(d_i, 1.0 / d_i as f64).add(&dir.scale(-eps)),
    )?;

    // Neighbor variations: uniform plus the extreme pure states of the
    // coupling image, which separate the payoff sums when the image is not
    // a multiple of the identity.
    let image = coupling_map(game, i, l)?.apply(dir);
    let image_eig = eig_herm(&image)?;
    let neighbor_variants = vec![
        DensityMatrix::uniform(game.dim(l)),
        DensityMatrix::pure(&image_eig.vector(0))?,
        DensityMatrix::pure(&image_eig.vector(game.dim(l) - 1))?,
    ];

    let base = StrategyProfile::uniform(game);
    let mut best: Option<(f64, StrategyProfile, StrategyProfile)> = None;
    for nv in &neighbor_variants {
        let with_neighbor = base.with_strategy(l, nv.clone());
        let p1 = with_neighbor.with_strategy(i, x_plus.clone());
        let p2 = with_neighbor.with_strategy(i, x_minus.clone());
        let w1 = total_payoff_sum(game, &p1)?;
        let w2 = total_payoff_sum(game, &p2)?;
        let diff = (w1 - w2).abs();
        if best.as_ref().map(|(b, _, _)| diff > *b).unwrap_or(true) {
            best = Some((diff, p1, p2));
        }
    }
    let (_, p1, p2) = best.expect("candidate family is nonempty");
    Ok((p1, p2))
}
