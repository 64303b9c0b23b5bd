//! Game generators: random pairwise-zero-sum instances, the evader/inspector
//! security game, diagonal embeddings of classical polymatrix games, and the
//! constant-sum to zero-sum normalization.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::linalg::{random_herm, CMat, HermMatrix};

use super::model::{GameEdge, NetworkGame};
use super::GameError;

/// Random game in which every edge game is zero-sum (`p_ji = -p_ij`
/// identically), which makes the whole network zero-sum. Each candidate edge
/// `{i, j}` with `i < j` is kept with probability `edge_probability`; kept
/// edges draw a random Hermitian `R_ij`, normalized to unit Frobenius norm
/// so payoffs are order one across dimensions, and set `R_ji = -R_ij`.
///
/// Deterministic in the seed: the same arguments always produce the same
/// game, byte for byte after serialization.
pub fn pairwise_zero_sum_random(
    n_players: usize,
    dims: &[usize],
    edge_probability: f64,
    seed: u64,
) -> NetworkGame {
    assert_eq!(dims.len(), n_players, "one dimension per player");
    assert!((0.0..=1.0).contains(&edge_probability));
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n_players {
        for j in i + 1..n_players {
            let keep: f64 = rng.gen();
            if keep >= edge_probability {
                continue;
            }
            let draw = random_herm(dims[i] * dims[j], &mut rng);
            let r_ij = draw.scale(1.0 / draw.norm_fro());
            let r_ji = r_ij.scale(-1.0);
            edges.push(GameEdge { i, j, r_ij, r_ji });
        }
    }
    NetworkGame::new(dims.to_vec(), edges).expect("generated edges are valid")
}

/// A classical polymatrix game: finitely many actions per player and a real
/// payoff matrix pair per edge. `a_ij[a][b]` pays player `i` when `i` plays
/// action `a` and `j` plays action `b`; `a_ji` is indexed the same way and
/// pays player `j`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassicalPolymatrix {
    pub actions: Vec<usize>,
    pub edges: Vec<ClassicalEdge>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassicalEdge {
    pub i: usize,
    pub j: usize,
    #[serde(rename = "A_ij")]
    pub a_ij: Vec<Vec<f64>>,
    #[serde(rename = "A_ji")]
    pub a_ji: Vec<Vec<f64>>,
}

/// Embed a classical polymatrix game into a semidefinite network game by
/// placing the pure-strategy payoffs on the diagonal of the product basis:
/// `(R_ij)_{(a,b),(a,b)} = A_ij[a][b]`. Classical mixed profiles, embedded
/// as diagonal densities, reproduce the classical expected payoffs exactly.
pub fn embed_polymatrix(classical: &ClassicalPolymatrix) -> Result<NetworkGame, GameError> {
    let n = classical.actions.len();
    let mut edges = Vec::with_capacity(classical.edges.len());
    for (idx, e) in classical.edges.iter().enumerate() {
        if e.i >= e.j || e.j >= n {
            return Err(GameError::InvalidEdge {
                i: e.i,
                j: e.j,
                reason: "edges must satisfy i < j with valid player indices".into(),
            });
        }
        let (ki, kj) = (classical.actions[e.i], classical.actions[e.j]);
        let check = |name: &str, m: &Vec<Vec<f64>>| -> Result<(), GameError> {
            if m.len() != ki || m.iter().any(|row| row.len() != kj) {
                return Err(GameError::Invalid(format!(
                    "edge {idx}: {name} must be {ki}x{kj} to match the action counts"
                )));
            }
            Ok(())
        };
        check("A_ij", &e.a_ij)?;
        check("A_ji", &e.a_ji)?;
        let embed = |m: &Vec<Vec<f64>>| {
            let mut diag = CMat::zeros(ki * kj, ki * kj);
            for a in 0..ki {
                for b in 0..kj {
                    diag[(a * kj + b, a * kj + b)] = crate::linalg::C64::new(m[a][b], 0.0);
                }
            }
            HermMatrix::from_herm_part(diag)
        };
        edges.push(GameEdge { i: e.i, j: e.j, r_ij: embed(&e.a_ij), r_ji: embed(&e.a_ji) });
    }
    NetworkGame::new(classical.actions.clone(), edges)
}

/// The embedded two-player matching pennies game: payoffs `±1` on the
/// diagonal, zero-sum, with unique equilibrium `(I/2, I/2)`.
pub fn matching_pennies() -> NetworkGame {
    let classical = ClassicalPolymatrix {
        actions: vec![2, 2],
        edges: vec![ClassicalEdge {
            i: 0,
            j: 1,
            a_ij: vec![vec![1.0, -1.0], vec![-1.0, 1.0]],
            a_ji: vec![vec![-1.0, 1.0], vec![1.0, -1.0]],
        }],
    };
    embed_polymatrix(&classical).expect("matching pennies data is valid")
}

/// The evader/inspector security game on a complete bipartite graph.
///
/// Every player chooses one of `n_exits` exits. On each evader/inspector
/// edge the evader gains one unit when the exits differ and the inspector
/// gains one unit on a match, a constant-sum edge game with constant one.
/// The diagonal embedding is then normalized to zero-sum with total constant
/// `C = n_evaders * n_inspectors`.
pub fn security_game(n_evaders: usize, n_inspectors: usize, n_exits: usize) -> NetworkGame {
    let game = security_game_constant_sum(n_evaders, n_inspectors, n_exits);
    let c = (n_evaders * n_inspectors) as f64;
    constant_to_zero_sum(&game, c).expect("bipartite game has edges")
}

/// The security game before zero-sum normalization; the sum of payoffs is
/// the number of edges at every profile.
pub fn security_game_constant_sum(
    n_evaders: usize,
    n_inspectors: usize,
    n_exits: usize,
) -> NetworkGame {
    assert!(n_evaders >= 1 && n_inspectors >= 1 && n_exits >= 1);
    let n = n_evaders + n_inspectors;
    let mut classical_edges = Vec::new();
    for e in 0..n_evaders {
        for s in 0..n_inspectors {
            let evader_pay: Vec<Vec<f64>> = (0..n_exits)
                .map(|a| (0..n_exits).map(|b| if a == b { 0.0 } else { 1.0 }).collect())
                .collect();
            let inspector_pay: Vec<Vec<f64>> = (0..n_exits)
                .map(|a| (0..n_exits).map(|b| if a == b { 1.0 } else { 0.0 }).collect())
                .collect();
            classical_edges.push(ClassicalEdge {
                i: e,
                j: n_evaders + s,
                a_ij: evader_pay,
                a_ji: inspector_pay,
            });
        }
    }
    let classical = ClassicalPolymatrix { actions: vec![n_exits; n], edges: classical_edges };
    embed_polymatrix(&classical).expect("security game data is valid")
}

/// Random two-player zero-sum game with value exactly zero for both
/// players: the payoff matrix `R = S - swap(S)` changes sign under
/// exchanging the two tensor factors, so `p_1(Y, X) = -p_1(X, Y)` and the
/// game value vanishes by symmetry. Both players share the dimension `dim`.
///
/// At any equilibrium both best-response values equal the game value zero,
/// which makes this family exact for the complementarity rescaling of the
/// equilibrium conditions.
pub fn symmetric_zero_sum_two_player(dim: usize, seed: u64) -> NetworkGame {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let s = random_herm(dim * dim, &mut rng);
    let antisym = HermMatrix::new(s.mat().sub(&s.mat().swap_factors(dim, dim)))
        .expect("difference of Hermitian matrices is Hermitian");
    let r_ij = antisym.scale(1.0 / antisym.norm_fro());
    let r_ji = r_ij.scale(-1.0);
    NetworkGame::new(vec![dim, dim], vec![GameEdge { i: 0, j: 1, r_ij, r_ji }])
        .expect("single edge game is valid")
}

/// Turn a constant-sum game with total `C` into a zero-sum game by
/// subtracting `C / (N_active * deg(i))` from each directed payoff of each
/// non-isolated player `i`, implemented as `R - (C / (N_active * deg i)) I`.
/// `N_active` counts the players with at least one edge, so the subtracted
/// total is exactly `C`.
pub fn constant_to_zero_sum(game: &NetworkGame, c: f64) -> Result<NetworkGame, GameError> {
    if game.edges().is_empty() {
        return Err(GameError::NoEdges);
    }
    let n_active = (0..game.n_players()).filter(|&i| !game.is_isolated(i)).count() as f64;
    let edges = game
        .edges()
        .iter()
        .map(|e| {
            let share_i = c / (n_active * game.degree(e.i) as f64);
            let share_j = c / (n_active * game.degree(e.j) as f64);
            GameEdge {
                i: e.i,
                j: e.j,
                r_ij: e.r_ij.shift(-share_i),
                r_ji: e.r_ji.shift(-share_j),
            }
        })
        .collect();
    NetworkGame::new(game.dims().to_vec(), edges)
}

/// Random seeded uniform draw in `[-1, 1]`, used by tests that need a plain
/// scalar stream alongside the matrix generators.
#[cfg(test)]
pub(crate) fn uniform_unit(rng: &mut impl Rng) -> f64 {
    rng.gen_range(-1.0..1.0)
}

#[cfg(test)]
mod tests {
    use super::super::model::StrategyProfile;
    use super::*;
    use crate::linalg::{inner, random_density, DensityMatrix};
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn total_payoff_sum(game: &NetworkGame, profile: &StrategyProfile) -> f64 {
        (0..game.n_players())
            .map(|i| game.total_payoff(i, profile).unwrap())
            .sum()
    }

    fn random_profile(game: &NetworkGame, rng: &mut ChaCha20Rng) -> StrategyProfile {
        let strategies = game.dims().iter().map(|&d| random_density(d, rng)).collect();
        StrategyProfile::for_game(game, strategies).unwrap()
    }

    #[test]
    fn pairwise_generator_is_deterministic() {
        let a = pairwise_zero_sum_random(4, &[2, 2, 3, 2], 0.7, 42);
        let b = pairwise_zero_sum_random(4, &[2, 2, 3, 2], 0.7, 42);
        assert_eq!(a.edges().len(), b.edges().len());
        for (ea, eb) in a.edges().iter().zip(b.edges()) {
            assert_eq!((ea.i, ea.j), (eb.i, eb.j));
            assert!(ea.r_ij.max_abs_diff(&eb.r_ij) == 0.0);
            assert!(ea.r_ji.max_abs_diff(&eb.r_ji) == 0.0);
        }
    }

    #[test]
    fn pairwise_generator_sums_to_zero() {
        let game = pairwise_zero_sum_random(5, &[2, 2, 2, 3, 2], 0.6, 7);
        let mut rng = ChaCha20Rng::seed_from_u64(71);
        for _ in 0..100 {
            let profile = random_profile(&game, &mut rng);
            let total = total_payoff_sum(&game, &profile);
            assert!(total.abs() <= 1e-9, "payoff sum {total}");
        }
    }

    #[test]
    fn embed_matching_pennies_diagonal() {
        let game = matching_pennies();
        let e = &game.edges()[0];
        let want = HermMatrix::diag(&[1.0, -1.0, -1.0, 1.0]);
        assert!(e.r_ij.max_abs_diff(&want) < 1e-15);
        assert!(e.r_ji.max_abs_diff(&want.scale(-1.0)) < 1e-15);
    }

    #[test]
    fn embedded_mixed_profiles_match_classical_values() {
        let game = matching_pennies();
        let mut rng = ChaCha20Rng::seed_from_u64(72);
        for _ in 0..20 {
            let p = 0.5 + 0.5 * uniform_unit(&mut rng);
            let q = 0.5 + 0.5 * uniform_unit(&mut rng);
            let x = DensityMatrix::new(HermMatrix::diag(&[p, 1.0 - p])).unwrap();
            let y = DensityMatrix::new(HermMatrix::diag(&[q, 1.0 - q])).unwrap();
            let (p_ij, p_ji) = game.edge_payoff(0, 1, &x, &y).unwrap();
            // Classical bilinear value of matching pennies.
            let classical = p * q - p * (1.0 - q) - (1.0 - p) * q + (1.0 - p) * (1.0 - q);
            assert!((p_ij - classical).abs() < 1e-12);
            assert!((p_ji + classical).abs() < 1e-12);
        }
    }

    #[test]
    fn embedded_zero_sum_classical_game_is_zero_sum() {
        let mut rng = ChaCha20Rng::seed_from_u64(73);
        let a: Vec<Vec<f64>> = (0..3)
            .map(|_| (0..2).map(|_| uniform_unit(&mut rng)).collect())
            .collect();
        let neg: Vec<Vec<f64>> = a.iter().map(|r| r.iter().map(|v| -v).collect()).collect();
        let classical = ClassicalPolymatrix {
            actions: vec![3, 2],
            edges: vec![ClassicalEdge { i: 0, j: 1, a_ij: a, a_ji: neg }],
        };
        let game = embed_polymatrix(&classical).unwrap();
        for _ in 0..50 {
            let profile = random_profile(&game, &mut rng);
            assert!(total_payoff_sum(&game, &profile).abs() <= 1e-9);
        }
    }

    #[test]
    fn embed_rejects_inconsistent_action_counts() {
        let classical = ClassicalPolymatrix {
            actions: vec![2, 2],
            edges: vec![ClassicalEdge {
                i: 0,
                j: 1,
                a_ij: vec![vec![1.0, 2.0, 3.0], vec![4.0, 5.0, 6.0]],
                a_ji: vec![vec![0.0, 0.0], vec![0.0, 0.0]],
            }],
        };
        assert!(embed_polymatrix(&classical).is_err());
    }

    #[test]
    fn security_game_edge_sum_is_one_before_normalization() {
        let game = security_game_constant_sum(1, 1, 2);
        for a in 0..2usize {
            for b in 0..2usize {
                let mut ea = [0.0, 0.0];
                ea[a] = 1.0;
                let mut eb = [0.0, 0.0];
                eb[b] = 1.0;
                let x = DensityMatrix::new(HermMatrix::diag(&ea)).unwrap();
                let y = DensityMatrix::new(HermMatrix::diag(&eb)).unwrap();
                let (p_e, p_i) = game.edge_payoff(0, 1, &x, &y).unwrap();
                assert!((p_e + p_i - 1.0).abs() < 1e-12, "pure profile ({a},{b})");
            }
        }
    }

    #[test]
    fn security_game_is_zero_sum_after_normalization() {
        let game = security_game(2, 2, 3);
        assert_eq!(game.edges().len(), 4);
        assert!(game.dims().iter().all(|&d| d == 3));
        let mut rng = ChaCha20Rng::seed_from_u64(74);
        for _ in 0..50 {
            let profile = random_profile(&game, &mut rng);
            assert!(total_payoff_sum(&game, &profile).abs() <= 1e-9);
        }
    }

    #[test]
    fn constant_to_zero_sum_with_zero_constant_is_identity() {
        let game = security_game_constant_sum(1, 2, 2);
        let same = constant_to_zero_sum(&game, 0.0).unwrap();
        for (a, b) in game.edges().iter().zip(same.edges()) {
            assert!(a.r_ij.max_abs_diff(&b.r_ij) < 1e-15);
            assert!(a.r_ji.max_abs_diff(&b.r_ji) < 1e-15);
        }
    }

    #[test]
    fn constant_to_zero_sum_single_edge_halves() {
        // C = 1, two players, both degree one: each directed payoff drops by 1/2.
        let game = security_game_constant_sum(1, 1, 2);
        let normalized = constant_to_zero_sum(&game, 1.0).unwrap();
        let before = &game.edges()[0];
        let after = &normalized.edges()[0];
        assert!(after.r_ij.max_abs_diff(&before.r_ij.shift(-0.5)) < 1e-12);
        assert!(after.r_ji.max_abs_diff(&before.r_ji.shift(-0.5)) < 1e-12);
    }

    #[test]
    fn constant_to_zero_sum_requires_edges() {
        let game = NetworkGame::new(vec![2, 2], vec![]).unwrap();
        assert!(matches!(constant_to_zero_sum(&game, 1.0), Err(GameError::NoEdges)));
    }

    #[test]
    fn constant_to_zero_sum_handles_isolated_players() {
        // Two connected players plus an isolated bystander: the subtraction
        // must still remove exactly C.
        let base = security_game_constant_sum(1, 1, 2);
        let mut dims = base.dims().to_vec();
        dims.push(2);
        let game = NetworkGame::new(dims, base.edges().to_vec()).unwrap();
        let normalized = constant_to_zero_sum(&game, 1.0).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(75);
        for _ in 0..20 {
            let profile = random_profile(&normalized, &mut rng);
            assert!(total_payoff_sum(&normalized, &profile).abs() <= 1e-9);
        }
    }

    #[test]
    fn security_1_1_2_has_uniform_equilibrium() {
        // Brute-force grid over diagonal densities plus eigenvalue best
        // responses: exploitability is minimized at the uniform profile.
        let game = security_game(1, 1, 2);
        let grid: Vec<f64> = (0..=20).map(|k| k as f64 / 20.0).collect();
        let mut best = (f64::INFINITY, 0.0, 0.0);
        for &p in &grid {
            for &q in &grid {
                let x = DensityMatrix::new(HermMatrix::diag(&[p, 1.0 - p])).unwrap();
                let y = DensityMatrix::new(HermMatrix::diag(&[q, 1.0 - q])).unwrap();
                let profile = StrategyProfile::for_game(&game, vec![x, y]).unwrap();
                let mut total_e = 0.0;
                for i in 0..2 {
                    let phi = game.phi_i(i, &profile).unwrap();
                    let w = crate::linalg::eig_herm(&phi).unwrap().lambda_max();
                    let p_i = game.total_payoff(i, &profile).unwrap();
                    total_e += w - p_i;
                }
                if total_e < best.0 {
                    best = (total_e, p, q);
                }
            }
        }
        assert!((best.1 - 0.5).abs() < 1e-9, "grid minimum at p = {}", best.1);
        assert!((best.2 - 0.5).abs() < 1e-9, "grid minimum at q = {}", best.2);
        let uniform = StrategyProfile::uniform(&game);
        let mut total_e = 0.0;
        for i in 0..2 {
            let phi = game.phi_i(i, &uniform).unwrap();
            let w = crate::linalg::eig_herm(&phi).unwrap().lambda_max();
            total_e += w - game.total_payoff(i, &uniform).unwrap();
        }
        assert!(total_e.abs() <= 1e-9);
    }

    #[test]
    fn shifted_exploitability_is_invariant() {
        use crate::linalg::eig_herm;
        let game = pairwise_zero_sum_random(3, &[2, 3, 2], 1.0, 23);
        let (shifted, c) = game.cp_shift();
        let mut rng = ChaCha20Rng::seed_from_u64(76);
        for _ in 0..20 {
            let profile = random_profile(&game, &mut rng);
            for i in 0..game.n_players() {
                let phi = game.phi_i(i, &profile).unwrap();
                let w = eig_herm(&phi).unwrap().lambda_max();
                let e = w - game.total_payoff(i, &profile).unwrap();
                let phi_s = shifted.phi_i(i, &profile).unwrap();
                let w_s = eig_herm(&phi_s).unwrap().lambda_max();
                let e_s = w_s - shifted.total_payoff(i, &profile).unwrap();
                assert!((e - e_s).abs() <= 1e-9, "exploitability changed by shift");
                // Both the best-response value and the payoff move by c·deg(i).
                let delta = c * game.degree(i) as f64;
                assert!((w_s - w - delta).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn pairwise_edge_payoffs_negate() {
        let game = pairwise_zero_sum_random(3, &[2, 2, 3], 1.0, 31);
        let mut rng = ChaCha20Rng::seed_from_u64(77);
        for e in game.edges() {
            let x = random_density(game.dim(e.i), &mut rng);
            let y = random_density(game.dim(e.j), &mut rng);
            let (p_ij, p_ji) = game.edge_payoff(e.i, e.j, &x, &y).unwrap();
            assert!((p_ij + p_ji).abs() < 1e-10);
        }
    }

    #[test]
    fn psi_inner_checks_on_generators() {
        // Σ_i ⟨Ψ_i(X), X_i⟩ vanishes on density profiles for every zero-sum
        // generator output.
        let games = [
            pairwise_zero_sum_random(4, &[2, 2, 2, 2], 0.8, 3),
            security_game(1, 2, 2),
            matching_pennies(),
        ];
        let mut rng = ChaCha20Rng::seed_from_u64(78);
        for game in &games {
            for _ in 0..10 {
                let x = random_profile(game, &mut rng);
                let blocks: Vec<HermMatrix> =
                    x.strategies().iter().map(|s| s.as_herm().clone()).collect();
                let psi = game.psi_apply(&blocks).unwrap();
                let val: f64 = psi
                    .iter()
                    .zip(x.strategies())
                    .map(|(p, s)| inner(p, s.as_herm()).unwrap())
                    .sum();
                assert!(val.abs() <= 1e-9);
            }
        }
    }
}
