//! Game type, strategy profiles, payoff evaluation, and the operator form.

use crate::linalg::{
    eig_herm, inner, kron, DensityMatrix, HermMatrix, SuperOperator,
};

use super::GameError;

/// One undirected edge `{i, j}` with `i < j`. Both payoff matrices live on
/// `A_i ⊗ A_j`: `r_ij` pays player `i`, `r_ji` pays player `j`.
#[derive(Clone, Debug)]
pub struct GameEdge {
    pub i: usize,
    pub j: usize,
    pub r_ij: HermMatrix,
    pub r_ji: HermMatrix,
}

/// An N-player semidefinite network game.
#[derive(Clone, Debug)]
pub struct NetworkGame {
    dims: Vec<usize>,
    edges: Vec<GameEdge>,
    neighbors: Vec<Vec<usize>>,
    /// edge index by unordered pair, aligned with `edges`.
    edge_of: Vec<Vec<Option<usize>>>,
}

impl NetworkGame {
    /// Validate and build a game. Edges must satisfy `i < j`, appear at most
    /// once, and carry Hermitian payoff matrices of dimension
    /// `dims[i] * dims[j]`.
    pub fn new(dims: Vec<usize>, edges: Vec<GameEdge>) -> Result<Self, GameError> {
        let n = dims.len();
        if n == 0 {
            return Err(GameError::Invalid("game must have at least one player".into()));
        }
        if let Some(d) = dims.iter().find(|&&d| d == 0) {
            return Err(GameError::Invalid(format!("player dimension must be positive, got {d}")));
        }
        let mut edge_of = vec![vec![None; n]; n];
        let mut neighbors = vec![Vec::new(); n];
        for (idx, e) in edges.iter().enumerate() {
            if e.i >= e.j {
                return Err(GameError::InvalidEdge {
                    i: e.i,
                    j: e.j,
                    reason: "edges must be listed with i < j".into(),
                });
            }
            if e.j >= n {
                return Err(GameError::InvalidEdge {
                    i: e.i,
                    j: e.j,
                    reason: format!("player index out of range for {n} players"),
                });
            }
            if edge_of[e.i][e.j].is_some() {
                return Err(GameError::InvalidEdge { i: e.i, j: e.j, reason: "duplicate edge".into() });
            }
            let want = dims[e.i] * dims[e.j];
            for (name, m) in [("R_ij", &e.r_ij), ("R_ji", &e.r_ji)] {
                if m.dim() != want {
                    return Err(GameError::InvalidEdge {
                        i: e.i,
                        j: e.j,
                        reason: format!("{name} has dimension {}, expected {}", m.dim(), want),
                    });
                }
            }
            edge_of[e.i][e.j] = Some(idx);
            edge_of[e.j][e.i] = Some(idx);
            neighbors[e.i].push(e.j);
            neighbors[e.j].push(e.i);
        }
        for nb in &mut neighbors {
            nb.sort_unstable();
        }
        Ok(NetworkGame { dims, edges, neighbors, edge_of })
    }

    pub fn n_players(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, player: usize) -> usize {
        self.dims[player]
    }

    pub fn edges(&self) -> &[GameEdge] {
        &self.edges
    }

    /// Sorted open neighborhood of a player.
    pub fn neighbors(&self, player: usize) -> &[usize] {
        &self.neighbors[player]
    }

    pub fn degree(&self, player: usize) -> usize {
        self.neighbors[player].len()
    }

    pub fn is_isolated(&self, player: usize) -> bool {
        self.neighbors[player].is_empty()
    }

    fn check_player(&self, player: usize) -> Result<(), GameError> {
        if player >= self.n_players() {
            return Err(GameError::PlayerOutOfRange { player, n_players: self.n_players() });
        }
        Ok(())
    }

    /// The payoff matrix paying `to` on the edge `{to, other}`, together
    /// with a flag telling whether `to` is the first tensor factor.
    fn directed_payoff_matrix(&self, to: usize, other: usize) -> Result<(&HermMatrix, bool), GameError> {
        self.check_player(to)?;
        self.check_player(other)?;
        let idx = self.edge_of[to][other].ok_or(GameError::UnknownEdge { i: to, j: other })?;
        let e = &self.edges[idx];
        if e.i == to {
            Ok((&e.r_ij, true))
        } else {
            Ok((&e.r_ji, false))
        }
    }

    /// Both directed payoffs on edge `{i, j}` at strategies `(x_i, x_j)`:
    /// returns `(p_ij, p_ji)` where `p_ij` pays player `i`.
    pub fn edge_payoff(
        &self,
        i: usize,
        j: usize,
        x_i: &DensityMatrix,
        x_j: &DensityMatrix,
    ) -> Result<(f64, f64), GameError> {
        self.check_player(i)?;
        self.check_player(j)?;
        let idx = self.edge_of[i][j].ok_or(GameError::UnknownEdge { i, j })?;
        let e = &self.edges[idx];
        let (x_first, x_second) = if e.i == i { (x_i, x_j) } else { (x_j, x_i) };
        for (player, x) in [(e.i, x_first), (e.j, x_second)] {
            if x.dim() != self.dims[player] {
                return Err(GameError::StrategyDimMismatch {
                    player,
                    got: x.dim(),
                    want: self.dims[player],
                });
            }
        }
        let product = HermMatrix::new(kron(x_first.mat(), x_second.mat()))?;
        let p_first = inner(&e.r_ij, &product)?;
        let p_second = inner(&e.r_ji, &product)?;
        if e.i == i {
            Ok((p_first, p_second))
        } else {
            Ok((p_second, p_first))
        }
    }

    /// The directed payoff operator `Φ_ij : L(A_j) → L(A_i)` with the
    /// transpose folded in, so that
    /// `⟨R_ij, X_i ⊗ X_j⟩ = ⟨X_i, Φ_ij(X_j)⟩` holds exactly.
    ///
    /// Its Choi matrix is the stored payoff matrix partially transposed on
    /// the input factor (and swapped onto `A_i ⊗ A_j` order first when `i`
    /// is the second factor of the stored edge).
    pub fn payoff_operator(&self, i: usize, j: usize) -> Result<SuperOperator, GameError> {
        let (r, i_is_first) = self.directed_payoff_matrix(i, j)?;
        let (d_i, d_j) = (self.dims[i], self.dims[j]);
        let oriented = if i_is_first {
            r.mat().clone()
        } else {
            r.mat().swap_factors(d_j, d_i)
        };
        let choi = HermMatrix::new(oriented.partial_transpose_second(d_i, d_j))?;
        Ok(SuperOperator::new(d_j, d_i, choi)?)
    }

    /// `Φ_i(X_{N(i)}) = Σ_{j ∈ N(i)} Φ_ij(X_j)`, the Hermitian matrix whose
    /// inner product with `X_i` is player `i`'s total payoff. Returns the
    /// zero matrix for isolated players.
    pub fn phi_i(&self, i: usize, profile: &StrategyProfile) -> Result<HermMatrix, GameError> {
        self.check_player(i)?;
        profile.check_against(self)?;
        let mut acc = HermMatrix::zero(self.dims[i]);
        for &j in self.neighbors(i) {
            let op = self.payoff_operator(i, j)?;
            acc = acc.add(&op.apply(profile.strategy(j).as_herm())?);
        }
        Ok(acc)
    }

    /// `Φ_i` evaluated from an explicit list of `(neighbor, strategy)`
    /// pairs; every neighbor of `i` must be present.
    pub fn phi_i_from(
        &self,
        i: usize,
        neighbor_strategies: &[(usize, DensityMatrix)],
    ) -> Result<HermMatrix, GameError> {
        self.check_player(i)?;
        let mut acc = HermMatrix::zero(self.dims[i]);
        for &j in self.neighbors(i) {
            let (_, x_j) = neighbor_strategies
                .iter()
                .find(|(p, _)| *p == j)
                .ok_or(GameError::MissingNeighborStrategy { player: j })?;
            if x_j.dim() != self.dims[j] {
                return Err(GameError::StrategyDimMismatch {
                    player: j,
                    got: x_j.dim(),
                    want: self.dims[j],
                });
            }
            let op = self.payoff_operator(i, j)?;
            acc = acc.add(&op.apply(x_j.as_herm())?);
        }
        Ok(acc)
    }

    /// Player `i`'s total payoff `⟨X_i, Φ_i(X_{N(i)})⟩`.
    pub fn total_payoff(&self, i: usize, profile: &StrategyProfile) -> Result<f64, GameError> {
        let phi = self.phi_i(i, profile)?;
        Ok(inner(profile.strategy(i).as_herm(), &phi)?)
    }

    /// The game operator `Φ(X) = (Φ_1(X), …, Φ_N(X))`.
    pub fn game_operator_apply(&self, profile: &StrategyProfile) -> Result<Vec<HermMatrix>, GameError> {
        (0..self.n_players()).map(|i| self.phi_i(i, profile)).collect()
    }

    /// The adjoint game operator `Ψ = Φ†` applied blockwise:
    /// `Ψ_i(Y) = Σ_{j ∈ N(i)} Φ_ji†(Y_j)`.
    pub fn psi_apply(&self, y: &[HermMatrix]) -> Result<Vec<HermMatrix>, GameError> {
        if y.len() != self.n_players() {
            return Err(GameError::ProfileLenMismatch { got: y.len(), want: self.n_players() });
        }
        for (i, block) in y.iter().enumerate() {
            if block.dim() != self.dims[i] {
                return Err(GameError::StrategyDimMismatch {
                    player: i,
                    got: block.dim(),
                    want: self.dims[i],
                });
            }
        }
        let mut out = Vec::with_capacity(self.n_players());
        for i in 0..self.n_players() {
            let mut acc = HermMatrix::zero(self.dims[i]);
            for &j in self.neighbors(i) {
                let op = self.payoff_operator(j, i)?;
                acc = acc.add(&op.adjoint_apply(&y[j])?);
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Replace every payoff matrix `R` with `R + c·I` for
    /// `c = max(0, -min λ_min(R)) + 1`, taken over all edge matrices. Every
    /// resulting Choi matrix is positive definite with margin at least one,
    /// so all payoff operators are strictly completely positive. Per-edge
    /// payoffs grow by exactly `c` and exploitabilities are unchanged.
    pub fn cp_shift(&self) -> (NetworkGame, f64) {
        let mut min_eig = f64::INFINITY;
        for e in &self.edges {
            for r in [&e.r_ij, &e.r_ji] {
                let eig = eig_herm(r).expect("payoff matrices are Hermitian");
                min_eig = min_eig.min(eig.lambda_min());
            }
        }
        let c = if self.edges.is_empty() { 1.0 } else { (-min_eig).max(0.0) + 1.0 };
        let edges = self
            .edges
            .iter()
            .map(|e| GameEdge {
                i: e.i,
                j: e.j,
                r_ij: e.r_ij.shift(c),
                r_ji: e.r_ji.shift(c),
            })
            .collect();
        let shifted = NetworkGame::new(self.dims.clone(), edges).expect("shift preserves validity");
        (shifted, c)
    }
}

/// One density matrix per player.
#[derive(Clone, Debug)]
pub struct StrategyProfile {
    strategies: Vec<DensityMatrix>,
}

impl StrategyProfile {
    /// Build a profile for a game, checking counts and dimensions.
    pub fn for_game(game: &NetworkGame, strategies: Vec<DensityMatrix>) -> Result<Self, GameError> {
        if strategies.len() != game.n_players() {
            return Err(GameError::ProfileLenMismatch {
                got: strategies.len(),
                want: game.n_players(),
            });
        }
        for (i, s) in strategies.iter().enumerate() {
            if s.dim() != game.dim(i) {
                return Err(GameError::StrategyDimMismatch {
                    player: i,
                    got: s.dim(),
                    want: game.dim(i),
                });
            }
        }
        Ok(StrategyProfile { strategies })
    }

    /// The maximally mixed profile `X_i = I / d_i`.
    pub fn uniform(game: &NetworkGame) -> Self {
        StrategyProfile {
            strategies: game.dims().iter().map(|&d| DensityMatrix::uniform(d)).collect(),
        }
    }

    pub fn strategies(&self) -> &[DensityMatrix] {
        &self.strategies
    }

    pub fn strategy(&self, player: usize) -> &DensityMatrix {
        &self.strategies[player]
    }

    /// Replace one player's strategy.
    pub fn with_strategy(&self, player: usize, strategy: DensityMatrix) -> StrategyProfile {
        let mut strategies = self.strategies.clone();
        strategies[player] = strategy;
        StrategyProfile { strategies }
    }

    fn check_against(&self, game: &NetworkGame) -> Result<(), GameError> {
        if self.strategies.len() != game.n_players() {
            return Err(GameError::ProfileLenMismatch {
                got: self.strategies.len(),
                want: game.n_players(),
            });
        }
        for (i, s) in self.strategies.iter().enumerate() {
            if s.dim() != game.dim(i) {
                return Err(GameError::StrategyDimMismatch {
                    player: i,
                    got: s.dim(),
                    want: game.dim(i),
                });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::generators::pairwise_zero_sum_random;
    use super::*;
    use crate::linalg::{random_density, random_herm, C64, CMat};
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn single_edge_game(r_ij: HermMatrix, r_ji: HermMatrix, d_i: usize, d_j: usize) -> NetworkGame {
        NetworkGame::new(vec![d_i, d_j], vec![GameEdge { i: 0, j: 1, r_ij, r_ji }]).unwrap()
    }

    fn random_profile(game: &NetworkGame, rng: &mut ChaCha20Rng) -> StrategyProfile {
        let strategies = game.dims().iter().map(|&d| random_density(d, rng)).collect();
        StrategyProfile::for_game(game, strategies).unwrap()
    }

    #[test]
    fn rejects_malformed_edges() {
        let r = HermMatrix::identity(4);
        assert!(NetworkGame::new(
            vec![2, 2],
            vec![GameEdge { i: 1, j: 0, r_ij: r.clone(), r_ji: r.clone() }]
        )
        .is_err());
        assert!(NetworkGame::new(
            vec![2, 2],
            vec![GameEdge { i: 0, j: 5, r_ij: r.clone(), r_ji: r.clone() }]
        )
        .is_err());
        let bad_dim = HermMatrix::identity(3);
        assert!(NetworkGame::new(
            vec![2, 2],
            vec![GameEdge { i: 0, j: 1, r_ij: bad_dim.clone(), r_ji: bad_dim }]
        )
        .is_err());
    }

    #[test]
    fn edge_payoff_selects_corner_entry() {
        // R_ij = E_00 ⊗ E_00: picks out the (0,0) populations.
        let r_ij = HermMatrix::new(kron(&CMat::unit(2, 0, 0), &CMat::unit(2, 0, 0))).unwrap();
        let game = single_edge_game(r_ij, HermMatrix::zero(4), 2, 2);
        let x = DensityMatrix::new(HermMatrix::diag(&[1.0, 0.0])).unwrap();
        let (p_ij, p_ji) = game.edge_payoff(0, 1, &x, &x).unwrap();
        assert!((p_ij - 1.0).abs() < 1e-12);
        assert_eq!(p_ji, 0.0);
    }

    #[test]
    fn identity_payoff_matrix_pays_one() {
        let game = single_edge_game(HermMatrix::identity(4), HermMatrix::identity(4), 2, 2);
        let mut rng = ChaCha20Rng::seed_from_u64(51);
        for _ in 0..5 {
            let x = random_density(2, &mut rng);
            let y = random_density(2, &mut rng);
            let (p_ij, p_ji) = game.edge_payoff(0, 1, &x, &y).unwrap();
            assert!((p_ij - 1.0).abs() < 1e-10);
            assert!((p_ji - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn edge_payoff_unknown_edge() {
        let game = NetworkGame::new(vec![2, 2, 2], vec![]).unwrap();
        let x = DensityMatrix::uniform(2);
        assert!(matches!(
            game.edge_payoff(0, 1, &x, &x),
            Err(GameError::UnknownEdge { .. })
        ));
    }

    #[test]
    fn bilinear_and_operator_payoffs_agree() {
        let mut rng = ChaCha20Rng::seed_from_u64(52);
        for _ in 0..20 {
            let r_ij = random_herm(6, &mut rng);
            let r_ji = random_herm(6, &mut rng);
            let game = single_edge_game(r_ij, r_ji, 2, 3);
            let x = random_density(2, &mut rng);
            let y = random_density(3, &mut rng);
            let (p_ij, p_ji) = game.edge_payoff(0, 1, &x, &y).unwrap();

            let op_01 = game.payoff_operator(0, 1).unwrap();
            let via_op = inner(x.as_herm(), &op_01.apply(y.as_herm()).unwrap()).unwrap();
            assert!((p_ij - via_op).abs() <= 1e-10, "p_ij {p_ij} vs operator {via_op}");

            let op_10 = game.payoff_operator(1, 0).unwrap();
            let via_op = inner(y.as_herm(), &op_10.apply(x.as_herm()).unwrap()).unwrap();
            assert!((p_ji - via_op).abs() <= 1e-10, "p_ji {p_ji} vs operator {via_op}");
        }
    }

    #[test]
    fn identity_choi_is_scaled_trace_map() {
        // R_ij = I: Φ_ij(Y) = tr(Y)·I, checked on a Hermitian basis.
        let game = single_edge_game(HermMatrix::identity(4), HermMatrix::zero(4), 2, 2);
        let op = game.payoff_operator(0, 1).unwrap();
        for b in crate::linalg::herm_basis(2) {
            let got = op.apply(&b).unwrap();
            let want = HermMatrix::scaled_identity(2, b.trace());
            assert!(got.max_abs_diff(&want) < 1e-12);
        }
    }

    #[test]
    fn zero_choi_is_zero_map() {
        let game = single_edge_game(HermMatrix::zero(4), HermMatrix::zero(4), 2, 2);
        let op = game.payoff_operator(0, 1).unwrap();
        let y = HermMatrix::diag(&[3.0, -1.0]);
        assert!(op.apply(&y).unwrap().norm_fro() < 1e-15);
    }

    #[test]
    fn payoff_operator_is_hermitian_preserving() {
        let mut rng = ChaCha20Rng::seed_from_u64(53);
        let game = single_edge_game(random_herm(6, &mut rng), random_herm(6, &mut rng), 2, 3);
        let op = game.payoff_operator(0, 1).unwrap();
        for _ in 0..10 {
            let h = random_herm(3, &mut rng);
            let out = op.apply(&h).unwrap();
            // HermMatrix construction would fail on gross asymmetry; also
            // check against the raw action.
            let raw = op.apply_cmat(h.mat());
            assert!(raw.max_herm_deviation() < 1e-10);
            assert_eq!(out.dim(), 2);
        }
    }

    #[test]
    fn phi_of_isolated_player_is_zero() {
        let game = NetworkGame::new(vec![2, 3], vec![]).unwrap();
        let profile = StrategyProfile::uniform(&game);
        assert!(game.phi_i(0, &profile).unwrap().norm_fro() < 1e-15);
        assert!((game.total_payoff(0, &profile).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn phi_with_single_neighbor_matches_operator() {
        let mut rng = ChaCha20Rng::seed_from_u64(54);
        let game = single_edge_game(random_herm(4, &mut rng), random_herm(4, &mut rng), 2, 2);
        let profile = random_profile(&game, &mut rng);
        let phi = game.phi_i(0, &profile).unwrap();
        let op = game.payoff_operator(0, 1).unwrap();
        let direct = op.apply(profile.strategy(1).as_herm()).unwrap();
        assert!(phi.max_abs_diff(&direct) < 1e-12);
    }

    #[test]
    fn phi_i_from_requires_all_neighbors() {
        let mut rng = ChaCha20Rng::seed_from_u64(55);
        let game = single_edge_game(random_herm(4, &mut rng), random_herm(4, &mut rng), 2, 2);
        assert!(matches!(
            game.phi_i_from(0, &[]),
            Err(GameError::MissingNeighborStrategy { player: 1 })
        ));
        let ok = game.phi_i_from(0, &[(1, random_density(2, &mut rng))]);
        assert!(ok.is_ok());
    }

    #[test]
    fn utility_matches_edge_payoff_sums() {
        let mut rng = ChaCha20Rng::seed_from_u64(56);
        let game = pairwise_zero_sum_random(4, &[2, 2, 3, 2], 0.9, 99);
        for _ in 0..20 {
            let profile = random_profile(&game, &mut rng);
            for i in 0..game.n_players() {
                let via_phi = game.total_payoff(i, &profile).unwrap();
                let mut via_edges = 0.0;
                for &j in game.neighbors(i) {
                    let (p_ij, _) =
                        game.edge_payoff(i, j, profile.strategy(i), profile.strategy(j)).unwrap();
                    via_edges += p_ij;
                }
                assert!((via_phi - via_edges).abs() <= 1e-9, "paths differ: {via_phi} vs {via_edges}");
            }
        }
    }

    #[test]
    fn all_identity_payoffs_give_degree() {
        let dims = vec![2usize, 2, 2];
        let edges = vec![
            GameEdge { i: 0, j: 1, r_ij: HermMatrix::identity(4), r_ji: HermMatrix::identity(4) },
            GameEdge { i: 1, j: 2, r_ij: HermMatrix::identity(4), r_ji: HermMatrix::identity(4) },
        ];
        let game = NetworkGame::new(dims, edges).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(57);
        let profile = random_profile(&game, &mut rng);
        for i in 0..3 {
            let p = game.total_payoff(i, &profile).unwrap();
            assert!((p - game.degree(i) as f64).abs() < 1e-10);
        }
    }

    #[test]
    fn game_operator_matches_total_payoffs() {
        let mut rng = ChaCha20Rng::seed_from_u64(58);
        let game = pairwise_zero_sum_random(4, &[2, 3, 2, 2], 0.8, 7);
        let profile = random_profile(&game, &mut rng);
        let blocks = game.game_operator_apply(&profile).unwrap();
        let mut total = 0.0;
        for i in 0..game.n_players() {
            let via_block = inner(profile.strategy(i).as_herm(), &blocks[i]).unwrap();
            let direct = game.total_payoff(i, &profile).unwrap();
            assert!((via_block - direct).abs() <= 1e-10);
            total += via_block;
        }
        // Pairwise zero-sum: ⟨X, Φ(X)⟩ = Σ p_i = 0.
        assert!(total.abs() <= 1e-9);
    }

    #[test]
    fn psi_is_adjoint_of_game_operator() {
        let mut rng = ChaCha20Rng::seed_from_u64(59);
        let game = pairwise_zero_sum_random(3, &[2, 2, 2], 1.0, 11);
        for _ in 0..20 {
            let x = random_profile(&game, &mut rng);
            let y: Vec<HermMatrix> = (0..3).map(|_| random_herm(2, &mut rng)).collect();
            let phi_x = game.game_operator_apply(&x).unwrap();
            let psi_y = game.psi_apply(&y).unwrap();
            let lhs: f64 = psi_y
                .iter()
                .zip(x.strategies())
                .map(|(p, s)| inner(p, s.as_herm()).unwrap())
                .sum();
            let rhs: f64 = y
                .iter()
                .zip(&phi_x)
                .map(|(yi, pi)| inner(yi, pi).unwrap())
                .sum();
            assert!((lhs - rhs).abs() <= 1e-10, "adjoint identity violated: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn psi_vanishes_on_profiles_of_zero_sum_games() {
        let mut rng = ChaCha20Rng::seed_from_u64(60);
        let game = pairwise_zero_sum_random(4, &[2, 2, 2, 2], 0.7, 13);
        for _ in 0..10 {
            let x = random_profile(&game, &mut rng);
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

    #[test]
    fn psi_on_edgeless_game_is_zero() {
        let game = NetworkGame::new(vec![2, 2], vec![]).unwrap();
        let y = vec![HermMatrix::identity(2), HermMatrix::identity(2)];
        let psi = game.psi_apply(&y).unwrap();
        assert!(psi.iter().all(|m| m.norm_fro() < 1e-15));
    }

    #[test]
    fn cp_shift_constant_and_margin() {
        // All payoff matrices already ⪰ I: the strictness margin still adds one.
        let game = single_edge_game(
            HermMatrix::diag(&[1.0, 2.0, 3.0, 4.0]),
            HermMatrix::identity(4),
            2,
            2,
        );
        let (shifted, c) = game.cp_shift();
        assert_eq!(c, 1.0);
        let mut rng = ChaCha20Rng::seed_from_u64(61);
        let x = random_density(2, &mut rng);
        let y = random_density(2, &mut rng);
        let (p, _) = game.edge_payoff(0, 1, &x, &y).unwrap();
        let (p_shifted, _) = shifted.edge_payoff(0, 1, &x, &y).unwrap();
        assert!((p_shifted - p - c).abs() < 1e-10);
    }

    #[test]
    fn cp_shift_makes_choi_strictly_positive() {
        let mut rng = ChaCha20Rng::seed_from_u64(62);
        let game = pairwise_zero_sum_random(3, &[2, 2, 2], 1.0, 17);
        let (shifted, _) = game.cp_shift();
        for e in shifted.edges() {
            for r in [&e.r_ij, &e.r_ji] {
                let min_eig = eig_herm(r).unwrap().lambda_min();
                assert!(min_eig >= 1.0 - 1e-9, "shifted Choi min eigenvalue {min_eig}");
            }
        }
        // Shifted payoff operators map densities to positive definite matrices.
        let profile = random_profile(&shifted, &mut rng);
        for i in 0..shifted.n_players() {
            let phi = shifted.phi_i(i, &profile).unwrap();
            assert!(eig_herm(&phi).unwrap().lambda_min() >= shifted.degree(i) as f64 - 1e-9);
        }
    }

    #[test]
    fn profile_validation() {
        let game = NetworkGame::new(vec![2, 3], vec![]).unwrap();
        assert!(StrategyProfile::for_game(&game, vec![DensityMatrix::uniform(2)]).is_err());
        assert!(StrategyProfile::for_game(
            &game,
            vec![DensityMatrix::uniform(2), DensityMatrix::uniform(2)]
        )
        .is_err());
        assert!(StrategyProfile::for_game(
            &game,
            vec![DensityMatrix::uniform(2), DensityMatrix::uniform(3)]
        )
        .is_ok());
    }

    #[test]
    fn lemma_identity_across_dims() {
        // Both payoff evaluation paths agree on random (R, X, Y) triples
        // across dims 2-4.
        let mut rng = ChaCha20Rng::seed_from_u64(63);
        for &(di, dj) in &[(2usize, 2usize), (2, 3), (3, 3), (2, 4), (4, 4), (3, 4)] {
            for _ in 0..10 {
                let game = single_edge_game(
                    random_herm(di * dj, &mut rng),
                    random_herm(di * dj, &mut rng),
                    di,
                    dj,
                );
                let x = random_density(di, &mut rng);
                let y = random_density(dj, &mut rng);
                let (p_ij, _) = game.edge_payoff(0, 1, &x, &y).unwrap();
                let op = game.payoff_operator(0, 1).unwrap();
                let via = inner(x.as_herm(), &op.apply(y.as_herm()).unwrap()).unwrap();
                assert!((p_ij - via).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn pure_state_payoffs_are_real_with_complex_data() {
        let mut rng = ChaCha20Rng::seed_from_u64(64);
        let game = single_edge_game(random_herm(4, &mut rng), random_herm(4, &mut rng), 2, 2);
        let v = [C64::new(0.6, 0.3), C64::new(-0.2, 0.7)];
        let x = DensityMatrix::pure(&v).unwrap();
        let (p_ij, p_ji) = game.edge_payoff(0, 1, &x, &x).unwrap();
        assert!(p_ij.is_finite() && p_ji.is_finite());
    }
}
