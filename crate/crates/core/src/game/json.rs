//! JSON schemas for game and profile files, shared with the command-line
//! front end.
//!
//! Complex matrices serialize as row-major nested arrays of `[re, im]`
//! pairs. Validation errors carry the JSON path of the offending field.

use serde::{Deserialize, Serialize};

use crate::linalg::{cmat_from_nested, cmat_to_nested, DensityMatrix, HermMatrix};

use super::model::{GameEdge, NetworkGame, StrategyProfile};
use super::GameError;

/// Current schema version for game and profile files.
pub const SCHEMA_VERSION: u32 = 1;

/// Row-major complex matrix as `[re, im]` pairs.
pub type Cmat = Vec<Vec<[f64; 2]>>;

/// On-disk form of a [`NetworkGame`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GameFile {
    pub schema_version: u32,
    pub players: Vec<PlayerSpec>,
    pub edges: Vec<EdgeSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PlayerSpec {
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub i: usize,
    pub j: usize,
    #[serde(rename = "R_ij")]
    pub r_ij: Cmat,
    #[serde(rename = "R_ji")]
    pub r_ji: Cmat,
}

impl GameFile {
    pub fn from_game(game: &NetworkGame) -> GameFile {
        GameFile {
            schema_version: SCHEMA_VERSION,
            players: game.dims().iter().map(|&dim| PlayerSpec { dim }).collect(),
            edges: game
                .edges()
                .iter()
                .map(|e| EdgeSpec {
                    i: e.i,
                    j: e.j,
                    r_ij: cmat_to_nested(e.r_ij.mat()),
                    r_ji: cmat_to_nested(e.r_ji.mat()),
                })
                .collect(),
        }
    }

    /// Validate and convert to the in-memory model. Errors name the JSON
    /// path of the offending field.
    pub fn to_game(&self) -> Result<NetworkGame, GameError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(GameError::Invalid(format!(
                "schema_version: expected {}, got {}",
                SCHEMA_VERSION, self.schema_version
            )));
        }
        let dims: Vec<usize> = self.players.iter().map(|p| p.dim).collect();
        for (idx, p) in self.players.iter().enumerate() {
            if p.dim == 0 {
                return Err(GameError::Invalid(format!("players[{idx}].dim: must be positive")));
            }
        }
        let mut edges = Vec::with_capacity(self.edges.len());
        for (idx, e) in self.edges.iter().enumerate() {
            let parse = |name: &str, raw: &Cmat| -> Result<HermMatrix, GameError> {
                let mat = cmat_from_nested(raw)
                    .map_err(|err| GameError::Invalid(format!("edges[{idx}].{name}: {err}")))?;
                HermMatrix::new(mat)
                    .map_err(|err| GameError::Invalid(format!("edges[{idx}].{name}: {err}")))
            };
            edges.push(GameEdge {
                i: e.i,
                j: e.j,
                r_ij: parse("R_ij", &e.r_ij)?,
                r_ji: parse("R_ji", &e.r_ji)?,
            });
        }
        NetworkGame::new(dims, edges)
            .map_err(|err| GameError::Invalid(format!("edges: {err}")))
    }
}

/// On-disk form of a [`StrategyProfile`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProfileFile {
    pub schema_version: u32,
    pub strategies: Vec<Cmat>,
}

impl ProfileFile {
    pub fn from_profile(profile: &StrategyProfile) -> ProfileFile {
        ProfileFile {
            schema_version: SCHEMA_VERSION,
            strategies: profile
                .strategies()
                .iter()
                .map(|s| cmat_to_nested(s.mat()))
                .collect(),
        }
    }

    /// Validate against a game and convert to the in-memory profile.
    pub fn to_profile(&self, game: &NetworkGame) -> Result<StrategyProfile, GameError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(GameError::Invalid(format!(
                "schema_version: expected {}, got {}",
                SCHEMA_VERSION, self.schema_version
            )));
        }
        let mut strategies = Vec::with_capacity(self.strategies.len());
        for (idx, raw) in self.strategies.iter().enumerate() {
            let mat = cmat_from_nested(raw)
                .map_err(|err| GameError::Invalid(format!("strategies[{idx}]: {err}")))?;
            let herm = HermMatrix::new(mat)
                .map_err(|err| GameError::Invalid(format!("strategies[{idx}]: {err}")))?;
            let density = DensityMatrix::new(herm)
                .map_err(|err| GameError::Invalid(format!("strategies[{idx}]: {err}")))?;
            strategies.push(density);
        }
        StrategyProfile::for_game(game, strategies)
    }
}

#[cfg(test)]
mod tests {
    use super::super::generators::pairwise_zero_sum_random;
    use super::*;

    #[test]
    fn game_file_round_trip() {
        let game = pairwise_zero_sum_random(3, &[2, 3, 2], 0.9, 5);
        let file = GameFile::from_game(&game);
        let json = serde_json::to_string_pretty(&file).unwrap();
        let parsed: GameFile = serde_json::from_str(&json).unwrap();
        let back = parsed.to_game().unwrap();
        assert_eq!(back.dims(), game.dims());
        assert_eq!(back.edges().len(), game.edges().len());
        for (a, b) in back.edges().iter().zip(game.edges()) {
            assert!(a.r_ij.max_abs_diff(&b.r_ij) < 1e-15);
        }
    }

    #[test]
    fn serialization_is_byte_deterministic() {
        let a = pairwise_zero_sum_random(4, &[2, 2, 2, 2], 0.6, 9);
        let b = pairwise_zero_sum_random(4, &[2, 2, 2, 2], 0.6, 9);
        let ja = serde_json::to_string_pretty(&GameFile::from_game(&a)).unwrap();
        let jb = serde_json::to_string_pretty(&GameFile::from_game(&b)).unwrap();
        assert_eq!(ja, jb);
    }

    #[test]
    fn validation_errors_carry_paths() {
        let game = pairwise_zero_sum_random(2, &[2, 2], 1.0, 1);
        let mut file = GameFile::from_game(&game);
        file.edges[0].r_ij[0][1] = [5.0, 5.0];
        let err = file.to_game().unwrap_err().to_string();
        assert!(err.contains("edges[0].R_ij"), "unexpected error text: {err}");

        let mut file = GameFile::from_game(&game);
        file.schema_version = 2;
        let err = file.to_game().unwrap_err().to_string();
        assert!(err.contains("schema_version"));
    }

    #[test]
    fn profile_round_trip_and_validation() {
        let game = pairwise_zero_sum_random(2, &[2, 3], 1.0, 2);
        let profile = StrategyProfile::uniform(&game);
        let file = ProfileFile::from_profile(&profile);
        let json = serde_json::to_string(&file).unwrap();
        let parsed: ProfileFile = serde_json::from_str(&json).unwrap();
        let back = parsed.to_profile(&game).unwrap();
        assert_eq!(back.strategies().len(), 2);

        // Non-density strategies are rejected with a path.
        let mut bad = ProfileFile::from_profile(&profile);
        bad.strategies[1][0][0] = [2.0, 0.0];
        let err = bad.to_profile(&game).unwrap_err().to_string();
        assert!(err.contains("strategies[1]"), "unexpected error text: {err}");
    }
}
