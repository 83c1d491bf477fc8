//! The cooperative fence game.
//!
//! Players take turns relocating one piece at a time. Every move must leave a
//! valid fence on the board, and passing uses up a move like any other.

use thiserror::Error;

use crate::board::{BoardConfig, ConfigError, Placement};
use crate::geom::{Cell, PieceLabel, Transform};
use crate::rules::{validate_fence, FenceReport, ScoreMode};

/// Moves shared out among the players of one game.
pub const TOTAL_MOVES: u32 = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("a game needs at least one player")]
    NoPlayers,
    #[error("player {0} is not in this game")]
    NoSuchPlayer(usize),
    #[error("starting position is not a valid fence")]
    InvalidStart(Box<FenceReport>),
    #[error("the move would break the fence")]
    IllegalMove(Box<FenceReport>),
    #[error("piece {0} is not on the board")]
    UnknownPiece(PieceLabel),
    #[error("player {0} has no moves left")]
    OutOfBudget(usize),
    #[error("it is player {current}'s turn, not player {player}'s")]
    NotYourTurn { player: usize, current: usize },
    #[error("the game is over")]
    GameOver,
    #[error(transparent)]
    Config(#[from] ConfigError),
}

/// Moves per player: 24 shared out and rounded to the nearest whole move,
/// at least one each.
pub fn moves_per_player(player_count: usize) -> Result<u32, GameError> {
    if player_count == 0 {
        return Err(GameError::NoPlayers);
    }
    let n = u32::try_from(player_count)
        .unwrap_or(u32::MAX)
        .min(2 * TOTAL_MOVES + 1);
    Ok(((2 * TOTAL_MOVES + n) / (2 * n)).max(1))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Move {
    Pass,
    Relocate {
        piece: PieceLabel,
        transform: Transform,
        anchor: Cell,
    },
}

impl Move {
    pub fn relocate(piece: impl Into<PieceLabel>, transform: Transform, anchor: Cell) -> Self {
        Move::Relocate {
            piece: piece.into(),
            transform,
            anchor,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HistoryEntry {
    pub player: usize,
    pub mv: Move,
    /// Enclosed area after the move.
    pub area: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameState {
    start: BoardConfig,
    config: BoardConfig,
    area: usize,
    player_count: usize,
    starting_player: usize,
    moves_remaining: Vec<u32>,
    current_player: usize,
    score_mode: ScoreMode,
    history: Vec<HistoryEntry>,
    consecutive_passes: usize,
    terminal: bool,
}

impl GameState {
    pub fn new(
        start: BoardConfig,
        player_count: usize,
        mode: ScoreMode,
    ) -> Result<Self, GameError> {
        Self::with_starting_player(start, player_count, mode, 0)
    }

    pub fn with_starting_player(
        start: BoardConfig,
        player_count: usize,
        mode: ScoreMode,
        starting_player: usize,
    ) -> Result<Self, GameError> {
        let budget = moves_per_player(player_count)?;
        if starting_player >= player_count {
            return Err(GameError::NoSuchPlayer(starting_player));
        }
        let report = validate_fence(&start);
        if !report.valid {
            return Err(GameError::InvalidStart(Box::new(report)));
        }
        Ok(Self {
            config: start.clone(),
            start,
            area: report.area,
            player_count,
            starting_player,
            moves_remaining: vec![budget; player_count],
            current_player: starting_player,
            score_mode: mode,
            history: Vec::new(),
            consecutive_passes: 0,
            terminal: false,
        })
    }

    /// Rebuilds a game by applying `moves` in order.
    pub fn replay<'a>(
        start: BoardConfig,
        player_count: usize,
        mode: ScoreMode,
        moves: impl IntoIterator<Item = &'a Move>,
    ) -> Result<Self, GameError> {
        let mut state = Self::new(start, player_count, mode)?;
        for mv in moves {
            state = state.apply_move(mv)?;
        }
        Ok(state)
    }

    pub fn config(&self) -> &BoardConfig {
        &self.config
    }

    pub fn start(&self) -> &BoardConfig {
        &self.start
    }

    pub fn area(&self) -> usize {
        self.area
    }

    pub fn player_count(&self) -> usize {
        self.player_count
    }

    pub fn starting_player(&self) -> usize {
        self.starting_player
    }

    pub fn moves_remaining(&self) -> &[u32] {
        &self.moves_remaining
    }

    pub fn current_player(&self) -> usize {
        self.current_player
    }

    pub fn score_mode(&self) -> ScoreMode {
        self.score_mode
    }

    pub fn history(&self) -> &[HistoryEntry] {
        &self.history
    }

    pub fn consecutive_passes(&self) -> usize {
        self.consecutive_passes
    }

    pub fn is_terminal(&self) -> bool {
        self.terminal
    }

    /// Terminal flag and the current score. The board is always a valid
    /// fence, so the score is its area.
    pub fn outcome(&self) -> (bool, usize) {
        (self.terminal, self.area)
    }

    /// Applies a move on behalf of `player`, who must be the current player.
    pub fn apply_move_as(&self, player: usize, mv: &Move) -> Result<Self, GameError> {
        if player >= self.player_count {
            return Err(GameError::NoSuchPlayer(player));
        }
        if self.terminal {
            return Err(GameError::GameOver);
        }
        if player != self.current_player {
            return Err(GameError::NotYourTurn {
                player,
                current: self.current_player,
            });
        }
        self.apply_move(mv)
    }

    /// Applies a move for the current player. A rejected move leaves `self`
    /// untouched.
    pub fn apply_move(&self, mv: &Move) -> Result<Self, GameError> {
        if self.terminal {
            return Err(GameError::GameOver);
        }
        let player = self.current_player;
        if self.moves_remaining[player] == 0 {
            return Err(GameError::OutOfBudget(player));
        }
        let mut next = self.clone();
        match mv {
            Move::Pass => {
                next.consecutive_passes += 1;
            }
            Move::Relocate {
                piece,
                transform,
                anchor,
            } => {
                if self.config.placement(piece.as_str()).is_none() {
                    return Err(GameError::UnknownPiece(piece.clone()));
                }
                let moved =
                    self.config
                        .with_moved(Placement::new(piece.clone(), *transform, *anchor))?;
                let report = validate_fence(&moved);
                if !report.valid {
                    return Err(GameError::IllegalMove(Box::new(report)));
                }
                next.config = moved;
                next.area = report.area;
                next.consecutive_passes = 0;
            }
        }
        next.moves_remaining[player] -= 1;
        next.history.push(HistoryEntry {
            player,
            mv: mv.clone(),
            area: next.area,
        });
        next.terminal = next.moves_remaining.iter().all(|&m| m == 0)
            || next.consecutive_passes >= next.player_count;
        if !next.terminal {
            next.current_player = next.next_player(player);
        }
        Ok(next)
    }

    /// Next player clockwise who still has moves.
    fn next_player(&self, from: usize) -> usize {
        (1..=self.player_count)
            .map(|k| (from + k) % self.player_count)
            .find(|&p| self.moves_remaining[p] > 0)
            .unwrap_or(from)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_table() {
        let got: Vec<u32> = (1..=12).map(|n| moves_per_player(n).unwrap()).collect();
        assert_eq!(got, [24, 12, 8, 6, 5, 4, 3, 3, 3, 2, 2, 2]);
        assert_eq!(moves_per_player(30), Ok(1));
        assert_eq!(moves_per_player(usize::MAX), Ok(1));
        assert_eq!(moves_per_player(0), Err(GameError::NoPlayers));
    }
}
