//! Polyomino fence engine.
//!
//! A fence is a placement of every piece of a piece set such that each piece
//! touches at least two others along an edge and all cells form one
//! rook-connected region. Its score is the number of empty cells it encloses.
//!
//! The crate is split into the geometry kernel ([`geom`], [`board`],
//! [`topology`]), the fence rules and the cooperative game ([`rules`],
//! [`game`]), the solvers ([`solver`]) and the file and session formats
//! ([`io`]).

pub mod board;
pub mod canon;
pub mod game;
pub mod geom;
pub mod grid;
pub mod io;
pub mod pieces;
pub mod rules;
pub mod solver;
pub mod topology;

pub use board::{resolve, BoardConfig, ConfigError, Placement, DEFAULT_BOARD_SIZE, MAX_BOARD_SIZE};
pub use canon::{canonical_key, CanonicalKey};
pub use game::{moves_per_player, GameError, GameState, HistoryEntry, Move};
pub use geom::{normalize, Cell, GeometryError, PieceLabel, Rotation, Shape, Transform};
pub use pieces::{PieceError, PieceLibrary, PieceSet, PIECES_PATH_ENV};
pub use rules::{neighbor_counts, score, validate_fence, FenceReport, ScoreMode, Violation};
pub use topology::{connected_components, topology, Topology};
