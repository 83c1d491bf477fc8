//! JSON configuration documents.
//!
//! ```json
//! {
//!   "board": { "height": 20, "width": 20 },
//!   "pieceSet": "pentomino",
//!   "placements": [ { "anchor": [2, 3], "flip": false, "piece": "V", "rot": 0 } ],
//!   "schemaVersion": 1
//! }
//! ```
//!
//! Coordinates have the origin at the bottom left with `y` growing upwards.
//! Keys are written in sorted order so the output is byte-stable.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::board::{BoardConfig, ConfigError, Placement, DEFAULT_BOARD_SIZE};
use crate::geom::{Cell, PieceLabel, Rotation, Transform};
use crate::pieces::{PieceError, PieceLibrary};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_PIECE_SET: &str = "pentomino";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoardSize {
    pub height: u32,
    pub width: u32,
}

impl Default for BoardSize {
    fn default() -> Self {
        Self {
            height: DEFAULT_BOARD_SIZE,
            width: DEFAULT_BOARD_SIZE,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlacementDocument {
    pub anchor: Cell,
    #[serde(default)]
    pub flip: bool,
    pub piece: PieceLabel,
    #[serde(default)]
    pub rot: i64,
}

impl PlacementDocument {
    pub fn transform(&self) -> Option<Transform> {
        Rotation::from_degrees(self.rot)
            .filter(|_| (0..360).contains(&self.rot))
            .map(|r| Transform::new(r, self.flip))
    }
}

impl From<&Placement> for PlacementDocument {
    fn from(p: &Placement) -> Self {
        Self {
            anchor: p.anchor,
            flip: p.transform.flip,
            piece: p.piece.clone(),
            rot: p.transform.rot.degrees() as i64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct ConfigDocument {
    #[serde(default)]
    pub board: BoardSize,
    #[serde(default = "default_piece_set")]
    pub piece_set: String,
    #[serde(default)]
    pub placements: Vec<PlacementDocument>,
    #[serde(default = "default_schema")]
    pub schema_version: u32,
}

fn default_piece_set() -> String {
    DEFAULT_PIECE_SET.to_string()
}

fn default_schema() -> u32 {
    SCHEMA_VERSION
}

impl From<&BoardConfig> for ConfigDocument {
    fn from(c: &BoardConfig) -> Self {
        Self {
            board: BoardSize {
                height: c.height(),
                width: c.width(),
            },
            piece_set: c.pieces().name().to_string(),
            placements: c.placements().iter().map(PlacementDocument::from).collect(),
            schema_version: SCHEMA_VERSION,
        }
    }
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("malformed document: {0}")]
    Malformed(#[from] serde_json::Error),
    #[error("unsupported schema version {0} (expected {SCHEMA_VERSION})")]
    UnsupportedSchema(u32),
    #[error(transparent)]
    PieceSet(PieceError),
    #[error("placement {index}: rotation {rot} is not one of 0, 90, 180, 270")]
    BadRotation { index: usize, rot: i64 },
    #[error(transparent)]
    Config(#[from] ConfigError),
}

impl ParseError {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            ParseError::Malformed(_) => "malformed-json",
            ParseError::UnsupportedSchema(_) => "unsupported-schema",
            ParseError::PieceSet(PieceError::UnknownPiece(_)) => "unknown-piece",
            ParseError::PieceSet(PieceError::DuplicatePiece(_)) => "duplicate-piece",
            ParseError::PieceSet(_) => "unknown-piece-set",
            ParseError::BadRotation { .. } => "bad-rotation",
            ParseError::Config(ConfigError::BadBoardSize { .. }) => "bad-board-size",
            ParseError::Config(ConfigError::UnknownPiece { .. }) => "unknown-piece",
            ParseError::Config(ConfigError::DuplicatePiece { .. }) => "duplicate-piece",
            ParseError::Config(ConfigError::OutOfBounds { .. }) => "out-of-bounds",
            ParseError::Config(ConfigError::Overlap { .. }) => "overlap",
        }
    }

    /// Index of the offending placement, when there is one.
    pub fn placement_index(&self) -> Option<usize> {
        match self {
            ParseError::BadRotation { index, .. } => Some(*index),
            ParseError::Config(e) => e.placement_index(),
            _ => None,
        }
    }
}

impl ConfigDocument {
    pub fn from_json(text: &str) -> Result<Self, ParseError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_value(value: serde_json::Value) -> Result<Self, ParseError> {
        Ok(serde_json::from_value(value)?)
    }

    /// Builds a board; every placement must be on the board and disjoint.
    pub fn to_config(&self, library: &PieceLibrary) -> Result<BoardConfig, ParseError> {
        self.build(library, true)
    }

    /// Like [`ConfigDocument::to_config`], but keeps overlapping or
    /// off-board placements so they can be reported as violations.
    pub fn to_config_lenient(&self, library: &PieceLibrary) -> Result<BoardConfig, ParseError> {
        self.build(library, false)
    }

    fn build(&self, library: &PieceLibrary, strict: bool) -> Result<BoardConfig, ParseError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(ParseError::UnsupportedSchema(self.schema_version));
        }
        let pieces = Arc::new(
            library
                .piece_set(&self.piece_set)
                .map_err(ParseError::PieceSet)?,
        );
        let mut placements = Vec::with_capacity(self.placements.len());
        for (index, p) in self.placements.iter().enumerate() {
            let transform = p
                .transform()
                .ok_or(ParseError::BadRotation { index, rot: p.rot })?;
            placements.push(Placement::new(p.piece.clone(), transform, p.anchor));
        }
        let (w, h) = (self.board.width, self.board.height);
        Ok(if strict {
            BoardConfig::with_placements(w, h, pieces, placements)?
        } else {
            BoardConfig::lenient(w, h, pieces, placements)?
        })
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }
}

pub fn parse_config(text: &str, library: &PieceLibrary) -> Result<BoardConfig, ParseError> {
    ConfigDocument::from_json(text)?.to_config(library)
}

pub fn serialize_config(config: &BoardConfig) -> String {
    ConfigDocument::from(config).to_json()
}
