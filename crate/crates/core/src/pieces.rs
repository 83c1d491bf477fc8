//! Piece definitions and named piece sets.
//!
//! The canonical cells of every piece live in `data/pieces.json`, a JSON
//! object mapping each label to its `[x, y]` cells. Tetrominoes use
//! lowercase labels (`i l n o t`), pentominoes uppercase (`F I L N P T U V W X Y Z`).

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use thiserror::Error;

use crate::geom::{Cell, GeometryError, PieceLabel, Shape};

/// Environment variable that overrides the built-in piece definition file.
pub const PIECES_PATH_ENV: &str = "FENCE_PIECES_PATH";

const BUILTIN_PIECES: &str = include_str!("../data/pieces.json");

#[derive(Debug, Error)]
pub enum PieceError {
    #[error("malformed piece file: {0}")]
    Malformed(#[from] serde_json::Error),
    #[error("piece {label}: {source}")]
    BadShape {
        label: String,
        source: GeometryError,
    },
    #[error("cannot read piece file {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("unknown piece {0:?}")]
    UnknownPiece(String),
    #[error("unknown piece set {0:?}")]
    UnknownSet(String),
    #[error("piece {0:?} listed twice")]
    DuplicatePiece(String),
}

/// Every known piece, keyed by label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieceLibrary {
    shapes: BTreeMap<PieceLabel, Shape>,
}

impl PieceLibrary {
    pub fn builtin() -> Self {
        Self::from_json(BUILTIN_PIECES).expect("built-in piece file is valid")
    }

    pub fn from_json(text: &str) -> Result<Self, PieceError> {
        let raw: BTreeMap<String, Vec<[i32; 2]>> = serde_json::from_str(text)?;
        let mut shapes = BTreeMap::new();
        for (label, cells) in raw {
            let cells: Vec<Cell> = cells.into_iter().map(Cell::from).collect();
            let shape =
                Shape::new(label.as_str(), &cells).map_err(|source| PieceError::BadShape {
                    label: label.clone(),
                    source,
                })?;
            shapes.insert(PieceLabel::new(label), shape);
        }
        Ok(Self { shapes })
    }

    pub fn from_path(path: &Path) -> Result<Self, PieceError> {
        let text = std::fs::read_to_string(path).map_err(|source| PieceError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    /// The library named by `FENCE_PIECES_PATH`, or the built-in one.
    pub fn from_env() -> Result<Self, PieceError> {
        match std::env::var_os(PIECES_PATH_ENV) {
            Some(path) if !path.is_empty() => Self::from_path(Path::new(&path)),
            _ => Ok(Self::builtin()),
        }
    }

    pub fn get(&self, label: &str) -> Option<&Shape> {
        self.shapes.get(label)
    }

    pub fn shapes(&self) -> impl Iterator<Item = &Shape> {
        self.shapes.values()
    }

    /// All pieces with `size` cells, as a set called `name`.
    pub fn by_size(&self, name: &str, size: usize) -> PieceSet {
        PieceSet {
            name: name.to_string(),
            shapes: self
                .shapes
                .values()
                .filter(|s| s.len() == size)
                .cloned()
                .collect(),
        }
    }

    pub fn tetrominoes(&self) -> PieceSet {
        self.by_size("tetromino", 4)
    }

    pub fn pentominoes(&self) -> PieceSet {
        self.by_size("pentomino", 5)
    }

    /// Resolves a set name: `tetromino`, `pentomino`, or a comma-separated
    /// list of labels such as `i,l,o`.
    pub fn piece_set(&self, name: &str) -> Result<PieceSet, PieceError> {
        match name {
            "tetromino" | "tetrominoes" => Ok(self.tetrominoes()),
            "pentomino" | "pentominoes" => Ok(self.pentominoes()),
            list => {
                let labels: Vec<&str> = list
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .collect();
                if labels.is_empty() || (labels.len() == 1 && self.get(labels[0]).is_none()) {
                    return Err(PieceError::UnknownSet(name.to_string()));
                }
                self.custom(&labels)
            }
        }
    }

    pub fn custom(&self, labels: &[&str]) -> Result<PieceSet, PieceError> {
        let mut shapes: Vec<Shape> = Vec::with_capacity(labels.len());
        for &label in labels {
            let shape = self
                .get(label)
                .ok_or_else(|| PieceError::UnknownPiece(label.to_string()))?;
            if shapes.iter().any(|s| s.name().as_str() == label) {
                return Err(PieceError::DuplicatePiece(label.to_string()));
            }
            shapes.push(shape.clone());
        }
        shapes.sort_by(|a, b| a.name().cmp(b.name()));
        let name = shapes
            .iter()
            .map(|s| s.name().as_str())
            .collect::<Vec<_>>()
            .join(",");
        Ok(PieceSet { name, shapes })
    }
}

/// A named collection of distinct pieces; the unit a fence must use in full.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PieceSet {
    name: String,
    shapes: Vec<Shape>,
}

impl PieceSet {
    pub fn new(name: impl Into<String>, shapes: Vec<Shape>) -> Result<Self, PieceError> {
        let mut seen = std::collections::BTreeSet::new();
        for s in &shapes {
            if !seen.insert(s.name().clone()) {
                return Err(PieceError::DuplicatePiece(s.name().to_string()));
            }
        }
        Ok(Self {
            name: name.into(),
            shapes,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn shapes(&self) -> &[Shape] {
        &self.shapes
    }

    pub fn labels(&self) -> impl Iterator<Item = &PieceLabel> {
        self.shapes.iter().map(Shape::name)
    }

    pub fn get(&self, label: &str) -> Option<&Shape> {
        self.shapes.iter().find(|s| s.name().as_str() == label)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.shapes.iter().position(|s| s.name().as_str() == label)
    }

    pub fn len(&self) -> usize {
        self.shapes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shapes.is_empty()
    }

    pub fn total_cells(&self) -> usize {
        self.shapes.iter().map(Shape::len).sum()
    }

    pub fn into_shared(self) -> Arc<PieceSet> {
        Arc::new(self)
    }
}
