//! Placements and board configurations.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use thiserror::Error;

use crate::geom::{transform_cells, Cell, PieceLabel, Transform};
use crate::pieces::PieceSet;

/// Default board side, large enough for any circle-like pentomino fence.
pub const DEFAULT_BOARD_SIZE: u32 = 20;

/// Largest supported board side. Occupancy rows are 64-bit words with one
/// guard column on each side.
pub const MAX_BOARD_SIZE: u32 = 62;

/// A piece put on the board: transform first, then move the normalized image
/// so that its minimum corner sits on `anchor`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Placement {
    pub piece: PieceLabel,
    pub transform: Transform,
    pub anchor: Cell,
}

impl Placement {
    pub fn new(piece: impl Into<PieceLabel>, transform: Transform, anchor: Cell) -> Self {
        Self {
            piece: piece.into(),
            transform,
            anchor,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("board size {width}x{height} is outside 1..={max}", max = MAX_BOARD_SIZE)]
    BadBoardSize { width: u32, height: u32 },
    #[error("placement {index}: unknown piece {label}")]
    UnknownPiece { index: usize, label: PieceLabel },
    #[error("placement {index}: piece {label} is already on the board")]
    DuplicatePiece { index: usize, label: PieceLabel },
    #[error("placement {index}: piece {label} leaves the board")]
    OutOfBounds { index: usize, label: PieceLabel },
    #[error("placement {index}: piece {label} overlaps another piece")]
    Overlap { index: usize, label: PieceLabel },
}

impl ConfigError {
    pub fn placement_index(&self) -> Option<usize> {
        match self {
            ConfigError::BadBoardSize { .. } => None,
            ConfigError::UnknownPiece { index, .. }
            | ConfigError::DuplicatePiece { index, .. }
            | ConfigError::OutOfBounds { index, .. }
            | ConfigError::Overlap { index, .. } => Some(*index),
        }
    }
}

/// Resolves a placement to the cells it covers.
pub fn resolve(placement: &Placement, pieces: &PieceSet) -> Result<Vec<Cell>, ConfigError> {
    let shape = pieces
        .get(placement.piece.as_str())
        .ok_or_else(|| ConfigError::UnknownPiece {
            index: 0,
            label: placement.piece.clone(),
        })?;
    let a = placement.anchor;
    Ok(transform_cells(shape.cells(), placement.transform)
        .into_iter()
        .map(|c| c.offset(a.x, a.y))
        .collect())
}

/// A set of placements on a `width` x `height` board.
///
/// Built through [`BoardConfig::with_placements`] every invariant holds. The
/// lenient constructor only guarantees known, unique piece labels, so that
/// hypothetical boards with overlaps can still be scored and reported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoardConfig {
    width: u32,
    height: u32,
    pieces: Arc<PieceSet>,
    placements: Vec<Placement>,
    cells: Vec<Vec<Cell>>,
}

impl BoardConfig {
    pub fn empty(width: u32, height: u32, pieces: Arc<PieceSet>) -> Result<Self, ConfigError> {
        Self::with_placements(width, height, pieces, Vec::new())
    }

    pub fn with_placements(
        width: u32,
        height: u32,
        pieces: Arc<PieceSet>,
        placements: Vec<Placement>,
    ) -> Result<Self, ConfigError> {
        let config = Self::lenient(width, height, pieces, placements)?;
        let mut owner: HashMap<Cell, usize> = HashMap::new();
        for (index, cells) in config.cells.iter().enumerate() {
            let label = &config.placements[index].piece;
            if cells.iter().any(|&c| !config.in_bounds(c)) {
                return Err(ConfigError::OutOfBounds {
                    index,
                    label: label.clone(),
                });
            }
            for &c in cells {
                if owner.insert(c, index).is_some() {
                    return Err(ConfigError::Overlap {
                        index,
                        label: label.clone(),
                    });
                }
            }
        }
        Ok(config)
    }

    /// Accepts overlapping or out-of-bounds placements.
    pub fn lenient(
        width: u32,
        height: u32,
        pieces: Arc<PieceSet>,
        placements: Vec<Placement>,
    ) -> Result<Self, ConfigError> {
        if !(1..=MAX_BOARD_SIZE).contains(&width) || !(1..=MAX_BOARD_SIZE).contains(&height) {
            return Err(ConfigError::BadBoardSize { width, height });
        }
        let mut cells = Vec::with_capacity(placements.len());
        for (index, p) in placements.iter().enumerate() {
            if placements[..index].iter().any(|q| q.piece == p.piece) {
                return Err(ConfigError::DuplicatePiece {
                    index,
                    label: p.piece.clone(),
                });
            }
            let resolved = resolve(p, &pieces).map_err(|_| ConfigError::UnknownPiece {
                index,
                label: p.piece.clone(),
            })?;
            cells.push(resolved);
        }
        Ok(Self {
            width,
            height,
            pieces,
            placements,
            cells,
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn pieces(&self) -> &Arc<PieceSet> {
        &self.pieces
    }

    pub fn placements(&self) -> &[Placement] {
        &self.placements
    }

    pub fn placement(&self, label: &str) -> Option<&Placement> {
        self.placements.iter().find(|p| p.piece.as_str() == label)
    }

    /// Cells of the i-th placement.
    pub fn piece_cells(&self, index: usize) -> &[Cell] {
        &self.cells[index]
    }

    /// `(label, cells)` per placement, in placement order.
    pub fn labeled_cells(&self) -> impl Iterator<Item = (&PieceLabel, &[Cell])> {
        self.placements
            .iter()
            .zip(&self.cells)
            .map(|(p, c)| (&p.piece, c.as_slice()))
    }

    /// All covered cells, sorted, without duplicates.
    pub fn occupied(&self) -> Vec<Cell> {
        let mut all: Vec<Cell> = self.cells.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    /// Which placement covers each cell. Overlapping cells map to the first.
    pub fn owners(&self) -> BTreeMap<Cell, usize> {
        let mut owners = BTreeMap::new();
        for (i, cells) in self.cells.iter().enumerate() {
            for &c in cells {
                owners.entry(c).or_insert(i);
            }
        }
        owners
    }

    pub fn in_bounds(&self, c: Cell) -> bool {
        c.x >= 0 && c.y >= 0 && (c.x as u32) < self.width && (c.y as u32) < self.height
    }

    /// Replaces (or adds) the placement of `placement.piece`, without checks.
    pub fn with_moved(&self, placement: Placement) -> Result<Self, ConfigError> {
        let mut placements = self.placements.clone();
        match placements.iter_mut().find(|p| p.piece == placement.piece) {
            Some(slot) => *slot = placement,
            None => placements.push(placement),
        }
        Self::lenient(self.width, self.height, self.pieces.clone(), placements)
    }

    /// Same placements on a different board size.
    pub fn resized(&self, width: u32, height: u32) -> Result<Self, ConfigError> {
        Self::with_placements(width, height, self.pieces.clone(), self.placements.clone())
    }

    /// Every placement moved by `(dx, dy)`.
    pub fn translated(&self, dx: i32, dy: i32) -> Result<Self, ConfigError> {
        let placements = self
            .placements
            .iter()
            .map(|p| Placement::new(p.piece.clone(), p.transform, p.anchor.offset(dx, dy)))
            .collect();
        Self::lenient(self.width, self.height, self.pieces.clone(), placements)
    }

    /// The whole configuration mapped by `t`, then moved so its minimum corner
    /// lands on `origin`. Odd quarter turns swap the board width and height.
    pub fn transformed(&self, t: Transform, origin: Cell) -> Result<Self, ConfigError> {
        let all: Vec<Cell> = self.occupied().iter().map(|&c| t.apply(c)).collect();
        let (min_x, min_y) = (
            all.iter().map(|c| c.x).min().unwrap_or(0),
            all.iter().map(|c| c.y).min().unwrap_or(0),
        );
        let mut placements = Vec::with_capacity(self.placements.len());
        for (p, cells) in self.placements.iter().zip(&self.cells) {
            let moved: Vec<Cell> = cells.iter().map(|&c| t.apply(c)).collect();
            let px = moved.iter().map(|c| c.x).min().unwrap_or(0);
            let py = moved.iter().map(|c| c.y).min().unwrap_or(0);
            placements.push(Placement::new(
                p.piece.clone(),
                p.transform.then(t),
                Cell::new(px - min_x + origin.x, py - min_y + origin.y),
            ));
        }
        let (w, h) = if t.rot.quarter_turns() % 2 == 1 {
            (self.height, self.width)
        } else {
            (self.width, self.height)
        };
        Self::lenient(w, h, self.pieces.clone(), placements)
    }

    /// Labels of the piece set that have no placement.
    pub fn missing_pieces(&self) -> Vec<PieceLabel> {
        self.pieces
            .labels()
            .filter(|l| self.placement(l.as_str()).is_none())
            .cloned()
            .collect()
    }
}
