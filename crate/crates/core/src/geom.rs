//! Cells, dihedral transforms and normalized piece shapes.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A unit square of the grid. `x` grows rightwards, `y` grows upwards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i32; 2]", into = "[i32; 2]")]
pub struct Cell {
    pub x: i32,
    pub y: i32,
}

impl Cell {
    pub const fn new(x: i32, y: i32) -> Self {
        Self { x, y }
    }

    pub fn offset(self, dx: i32, dy: i32) -> Self {
        Self::new(self.x + dx, self.y + dy)
    }

    /// The four edge-adjacent cells (the moves of a rook by one square).
    pub fn neighbors(self) -> [Cell; 4] {
        [
            self.offset(1, 0),
            self.offset(-1, 0),
            self.offset(0, 1),
            self.offset(0, -1),
        ]
    }
}

impl From<[i32; 2]> for Cell {
    fn from([x, y]: [i32; 2]) -> Self {
        Self::new(x, y)
    }
}

impl From<Cell> for [i32; 2] {
    fn from(c: Cell) -> Self {
        [c.x, c.y]
    }
}

impl From<(i32, i32)> for Cell {
    fn from((x, y): (i32, i32)) -> Self {
        Self::new(x, y)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Name of a piece inside a piece set, e.g. `"F"` or `"t"`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PieceLabel(String);

impl PieceLabel {
    pub fn new(label: impl Into<String>) -> Self {
        Self(label.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The single character used to draw this piece, if the label is one.
    pub fn glyph(&self) -> Option<char> {
        let mut chars = self.0.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) if c.is_ascii_graphic() => Some(c),
            _ => None,
        }
    }
}

impl fmt::Display for PieceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for PieceLabel {
    fn from(s: &str) -> Self {
        Self::new(s)
    }
}

impl std::borrow::Borrow<str> for PieceLabel {
    fn borrow(&self) -> &str {
        &self.0
    }
}

/// Counterclockwise rotation by a multiple of 90 degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Rotation {
    #[default]
    R0,
    R90,
    R180,
    R270,
}

impl Rotation {
    pub const ALL: [Rotation; 4] = [Rotation::R0, Rotation::R90, Rotation::R180, Rotation::R270];

    pub fn degrees(self) -> u32 {
        self.quarter_turns() * 90
    }

    pub fn quarter_turns(self) -> u32 {
        match self {
            Rotation::R0 => 0,
            Rotation::R90 => 1,
            Rotation::R180 => 2,
            Rotation::R270 => 3,
        }
    }

    pub fn from_quarter_turns(q: u32) -> Self {
        Self::ALL[(q % 4) as usize]
    }

    pub fn from_degrees(deg: i64) -> Option<Self> {
        if deg % 90 != 0 {
            return None;
        }
        Some(Self::from_quarter_turns(deg.rem_euclid(360) as u32 / 90))
    }
}

/// An element of the dihedral group of the square: an optional mirror
/// across the vertical axis followed by a counterclockwise rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Transform {
    pub rot: Rotation,
    pub flip: bool,
}

impl Transform {
    pub const IDENTITY: Transform = Transform {
        rot: Rotation::R0,
        flip: false,
    };

    pub const fn new(rot: Rotation, flip: bool) -> Self {
        Self { rot, flip }
    }

    /// All eight transforms, unflipped ones first.
    pub fn all() -> [Transform; 8] {
        let mut out = [Transform::IDENTITY; 8];
        for (i, t) in out.iter_mut().enumerate() {
            *t = Transform::new(Rotation::from_quarter_turns(i as u32 % 4), i >= 4);
        }
        out
    }

    /// Image of a point under the linear part (no normalization).
    pub fn apply(self, c: Cell) -> Cell {
        let (mut x, mut y) = (c.x, c.y);
        if self.flip {
            x = -x;
        }
        for _ in 0..self.rot.quarter_turns() {
            (x, y) = (-y, x);
        }
        Cell::new(x, y)
    }

    /// `self.then(other)` applies `self` first and `other` second.
    pub fn then(self, other: Transform) -> Transform {
        // rot_b * flip_b * rot_a * flip_a; a flip conjugates a rotation into its inverse.
        let a = self.rot.quarter_turns();
        let b = other.rot.quarter_turns();
        let turns = if other.flip { b + 4 - a } else { a + b };
        Transform::new(Rotation::from_quarter_turns(turns), self.flip ^ other.flip)
    }

    pub fn inverse(self) -> Transform {
        if self.flip {
            self
        } else {
            Transform::new(
                Rotation::from_quarter_turns(4 - self.rot.quarter_turns()),
                false,
            )
        }
    }
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rot{}", self.rot.degrees())?;
        if self.flip {
            f.write_str("+flip")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("cell set is empty")]
    Empty,
    #[error("cell set is not edge-connected")]
    Disconnected,
}

/// Translates `cells` so that the minimum x and y are both zero. The result is
/// sorted and free of duplicates.
pub fn translate_to_origin(cells: &[Cell]) -> Vec<Cell> {
    let Some(min_x) = cells.iter().map(|c| c.x).min() else {
        return Vec::new();
    };
    let min_y = cells.iter().map(|c| c.y).min().unwrap_or(0);
    let set: BTreeSet<Cell> = cells.iter().map(|c| c.offset(-min_x, -min_y)).collect();
    set.into_iter().collect()
}

/// Normalizes a piece cell set: it must be non-empty and 4-connected.
pub fn normalize(cells: &[Cell]) -> Result<Vec<Cell>, GeometryError> {
    if cells.is_empty() {
        return Err(GeometryError::Empty);
    }
    if crate::topology::connected_components(cells).len() != 1 {
        return Err(GeometryError::Disconnected);
    }
    Ok(translate_to_origin(cells))
}

/// Applies `t` and re-normalizes.
pub fn transform_cells(cells: &[Cell], t: Transform) -> Vec<Cell> {
    let moved: Vec<Cell> = cells.iter().map(|&c| t.apply(c)).collect();
    translate_to_origin(&moved)
}

/// A polyomino piece in canonical, translation-normalized form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Shape {
    name: PieceLabel,
    cells: Vec<Cell>,
}

impl Shape {
    pub fn new(name: impl Into<PieceLabel>, cells: &[Cell]) -> Result<Self, GeometryError> {
        Ok(Self {
            name: name.into(),
            cells: normalize(cells)?,
        })
    }

    pub fn name(&self) -> &PieceLabel {
        &self.name
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Width and height of the bounding box.
    pub fn extent(&self) -> (i32, i32) {
        let w = self.cells.iter().map(|c| c.x).max().unwrap_or(-1) + 1;
        let h = self.cells.iter().map(|c| c.y).max().unwrap_or(-1) + 1;
        (w, h)
    }

    pub fn transformed(&self, t: Transform) -> Shape {
        Shape {
            name: self.name.clone(),
            cells: transform_cells(&self.cells, t),
        }
    }

    /// Distinct images under the eight transforms, ordered by cell list.
    pub fn orientations(&self) -> Vec<Shape> {
        let mut seen = BTreeSet::new();
        for t in Transform::all() {
            seen.insert(transform_cells(&self.cells, t));
        }
        seen.into_iter()
            .map(|cells| Shape {
                name: self.name.clone(),
                cells,
            })
            .collect()
    }

    /// Like [`Shape::orientations`], but keeps the first transform producing
    /// each distinct image.
    pub fn orientation_transforms(&self) -> Vec<(Transform, Vec<Cell>)> {
        let mut out: Vec<(Transform, Vec<Cell>)> = Vec::new();
        for t in Transform::all() {
            let cells = transform_cells(&self.cells, t);
            if !out.iter().any(|(_, c)| *c == cells) {
                out.push((t, cells));
            }
        }
        out.sort_by(|a, b| a.1.cmp(&b.1));
        out
    }
}
