//! How much perimeter a set of pieces can supply.
//!
//! A piece extends the center line of a rectangular fence along a staircase
//! walk through its cells: `progression` steps along the side being built and
//! `protrusion` steps turning the corner. Its length is the number of cells on
//! the longest such walk.

use serde::Serialize;
use thiserror::Error;

use crate::geom::{Cell, Shape};
use crate::pieces::PieceSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LengthProfile {
    pub progression: u32,
    pub protrusion: u32,
    pub length: u32,
}

impl LengthProfile {
    fn new(progression: u32, protrusion: u32) -> Self {
        Self {
            progression,
            protrusion,
            length: progression + protrusion + 1,
        }
    }
}

/// All `(progression, protrusion)` splits of maximal monotone walks of one
/// orientation, starting from every cell.
fn walks(cells: &[Cell], out: &mut Vec<LengthProfile>) {
    fn go(cells: &[Cell], at: Cell, x: u32, y: u32, out: &mut Vec<LengthProfile>) {
        out.push(LengthProfile::new(x, y));
        for (next, dx, dy) in [(at.offset(1, 0), 1, 0), (at.offset(0, 1), 0, 1)] {
            if cells.contains(&next) {
                go(cells, next, x + dx, y + dy, out);
            }
        }
    }
    for &start in cells {
        go(cells, start, 0, 0, out);
    }
}

/// Every distinct split reaching the maximal length, most progression first.
pub fn length_realizations(shape: &Shape) -> Vec<LengthProfile> {
    let mut all = Vec::new();
    for o in shape.orientations() {
        walks(o.cells(), &mut all);
    }
    let best = all.iter().map(|p| p.length).max().unwrap_or(0);
    let mut out: Vec<LengthProfile> = all.into_iter().filter(|p| p.length == best).collect();
    out.sort_by(|a, b| b.cmp(a));
    out.dedup();
    out
}

pub fn piece_length(shape: &Shape) -> LengthProfile {
    length_realizations(shape)[0]
}

pub fn perimeter_budget(pieces: &PieceSet) -> u32 {
    pieces.shapes().iter().map(|s| piece_length(s).length).sum()
}

/// A center-line rectangle of `a` by `b` unit steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RectangleCandidate {
    pub a: u32,
    pub b: u32,
    pub perimeter: u32,
    pub interior: u32,
}

impl RectangleCandidate {
    pub fn new(a: u32, b: u32) -> Self {
        Self {
            a,
            b,
            perimeter: 2 * (a + b),
            interior: (a - 1) * (b - 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("a perimeter of {0} cannot close any rectangle (minimum 8)")]
pub struct BudgetTooSmall(pub u32);

/// Every rectangle with sides `a >= b >= 2` and perimeter within `budget`,
/// largest interior first.
pub fn rectangle_candidates(budget: u32) -> Result<Vec<RectangleCandidate>, BudgetTooSmall> {
    if budget < 8 {
        return Err(BudgetTooSmall(budget));
    }
    let mut out = Vec::new();
    for b in 2..=budget / 4 {
        for a in b..=budget / 2 - b {
            out.push(RectangleCandidate::new(a, b));
        }
    }
    out.sort_by(|x, y| y.interior.cmp(&x.interior).then(y.a.cmp(&x.a)));
    Ok(out)
}

/// Largest interior any rectangle within `budget` can have.
pub fn area_upper_bound(budget: u32) -> Option<u32> {
    rectangle_candidates(budget).ok().map(|c| c[0].interior)
}
