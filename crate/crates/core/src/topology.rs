//! Connectivity, holes and enclosed area.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::board::BoardConfig;
use crate::geom::Cell;
use crate::grid::BitGrid;

/// Maximal 4-connected components. Cells inside a component are sorted and
/// components are ordered by their smallest cell.
pub fn connected_components(cells: &[Cell]) -> Vec<Vec<Cell>> {
    let mut remaining: BTreeSet<Cell> = cells.iter().copied().collect();
    let mut out = Vec::new();
    while let Some(&start) = remaining.iter().next() {
        remaining.remove(&start);
        let mut comp = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            for n in c.neighbors() {
                if remaining.remove(&n) {
                    comp.push(n);
                    queue.push_back(n);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Shape of a fence: whether it is one piece of rook-connected cells and
/// which empty cells it encloses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Topology {
    pub fence_connected: bool,
    pub hole_count: usize,
    pub enclosed_cells: Vec<Cell>,
}

impl Topology {
    pub fn area(&self) -> usize {
        self.enclosed_cells.len()
    }

    /// One connected fence around exactly one hole, like an annulus.
    pub fn is_circle_like(&self) -> bool {
        self.fence_connected && self.hole_count == 1
    }
}

/// Holes are the empty components that a fill started just outside the
/// board cannot reach. Every hole counts towards the enclosed cells.
pub fn topology(config: &BoardConfig) -> Topology {
    let occupied = config.occupied();
    let grid = BitGrid::from_cells(config.width(), config.height(), occupied.iter().copied());
    let inside: Vec<Cell> = config
        .occupied()
        .into_iter()
        .filter(|&c| config.in_bounds(c))
        .collect();
    let enclosed: Vec<Cell> = grid.enclosed().cells().collect();
    let hole_count = connected_components(&enclosed).len();
    let mut enclosed_cells = enclosed;
    enclosed_cells.sort_unstable();
    Topology {
        fence_connected: connected_components(&inside).len() == 1,
        hole_count,
        enclosed_cells,
    }
}

/// Enclosed area only, without labeling the holes.
pub fn enclosed_area(config: &BoardConfig) -> usize {
    BitGrid::from_cells(config.width(), config.height(), config.occupied())
        .enclosed()
        .count()
}
