//! Text pictures of a board, top row first.
//!
//! `.` is an empty cell outside the fence, `*` an enclosed cell, and covered
//! cells show their piece label. Cells covered twice, or by pieces whose
//! label is not a single character, are drawn as `#`.

use std::collections::BTreeMap;

use crate::board::BoardConfig;
use crate::geom::Cell;
use crate::topology::topology;

pub const EXTERIOR: char = '.';
pub const ENCLOSED: char = '*';
pub const OCCUPIED: char = '#';

pub fn render_ascii(config: &BoardConfig) -> String {
    let mut glyphs: BTreeMap<Cell, char> = BTreeMap::new();
    for (label, cells) in config.labeled_cells() {
        let g = label
            .glyph()
            .filter(|c| ![EXTERIOR, ENCLOSED, OCCUPIED].contains(c))
            .unwrap_or(OCCUPIED);
        for &c in cells {
            glyphs.entry(c).and_modify(|e| *e = OCCUPIED).or_insert(g);
        }
    }
    for c in topology(config).enclosed_cells {
        glyphs.insert(c, ENCLOSED);
    }
    let (w, h) = (config.width() as i32, config.height() as i32);
    let mut out = String::with_capacity(((w + 1) * h) as usize);
    for y in (0..h).rev() {
        for x in 0..w {
            out.push(*glyphs.get(&Cell::new(x, y)).unwrap_or(&EXTERIOR));
        }
        out.push('\n');
    }
    out
}

/// Occupied cells of a picture made by [`render_ascii`].
pub fn parse_ascii_occupancy(text: &str) -> Vec<Cell> {
    let lines: Vec<&str> = text.lines().collect();
    let h = lines.len() as i32;
    let mut cells: Vec<Cell> = lines
        .iter()
        .enumerate()
        .flat_map(|(row, line)| {
            let y = h - 1 - row as i32;
            line.chars()
                .enumerate()
                .filter(|(_, ch)| *ch != EXTERIOR && *ch != ENCLOSED)
                .map(move |(x, _)| Cell::new(x as i32, y))
        })
        .collect();
    cells.sort_unstable();
    cells
}
