//! Bit-row occupancy grid.
//!
//! Each board row is one `u64`. The grid carries a one-cell guard ring, so
//! cell `(x, y)` lives at bit `x + 1` of row `y + 1`, and the ring stands for
//! the unbounded exterior when flood filling.

use crate::geom::Cell;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitGrid {
    width: u32,
    height: u32,
    rows: Vec<u64>,
}

impl BitGrid {
    pub fn new(width: u32, height: u32) -> Self {
        assert!(width + 2 <= 64, "board too wide for a bit row");
        Self {
            width,
            height,
            rows: vec![0; height as usize + 2],
        }
    }

    pub fn from_cells(width: u32, height: u32, cells: impl IntoIterator<Item = Cell>) -> Self {
        let mut g = Self::new(width, height);
        for c in cells {
            g.set(c);
        }
        g
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn contains(&self, c: Cell) -> bool {
        c.x >= 0 && c.y >= 0 && (c.x as u32) < self.width && (c.y as u32) < self.height
    }

    /// Sets an in-bounds cell; returns false for cells outside the board.
    pub fn set(&mut self, c: Cell) -> bool {
        if !self.contains(c) {
            return false;
        }
        self.rows[c.y as usize + 1] |= 1 << (c.x + 1);
        true
    }

    pub fn get(&self, c: Cell) -> bool {
        self.contains(c) && self.rows[c.y as usize + 1] >> (c.x + 1) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    /// Mask of the board columns inside a padded row.
    fn inner_mask(&self) -> u64 {
        ((1u64 << self.width) - 1) << 1
    }

    /// Empty cells reachable from the guard ring through edge-adjacent empty
    /// cells. Guard bits are stripped from the result.
    pub fn exterior(&self) -> BitGrid {
        let full = u64::MAX >> (62 - self.width);
        let inner = self.inner_mask();
        let last = self.rows.len() - 1;
        let free: Vec<u64> = self
            .rows
            .iter()
            .enumerate()
            .map(|(y, &r)| {
                if y == 0 || y == last {
                    full
                } else {
                    (!r & inner) | (full & !inner)
                }
            })
            .collect();
        let mut reach: Vec<u64> = free
            .iter()
            .enumerate()
            .map(|(y, &f)| if y == 0 || y == last { f } else { f & !inner })
            .collect();
        flood_rows(&free, &mut reach);
        let mut out = BitGrid::new(self.width, self.height);
        for (row, r) in out.rows[1..last].iter_mut().zip(&reach[1..last]) {
            *row = r & inner;
        }
        out
    }

    /// Empty board cells that the exterior cannot reach.
    pub fn enclosed(&self) -> BitGrid {
        let ext = self.exterior();
        let inner = self.inner_mask();
        let mut out = BitGrid::new(self.width, self.height);
        for y in 1..self.rows.len() - 1 {
            out.rows[y] = !self.rows[y] & !ext.rows[y] & inner;
        }
        out
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.rows
            .iter()
            .enumerate()
            .skip(1)
            .take(self.height as usize)
            .flat_map(|(y, &row)| {
                let mut bits = row;
                std::iter::from_fn(move || {
                    if bits == 0 {
                        return None;
                    }
                    let b = bits.trailing_zeros();
                    bits &= bits - 1;
                    Some(Cell::new(b as i32 - 1, y as i32 - 1))
                })
            })
    }
}

/// Grows `reach` through edge-adjacent bits of `free` until it stops
/// changing. `reach` must already be a subset of `free`.
pub fn flood_rows(free: &[u64], reach: &mut [u64]) {
    let n = reach.len();
    debug_assert_eq!(free.len(), n);
    let grow = |reach: &mut [u64], y: usize| -> bool {
        let r = reach[y];
        let mut g = r | r << 1 | r >> 1;
        if y > 0 {
            g |= reach[y - 1];
        }
        if y + 1 < n {
            g |= reach[y + 1];
        }
        g &= free[y];
        reach[y] = g;
        g != r
    };
    loop {
        let mut changed = false;
        for y in 0..n {
            changed |= grow(reach, y);
        }
        // back down, so fills travelling downward converge quickly
        for y in (0..n).rev() {
            changed |= grow(reach, y);
        }
        if !changed {
            break;
        }
    }
}

/// Number of empty cells that cannot reach the border of a window.
///
/// `occ` holds the occupied cells of a `width`-column window, one row per
/// word with column `x` at bit `x`. The window must have a free margin of at
/// least one cell on every side, which is where the fill starts.
pub fn enclosed_in_window(occ: &[u64], width: u32) -> u32 {
    let n = occ.len();
    let full = if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    };
    let edge = 1 | 1u64 << (width - 1);
    let mut free = [0u64; 64];
    let mut reach = [0u64; 64];
    for y in 0..n {
        free[y] = !occ[y] & full;
        reach[y] = if y == 0 || y + 1 == n {
            free[y]
        } else {
            free[y] & edge
        };
    }
    flood_rows(&free[..n], &mut reach[..n]);
    (0..n).map(|y| (free[y] & !reach[y]).count_ones()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_encloses_center() {
        let ring = [
            (0, 0),
            (1, 0),
            (2, 0),
            (0, 1),
            (2, 1),
            (0, 2),
            (1, 2),
            (2, 2),
        ]
        .map(Cell::from);
        let g = BitGrid::from_cells(3, 3, ring);
        let enclosed: Vec<Cell> = g.enclosed().cells().collect();
        assert_eq!(enclosed, vec![Cell::new(1, 1)]);
        assert_eq!(g.exterior().count(), 0);
    }

    #[test]
    fn diagonal_gap_is_closed_for_rooks() {
        // The hole at (1,1) only touches the outside through corners.
        let cells = [(1, 0), (0, 1), (2, 1), (1, 2)].map(Cell::from);
        let g = BitGrid::from_cells(3, 3, cells);
        assert_eq!(
            g.enclosed().cells().collect::<Vec<_>>(),
            vec![Cell::new(1, 1)]
        );
    }

    #[test]
    fn serpentine_exterior_converges() {
        // A corridor that winds down and up again.
        let mut g = BitGrid::new(7, 7);
        for y in 0..6 {
            g.set(Cell::new(1, y));
            g.set(Cell::new(5, y));
        }
        for y in 1..7 {
            g.set(Cell::new(3, y));
        }
        assert_eq!(g.enclosed().count(), 0);
    }

    #[test]
    fn window_count_matches_grid() {
        let ring = [
            (1, 1),
            (2, 1),
            (3, 1),
            (1, 2),
            (3, 2),
            (1, 3),
            (2, 3),
            (3, 3),
        ];
        let mut occ = [0u64; 5];
        for (x, y) in ring {
            occ[y] |= 1 << x;
        }
        assert_eq!(enclosed_in_window(&occ, 5), 1);
    }

    #[test]
    fn out_of_bounds_is_ignored() {
        let mut g = BitGrid::new(2, 2);
        assert!(!g.set(Cell::new(2, 0)));
        assert!(!g.set(Cell::new(-1, 0)));
        assert!(g.set(Cell::new(1, 1)));
        assert!(g.get(Cell::new(1, 1)));
        assert_eq!(g.count(), 1);
    }
}
