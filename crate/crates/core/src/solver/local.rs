//! Single-piece relocations: the move of the game, used as a search
//! neighbourhood.

use crate::board::{BoardConfig, Placement};
use crate::canon::canonical_key;
use crate::geom::Cell;
use crate::grid::enclosed_in_window;
use crate::rules::{validate_fence, InvalidFence, ScoreMode};

/// One legal relocation and the area it leads to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relocation {
    pub placement: Placement,
    pub area: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NeighborhoodScan {
    /// In-bounds, non-overlapping relocations looked at.
    pub examined: usize,
    /// Relocations that keep a valid fence.
    pub legal: Vec<Relocation>,
}

impl NeighborhoodScan {
    pub fn max_area(&self) -> Option<usize> {
        self.legal.iter().map(|r| r.area).max()
    }

    pub fn min_area(&self) -> Option<usize> {
        self.legal.iter().map(|r| r.area).min()
    }
}

fn ensure_valid(config: &BoardConfig) -> Result<usize, InvalidFence> {
    let report = validate_fence(config);
    if report.valid {
        Ok(report.area)
    } else {
        Err(InvalidFence(Box::new(report)))
    }
}

/// Every way to pick up one piece and put it down elsewhere, in any
/// orientation, such that the board is still a valid fence. The identity
/// move is left out.
pub fn scan_neighborhood(config: &BoardConfig) -> Result<NeighborhoodScan, InvalidFence> {
    ensure_valid(config)?;
    let (w, h) = (config.width() as i32, config.height() as i32);
    let n = config.placements().len();
    let idx = |c: Cell| (c.y * w + c.x) as usize;
    // owner + 1, or 0 for an empty cell
    let mut owner = vec![0u8; (w * h) as usize];
    for i in 0..n {
        for &c in config.piece_cells(i) {
            owner[idx(c)] = i as u8 + 1;
        }
    }
    let touch_mask = |cells: &[Cell], skip: usize| -> u64 {
        let mut m = 0u64;
        for &c in cells {
            for nb in c.neighbors() {
                if nb.x < 0 || nb.y < 0 || nb.x >= w || nb.y >= h {
                    continue;
                }
                let o = owner[idx(nb)];
                if o != 0 && o as usize - 1 != skip {
                    m |= 1 << (o - 1);
                }
            }
        }
        m
    };
    let adj: Vec<u64> = (0..n)
        .map(|i| touch_mask(config.piece_cells(i), i))
        .collect();

    let mut scan = NeighborhoodScan::default();
    for i in 0..n {
        let placement = &config.placements()[i];
        let shape = config
            .pieces()
            .get(placement.piece.as_str())
            .expect("placed pieces belong to the set");
        let mut current: Vec<Cell> = config.piece_cells(i).to_vec();
        current.sort_unstable();

        let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        let deg_rest: Vec<u32> = (0..n).map(|j| (adj[j] & !(1 << i)).count_ones()).collect();
        let components = piece_components(&others, &adj, i);
        let mut rest = vec![0u64; h as usize + 2];
        for &j in &others {
            for &c in config.piece_cells(j) {
                rest[c.y as usize + 1] |= 1 << (c.x + 1);
            }
        }

        for (t, cells) in shape.orientation_transforms() {
            let ow = cells.iter().map(|c| c.x).max().unwrap_or(0) + 1;
            let oh = cells.iter().map(|c| c.y).max().unwrap_or(0) + 1;
            for ay in 0..=h - oh {
                for ax in 0..=w - ow {
                    let moved: Vec<Cell> = cells.iter().map(|c| c.offset(ax, ay)).collect();
                    if moved.iter().any(|&c| {
                        let o = owner[idx(c)];
                        o != 0 && o as usize - 1 != i
                    }) {
                        continue;
                    }
                    let mut sorted = moved.clone();
                    sorted.sort_unstable();
                    if sorted == current {
                        continue;
                    }
                    scan.examined += 1;
                    let touch = touch_mask(&moved, i);
                    if touch.count_ones() < 2 {
                        continue;
                    }
                    if others
                        .iter()
                        .any(|&j| deg_rest[j] + ((touch >> j & 1) as u32) < 2)
                    {
                        continue;
                    }
                    if components.iter().any(|&m| m & touch == 0) {
                        continue;
                    }
                    let mut occ = rest.clone();
                    for c in &moved {
                        occ[c.y as usize + 1] |= 1 << (c.x + 1);
                    }
                    let area = enclosed_in_window(&occ, w as u32 + 2) as usize;
                    scan.legal.push(Relocation {
                        placement: Placement::new(placement.piece.clone(), t, Cell::new(ax, ay)),
                        area,
                    });
                }
            }
        }
    }
    Ok(scan)
}

/// Connected groups of pieces, as bit masks, once piece `skip` is lifted.
fn piece_components(others: &[usize], adj: &[u64], skip: usize) -> Vec<u64> {
    let mut seen = 0u64;
    let mut out = Vec::new();
    for &s in others {
        if seen >> s & 1 == 1 {
            continue;
        }
        let mut comp = 1u64 << s;
        let mut frontier = comp;
        while frontier != 0 {
            let j = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = adj[j] & !(1 << skip) & !comp;
            comp |= new;
            frontier |= new;
        }
        seen |= comp;
        out.push(comp);
    }
    out
}

/// The strictly improving relocation with the best area for `mode`. Ties go
/// to the resulting board with the smallest canonical key.
pub fn best_single_move(
    config: &BoardConfig,
    mode: ScoreMode,
) -> Result<Option<(BoardConfig, Relocation)>, InvalidFence> {
    let current = ensure_valid(config)?;
    let scan = scan_neighborhood(config)?;
    let target = match mode {
        ScoreMode::Standard => scan.max_area(),
        ScoreMode::Misere => scan.min_area(),
    };
    let Some(target) = target.filter(|&a| mode.improves(a, current)) else {
        return Ok(None);
    };
    let best = scan
        .legal
        .into_iter()
        .filter(|r| r.area == target)
        .map(|r| {
            let next = config
                .with_moved(r.placement.clone())
                .expect("scanned moves stay on the board");
            (canonical_key(&next), next, r)
        })
        .min_by(|a, b| a.0.cmp(&b.0))
        .map(|(_, next, r)| (next, r));
    Ok(best)
}

#[derive(Debug, Clone)]
pub struct LocalResult {
    pub config: BoardConfig,
    pub area: usize,
    pub steps: usize,
    /// No single move improves the result.
    pub local_optimum: bool,
}

/// Steepest-ascent hill climbing over single relocations, for at most
/// `budget` moves.
pub fn improve_local(config: &BoardConfig, budget: usize) -> Result<LocalResult, InvalidFence> {
    let mut area = ensure_valid(config)?;
    let mut current = config.clone();
    for step in 0..budget {
        match best_single_move(&current, ScoreMode::Standard)? {
            Some((next, r)) => {
                current = next;
                area = r.area;
            }
            None => {
                return Ok(LocalResult {
                    config: current,
                    area,
                    steps: step,
                    local_optimum: true,
                })
            }
        }
    }
    let local_optimum = best_single_move(&current, ScoreMode::Standard)?.is_none();
    Ok(LocalResult {
        config: current,
        area,
        steps: budget,
        local_optimum,
    })
}
