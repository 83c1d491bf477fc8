//! Exhaustive enumeration of fences that fit in a box.
//!
//! Configurations are grown one piece at a time, every new piece touching
//! the union of those already placed. The first piece in search order is the
//! root and sits at a fixed spot, so each configuration is met once per
//! translation class. The order in which pieces join is forced to be the
//! greedy one (always the smallest-index piece touching the current union),
//! which makes every connected configuration reachable along exactly one
//! branch.
//!
//! Occupancy lives in 64-bit rows, and all anchors of one orientation in one
//! row are tested at once with shifts.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::board::{BoardConfig, Placement};
use crate::canon::{canonical_key, CanonicalKey};
use crate::geom::{Cell, Transform};
use crate::grid::enclosed_in_window;
use crate::pieces::PieceSet;
use crate::solver::bounds::{perimeter_budget, piece_length};

/// Largest supported box side; the working rows need twice the side.
pub const MAX_BOX_SIDE: u32 = 30;

const ROWS: usize = 64;
const FREE: u8 = u8::MAX;
type Rows = [u64; ROWS];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("box {0}x{1} is outside 1..={max}", max = MAX_BOX_SIDE)]
    BadBox(u32, u32),
    #[error("box {box_w}x{box_h} cannot hold piece {piece}")]
    BoxTooSmall {
        box_w: u32,
        box_h: u32,
        piece: String,
    },
    #[error("piece set is empty")]
    NoPieces,
    #[error("piece set has more than 32 pieces")]
    TooManyPieces,
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Sides of the box the union of all pieces must fit in, in either
    /// orientation.
    pub bounding_box: (u32, u32),
    /// Wall-clock budget. Without one the search runs to completion.
    pub time_budget: Option<Duration>,
    /// Board for the returned solutions. Defaults to the tight bounding box
    /// of each solution plus a one-cell margin.
    pub board: Option<(u32, u32)>,
    /// Stop as soon as a fence reaches this area, without collecting ties.
    pub stop_at: Option<usize>,
}

impl SolveOptions {
    pub fn new(width: u32, height: u32) -> Self {
        Self {
            bounding_box: (width, height),
            time_budget: None,
            board: None,
            stop_at: None,
        }
    }
}

/// Result of a search: the best area met and every fence reaching it.
#[derive(Debug, Clone)]
pub struct SolutionSet {
    pub max_area: Option<usize>,
    /// One representative per symmetry class, ordered by canonical key.
    pub solutions: Vec<BoardConfig>,
    /// Optimal fences counted up to translation only.
    pub raw_count: usize,
    /// Optimal fences counted up to translation, rotation and reflection.
    pub dedup_count: usize,
    pub exhaustive: bool,
    pub elapsed: Duration,
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SolutionSummary {
    pub max_area: Option<usize>,
    pub raw_count: usize,
    pub dedup_count: usize,
    pub exhaustive: bool,
    /// Seconds.
    pub elapsed: f64,
}

impl SolutionSet {
    pub fn summary(&self) -> SolutionSummary {
        SolutionSummary {
            max_area: self.max_area,
            raw_count: self.raw_count,
            dedup_count: self.dedup_count,
            exhaustive: self.exhaustive,
            elapsed: self.elapsed.as_secs_f64(),
        }
    }
}

struct Orient {
    transform: Transform,
    cells: Vec<(u32, u32)>,
    w: u32,
    h: u32,
    /// Row `r` has bit `x` for cell `(x, r)`.
    rows: [u64; 8],
    /// Cells and their edge neighbours, shifted by one in both axes.
    dil: [u64; 10],
}

impl Orient {
    fn new(transform: Transform, cells: &[Cell]) -> Self {
        let cells: Vec<(u32, u32)> = cells.iter().map(|c| (c.x as u32, c.y as u32)).collect();
        let w = cells.iter().map(|c| c.0).max().unwrap_or(0) + 1;
        let h = cells.iter().map(|c| c.1).max().unwrap_or(0) + 1;
        assert!(h <= 8 && w <= 60, "piece too large for the search rows");
        let mut rows = [0u64; 8];
        let mut dil = [0u64; 10];
        for &(x, y) in &cells {
            rows[y as usize] |= 1 << x;
            let (dx, dy) = (x + 1, y as usize + 1);
            dil[dy] |= 0b111 << (dx - 1);
            dil[dy - 1] |= 1 << dx;
            dil[dy + 1] |= 1 << dx;
        }
        Self {
            transform,
            cells,
            w,
            h,
            rows,
            dil,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Placed {
    piece: usize,
    orient: usize,
    ax: u32,
    ay: u32,
}

#[derive(Clone, Copy)]
struct Bbox {
    min_x: u32,
    max_x: u32,
    min_y: u32,
    max_y: u32,
}

impl Bbox {
    fn with(self, ax: u32, ay: u32, o: &Orient) -> Bbox {
        Bbox {
            min_x: self.min_x.min(ax),
            max_x: self.max_x.max(ax + o.w - 1),
            min_y: self.min_y.min(ay),
            max_y: self.max_y.max(ay + o.h - 1),
        }
    }
}

struct Engine<'a> {
    set: &'a PieceSet,
    order: Vec<usize>,
    orients: Vec<Vec<Orient>>,
    n: usize,
    big: u32,
    small: u32,
    live_rows: usize,
    union: Vec<Rows>,
    dil: Vec<Rows>,
    bbox: Vec<Bbox>,
    placed: Vec<Placed>,
    deg: Vec<u32>,
    used: u32,
    /// Level whose union a piece may no longer touch, or `FREE`.
    restrict: [u8; 32],
    best: Option<u32>,
    sols: Vec<Vec<Placed>>,
    stop_at: Option<u32>,
    deadline: Option<Instant>,
    nodes: u64,
    aborted: bool,
}

impl<'a> Engine<'a> {
    fn new(set: &'a PieceSet, opts: &SolveOptions) -> Result<Self, SolveError> {
        let (bw, bh) = opts.bounding_box;
        if !(1..=MAX_BOX_SIDE).contains(&bw) || !(1..=MAX_BOX_SIDE).contains(&bh) {
            return Err(SolveError::BadBox(bw, bh));
        }
        let n = set.len();
        if n == 0 {
            return Err(SolveError::NoPieces);
        }
        if n > 32 {
            return Err(SolveError::TooManyPieces);
        }
        let (big, small) = (bw.max(bh), bw.min(bh));
        // longest pieces first; they shape the frame early
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(piece_length(&set.shapes()[i]).length));
        let mut orients = Vec::with_capacity(n);
        for &i in &order {
            let shape = &set.shapes()[i];
            let os: Vec<Orient> = shape
                .orientation_transforms()
                .into_iter()
                .map(|(t, cells)| Orient::new(t, &cells))
                .filter(|o| o.w.max(o.h) <= big && o.w.min(o.h) <= small)
                .collect();
            if os.is_empty() {
                return Err(SolveError::BoxTooSmall {
                    box_w: bw,
                    box_h: bh,
                    piece: shape.name().to_string(),
                });
            }
            orients.push(os);
        }
        Ok(Self {
            set,
            order,
            orients,
            n,
            big,
            small,
            live_rows: (2 * big as usize + 2).min(ROWS),
            union: vec![[0; ROWS]; n + 1],
            dil: vec![[0; ROWS]; n + 1],
            bbox: vec![
                Bbox {
                    min_x: 0,
                    max_x: 0,
                    min_y: 0,
                    max_y: 0
                };
                n + 1
            ],
            placed: Vec::with_capacity(n),
            deg: vec![0; n],
            used: 0,
            restrict: [FREE; 32],
            best: None,
            sols: Vec::new(),
            stop_at: opts.stop_at.map(|a| a as u32),
            deadline: opts.time_budget.map(|d| Instant::now() + d),
            nodes: 0,
            aborted: false,
        })
    }

    fn fits(&self, b: &Bbox) -> bool {
        let w = b.max_x - b.min_x + 1;
        let h = b.max_y - b.min_y + 1;
        w.max(h) <= self.big && w.min(h) <= self.small
    }

    fn run(&mut self) {
        // The root's minimum corner; the union then stays inside 1..2*big.
        let root = self.big;
        for o in 0..self.orients[0].len() {
            let or = &self.orients[0][o];
            let b = Bbox {
                min_x: root,
                max_x: root + or.w - 1,
                min_y: root,
                max_y: root + or.h - 1,
            };
            if !self.fits(&b) {
                continue;
            }
            self.put(
                0,
                Placed {
                    piece: 0,
                    orient: o,
                    ax: root,
                    ay: root,
                },
                b,
                0,
            );
            self.used = 1;
            self.descend(1);
            self.used = 0;
            self.placed.clear();
            if self.aborted {
                return;
            }
        }
    }

    /// Writes level `k + 1` from level `k` plus `p`.
    fn put(&mut self, k: usize, p: Placed, b: Bbox, touching: u32) {
        let o = &self.orients[p.piece][p.orient];
        let (lo, hi) = self.union.split_at_mut(k + 1);
        let (dlo, dhi) = self.dil.split_at_mut(k + 1);
        let live = self.live_rows;
        hi[0][..live].copy_from_slice(&lo[k][..live]);
        dhi[0][..live].copy_from_slice(&dlo[k][..live]);
        for r in 0..o.h as usize {
            hi[0][p.ay as usize + r] |= o.rows[r] << p.ax;
        }
        for r in 0..o.h as usize + 2 {
            dhi[0][p.ay as usize + r - 1] |= o.dil[r] << (p.ax - 1);
        }
        self.bbox[k + 1] = b;
        let idx = self.placed.len();
        self.placed.push(p);
        self.deg[idx] = touching.count_ones();
        for j in 0..idx {
            if touching >> j & 1 == 1 {
                self.deg[j] += 1;
            }
        }
    }

    fn take(&mut self, touching: u32) {
        self.placed.pop();
        let idx = self.placed.len();
        for j in 0..idx {
            if touching >> j & 1 == 1 {
                self.deg[j] -= 1;
            }
        }
    }

    /// Bit `j` is set when the candidate touches the j-th placed piece.
    fn touching(&self, o: &Orient, ax: u32, ay: u32) -> u32 {
        let mut mask = 0;
        for (j, q) in self.placed.iter().enumerate() {
            let qo = &self.orients[q.piece][q.orient];
            let (q_lo, q_hi) = (q.ay, q.ay + qo.h);
            let (d_lo, d_hi) = (ay - 1, ay + o.h + 1);
            let lo = q_lo.max(d_lo);
            let hi = q_hi.min(d_hi);
            for y in lo..hi {
                let qr = qo.rows[(y - q.ay) as usize] << q.ax;
                let dr = o.dil[(y + 1 - ay) as usize] << (ax - 1);
                if qr & dr != 0 {
                    mask |= 1 << j;
                    break;
                }
            }
        }
        mask
    }

    fn descend(&mut self, k: usize) {
        self.nodes += 1;
        if self.nodes & 0xfff == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.aborted = true;
                }
            }
        }
        if self.aborted {
            return;
        }
        if k == self.n {
            self.leaf();
            return;
        }
        let remaining_after = (self.n - k - 1) as u32;
        for q in 1..self.n {
            if self.used >> q & 1 == 1 {
                continue;
            }
            // pieces below q that are still out may not touch the union so far
            let saved = self.restrict;
            for s in 1..q {
                if self.used >> s & 1 == 0 {
                    self.restrict[s] = k as u8;
                }
            }
            self.used |= 1 << q;
            self.expand(k, q, remaining_after);
            self.used &= !(1 << q);
            self.restrict = saved;
            if self.aborted {
                return;
            }
        }
    }

    fn expand(&mut self, k: usize, q: usize, remaining_after: u32) {
        let b = self.bbox[k];
        let big = self.big;
        let forbid = (self.restrict[q] != FREE).then_some(self.restrict[q] as usize);
        for oi in 0..self.orients[q].len() {
            let (w, h) = (self.orients[q][oi].w, self.orients[q][oi].h);
            let ay_lo = (b.max_y + 1)
                .saturating_sub(big)
                .max(b.min_y.saturating_sub(h))
                .max(1);
            let ay_hi = (b.min_y + big).saturating_sub(h).min(b.max_y + 1);
            let ax_lo = (b.max_x + 1)
                .saturating_sub(big)
                .max(b.min_x.saturating_sub(w))
                .max(1);
            let ax_hi = (b.min_x + big).saturating_sub(w).min(b.max_x + 1);
            if ay_lo > ay_hi || ax_lo > ax_hi {
                continue;
            }
            let xwin = (u64::MAX >> (63 - ax_hi)) & !((1u64 << ax_lo) - 1);
            for ay in ay_lo..=ay_hi {
                let mut valid = {
                    let o = &self.orients[q][oi];
                    let un = &self.union[k];
                    let di = &self.dil[k];
                    let mut conflict = 0u64;
                    let mut touch = 0u64;
                    let mut banned = 0u64;
                    for &(dx, dy) in &o.cells {
                        let y = (ay + dy) as usize;
                        conflict |= un[y] >> dx;
                        touch |= di[y] >> dx;
                        if let Some(l) = forbid {
                            banned |= self.dil[l][y] >> dx;
                        }
                    }
                    touch & !conflict & !banned & xwin
                };
                while valid != 0 {
                    let ax = valid.trailing_zeros();
                    valid &= valid - 1;
                    let o = &self.orients[q][oi];
                    let nb = b.with(ax, ay, o);
                    if !self.fits(&nb) {
                        continue;
                    }
                    let touching = self.touching(o, ax, ay);
                    let starved = touching.count_ones() + remaining_after < 2
                        || self.deg[..k]
                            .iter()
                            .enumerate()
                            .any(|(j, &d)| d + (touching >> j & 1) + remaining_after < 2);
                    if starved {
                        continue;
                    }
                    let p = Placed {
                        piece: q,
                        orient: oi,
                        ax,
                        ay,
                    };
                    self.put(k, p, nb, touching);
                    self.descend(k + 1);
                    self.take(touching);
                    if self.aborted {
                        return;
                    }
                }
            }
        }
    }

    fn leaf(&mut self) {
        let b = self.bbox[self.n];
        let un = &self.union[self.n];
        let w = b.max_x - b.min_x + 3;
        let shift = b.min_x - 1;
        let mut window = [0u64; ROWS];
        let rows = (b.max_y - b.min_y + 3) as usize;
        for (i, y) in (b.min_y - 1..=b.max_y + 1).enumerate() {
            window[i] = un[y as usize] >> shift;
        }
        let area = enclosed_in_window(&window[..rows], w);
        match self.best {
            Some(best) if area < best => return,
            Some(best) if area == best => {}
            _ => {
                self.best = Some(area);
                self.sols.clear();
            }
        }
        self.sols.push(self.placed.clone());
        if self.stop_at.is_some_and(|s| area >= s) {
            self.aborted = true;
        }
    }

    fn to_config(&self, sol: &[Placed], board: Option<(u32, u32)>) -> BoardConfig {
        let min_x = sol.iter().map(|p| p.ax).min().unwrap_or(0);
        let min_y = sol.iter().map(|p| p.ay).min().unwrap_or(0);
        let max_x = sol
            .iter()
            .map(|p| p.ax + self.orients[p.piece][p.orient].w)
            .max()
            .unwrap_or(0);
        let max_y = sol
            .iter()
            .map(|p| p.ay + self.orients[p.piece][p.orient].h)
            .max()
            .unwrap_or(0);
        let (w, h, margin) = match board {
            Some((w, h)) => (w, h, 0),
            None => (max_x - min_x + 2, max_y - min_y + 2, 1),
        };
        let mut placements: Vec<Placement> = sol
            .iter()
            .map(|p| {
                let o = &self.orients[p.piece][p.orient];
                let shape = &self.set.shapes()[self.order[p.piece]];
                Placement::new(
                    shape.name().clone(),
                    o.transform,
                    Cell::new(
                        (p.ax - min_x + margin) as i32,
                        (p.ay - min_y + margin) as i32,
                    ),
                )
            })
            .collect();
        placements.sort_by(|a, b| {
            self.set
                .index_of(a.piece.as_str())
                .cmp(&self.set.index_of(b.piece.as_str()))
        });
        let pieces = Arc::new(self.set.clone());
        BoardConfig::with_placements(w, h, pieces.clone(), placements.clone())
            .or_else(|_| BoardConfig::lenient(w, h, pieces, placements))
            .expect("solution placements use known pieces")
    }
}

/// Enumerates every fence of `pieces` whose cells fit in the options' box
/// and keeps those of maximal area.
pub fn solve_exhaustive(pieces: &PieceSet, opts: &SolveOptions) -> Result<SolutionSet, SolveError> {
    let start = Instant::now();
    let mut engine = Engine::new(pieces, opts)?;
    engine.run();
    let mut classes: BTreeMap<CanonicalKey, BoardConfig> = BTreeMap::new();
    for sol in &engine.sols {
        let config = engine.to_config(sol, opts.board);
        classes.entry(canonical_key(&config)).or_insert(config);
    }
    Ok(SolutionSet {
        max_area: engine.best.map(|a| a as usize),
        raw_count: engine.sols.len(),
        dedup_count: classes.len(),
        solutions: classes.into_values().collect(),
        exhaustive: !engine.aborted,
        elapsed: start.elapsed(),
        nodes: engine.nodes,
    })
}

/// Box side used when none is given: large enough for any fence that bends
/// around a hole, and never larger than the default board.
pub fn default_box(pieces: &PieceSet) -> (u32, u32) {
    let side = (perimeter_budget(pieces) / 2 + 2).clamp(4, 20);
    (side, side)
}

/// Anytime search within `time_budget` over the default box. Keeps every
/// fence of the best area met so far; `exhaustive` tells whether the whole
/// box was covered before the deadline.
pub fn search_branch_and_bound(
    pieces: &PieceSet,
    time_budget: Duration,
) -> Result<SolutionSet, SolveError> {
    let (w, h) = default_box(pieces);
    let mut opts = SolveOptions::new(w, h);
    opts.time_budget = Some(time_budget);
    solve_exhaustive(pieces, &opts)
}
