//! Fixture loading and an independent brute-force fence enumerator.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::path::PathBuf;

use fence_core::io::parse_config;
use fence_core::{BoardConfig, PieceLibrary, PieceSet};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(format!("{name}.json"))
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).expect("fixture exists")
}

pub fn fixture(name: &str) -> BoardConfig {
    parse_config(&fixture_text(name), &PieceLibrary::builtin()).expect("fixture parses")
}

/// What the oracle found: the best area and how many fences reach it, up to
/// translation and up to all symmetries of the square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub max_area: Option<usize>,
    pub raw: usize,
    pub dedup: usize,
}

type Pts = Vec<(i32, i32)>;

fn norm(mut c: Pts) -> Pts {
    let mx = c.iter().map(|p| p.0).min().unwrap();
    let my = c.iter().map(|p| p.1).min().unwrap();
    for p in &mut c {
        *p = (p.0 - mx, p.1 - my);
    }
    c.sort();
    c
}

/// The eight images of a point set: quarter turns of it and of its mirror.
fn images(c: &Pts) -> Vec<Pts> {
    let mut out = Vec::new();
    let mut cur = c.clone();
    for m in 0..2 {
        if m == 1 {
            cur = c.iter().map(|&(x, y)| (-x, y)).collect();
        }
        for _ in 0..4 {
            out.push(cur.clone());
            cur = cur.iter().map(|&(x, y)| (y, -x)).collect();
        }
    }
    out
}

/// Every fence of `set` inside a `side` x `side` square, found by putting
/// each piece, in a fixed order, at every orientation and position and
/// keeping only non-overlapping combinations. Nothing else is pruned.
pub fn brute_force(set: &PieceSet, side: i32) -> OracleResult {
    assert!(side <= 8);
    let bit = |x: i32, y: i32| 1u64 << (y * 8 + x);
    let n = set.len();
    // (cells mask, neighbour mask) for every placement of every piece
    let mut options: Vec<Vec<(u64, u64)>> = Vec::new();
    for shape in set.shapes() {
        let cells: Pts = shape.cells().iter().map(|c| (c.x, c.y)).collect();
        let orients: BTreeSet<Pts> = images(&cells).into_iter().map(norm).collect();
        let mut opts = Vec::new();
        for o in orients {
            let w = o.iter().map(|p| p.0).max().unwrap() + 1;
            let h = o.iter().map(|p| p.1).max().unwrap() + 1;
            for ay in 0..=side - h {
                for ax in 0..=side - w {
                    let mut m = 0u64;
                    let mut nb = 0u64;
                    for &(x, y) in &o {
                        let (x, y) = (x + ax, y + ay);
                        m |= bit(x, y);
                        for (nx, ny) in [(x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)] {
                            if (0..side).contains(&nx) && (0..side).contains(&ny) {
                                nb |= bit(nx, ny);
                            }
                        }
                    }
                    opts.push((m, nb & !m));
                }
            }
        }
        options.push(opts);
    }

    let mut best: Option<usize> = None;
    let mut keys: HashSet<Vec<u64>> = HashSet::new();
    let mut chosen: Vec<(u64, u64)> = vec![(0, 0); n];
    let mut stack: Vec<(usize, usize, u64)> = vec![(0, 0, 0)];
    // iterative depth-first walk over (piece, option index, occupied)
    while let Some((k, i, occ)) = stack.pop() {
        if i >= options[k].len() {
            continue;
        }
        stack.push((k, i + 1, occ));
        let (m, nb) = options[k][i];
        if m & occ != 0 {
            continue;
        }
        chosen[k] = (m, nb);
        if k + 1 < n {
            stack.push((k + 1, 0, occ | m));
            continue;
        }
        let all = occ | m;
        if !is_fence(&chosen, all) {
            continue;
        }
        let area = enclosed(all, side);
        if best.is_some_and(|b| area < b) {
            continue;
        }
        if best != Some(area) {
            best = Some(area);
            keys.clear();
        }
        keys.insert(translate_key(&chosen, all));
    }

    let classes: BTreeSet<Vec<(i32, i32, usize)>> = keys.iter().map(|k| symmetry_key(k)).collect();
    OracleResult {
        max_area: best,
        raw: keys.len(),
        dedup: classes.len(),
    }
}

fn is_fence(chosen: &[(u64, u64)], all: u64) -> bool {
    for (i, &(_, nb)) in chosen.iter().enumerate() {
        let count = chosen
            .iter()
            .enumerate()
            .filter(|&(j, &(m, _))| j != i && m & nb != 0)
            .count();
        if count < 2 {
            return false;
        }
    }
    // connectivity by repeated growth inside the occupied mask
    let mut seen = all & all.wrapping_neg();
    loop {
        let grow = seen
            | (seen << 1 & !0x0101_0101_0101_0101)
            | (seen >> 1 & !0x8080_8080_8080_8080)
            | seen << 8
            | seen >> 8;
        let grow = grow & all;
        if grow == seen {
            return seen == all;
        }
        seen = grow;
    }
}

/// Empty cells of the square not reachable from outside it.
fn enclosed(all: u64, side: i32) -> usize {
    let s = side + 2;
    let occupied = |x: i32, y: i32| {
        (1..=side).contains(&x) && (1..=side).contains(&y) && all >> ((y - 1) * 8 + x - 1) & 1 == 1
    };
    let mut seen = vec![false; (s * s) as usize];
    let mut queue = VecDeque::from([(0, 0)]);
    seen[0] = true;
    let mut outside = 0;
    while let Some((x, y)) = queue.pop_front() {
        outside += 1;
        for (nx, ny) in [(x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)] {
            if nx < 0 || ny < 0 || nx >= s || ny >= s {
                continue;
            }
            let i = (ny * s + nx) as usize;
            if !seen[i] && !occupied(nx, ny) {
                seen[i] = true;
                queue.push_back((nx, ny));
            }
        }
    }
    (s * s) as usize - outside - all.count_ones() as usize
}

fn translate_key(chosen: &[(u64, u64)], all: u64) -> Vec<u64> {
    let min_y = all.trailing_zeros() / 8;
    let min_x = (0..8)
        .find(|x| all & (0x0101_0101_0101_0101u64 << x) != 0)
        .unwrap();
    chosen
        .iter()
        .map(|&(m, _)| m >> (min_y * 8 + min_x))
        .collect()
}

fn symmetry_key(key: &[u64]) -> Vec<(i32, i32, usize)> {
    let labeled: Vec<(i32, i32, usize)> = key
        .iter()
        .enumerate()
        .flat_map(|(p, &m)| {
            (0..64)
                .filter(move |b| m >> b & 1 == 1)
                .map(move |b| (b % 8, b / 8, p))
        })
        .collect();
    let pts: Pts = labeled.iter().map(|&(x, y, _)| (x, y)).collect();
    images(&pts)
        .into_iter()
        .map(|img| {
            let mx = img.iter().map(|p| p.0).min().unwrap();
            let my = img.iter().map(|p| p.1).min().unwrap();
            let mut v: Vec<(i32, i32, usize)> = img
                .iter()
                .zip(&labeled)
                .map(|(&(x, y), &(_, _, p))| (x - mx, y - my, p))
                .collect();
            v.sort();
            v
        })
        .min()
        .unwrap()
}

/// Number of distinct images of a cell set under the eight symmetries.
pub fn distinct_orientations(cells: &[(i32, i32)]) -> usize {
    images(&cells.to_vec())
        .into_iter()
        .map(norm)
        .collect::<BTreeSet<_>>()
        .len()
}

/// Enclosed area and hole count by union-find over the empty cells, with one
/// extra node standing for everything outside the board.
pub fn union_find_holes(width: i32, height: i32, occupied: &HashSet<(i32, i32)>) -> (usize, usize) {
    let outside = (width * height) as usize;
    let mut parent: Vec<usize> = (0..=outside).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    let union = |p: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(p, a), find(p, b));
        if ra != rb {
            p[ra] = rb;
        }
    };
    let id = |x: i32, y: i32| (y * width + x) as usize;
    for y in 0..height {
        for x in 0..width {
            if occupied.contains(&(x, y)) {
                continue;
            }
            if x == 0 || y == 0 || x == width - 1 || y == height - 1 {
                union(&mut parent, id(x, y), outside);
            }
            if x + 1 < width && !occupied.contains(&(x + 1, y)) {
                union(&mut parent, id(x, y), id(x + 1, y));
            }
            if y + 1 < height && !occupied.contains(&(x, y + 1)) {
                union(&mut parent, id(x, y), id(x, y + 1));
            }
        }
    }
    let out_root = find(&mut parent, outside);
    let mut area = 0;
    let mut roots = HashSet::new();
    for y in 0..height {
        for x in 0..width {
            if occupied.contains(&(x, y)) {
                continue;
            }
            let r = find(&mut parent, id(x, y));
            if r != out_root {
                area += 1;
                roots.insert(r);
            }
        }
    }
    (area, roots.len())
}

/// Drops pieces of `set` at random spots of a `width` x `height` board,
/// skipping any that would overlap or leave the board.
pub fn random_config(
    rng: &mut impl rand::Rng,
    set: &PieceSet,
    width: u32,
    height: u32,
) -> BoardConfig {
    use fence_core::{Placement, Rotation, Transform};
    let shared = std::sync::Arc::new(set.clone());
    let mut config = BoardConfig::empty(width, height, shared).unwrap();
    for shape in set.shapes() {
        for _ in 0..8 {
            let t = Transform::new(Rotation::from_quarter_turns(rng.gen_range(0..4)), rng.gen());
            let anchor = fence_core::Cell::new(
                rng.gen_range(0..width as i32),
                rng.gen_range(0..height as i32),
            );
            let moved = config
                .with_moved(Placement::new(shape.name().clone(), t, anchor))
                .and_then(|c| {
                    BoardConfig::with_placements(
                        width,
                        height,
                        c.pieces().clone(),
                        c.placements().to_vec(),
                    )
                });
            if let Ok(next) = moved {
                config = next;
                break;
            }
        }
    }
    config
}

/// The three-piece subsets of the tetrominoes, as set names.
pub fn tetromino_triples() -> Vec<String> {
    let labels = ["i", "l", "n", "o", "t"];
    let mut out = Vec::new();
    for a in 0..5 {
        for b in a + 1..5 {
            for c in b + 1..5 {
                out.push(format!("{},{},{}", labels[a], labels[b], labels[c]));
            }
        }
    }
    out
}
