//! Fence validity and scoring.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::board::BoardConfig;
use crate::geom::PieceLabel;
use crate::topology::{connected_components, topology, Topology};

/// Minimum number of distinct edge neighbours every piece needs.
pub const MIN_NEIGHBORS: usize = 2;

/// One reason a configuration is not a fence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    Overlap { piece: PieceLabel, with: PieceLabel },
    OutOfBounds { piece: PieceLabel },
    MissingPiece { piece: PieceLabel },
    UnderConnectedPiece { piece: PieceLabel, count: usize },
    FenceDisconnected { components: usize },
}

impl Violation {
    pub fn kind(&self) -> &'static str {
        match self {
            Violation::Overlap { .. } => "overlap",
            Violation::OutOfBounds { .. } => "out-of-bounds",
            Violation::MissingPiece { .. } => "missing-piece",
            Violation::UnderConnectedPiece { .. } => "under-connected-piece",
            Violation::FenceDisconnected { .. } => "fence-disconnected",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Overlap { piece, with } => write!(f, "{piece} overlaps {with}"),
            Violation::OutOfBounds { piece } => write!(f, "{piece} leaves the board"),
            Violation::MissingPiece { piece } => write!(f, "{piece} is not on the board"),
            Violation::UnderConnectedPiece { piece, count } => {
                write!(
                    f,
                    "{piece} touches {count} piece(s) along an edge, needs {MIN_NEIGHBORS}"
                )
            }
            Violation::FenceDisconnected { components } => {
                write!(f, "fence splits into {components} rook-connected parts")
            }
        }
    }
}

/// Verdict for one configuration. Topology and area are reported even for
/// invalid boards.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FenceReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
    pub neighbor_counts: BTreeMap<PieceLabel, usize>,
    pub topology: Topology,
    pub area: usize,
}

impl FenceReport {
    pub fn has(&self, kind: &str) -> bool {
        self.violations.iter().any(|v| v.kind() == kind)
    }
}

/// For each placed piece, how many other pieces share at least one edge
/// with it. Corner contact does not count.
pub fn neighbor_counts(config: &BoardConfig) -> BTreeMap<PieceLabel, usize> {
    let owners = config.owners();
    let mut out = BTreeMap::new();
    for (i, (label, cells)) in config.labeled_cells().enumerate() {
        let touching: BTreeSet<usize> = cells
            .iter()
            .flat_map(|c| c.neighbors())
            .filter_map(|n| owners.get(&n).copied())
            .filter(|&j| j != i)
            .collect();
        out.insert(label.clone(), touching.len());
    }
    out
}

pub fn validate_fence(config: &BoardConfig) -> FenceReport {
    let mut violations: Vec<Violation> = config
        .missing_pieces()
        .into_iter()
        .map(|piece| Violation::MissingPiece { piece })
        .collect();

    let mut owner: BTreeMap<_, usize> = BTreeMap::new();
    for (i, (label, cells)) in config.labeled_cells().enumerate() {
        if cells.iter().any(|&c| !config.in_bounds(c)) {
            violations.push(Violation::OutOfBounds {
                piece: label.clone(),
            });
        }
        let mut hit = BTreeSet::new();
        for &c in cells {
            if let Some(&j) = owner.get(&c) {
                hit.insert(j);
            } else {
                owner.insert(c, i);
            }
        }
        for j in hit {
            violations.push(Violation::Overlap {
                piece: label.clone(),
                with: config.placements()[j].piece.clone(),
            });
        }
    }

    let counts = neighbor_counts(config);
    for p in config.placements() {
        let count = counts[&p.piece];
        if count < MIN_NEIGHBORS {
            violations.push(Violation::UnderConnectedPiece {
                piece: p.piece.clone(),
                count,
            });
        }
    }

    let components = connected_components(&config.occupied()).len();
    if components != 1 {
        violations.push(Violation::FenceDisconnected { components });
    }

    let topology = topology(config);
    FenceReport {
        valid: violations.is_empty(),
        violations,
        neighbor_counts: counts,
        area: topology.area(),
        topology,
    }
}

/// Whether a game aims for a large or a small enclosure.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScoreMode {
    #[default]
    Standard,
    #[serde(alias = "misère")]
    Misere,
}

impl ScoreMode {
    /// True when `a` is a strictly better area than `b` in this mode.
    pub fn improves(self, a: usize, b: usize) -> bool {
        match self {
            ScoreMode::Standard => a > b,
            ScoreMode::Misere => a < b,
        }
    }
}

impl FromStr for ScoreMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "standard" => Ok(ScoreMode::Standard),
            "misere" | "misère" => Ok(ScoreMode::Misere),
            other => Err(format!("unknown score mode {other:?}")),
        }
    }
}

impl fmt::Display for ScoreMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScoreMode::Standard => "standard",
            ScoreMode::Misere => "misere",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("not a valid fence: {}", .0.violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
pub struct InvalidFence(pub Box<FenceReport>);

/// The enclosed area of a valid fence. Both modes return the area; they only
/// differ in which direction is better.
pub fn score(config: &BoardConfig, _mode: ScoreMode) -> Result<usize, InvalidFence> {
    let report = validate_fence(config);
    if report.valid {
        Ok(report.area)
    } else {
        Err(InvalidFence(Box::new(report)))
    }
}

/// Named score levels for the twelve pentominoes, lowest first.
pub const SCORE_BANDS: [(usize, &str); 4] = [
    (100, "good"),
    (120, "excellent"),
    (125, "exceptional"),
    (128, "maximum"),
];

/// Highest band reached by `area`, if any.
pub fn score_band(area: usize) -> Option<&'static str> {
    SCORE_BANDS
        .iter()
        .rev()
        .find(|(t, _)| area >= *t)
        .map(|&(_, name)| name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::Placement;
    use crate::geom::{Cell, Transform};
    use crate::pieces::PieceLibrary;
    use std::sync::Arc;

    fn board(labels: &str, placements: &[(&str, i32, i32)]) -> BoardConfig {
        let set = Arc::new(PieceLibrary::builtin().piece_set(labels).unwrap());
        let ps = placements
            .iter()
            .map(|&(l, x, y)| Placement::new(l, Transform::IDENTITY, Cell::new(x, y)))
            .collect();
        BoardConfig::lenient(10, 10, set, ps).unwrap()
    }

    #[test]
    fn side_by_side_pair() {
        let b = board("i,o", &[("i", 0, 0), ("o", 1, 0)]);
        let counts = neighbor_counts(&b);
        assert_eq!(counts["i"], 1);
        assert_eq!(counts["o"], 1);
        let r = validate_fence(&b);
        assert!(!r.valid);
        assert!(r.has("under-connected-piece"));
        assert!(!r.has("fence-disconnected"));
    }

    #[test]
    fn reports_missing_overlap_and_bounds() {
        let b = board("i,l,o", &[("i", 9, 8), ("o", 9, 0)]);
        let r = validate_fence(&b);
        let kinds: Vec<_> = r.violations.iter().map(Violation::kind).collect();
        assert!(kinds.contains(&"missing-piece"));
        assert!(kinds.contains(&"out-of-bounds"));
        assert!(kinds.contains(&"fence-disconnected"));

        let b = board("i,o", &[("i", 0, 0), ("o", 0, 0)]);
        assert!(validate_fence(&b).has("overlap"));
    }

    #[test]
    fn violation_json() {
        let v = Violation::UnderConnectedPiece {
            piece: "V".into(),
            count: 1,
        };
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"kind":"under-connected-piece","piece":"V","count":1}"#
        );
    }

    #[test]
    fn bands_and_modes() {
        assert_eq!(score_band(99), None);
        assert_eq!(score_band(120), Some("excellent"));
        assert_eq!(score_band(128), Some("maximum"));
        assert!(ScoreMode::Misere.improves(3, 5));
        assert!(ScoreMode::Standard.improves(5, 3));
        assert_eq!("misère".parse::<ScoreMode>(), Ok(ScoreMode::Misere));
    }
}
