//! Symmetry-invariant keys for configurations.

use std::fmt;

use crate::board::BoardConfig;
use crate::geom::{Cell, Transform};

/// Labeled cells of a configuration in a form that is equal for two boards
/// exactly when one is a translated, rotated or mirrored copy of the other.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<(Cell, String)>);

impl CanonicalKey {
    pub fn cells(&self) -> &[(Cell, String)] {
        &self.0
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (c, label)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{},{}:{}", c.x, c.y, label)?;
        }
        Ok(())
    }
}

/// Sorted labeled cells, translated so the union starts at the origin.
fn normalized(mut cells: Vec<(Cell, String)>) -> Vec<(Cell, String)> {
    let min_x = cells.iter().map(|(c, _)| c.x).min().unwrap_or(0);
    let min_y = cells.iter().map(|(c, _)| c.y).min().unwrap_or(0);
    for (c, _) in &mut cells {
        *c = c.offset(-min_x, -min_y);
    }
    cells.sort();
    cells
}

/// Key of a configuration given as `(label, cells)` pairs.
pub fn canonical_key_of<'a, L: AsRef<str> + 'a>(
    pieces: impl IntoIterator<Item = (L, &'a [Cell])>,
) -> CanonicalKey {
    let labeled: Vec<(Cell, String)> = pieces
        .into_iter()
        .flat_map(|(l, cells)| {
            let l = l.as_ref().to_string();
            cells.iter().map(move |&c| (c, l.clone()))
        })
        .collect();
    let best = Transform::all()
        .into_iter()
        .map(|t| {
            normalized(
                labeled
                    .iter()
                    .map(|(c, l)| (t.apply(*c), l.clone()))
                    .collect(),
            )
        })
        .min()
        .unwrap_or_default();
    CanonicalKey(best)
}

/// Smallest translation-normalized image of the labeled configuration over
/// the eight symmetries of the square.
pub fn canonical_key(config: &BoardConfig) -> CanonicalKey {
    canonical_key_of(config.labeled_cells().map(|(l, c)| (l.as_str(), c)))
}

/// Key up to translation only.
pub fn translation_key(config: &BoardConfig) -> CanonicalKey {
    let labeled = config
        .labeled_cells()
        .flat_map(|(l, cells)| cells.iter().map(move |&c| (c, l.to_string())))
        .collect();
    CanonicalKey(normalized(labeled))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::Placement;
    use crate::geom::Rotation;
    use crate::pieces::PieceLibrary;
    use std::sync::Arc;

    fn sample() -> BoardConfig {
        let set = Arc::new(PieceLibrary::builtin().piece_set("l,o,t").unwrap());
        BoardConfig::with_placements(
            12,
            12,
            set,
            vec![
                Placement::new("l", Transform::new(Rotation::R90, true), Cell::new(1, 1)),
                Placement::new("o", Transform::IDENTITY, Cell::new(4, 1)),
                Placement::new("t", Transform::new(Rotation::R270, false), Cell::new(2, 3)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn invariant_under_symmetry_and_translation() {
        let c = sample();
        let k = canonical_key(&c);
        for t in Transform::all() {
            let image = c.transformed(t, Cell::new(3, 2)).unwrap();
            assert_eq!(canonical_key(&image), k, "{t}");
        }
        assert_eq!(canonical_key(&c.translated(3, 3).unwrap()), k);
        assert_eq!(
            translation_key(&c.translated(3, 3).unwrap()),
            translation_key(&c)
        );
    }

    #[test]
    fn distinct_configs_differ() {
        let set = Arc::new(PieceLibrary::builtin().piece_set("i,l").unwrap());
        let a = BoardConfig::with_placements(
            9,
            9,
            set.clone(),
            vec![
                Placement::new("i", Transform::IDENTITY, Cell::new(0, 0)),
                Placement::new("l", Transform::IDENTITY, Cell::new(1, 0)),
            ],
        )
        .unwrap();
        let b = a.with_moved(Placement::new(
            "l",
            Transform::new(Rotation::R0, true),
            Cell::new(1, 0),
        ));
        assert_ne!(canonical_key(&a), canonical_key(&b.unwrap()));
    }
}
