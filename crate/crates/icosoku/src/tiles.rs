//! Triangular tile canonicalization under 120°/240° rotation and the 64-row
//! tuple table binding corner triples to the 24 tile types.
//!
//! A tile is an ordered triple of dot counts in 0..=3. Two triples denote the
//! same physical tile iff one is a cyclic rotation of the other, which leaves
//! (4³ + 2·4)/3 = 24 equivalence classes. Type ids follow a fixed total
//! order: ids 1..=4 are the constant triples (0,0,0)…(3,3,3); ids 5..=16 are
//! the two-equal classes, value pairs (a,b) with a<b in lexicographic order,
//! each contributing (a,a,b) then (a,b,b); ids 17..=24 are the all-distinct
//! classes, value sets {a<b<c} in lexicographic order, each contributing
//! (a,b,c) then (a,c,b).

use std::sync::OnceLock;

/// Number of dot choices per tile corner.
pub const DOT_VALUES: u32 = 4;
/// Number of distinct tile types over dot counts 0..=3.
pub const TYPE_COUNT: usize = 24;
/// Number of (corner triple, type) rows: one per ordered triple.
pub const ROW_COUNT: usize = 64;

/// An ordered triple of corner dot counts, each in 0..=3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TileTriple(pub [u32; 3]);

impl TileTriple {
    /// Cyclic left rotation: (a,b,c) → (b,c,a).
    pub fn rotated(self) -> TileTriple {
        let [a, b, c] = self.0;
        TileTriple([b, c, a])
    }
}

/// One row of the tuple table: a corner triple and its type id.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TileRow {
    pub corners: [u32; 3],
    pub type_id: u32,
}

/// The full 64-row table plus the canonical representative of each type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TileTable {
    rows: Vec<TileRow>,
    classes: [TileTriple; TYPE_COUNT],
}

fn canonical_classes() -> &'static [TileTriple; TYPE_COUNT] {
    static CLASSES: OnceLock<[TileTriple; TYPE_COUNT]> = OnceLock::new();
    CLASSES.get_or_init(|| {
        let mut out = Vec::with_capacity(TYPE_COUNT);
        for v in 0..DOT_VALUES {
            out.push(TileTriple([v, v, v]));
        }
        for a in 0..DOT_VALUES {
            for b in a + 1..DOT_VALUES {
                out.push(TileTriple([a, a, b]));
                out.push(TileTriple([a, b, b]));
            }
        }
        for a in 0..DOT_VALUES {
            for b in a + 1..DOT_VALUES {
                for c in b + 1..DOT_VALUES {
                    out.push(TileTriple([a, b, c]));
                    out.push(TileTriple([a, c, b]));
                }
            }
        }
        out.try_into().expect("24 canonical classes")
    })
}

/// Canonicalizes a corner triple and returns its type id in 1..=24.
///
/// The canonical representative is the lexicographically smallest of the
/// three cyclic rotations, so all three rotations of a triple share one id.
pub fn canonical_tile(a: u32, b: u32, c: u32) -> (TileTriple, u32) {
    assert!(
        a < DOT_VALUES && b < DOT_VALUES && c < DOT_VALUES,
        "dot count out of range: ({a},{b},{c})"
    );
    let r0 = TileTriple([a, b, c]);
    let r1 = r0.rotated();
    let r2 = r1.rotated();
    let canonical = r0.min(r1).min(r2);
    let id = canonical_classes()
        .iter()
        .position(|&t| t == canonical)
        .expect("every canonical triple is a class representative");
    (canonical, id as u32 + 1)
}

/// Materializes the 64-row table by enumerating all ordered triples
/// row-major by (a, b, c).
pub fn tile_table() -> TileTable {
    let mut rows = Vec::with_capacity(ROW_COUNT);
    for a in 0..DOT_VALUES {
        for b in 0..DOT_VALUES {
            for c in 0..DOT_VALUES {
                let (_, type_id) = canonical_tile(a, b, c);
                rows.push(TileRow { corners: [a, b, c], type_id });
            }
        }
    }
    TileTable { rows, classes: *canonical_classes() }
}

impl TileTable {
    pub fn rows(&self) -> &[TileRow] {
        &self.rows
    }

    /// Canonical representative of a type id.
    pub fn class(&self, type_id: u32) -> TileTriple {
        self.classes[(type_id - 1) as usize]
    }

    /// Type id of an ordered corner triple.
    pub fn type_of(&self, corners: [u32; 3]) -> u32 {
        let [a, b, c] = corners;
        self.rows[(a * 16 + b * 4 + c) as usize].type_id
    }
}

/// Orbit count of C3 acting on ordered triples over `colors` values, by
/// Burnside's lemma: the identity fixes colors³ triples and each nontrivial
/// rotation fixes the colors constant triples.
pub fn necklace_classes(colors: usize) -> usize {
    (colors * colors * colors + 2 * colors) / 3
}

/// Self-check value for the tile-type count: (4³ + 2·4)/3 = 24.
pub fn type_count_by_burnside() -> usize {
    necklace_classes(DOT_VALUES as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{BTreeMap, BTreeSet};

    #[test]
    fn printed_exemplars_map_exactly() {
        let cases = [
            ((0, 0, 0), 1),
            ((1, 1, 1), 2),
            ((2, 2, 2), 3),
            ((0, 0, 2), 7),
            ((0, 2, 0), 7),
            ((2, 0, 0), 7),
            ((0, 3, 3), 10),
            ((3, 0, 3), 10),
            ((3, 3, 0), 10),
            ((1, 2, 3), 23),
            ((3, 1, 2), 23),
            ((2, 3, 1), 23),
            ((3, 2, 1), 24),
            ((2, 1, 3), 24),
            ((1, 3, 2), 24),
        ];
        for ((a, b, c), want) in cases {
            assert_eq!(canonical_tile(a, b, c).1, want, "({a},{b},{c})");
        }
    }

    #[test]
    fn rotation_invariance_is_exhaustive() {
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    let here = canonical_tile(a, b, c);
                    assert_eq!(here, canonical_tile(b, c, a));
                    assert_eq!(here, canonical_tile(c, a, b));
                }
            }
        }
    }

    #[test]
    fn canonical_is_smallest_rotation() {
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    let (canon, _) = canonical_tile(a, b, c);
                    assert!(canon <= TileTriple([a, b, c]));
                    assert_eq!(canon, canon.min(canon.rotated()).min(canon.rotated().rotated()));
                }
            }
        }
    }

    #[test]
    fn table_has_64_rows_and_24_types() {
        let t = tile_table();
        assert_eq!(t.rows().len(), 64);
        let ids: BTreeSet<u32> = t.rows().iter().map(|r| r.type_id).collect();
        assert_eq!(ids.len(), 24);
        assert_eq!(ids.iter().copied().collect::<Vec<_>>(), (1..=24).collect::<Vec<_>>());
    }

    #[test]
    fn classes_partition_into_4_singletons_and_20_triples() {
        let t = tile_table();
        let mut sizes: BTreeMap<u32, usize> = BTreeMap::new();
        for r in t.rows() {
            *sizes.entry(r.type_id).or_insert(0) += 1;
        }
        let singletons = sizes.values().filter(|&&n| n == 1).count();
        let triples = sizes.values().filter(|&&n| n == 3).count();
        assert_eq!((singletons, triples), (4, 20));
        assert_eq!(singletons + 3 * triples, 64);
    }

    #[test]
    fn nonconstant_rows_are_the_three_rotations_of_the_class() {
        let t = tile_table();
        for id in 1..=24u32 {
            let canon = t.class(id);
            let mut expected: BTreeSet<TileTriple> =
                [canon, canon.rotated(), canon.rotated().rotated()].into_iter().collect();
            let got: BTreeSet<TileTriple> = t
                .rows()
                .iter()
                .filter(|r| r.type_id == id)
                .map(|r| TileTriple(r.corners))
                .collect();
            assert_eq!(got, std::mem::take(&mut expected), "type {id}");
        }
    }

    #[test]
    fn table_agrees_with_canonical_tile() {
        let t = tile_table();
        for r in t.rows() {
            let [a, b, c] = r.corners;
            assert_eq!(t.type_of(r.corners), r.type_id);
            assert_eq!(canonical_tile(a, b, c).1, r.type_id);
        }
    }

    #[test]
    fn burnside_count_matches_table() {
        assert_eq!(type_count_by_burnside(), 24);
        let t = tile_table();
        let ids: BTreeSet<u32> = t.rows().iter().map(|r| r.type_id).collect();
        assert_eq!(ids.len(), type_count_by_burnside());
    }

    #[test]
    fn burnside_generalizes_to_two_colors() {
        assert_eq!(necklace_classes(2), 4);
        // enumerate directly as a cross-check
        let mut canon = BTreeSet::new();
        for a in 0..2u32 {
            for b in 0..2 {
                for c in 0..2 {
                    let t = TileTriple([a, b, c]);
                    canon.insert(t.min(t.rotated()).min(t.rotated().rotated()));
                }
            }
        }
        assert_eq!(canon.len(), 4);
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn out_of_range_dot_count_panics() {
        canonical_tile(0, 4, 0);
    }
}
