//! Labeled regular-icosahedron incidence structure and the order-5 rotation
//! about the apex vertex.
//!
//! The labeling is fixed once and for all: vertex 0 is the top apex, vertices
//! 1..=5 form the upper ring (cyclic), vertices 6..=10 the lower ring (vertex
//! `i + 5` sits below the edge `i`–`i+1` of the upper ring), and vertex 11 is
//! the bottom apex. Faces are stored as ordered triples in four bands of five:
//! top cap, downward band, upward band, bottom cap. With this labeling the
//! apex rotation is a pure index shift on both rings.

pub const VERTEX_COUNT: usize = 12;
pub const FACE_COUNT: usize = 20;
pub const EDGE_COUNT: usize = 30;

/// Number of faces meeting at every vertex of the icosahedron.
pub const FACES_PER_VERTEX: usize = 5;

/// The labeled icosahedron: ordered face triples plus the inverse
/// vertex-to-(face, corner) incidence map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Topology {
    faces: [[usize; 3]; FACE_COUNT],
    vertex_faces: [[(usize, usize); FACES_PER_VERTEX]; VERTEX_COUNT],
}

/// A bijection on the 12 vertex indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexPermutation {
    image: [usize; VERTEX_COUNT],
}

impl VertexPermutation {
    pub fn identity() -> Self {
        let mut image = [0; VERTEX_COUNT];
        for (v, slot) in image.iter_mut().enumerate() {
            *slot = v;
        }
        VertexPermutation { image }
    }

    /// Builds the permutation sending `v` to `image[v]`; `image` must be a
    /// bijection on the vertex indices.
    pub fn new(image: [usize; VERTEX_COUNT]) -> Self {
        let mut seen = [false; VERTEX_COUNT];
        for &w in &image {
            assert!(w < VERTEX_COUNT, "image entry {w} out of range");
            assert!(!seen[w], "image repeats vertex {w}");
            seen[w] = true;
        }
        VertexPermutation { image }
    }

    /// Image of vertex `v`.
    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.image[v]
    }

    /// Composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &VertexPermutation) -> VertexPermutation {
        let mut image = [0; VERTEX_COUNT];
        for (v, slot) in image.iter_mut().enumerate() {
            *slot = self.image[other.image[v]];
        }
        VertexPermutation { image }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(v, &w)| v == w)
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..VERTEX_COUNT).filter(|&v| self.image[v] == v).collect()
    }
}

/// Upper-ring vertex for cyclic ring position `i` (1-based, wraps mod 5).
fn upper(i: usize) -> usize {
    1 + (i - 1) % 5
}

/// Lower-ring vertex for cyclic ring position `i` (1-based, wraps mod 5).
fn lower(i: usize) -> usize {
    6 + (i - 1) % 5
}

/// Builds the canonical labeled icosahedron.
pub fn build_icosahedron() -> Topology {
    // Every triple is counterclockwise seen from outside, so the rotation
    // group maps each stored face onto a cyclic shift of a stored face.
    let mut faces = [[0usize; 3]; FACE_COUNT];
    for i in 1..=5 {
        // top cap: (v0, A_i, A_{i+1})
        faces[i - 1] = [0, upper(i), upper(i + 1)];
        // downward band: (A_i, B_i, A_{i+1})
        faces[4 + i] = [upper(i), lower(i), upper(i + 1)];
        // upward band: (B_{i-1}, B_i, A_i)
        faces[9 + i] = [lower(i + 4), lower(i), upper(i)];
        // bottom cap: (B_{i+1}, B_i, v11)
        faces[14 + i] = [lower(i + 1), lower(i), 11];
    }

    let mut slots: [Vec<(usize, usize)>; VERTEX_COUNT] = Default::default();
    for (f, triple) in faces.iter().enumerate() {
        for (c, &v) in triple.iter().enumerate() {
            slots[v].push((f, c));
        }
    }
    let mut vertex_faces = [[(0usize, 0usize); FACES_PER_VERTEX]; VERTEX_COUNT];
    for (v, list) in slots.iter().enumerate() {
        assert_eq!(list.len(), FACES_PER_VERTEX, "vertex {v} incidence");
        vertex_faces[v].copy_from_slice(list);
    }
    Topology { faces, vertex_faces }
}

impl Topology {
    pub fn vertex_count(&self) -> usize {
        VERTEX_COUNT
    }

    pub fn faces(&self) -> &[[usize; 3]; FACE_COUNT] {
        &self.faces
    }

    pub fn face(&self, f: usize) -> [usize; 3] {
        self.faces[f]
    }

    /// The five (face, corner) pairs incident to vertex `v`, in face order.
    /// The corner position is the index `c` with `faces[f][c] == v`.
    pub fn faces_at_vertex(&self, v: usize) -> &[(usize, usize); FACES_PER_VERTEX] {
        assert!(v < VERTEX_COUNT, "vertex index {v} out of range");
        &self.vertex_faces[v]
    }

    /// The sorted undirected edge set.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<(usize, usize)> = self
            .faces
            .iter()
            .flat_map(|t| {
                (0..3).map(|j| {
                    let (a, b) = (t[j], t[(j + 1) % 3]);
                    (a.min(b), a.max(b))
                })
            })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        edges
    }

    /// The order-5 rotation about the apex: fixes vertices 0 and 11 and
    /// shifts both rings by `k` positions.
    pub fn rotation_about_apex(&self, k: usize) -> VertexPermutation {
        assert!(k < 5, "rotation step {k} out of range");
        let mut image = [0; VERTEX_COUNT];
        image[11] = 11;
        for i in 1..=5 {
            image[upper(i)] = upper(i + k);
            image[lower(i)] = lower(i + k);
        }
        VertexPermutation { image }
    }

    /// Locates the face whose vertex triple is a cyclic rotation of `triple`.
    /// Returns `(face, shift)` with `faces[face][j] == triple[(j + shift) % 3]`.
    pub fn find_face(&self, triple: [usize; 3]) -> Option<(usize, usize)> {
        for (f, stored) in self.faces.iter().enumerate() {
            for shift in 0..3 {
                if (0..3).all(|j| stored[j] == triple[(j + shift) % 3]) {
                    return Some((f, shift));
                }
            }
        }
        None
    }

    /// The rotation group: the 60 vertex bijections that preserve adjacency
    /// and map every oriented face onto a stored face. The identity comes
    /// first; the rest follow in lexicographic image order.
    pub fn rotations(&self) -> Vec<VertexPermutation> {
        let mut adjacent = [[false; VERTEX_COUNT]; VERTEX_COUNT];
        for (a, b) in self.edges() {
            adjacent[a][b] = true;
            adjacent[b][a] = true;
        }

        // Vertex v's adjacency to 0..v pins each extension step, so plain
        // index order needs no connectivity bookkeeping.
        fn extend(
            v: usize,
            adjacent: &[[bool; VERTEX_COUNT]; VERTEX_COUNT],
            image: &mut [usize; VERTEX_COUNT],
            used: &mut [bool; VERTEX_COUNT],
            found: &mut Vec<[usize; VERTEX_COUNT]>,
        ) {
            if v == VERTEX_COUNT {
                found.push(*image);
                return;
            }
            for w in 0..VERTEX_COUNT {
                if used[w] || (0..v).any(|u| adjacent[v][u] != adjacent[w][image[u]]) {
                    continue;
                }
                image[v] = w;
                used[w] = true;
                extend(v + 1, adjacent, image, used, found);
                used[w] = false;
            }
        }

        let mut found = Vec::new();
        let mut image = [0; VERTEX_COUNT];
        let mut used = [false; VERTEX_COUNT];
        extend(0, &adjacent, &mut image, &mut used, &mut found);
        debug_assert_eq!(found.len(), 120, "graph automorphisms: rotations and reflections");

        // Reflections reverse face orientation, so their image triples match
        // no stored face cyclically.
        found.retain(|image| {
            self.faces
                .iter()
                .all(|f| self.find_face([image[f[0]], image[f[1]], image[f[2]]]).is_some())
        });
        debug_assert_eq!(found.len(), 60);
        debug_assert!(found[0] == std::array::from_fn(|v| v), "identity is lexicographically first");
        found.into_iter().map(VertexPermutation::new).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    #[test]
    fn counts_and_euler() {
        let t = build_icosahedron();
        assert_eq!(t.vertex_count(), 12);
        assert_eq!(t.faces().len(), 20);
        let e = t.edges().len();
        assert_eq!(e, 30);
        assert_eq!(12 - e as isize + 20, 2);
    }

    #[test]
    fn every_face_has_three_distinct_vertices() {
        let t = build_icosahedron();
        for f in t.faces() {
            assert!(f[0] != f[1] && f[1] != f[2] && f[0] != f[2], "{f:?}");
            assert!(f.iter().all(|&v| v < 12));
        }
    }

    #[test]
    fn every_edge_shared_by_exactly_two_faces() {
        let t = build_icosahedron();
        let mut count: HashMap<(usize, usize), usize> = HashMap::new();
        for f in t.faces() {
            for j in 0..3 {
                let (a, b) = (f[j], f[(j + 1) % 3]);
                *count.entry((a.min(b), a.max(b))).or_insert(0) += 1;
            }
        }
        assert_eq!(count.len(), 30);
        assert!(count.values().all(|&n| n == 2));
    }

    #[test]
    fn every_vertex_in_exactly_five_faces() {
        let t = build_icosahedron();
        for v in 0..12 {
            assert_eq!(t.faces_at_vertex(v).len(), 5);
        }
    }

    #[test]
    fn apex_sees_the_five_cap_faces() {
        // Derived from the fixed labeling: the top cap occupies face
        // indices 0..5 and vertex 0 is corner 0 of each.
        let t = build_icosahedron();
        let mut got = *t.faces_at_vertex(0);
        got.sort_unstable();
        assert_eq!(got, [(0, 0), (1, 0), (2, 0), (3, 0), (4, 0)]);
    }

    #[test]
    fn incidence_map_matches_faces() {
        let t = build_icosahedron();
        let mut total = 0;
        for v in 0..12 {
            for &(f, c) in t.faces_at_vertex(v) {
                assert_eq!(t.face(f)[c], v);
                total += 1;
            }
        }
        assert_eq!(total, 60);
        // converse direction: every (f, c) appears under its vertex
        for (f, triple) in t.faces().iter().enumerate() {
            for (c, &v) in triple.iter().enumerate() {
                assert!(t.faces_at_vertex(v).contains(&(f, c)));
            }
        }
    }

    #[test]
    fn rotation_zero_is_identity() {
        let t = build_icosahedron();
        assert!(t.rotation_about_apex(0).is_identity());
    }

    #[test]
    fn rotation_has_order_five() {
        let t = build_icosahedron();
        let r = t.rotation_about_apex(1);
        let mut acc = r;
        for _ in 0..4 {
            acc = acc.compose(&r);
        }
        assert!(acc.is_identity());
    }

    #[test]
    fn rotation_fixes_exactly_the_two_apexes() {
        let t = build_icosahedron();
        for k in 1..5 {
            assert_eq!(t.rotation_about_apex(k).fixed_points(), vec![0, 11]);
        }
    }

    #[test]
    fn rotations_form_c5() {
        let t = build_icosahedron();
        let rots: Vec<_> = (0..5).map(|k| t.rotation_about_apex(k)).collect();
        for j in 0..5 {
            for k in 0..5 {
                assert_eq!(rots[j].compose(&rots[k]), rots[(j + k) % 5]);
            }
        }
    }

    #[test]
    fn rotations_map_faces_to_faces() {
        let t = build_icosahedron();
        for k in 0..5 {
            let r = t.rotation_about_apex(k);
            for f in t.faces() {
                let image = [r.apply(f[0]), r.apply(f[1]), r.apply(f[2])];
                assert!(t.find_face(image).is_some(), "image {image:?} not a face");
            }
        }
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn rotation_step_out_of_range_panics() {
        build_icosahedron().rotation_about_apex(5);
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn vertex_index_out_of_range_panics() {
        build_icosahedron().faces_at_vertex(12);
    }

    #[test]
    fn rotation_group_has_order_60_and_is_closed() {
        let t = build_icosahedron();
        let rots = t.rotations();
        assert_eq!(rots.len(), 60);
        assert!(rots[0].is_identity());

        let mut images: Vec<[usize; VERTEX_COUNT]> =
            rots.iter().map(|g| std::array::from_fn(|v| g.apply(v))).collect();
        images.sort_unstable();
        images.dedup();
        assert_eq!(images.len(), 60);

        for g in &rots {
            for h in &rots {
                let gh = g.compose(h);
                assert!(
                    images.binary_search(&std::array::from_fn(|v| gh.apply(v))).is_ok(),
                    "composition left the group"
                );
            }
        }
    }

    #[test]
    fn rotations_contain_the_apex_cycle_and_preserve_faces() {
        let t = build_icosahedron();
        let rots = t.rotations();
        for k in 0..5 {
            let apex = t.rotation_about_apex(k);
            assert!(rots.iter().any(|g| *g == apex));
        }
        for g in &rots {
            for f in t.faces() {
                assert!(t.find_face([g.apply(f[0]), g.apply(f[1]), g.apply(f[2])]).is_some());
            }
        }
    }

    #[test]
    #[should_panic(expected = "repeats vertex")]
    fn duplicate_image_panics() {
        VertexPermutation::new([0; VERTEX_COUNT]);
    }
}
