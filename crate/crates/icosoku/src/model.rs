//! The ADTS model and its independent verifier.
//!
//! An Icosoku position assigns the values 1..12 to the vertices and a dotted
//! triangular tile to each face. A position is an "all different triangular
//! solution" (ADTS) when every vertex value equals the sum of the five tile
//! corners meeting it and the 20 placed tile types are pairwise distinct.
//!
//! The constraint model uses 92 variables (12 vertex values plus a 20×4 face
//! matrix of three corners and one type id) and, with default options, 35
//! constraints: one allDifferent over the vertices, one over the type column,
//! 20 table constraints tying each face's corners to its type, 12 sums tying
//! each vertex to its incident corners, and one assignment pinning v0 = 1 to
//! break value symmetry.

use crate::engine::{Model, SearchStats, Termination, Tuples, VarId};
use crate::tiles::{canonical_tile, TileTable, DOT_VALUES, TYPE_COUNT};
use crate::topology::{Topology, VertexPermutation, FACE_COUNT, VERTEX_COUNT};
use serde::{Deserialize, Serialize};
use std::sync::Arc;
use thiserror::Error;

/// Σ 1..12; every valid position distributes exactly this many dots.
pub const VERTEX_VALUE_SUM: u32 = 78;

/// Model-shape options: the default builds the plain Question-1 model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelOptions {
    /// Pin v0 = 1 (symmetry breaking). Ignored when `fixed_vertex_values`
    /// already fixes every vertex.
    pub fix_v0: bool,
    /// Fix the full vertex assignment (the sweep's per-permutation mode).
    pub fixed_vertex_values: Option<[u32; VERTEX_COUNT]>,
    /// Restrict the type column to exactly 20 of the 24 type ids
    /// (the combination scanner's mode).
    pub allowed_types: Option<Vec<u32>>,
}

impl Default for ModelOptions {
    fn default() -> Self {
        ModelOptions { fix_v0: true, fixed_vertex_values: None, allowed_types: None }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("fixed vertex values must be a permutation of 1..=12")]
    BadFixedVertices,
    #[error("allowed types must be 20 distinct ids in 1..=24")]
    BadAllowedTypes,
}

/// The assembled constraint model plus the variable layout needed to read
/// solutions back out.
#[derive(Debug, Clone)]
pub struct AdtsModel {
    model: Model,
    vertex_vars: [VarId; VERTEX_COUNT],
    corner_vars: [[VarId; 3]; FACE_COUNT],
    type_vars: [VarId; FACE_COUNT],
}

/// One face of a solved position: corner dot counts in stored-face order
/// plus the tile type id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceAssignment {
    pub corners: [u32; 3],
    #[serde(rename = "type")]
    pub type_id: u32,
}

/// Search counters carried with a serialized solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveStats {
    pub nodes: u64,
    pub backtracks: u64,
    pub millis: u64,
}

/// A complete position in the interchange format: `vertices`, `faces`
/// (each `corners` then `type`), `stats` (`nodes`, `backtracks`, `millis`).
/// Field order is part of the format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub vertices: [u32; VERTEX_COUNT],
    pub faces: [FaceAssignment; FACE_COUNT],
    pub stats: SolveStats,
}

/// One failed verifier check, located as precisely as the check allows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    VerticesNotPermutation,
    CornerOutOfRange { face: usize, corner: usize, value: u32 },
    TypeOutOfRange { face: usize, value: u32 },
    VertexSumMismatch { vertex: usize, vertex_value: u32, corner_sum: u32 },
    FaceTypeMismatch { face: usize, canonical: u32, recorded: u32 },
    DuplicateFaceTypes { type_id: u32 },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::VerticesNotPermutation => {
                write!(f, "vertex values are not a permutation of 1..=12")
            }
            Violation::CornerOutOfRange { face, corner, value } => {
                write!(f, "face {face} corner {corner} value {value} outside 0..=3")
            }
            Violation::TypeOutOfRange { face, value } => {
                write!(f, "face {face} type {value} outside 1..=24")
            }
            Violation::VertexSumMismatch { vertex, vertex_value, corner_sum } => {
                write!(f, "vertex {vertex} value {vertex_value} but incident corners sum to {corner_sum}")
            }
            Violation::FaceTypeMismatch { face, canonical, recorded } => {
                write!(f, "face {face} corners canonicalize to type {canonical}, recorded {recorded}")
            }
            Violation::DuplicateFaceTypes { type_id } => {
                write!(f, "type {type_id} placed on more than one face")
            }
        }
    }
}

fn validate(opts: &ModelOptions) -> Result<(), ModelError> {
    if let Some(values) = &opts.fixed_vertex_values {
        let mut seen = [false; VERTEX_COUNT + 1];
        for &v in values {
            if v < 1 || v > VERTEX_COUNT as u32 || seen[v as usize] {
                return Err(ModelError::BadFixedVertices);
            }
            seen[v as usize] = true;
        }
    }
    if let Some(types) = &opts.allowed_types {
        if types.len() != FACE_COUNT {
            return Err(ModelError::BadAllowedTypes);
        }
        let mut seen = [false; TYPE_COUNT + 1];
        for &t in types {
            if t < 1 || t > TYPE_COUNT as u32 || seen[t as usize] {
                return Err(ModelError::BadAllowedTypes);
            }
            seen[t as usize] = true;
        }
    }
    Ok(())
}

/// Builds the ADTS model. Constraints are posted in a fixed order: vertex
/// allDifferent, type allDifferent, 20 tables, 12 vertex sums, then the
/// assignment(s) — v0 = 1 under default options, or all 12 vertices when
/// `fixed_vertex_values` is supplied (which supersedes `fix_v0`).
pub fn build_adts_model(
    topology: &Topology,
    tiles: &TileTable,
    opts: &ModelOptions,
) -> Result<AdtsModel, ModelError> {
    validate(opts)?;
    let mut model = Model::new();

    let vertex_vars: [VarId; VERTEX_COUNT] =
        std::array::from_fn(|_| model.new_var(1, VERTEX_COUNT as u32));

    let mut corner_vars = [[VarId(0); 3]; FACE_COUNT];
    let mut type_vars = [VarId(0); FACE_COUNT];
    for f in 0..FACE_COUNT {
        corner_vars[f] = std::array::from_fn(|_| model.new_var(0, DOT_VALUES - 1));
        type_vars[f] = match &opts.allowed_types {
            Some(types) => model.new_var_from_values(types),
            None => model.new_var(1, TYPE_COUNT as u32),
        };
    }

    model.post_all_different(&vertex_vars);
    model.post_all_different(&type_vars);

    let tuples = Arc::new(Tuples::new(
        4,
        tiles.rows().iter().map(|r| vec![r.corners[0], r.corners[1], r.corners[2], r.type_id]),
    ));
    for f in 0..FACE_COUNT {
        let scope = [corner_vars[f][0], corner_vars[f][1], corner_vars[f][2], type_vars[f]];
        model.post_table(&scope, Arc::clone(&tuples));
    }

    for v in 0..VERTEX_COUNT {
        let scope: Vec<VarId> = topology
            .faces_at_vertex(v)
            .iter()
            .map(|&(face, corner)| corner_vars[face][corner])
            .collect();
        model.post_linear_sum(&scope, &[1; 5], vertex_vars[v]);
    }

    match &opts.fixed_vertex_values {
        Some(values) => {
            for (v, &value) in values.iter().enumerate() {
                model.post_assign(vertex_vars[v], value);
            }
        }
        None => {
            if opts.fix_v0 {
                model.post_assign(vertex_vars[0], 1);
            }
        }
    }

    Ok(AdtsModel { model, vertex_vars, corner_vars, type_vars })
}

impl AdtsModel {
    pub fn var_count(&self) -> usize {
        self.model.var_count()
    }

    pub fn constraint_count(&self) -> usize {
        self.model.constraint_count()
    }

    fn extract(&self, values: &[u32], stats: SearchStats) -> Solution {
        let vertices = self.vertex_vars.map(|v| values[v.0]);
        let faces = std::array::from_fn(|f| FaceAssignment {
            corners: self.corner_vars[f].map(|v| values[v.0]),
            type_id: values[self.type_vars[f].0],
        });
        Solution { vertices, faces, stats: stats_of(stats) }
    }

    /// First solution under the engine's deterministic search order.
    pub fn solve_first(&mut self, budget: u64) -> (Option<Solution>, SearchStats, Termination) {
        let (assignment, stats, termination) = self.model.solve_first(budget);
        (assignment.map(|values| self.extract(&values, stats)), stats, termination)
    }
}

fn stats_of(stats: SearchStats) -> SolveStats {
    SolveStats {
        nodes: stats.nodes,
        backtracks: stats.backtracks,
        millis: stats.elapsed.as_millis() as u64,
    }
}

/// Checks a solution against the ADTS definition without touching the
/// engine: (a) the vertex values are a permutation of 1..=12, (b) each
/// vertex value equals the sum of its five incident corners, (c) each face's
/// recorded type is the canonical type of its corner triple, (d) the 20
/// types are pairwise distinct. Returns every violation found.
pub fn verify_adts(topology: &Topology, tiles: &TileTable, s: &Solution) -> Vec<Violation> {
    let mut violations = Vec::new();

    let mut seen = [false; VERTEX_COUNT + 1];
    let mut permutation = true;
    for &v in &s.vertices {
        if v < 1 || v > VERTEX_COUNT as u32 || seen[v as usize] {
            permutation = false;
            break;
        }
        seen[v as usize] = true;
    }
    if !permutation {
        violations.push(Violation::VerticesNotPermutation);
    }

    let mut structural = true;
    for (f, face) in s.faces.iter().enumerate() {
        for (c, &value) in face.corners.iter().enumerate() {
            if value >= DOT_VALUES {
                violations.push(Violation::CornerOutOfRange { face: f, corner: c, value });
                structural = false;
            }
        }
        if face.type_id < 1 || face.type_id > TYPE_COUNT as u32 {
            violations.push(Violation::TypeOutOfRange { face: f, value: face.type_id });
            structural = false;
        }
    }

    for v in 0..VERTEX_COUNT {
        let corner_sum: u32 = topology
            .faces_at_vertex(v)
            .iter()
            .map(|&(face, corner)| s.faces[face].corners[corner])
            .sum();
        if corner_sum != s.vertices[v] {
            violations.push(Violation::VertexSumMismatch {
                vertex: v,
                vertex_value: s.vertices[v],
                corner_sum,
            });
        }
    }

    if structural {
        for (f, face) in s.faces.iter().enumerate() {
            let [a, b, c] = face.corners;
            let (_, canonical) = canonical_tile(a, b, c);
            debug_assert_eq!(canonical, tiles.type_of(face.corners));
            if canonical != face.type_id {
                violations.push(Violation::FaceTypeMismatch {
                    face: f,
                    canonical,
                    recorded: face.type_id,
                });
            }
        }
        let mut placed = [0u8; TYPE_COUNT + 1];
        for face in &s.faces {
            placed[face.type_id as usize] += 1;
        }
        for (type_id, &count) in placed.iter().enumerate() {
            if count > 1 {
                violations.push(Violation::DuplicateFaceTypes { type_id: type_id as u32 });
            }
        }
    }

    violations
}

/// Sum of all 60 corner values; 78 for every ADTS since each corner feeds
/// exactly one vertex sum.
pub fn total_dots(s: &Solution) -> u32 {
    s.faces.iter().flat_map(|f| f.corners).sum()
}

/// Maps a solution through a vertex permutation that is a symmetry of the
/// topology (faces map onto faces). Corner dot counts travel with their
/// vertices; types are rotation classes, so they travel unchanged.
pub fn rotate_solution(topology: &Topology, rot: &VertexPermutation, s: &Solution) -> Solution {
    let mut vertices = [0u32; VERTEX_COUNT];
    for v in 0..VERTEX_COUNT {
        vertices[rot.apply(v)] = s.vertices[v];
    }
    let mut faces = s.faces;
    for f in 0..FACE_COUNT {
        let triple = topology.face(f);
        let image = [rot.apply(triple[0]), rot.apply(triple[1]), rot.apply(triple[2])];
        let (g, shift) = topology
            .find_face(image)
            .expect("permutation must map faces onto faces");
        faces[g] = FaceAssignment {
            corners: std::array::from_fn(|j| s.faces[f].corners[(j + shift) % 3]),
            type_id: s.faces[f].type_id,
        };
    }
    Solution { vertices, faces, stats: s.stats }
}
