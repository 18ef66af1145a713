//! Icosoku "all different triangular solution" (ADTS) tooling: a
//! finite-domain constraint engine, the icosahedron/tile combinatorics, the
//! ADTS model and an independent verifier, plus a resumable sweep harness
//! over vertex permutations and a tile-combination scanner.

pub mod cli;
pub mod engine;
pub mod harness;
pub mod model;
pub mod tiles;
pub mod topology;
