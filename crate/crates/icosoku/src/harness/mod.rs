//! Sweep and scan drivers: permutation rank/unrank with C5 orbit
//! representatives, a checkpointed parallel sweep over arrangements
//! (Question 2), and a best-effort scan over 20-type combinations
//! (Question 3).

pub mod checkpoint;
pub mod rank;
pub mod scan;
pub mod sweep;
