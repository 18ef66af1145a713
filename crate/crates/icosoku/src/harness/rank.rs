//! Ranking and unranking of vertex-value arrangements.
//!
//! With v0 pinned to 1, a sweep case is an arrangement of the values 2..=12
//! on v1..v11. Arrangements are indexed 0..11! in lexicographic order via
//! the factorial number system. The C5 rotation about the apex partitions
//! the arrangements into orbits of size 5; the sweep processes one canonical
//! representative per orbit.

use crate::topology::{Topology, VERTEX_COUNT};

/// Number of arrangement slots: v1..v11.
pub const SLOT_COUNT: usize = VERTEX_COUNT - 1;

/// 11!, the number of arrangements of {2..12} on v1..v11.
pub const ARRANGEMENT_COUNT: u64 = 39_916_800;

/// 11!/5: each C5 orbit contributes exactly one representative.
pub const REPRESENTATIVE_COUNT: u64 = ARRANGEMENT_COUNT / 5;

/// 0!..=11!.
const FACTORIAL: [u64; 12] = {
    let mut f = [1u64; 12];
    let mut i = 1;
    while i < 12 {
        f[i] = f[i - 1] * i as u64;
        i += 1;
    }
    f
};

/// Arrangement `rank` in lexicographic order: element i is the value at
/// vertex i+1.
pub fn perm_unrank(rank: u64) -> [u32; SLOT_COUNT] {
    assert!(rank < ARRANGEMENT_COUNT, "rank {rank} out of range");
    let mut pool: Vec<u32> = (2..=VERTEX_COUNT as u32).collect();
    let mut rest = rank;
    let mut out = [0u32; SLOT_COUNT];
    for (i, slot) in out.iter_mut().enumerate() {
        let place = FACTORIAL[SLOT_COUNT - 1 - i];
        let digit = (rest / place) as usize;
        rest %= place;
        *slot = pool.remove(digit);
    }
    out
}

/// Inverse of [`perm_unrank`].
pub fn perm_rank(arr: &[u32; SLOT_COUNT]) -> u64 {
    let mut pool: Vec<u32> = (2..=VERTEX_COUNT as u32).collect();
    let mut rank = 0;
    for (i, &value) in arr.iter().enumerate() {
        let digit = pool
            .iter()
            .position(|&v| v == value)
            .expect("arrangement must be a permutation of 2..=12");
        rank += digit as u64 * FACTORIAL[SLOT_COUNT - 1 - i];
        pool.remove(digit);
    }
    assert!(pool.is_empty());
    rank
}

/// The canonical-orbit test: the value at v1 is the minimum of the upper
/// ring v1..v5. Exactly one of an arrangement's 5 apex rotations passes.
pub fn is_c5_representative(arr: &[u32; SLOT_COUNT]) -> bool {
    let head = arr[0];
    arr[..5].iter().all(|&v| head <= v)
}

/// Applies the order-5 apex rotation `k` to an arrangement: the value at
/// vertex v moves to vertex rot(v).
pub fn rotate_arrangement(
    topology: &Topology,
    arr: &[u32; SLOT_COUNT],
    k: usize,
) -> [u32; SLOT_COUNT] {
    let rot = topology.rotation_about_apex(k);
    let mut out = [0u32; SLOT_COUNT];
    for v in 1..VERTEX_COUNT {
        out[rot.apply(v) - 1] = arr[v - 1];
    }
    out
}

/// Full 12-slot vertex assignment for a model build: v0 = 1, then `arr`.
pub fn vertex_values_of(arr: &[u32; SLOT_COUNT]) -> [u32; VERTEX_COUNT] {
    let mut out = [1u32; VERTEX_COUNT];
    out[1..].copy_from_slice(arr);
    out
}

/// Count of representative ranks in `lo..hi` by direct enumeration.
pub fn count_representatives_in(lo: u64, hi: u64) -> u64 {
    (lo..hi).filter(|&r| is_c5_representative(&perm_unrank(r))).count() as u64
}
