//! The Question-3 scanner: which 20-type combinations admit an ADTS?
//!
//! Choosing 20 of the 24 tile types is the same as excluding 4, so subsets
//! are enumerated as the C(24,4) = 10,626 excluded quadruples in
//! lexicographic order. Each subset builds the restricted model (type
//! column limited to the allowed 20, the usual distinctness and sum
//! constraints, v0 pinned) and asks for one solution under a node budget.
//! Budget exhaustion is reported as undecided: the scan is explicitly
//! best-effort, not a completed census.

use crate::model::{build_adts_model, verify_adts, ModelOptions, Solution};
use crate::engine::Termination;
use crate::tiles::{tile_table, TYPE_COUNT};
use crate::topology::build_icosahedron;
use itertools::Itertools;

/// C(24,4): the number of 20-type combinations.
pub const COMBINATION_COUNT: usize = 10_626;

/// All excluded quadruples over type ids 1..=24, lexicographically.
pub fn excluded_quadruples() -> Vec<[u32; 4]> {
    (1..=TYPE_COUNT as u32)
        .combinations(4)
        .map(|c| [c[0], c[1], c[2], c[3]])
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanVerdict {
    Sat,
    Unsat,
    Undecided,
}

impl std::fmt::Display for ScanVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ScanVerdict::Sat => "SAT",
            ScanVerdict::Unsat => "UNSAT",
            ScanVerdict::Undecided => "UNDECIDED",
        })
    }
}

/// Verdict for one combination, identified by its index in the
/// lexicographic enumeration of excluded quadruples.
#[derive(Debug, Clone)]
pub struct ScanOutcome {
    pub index: usize,
    pub excluded: [u32; 4],
    pub verdict: ScanVerdict,
    pub witness: Option<Box<Solution>>,
    pub nodes: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ScanSummary {
    pub scanned: usize,
    pub sat: usize,
    pub unsat: usize,
    pub undecided: usize,
}

/// Scans combination indices `lo..hi`, reporting each outcome to the sink.
/// SAT witnesses are verified before being reported.
pub fn scan_combinations(
    lo: usize,
    hi: usize,
    node_budget: u64,
    mut on_outcome: impl FnMut(ScanOutcome),
) -> ScanSummary {
    assert!(lo <= hi && hi <= COMBINATION_COUNT, "bad combination range");
    assert!(node_budget >= 1, "scan needs a positive budget");
    let topology = build_icosahedron();
    let tiles = tile_table();
    let quadruples = excluded_quadruples();

    let mut summary = ScanSummary::default();
    for (offset, &excluded) in quadruples[lo..hi].iter().enumerate() {
        let allowed: Vec<u32> =
            (1..=TYPE_COUNT as u32).filter(|t| !excluded.contains(t)).collect();
        let opts = ModelOptions { allowed_types: Some(allowed), ..ModelOptions::default() };
        let mut model =
            build_adts_model(&topology, &tiles, &opts).expect("complement of 4 is 20 valid types");
        let (solution, stats, termination) = model.solve_first(node_budget);
        let (verdict, witness) = match (solution, termination) {
            (Some(s), _) => {
                debug_assert!(verify_adts(&topology, &tiles, &s).is_empty());
                (ScanVerdict::Sat, Some(Box::new(s)))
            }
            (None, Termination::Completed) => (ScanVerdict::Unsat, None),
            (None, Termination::BudgetExhausted) => (ScanVerdict::Undecided, None),
        };
        summary.scanned += 1;
        match verdict {
            ScanVerdict::Sat => summary.sat += 1,
            ScanVerdict::Unsat => summary.unsat += 1,
            ScanVerdict::Undecided => summary.undecided += 1,
        }
        on_outcome(ScanOutcome { index: lo + offset, excluded, verdict, witness, nodes: stats.nodes });
    }
    summary
}
