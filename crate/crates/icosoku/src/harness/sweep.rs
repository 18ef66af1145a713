//! The Question-2 sweep: for every C5-representative arrangement of
//! {2..12} on v1..v11 (v0 = 1), decide whether an ADTS exists.
//!
//! Work is partitioned statically: the requested rank range is split into
//! contiguous per-worker subranges, and each worker walks the uncovered
//! gaps of its subrange, solving one fixed-assignment model per
//! representative. Workers stream flush messages to a single aggregator
//! that owns the checkpoint, so the file always advances atomically.
//!
//! A rank's verdict is one of: SAT, counterexample (proven no ADTS), or
//! undecided (node budget exhausted even after one retry at
//! `retry_budget_factor` times the budget). Undecided ranks are punched out
//! of the flushed coverage, so a later run revisits them.

use crate::harness::checkpoint::{CheckpointError, RangeRecord, SweepCheckpoint};
use crate::harness::rank::{
    is_c5_representative, perm_unrank, vertex_values_of, ARRANGEMENT_COUNT,
};
use crate::model::{build_adts_model, rotate_solution, verify_adts, ModelOptions, Solution};
use crate::tiles::{tile_table, TileTable};
use crate::topology::{build_icosahedron, Topology, VertexPermutation};
use crate::engine::Termination;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::mpsc;
use thiserror::Error;

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub lo: u64,
    pub hi: u64,
    pub workers: usize,
    pub checkpoint_path: Option<PathBuf>,
    /// Per-solve node budget; exhausting it triggers one retry.
    pub node_budget: u64,
    pub retry_budget_factor: u64,
    /// Checkpoint flush cadence, in representatives per worker.
    pub flush_interval: u64,
    /// Test hook: stop gracefully once this many representatives have been
    /// decided across all workers, simulating an interrupted run.
    pub abort_after: Option<u64>,
}

impl SweepConfig {
    pub fn new(lo: u64, hi: u64) -> SweepConfig {
        SweepConfig {
            lo,
            hi,
            workers: 1,
            checkpoint_path: None,
            node_budget: 10_000_000,
            retry_budget_factor: 100,
            flush_interval: 10_000,
            abort_after: None,
        }
    }
}

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("sweep range must satisfy lo <= hi <= {ARRANGEMENT_COUNT}")]
    BadRange,
    #[error("sweep needs at least one worker")]
    NoWorkers,
    #[error(transparent)]
    Checkpoint(#[from] CheckpointError),
}

/// Sweep outcome. `processed`, `counterexamples` and `complete` are
/// cumulative over the requested range (checkpoint-backed and therefore
/// stable across interruptions); the remaining counters describe this run
/// only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub processed: u64,
    pub counterexamples: Vec<u64>,
    pub complete: bool,
    pub newly_processed: u64,
    pub sat: u64,
    pub undecided: Vec<u64>,
    pub nodes: u64,
    pub backtracks: u64,
}

#[derive(Debug)]
enum RankVerdict {
    Sat,
    NoAdts,
    Undecided,
}

/// Decides one arrangement, retrying once at a larger budget on exhaustion.
/// Returns the verdict plus total nodes and backtracks spent.
fn decide(
    topology: &Topology,
    tiles: &TileTable,
    vertex_values: [u32; 12],
    node_budget: u64,
    retry_budget_factor: u64,
) -> (RankVerdict, u64, u64) {
    let opts = ModelOptions { fixed_vertex_values: Some(vertex_values), ..ModelOptions::default() };
    let mut nodes = 0;
    let mut backtracks = 0;
    for budget in [node_budget, node_budget.saturating_mul(retry_budget_factor)] {
        let mut model =
            build_adts_model(topology, tiles, &opts).expect("a permutation is a valid option");
        let (solution, stats, termination) = model.solve_first(budget.max(1));
        nodes += stats.nodes;
        backtracks += stats.backtracks;
        match (solution, termination) {
            (Some(_), _) => return (RankVerdict::Sat, nodes, backtracks),
            (None, Termination::Completed) => return (RankVerdict::NoAdts, nodes, backtracks),
            (None, Termination::BudgetExhausted) => {}
        }
    }
    (RankVerdict::Undecided, nodes, backtracks)
}

/// Decides one full vertex permutation by racing its 60 rotated framings at
/// escalating node budgets. Feasibility is rotation-invariant, so any
/// framing's verdict decides the original; rare framings cost millions of
/// nodes under the fixed search heuristic, but some framing almost always
/// falls within a few thousand, which keeps the worst case flat. A found
/// witness is rotated back onto the requested permutation and re-verified.
/// The ladder tops out at `node_budget * retry_budget_factor` per framing.
fn decide_sample(
    topology: &Topology,
    tiles: &TileTable,
    rotations: &[VertexPermutation],
    vertex_values: [u32; 12],
    node_budget: u64,
    retry_budget_factor: u64,
) -> (RankVerdict, u64, u64) {
    let cap = node_budget.saturating_mul(retry_budget_factor).max(1);
    let mut nodes = 0;
    let mut backtracks = 0;
    let mut budget = 2_000u64.min(cap);
    loop {
        for g in rotations {
            let framed: [u32; 12] = std::array::from_fn(|v| vertex_values[g.apply(v)]);
            let opts =
                ModelOptions { fixed_vertex_values: Some(framed), ..ModelOptions::default() };
            let mut model = build_adts_model(topology, tiles, &opts)
                .expect("a permutation is a valid option");
            let (solution, stats, termination) = model.solve_first(budget);
            nodes += stats.nodes;
            backtracks += stats.backtracks;
            match (solution, termination) {
                (Some(found), _) => {
                    let back = rotate_solution(topology, g, &found);
                    debug_assert_eq!(back.vertices, vertex_values);
                    debug_assert!(verify_adts(topology, tiles, &back).is_empty());
                    return (RankVerdict::Sat, nodes, backtracks);
                }
                (None, Termination::Completed) => return (RankVerdict::NoAdts, nodes, backtracks),
                (None, Termination::BudgetExhausted) => {}
            }
        }
        if budget >= cap {
            return (RankVerdict::Undecided, nodes, backtracks);
        }
        budget = budget.saturating_mul(10).min(cap);
    }
}

struct Flush {
    record: RangeRecord,
    sat: u64,
    undecided: Vec<u64>,
    nodes: u64,
    backtracks: u64,
}

/// One worker's pass over the uncovered gaps of its subrange. Emits
/// coverage records split around undecided ranks so flushed ranges contain
/// only decided representatives.
fn run_worker(
    gaps: Vec<(u64, u64)>,
    config: &SweepConfig,
    decided_global: &AtomicU64,
    stop: &AtomicBool,
    tx: &mpsc::Sender<Flush>,
) {
    let topology = build_icosahedron();
    let tiles = tile_table();

    for (gap_lo, gap_hi) in gaps {
        let mut chunk = Flush {
            record: RangeRecord { lo: gap_lo, hi: gap_lo, processed: 0, counterexamples: Vec::new() },
            sat: 0,
            undecided: Vec::new(),
            nodes: 0,
            backtracks: 0,
        };
        let flush = |chunk: &mut Flush, hi: u64| {
            chunk.record.hi = hi;
            let full = std::mem::replace(
                chunk,
                Flush {
                    record: RangeRecord { lo: hi, hi, processed: 0, counterexamples: Vec::new() },
                    sat: 0,
                    undecided: Vec::new(),
                    nodes: 0,
                    backtracks: 0,
                },
            );
            if full.record.lo < full.record.hi || !full.undecided.is_empty() {
                let _ = tx.send(full);
            }
        };

        for rank in gap_lo..gap_hi {
            if stop.load(Ordering::Relaxed) {
                flush(&mut chunk, rank);
                return;
            }
            let arr = perm_unrank(rank);
            if is_c5_representative(&arr) {
                if let Some(limit) = config.abort_after {
                    if decided_global.fetch_add(1, Ordering::Relaxed) >= limit {
                        stop.store(true, Ordering::Relaxed);
                        flush(&mut chunk, rank);
                        return;
                    }
                }
                let (verdict, nodes, backtracks) = decide(
                    &topology,
                    &tiles,
                    vertex_values_of(&arr),
                    config.node_budget,
                    config.retry_budget_factor,
                );
                chunk.nodes += nodes;
                chunk.backtracks += backtracks;
                match verdict {
                    RankVerdict::Sat => {
                        chunk.sat += 1;
                        chunk.record.processed += 1;
                    }
                    RankVerdict::NoAdts => {
                        chunk.record.counterexamples.push(rank);
                        chunk.record.processed += 1;
                    }
                    RankVerdict::Undecided => {
                        // Close coverage before this rank and restart after
                        // it, leaving the rank uncovered for a later run.
                        chunk.undecided.push(rank);
                        flush(&mut chunk, rank);
                        chunk.record.lo = rank + 1;
                        chunk.record.hi = rank + 1;
                    }
                }
                if chunk.record.processed >= config.flush_interval {
                    flush(&mut chunk, rank + 1);
                }
            }
        }
        flush(&mut chunk, gap_hi);
    }
}

/// Runs the sweep described by `config`, resuming from (and extending) the
/// checkpoint when one is configured.
pub fn sweep(config: &SweepConfig) -> Result<SweepReport, SweepError> {
    if config.lo > config.hi || config.hi > ARRANGEMENT_COUNT {
        return Err(SweepError::BadRange);
    }
    if config.workers == 0 {
        return Err(SweepError::NoWorkers);
    }

    let mut checkpoint = match &config.checkpoint_path {
        Some(path) => SweepCheckpoint::load_or_new(path, ARRANGEMENT_COUNT)?,
        None => SweepCheckpoint::new(ARRANGEMENT_COUNT),
    };

    // Static contiguous partition; each worker handles the uncovered gaps
    // of its own subrange.
    let span = config.hi - config.lo;
    let workers = config.workers.min(span.max(1) as usize).max(1);
    let per_worker = span.div_ceil(workers as u64);
    let mut partitions: Vec<Vec<(u64, u64)>> = Vec::new();
    for w in 0..workers as u64 {
        let sub_lo = config.lo + w * per_worker;
        let sub_hi = (sub_lo + per_worker).min(config.hi);
        if sub_lo >= sub_hi {
            break;
        }
        partitions.push(checkpoint.gaps_in(sub_lo, sub_hi));
    }

    let decided_global = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    let (tx, rx) = mpsc::channel::<Flush>();

    let mut newly_processed = 0;
    let mut sat = 0;
    let mut undecided = Vec::new();
    let mut nodes = 0;
    let mut backtracks = 0;
    let mut save_error: Option<CheckpointError> = None;

    std::thread::scope(|scope| {
        for gaps in partitions {
            let tx = tx.clone();
            let config = &*config;
            let decided_global = &decided_global;
            let stop = &stop;
            scope.spawn(move || run_worker(gaps, config, decided_global, stop, &tx));
        }
        drop(tx);

        for flush in rx {
            newly_processed += flush.record.processed;
            sat += flush.sat;
            undecided.extend(flush.undecided);
            nodes += flush.nodes;
            backtracks += flush.backtracks;
            if flush.record.lo < flush.record.hi {
                checkpoint
                    .insert(flush.record)
                    .expect("workers only flush disjoint uncovered ranges");
                if let Some(path) = &config.checkpoint_path {
                    if save_error.is_none() {
                        if let Err(e) = checkpoint.save(path) {
                            save_error = Some(e);
                            stop.store(true, Ordering::Relaxed);
                        }
                    }
                }
            }
        }
    });

    if let Some(e) = save_error {
        return Err(SweepError::Checkpoint(e));
    }

    undecided.sort_unstable();
    Ok(SweepReport {
        processed: checkpoint.processed_in(config.lo, config.hi),
        counterexamples: checkpoint.counterexamples_in(config.lo, config.hi),
        complete: checkpoint.is_covered(config.lo, config.hi),
        newly_processed,
        sat,
        undecided,
        nodes,
        backtracks,
    })
}

#[derive(Debug, Clone)]
pub struct SampleConfig {
    pub count: usize,
    pub seed: u64,
    pub workers: usize,
    pub node_budget: u64,
    pub retry_budget_factor: u64,
}

impl SampleConfig {
    pub fn new(count: usize, seed: u64) -> SampleConfig {
        SampleConfig {
            count,
            seed,
            workers: 1,
            node_budget: 10_000_000,
            retry_budget_factor: 100,
        }
    }
}

/// Outcome of a random-permutation sample; vertex assignments are full
/// permutations of 1..=12 (v0 is not pinned here).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleReport {
    pub sampled: usize,
    pub sat: usize,
    pub counterexamples: Vec<[u32; 12]>,
    pub undecided: Vec<[u32; 12]>,
    pub nodes: u64,
    pub backtracks: u64,
}

/// Decides `count` seed-controlled uniformly random vertex permutations,
/// each up to rotation (see [`decide_sample`]). The permutation stream
/// depends only on the seed, and each verdict only on its permutation and
/// budget, so reports are reproducible for any worker count.
pub fn random_sample(config: &SampleConfig) -> SampleReport {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut perms: Vec<[u32; 12]> = Vec::with_capacity(config.count);
    for _ in 0..config.count {
        let mut p: [u32; 12] = std::array::from_fn(|i| i as u32 + 1);
        p.shuffle(&mut rng);
        perms.push(p);
    }

    let workers = config.workers.clamp(1, perms.len().max(1));
    let chunk = perms.len().div_ceil(workers);
    let mut report = SampleReport {
        sampled: perms.len(),
        sat: 0,
        counterexamples: Vec::new(),
        undecided: Vec::new(),
        nodes: 0,
        backtracks: 0,
    };

    let partials: Vec<SampleReport> = std::thread::scope(|scope| {
        let handles: Vec<_> = perms
            .chunks(chunk.max(1))
            .map(|slice| {
                scope.spawn(move || {
                    let topology = build_icosahedron();
                    let tiles = tile_table();
                    let rotations = topology.rotations();
                    let mut partial = SampleReport {
                        sampled: slice.len(),
                        sat: 0,
                        counterexamples: Vec::new(),
                        undecided: Vec::new(),
                        nodes: 0,
                        backtracks: 0,
                    };
                    for &perm in slice {
                        let (verdict, nodes, backtracks) = decide_sample(
                            &topology,
                            &tiles,
                            &rotations,
                            perm,
                            config.node_budget,
                            config.retry_budget_factor,
                        );
                        partial.nodes += nodes;
                        partial.backtracks += backtracks;
                        match verdict {
                            RankVerdict::Sat => partial.sat += 1,
                            RankVerdict::NoAdts => partial.counterexamples.push(perm),
                            RankVerdict::Undecided => partial.undecided.push(perm),
                        }
                    }
                    partial
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("sample worker panicked")).collect()
    });

    for partial in partials {
        report.sat += partial.sat;
        report.counterexamples.extend(partial.counterexamples);
        report.undecided.extend(partial.undecided);
        report.nodes += partial.nodes;
        report.backtracks += partial.backtracks;
    }
    report
}

/// Convenience wrapper for code that just wants one arrangement solved.
pub fn solve_arrangement(arr: &[u32; 11], node_budget: u64) -> Option<Solution> {
    let topology = build_icosahedron();
    let tiles = tile_table();
    let opts = ModelOptions {
        fixed_vertex_values: Some(vertex_values_of(arr)),
        ..ModelOptions::default()
    };
    let mut model = build_adts_model(&topology, &tiles, &opts).expect("valid arrangement");
    let (solution, _, _) = model.solve_first(node_budget);
    solution
}
