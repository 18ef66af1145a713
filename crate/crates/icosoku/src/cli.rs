//! The command-line surface: `solve`, `verify`, `sweep`, `scan`, `tiles`.
//!
//! Exit codes are a stable contract:
//! 0 success, 1 internal error, 2 flag error, 3 proven infeasible,
//! 4 node budget exhausted, 5 parse error, 6 verification failure.

use crate::harness::rank::ARRANGEMENT_COUNT;
use crate::harness::scan::{scan_combinations, ScanVerdict, COMBINATION_COUNT};
use crate::harness::sweep::{random_sample, sweep, SampleConfig, SweepConfig, SweepError};
use crate::harness::checkpoint::CheckpointError;
use crate::model::{build_adts_model, verify_adts, ModelOptions, Solution};
use crate::tiles::tile_table;
use crate::topology::build_icosahedron;
use crate::engine::Termination;
use clap::{Parser, Subcommand};
use std::ffi::OsString;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_FLAG: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;
pub const EXIT_PARSE: i32 = 5;
pub const EXIT_VERIFY: i32 = 6;

#[derive(Parser)]
#[command(
    name = "icosoku",
    about = "Icosoku all-different-tiles solver, verifier, and sweep harness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find one all-different solution and write it as JSON.
    Solve {
        /// Search node budget.
        #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
        /// Output path for the solution JSON.
        #[arg(long, default_value = "solution.json")]
        out: PathBuf,
        /// Fix all 12 vertex values, e.g. 1,2,3,4,5,6,7,8,9,10,11,12.
        #[arg(long, value_name = "csv")]
        fix_vertices: Option<String>,
        /// Restrict tiles to these 20 type ids.
        #[arg(long, value_name = "csv")]
        types: Option<String>,
    },
    /// Check a solution JSON file against the puzzle rules.
    Verify {
        path: PathBuf,
    },
    /// Decide representative vertex arrangements exhaustively (resumable),
    /// or a seeded random sample with --sample.
    Sweep {
        /// Rank range lo:hi (half-open) over the 11! arrangements.
        #[arg(long, value_name = "lo:hi")]
        range: Option<String>,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        workers: u64,
        #[arg(long, default_value = "sweep.checkpoint")]
        checkpoint: PathBuf,
        /// Per-solve node budget.
        #[arg(long, default_value_t = 10_000_000, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
        /// Decide this many random permutations instead of a rank range.
        #[arg(long)]
        sample: Option<usize>,
        /// Seed for --sample.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Try every 20-of-24 type combination (best effort under the budget).
    Scan {
        /// Per-combination node budget.
        #[arg(long, default_value_t = 10_000_000, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
        /// Combination index range lo:hi (half-open) within 0:10626.
        #[arg(long, value_name = "lo:hi")]
        range: Option<String>,
        /// Directory for SAT witness files (combo-<index>.json).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the 64-row corner-triple to type table.
    Tiles,
}

/// Parses and dispatches; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.exit_code() == 0 { EXIT_OK } else { EXIT_FLAG };
        }
    };
    match cli.command {
        Command::Solve { budget, out, fix_vertices, types } => {
            cmd_solve(budget, &out, fix_vertices.as_deref(), types.as_deref())
        }
        Command::Verify { path } => cmd_verify(&path),
        Command::Sweep { range, workers, checkpoint, budget, sample, seed } => {
            cmd_sweep(range.as_deref(), workers as usize, &checkpoint, budget, sample, seed)
        }
        Command::Scan { budget, range, out } => cmd_scan(budget, range.as_deref(), out.as_deref()),
        Command::Tiles => cmd_tiles(),
    }
}

fn parse_range(text: &str, max: u64) -> Result<(u64, u64), String> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| format!("range must look like lo:hi, got {text:?}"))?;
    let lo: u64 = lo.trim().parse().map_err(|_| format!("bad range bound {lo:?}"))?;
    let hi: u64 = hi.trim().parse().map_err(|_| format!("bad range bound {hi:?}"))?;
    if lo > hi || hi > max {
        return Err(format!("range {lo}:{hi} outside 0:{max}"));
    }
    Ok((lo, hi))
}

fn parse_csv(text: &str) -> Result<Vec<u32>, String> {
    text.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| format!("bad integer {:?}", t.trim())))
        .collect()
}

fn cmd_solve(budget: u64, out: &PathBuf, fix_vertices: Option<&str>, types: Option<&str>) -> i32 {
    let mut opts = ModelOptions::default();
    if let Some(text) = fix_vertices {
        let values = match parse_csv(text) {
            Ok(v) => v,
            Err(e) => {
                eprintln!("--fix-vertices: {e}");
                return EXIT_FLAG;
            }
        };
        let values: [u32; 12] = match values.try_into() {
            Ok(a) => a,
            Err(v) => {
                eprintln!("--fix-vertices: expected 12 values, got {}", Vec::len(&v));
                return EXIT_FLAG;
            }
        };
        opts.fixed_vertex_values = Some(values);
    }
    if let Some(text) = types {
        match parse_csv(text) {
            Ok(v) => opts.allowed_types = Some(v),
            Err(e) => {
                eprintln!("--types: {e}");
                return EXIT_FLAG;
            }
        }
    }

    let topology = build_icosahedron();
    let tiles = tile_table();
    let mut model = match build_adts_model(&topology, &tiles, &opts) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("{e}");
            return EXIT_FLAG;
        }
    };

    let (solution, stats, termination) = model.solve_first(budget);
    match solution {
        Some(s) => {
            debug_assert!(verify_adts(&topology, &tiles, &s).is_empty());
            let mut text = match serde_json::to_string_pretty(&s) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("serialize: {e}");
                    return EXIT_INTERNAL;
                }
            };
            text.push('\n');
            if let Err(e) = std::fs::write(out, text) {
                eprintln!("write {}: {e}", out.display());
                return EXIT_INTERNAL;
            }
            println!("nodes backtracks ms");
            println!("{} {} {}", stats.nodes, stats.backtracks, stats.elapsed.as_millis());
            println!("note: node and backtrack counts are engine-specific");
            println!("solution written to {}", out.display());
            EXIT_OK
        }
        None => match termination {
            Termination::Completed => {
                eprintln!("no solution exists for these options");
                EXIT_INFEASIBLE
            }
            Termination::BudgetExhausted => {
                eprintln!("node budget {budget} exhausted before a verdict");
                EXIT_BUDGET
            }
        },
    }
}

fn cmd_verify(path: &PathBuf) -> i32 {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("read {}: {e}", path.display());
            return EXIT_PARSE;
        }
    };
    let solution: Solution = match serde_json::from_str(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("parse {}: {e}", path.display());
            return EXIT_PARSE;
        }
    };
    let violations = verify_adts(&build_icosahedron(), &tile_table(), &solution);
    if violations.is_empty() {
        println!("ok: {} verifies", path.display());
        EXIT_OK
    } else {
        for v in &violations {
            eprintln!("violation: {v}");
        }
        EXIT_VERIFY
    }
}

fn cmd_sweep(
    range: Option<&str>,
    workers: usize,
    checkpoint: &PathBuf,
    budget: u64,
    sample: Option<usize>,
    seed: u64,
) -> i32 {
    if let Some(count) = sample {
        let config = SampleConfig {
            count,
            seed,
            workers,
            node_budget: budget,
            retry_budget_factor: 100,
        };
        let report = random_sample(&config);
        println!("sample {} seed {seed}", report.sampled);
        println!("sat {}", report.sat);
        println!("undecided {}", report.undecided.len());
        if report.counterexamples.is_empty() {
            println!("counterexamples none");
        } else {
            for p in &report.counterexamples {
                let csv: Vec<String> = p.iter().map(u32::to_string).collect();
                println!("counterexample {}", csv.join(","));
            }
        }
        return EXIT_OK;
    }

    let (lo, hi) = match range {
        None => (0, ARRANGEMENT_COUNT),
        Some(text) => match parse_range(text, ARRANGEMENT_COUNT) {
            Ok(r) => r,
            Err(e) => {
                eprintln!("--range: {e}");
                return EXIT_FLAG;
            }
        },
    };
    let mut config = SweepConfig::new(lo, hi);
    config.workers = workers;
    config.checkpoint_path = Some(checkpoint.clone());
    config.node_budget = budget;

    let report = match sweep(&config) {
        Ok(r) => r,
        Err(e @ (SweepError::BadRange | SweepError::NoWorkers)) => {
            eprintln!("{e}");
            return EXIT_FLAG;
        }
        Err(SweepError::Checkpoint(CheckpointError::Io(e))) => {
            eprintln!("checkpoint io: {e}");
            return EXIT_INTERNAL;
        }
        Err(SweepError::Checkpoint(e)) => {
            eprintln!("{e}");
            return EXIT_PARSE;
        }
    };

    println!("sweep range {lo}:{hi}");
    println!("processed {}", report.processed);
    println!("newly processed {}", report.newly_processed);
    println!("sat this run {}", report.sat);
    if report.undecided.is_empty() {
        println!("undecided none");
    } else {
        let csv: Vec<String> = report.undecided.iter().map(u64::to_string).collect();
        println!("undecided {}", csv.join(","));
    }
    if report.counterexamples.is_empty() {
        println!("counterexamples none");
    } else {
        let csv: Vec<String> = report.counterexamples.iter().map(u64::to_string).collect();
        println!("counterexamples {}", csv.join(","));
    }
    let status = if report.complete && report.newly_processed == 0 {
        "already complete"
    } else if report.complete {
        "complete"
    } else {
        "incomplete"
    };
    println!("status {status}");
    EXIT_OK
}

fn cmd_scan(budget: u64, range: Option<&str>, out: Option<&std::path::Path>) -> i32 {
    let (lo, hi) = match range {
        None => (0, COMBINATION_COUNT as u64),
        Some(text) => match parse_range(text, COMBINATION_COUNT as u64) {
            Ok(r) => r,
            Err(e) => {
                eprintln!("--range: {e}");
                return EXIT_FLAG;
            }
        },
    };
    if let Some(dir) = out {
        if let Err(e) = std::fs::create_dir_all(dir) {
            eprintln!("create {}: {e}", dir.display());
            return EXIT_INTERNAL;
        }
    }

    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    let mut write_error = None;
    let summary = scan_combinations(lo as usize, hi as usize, budget, |outcome| {
        let [a, b, c, d] = outcome.excluded;
        let _ = writeln!(
            stdout,
            "combo {} excluded {a},{b},{c},{d} {}",
            outcome.index, outcome.verdict
        );
        if let (Some(dir), Some(witness), ScanVerdict::Sat) =
            (out, outcome.witness.as_deref(), outcome.verdict)
        {
            let path = dir.join(format!("combo-{}.json", outcome.index));
            let result = serde_json::to_string_pretty(witness)
                .map_err(|e| format!("serialize witness: {e}"))
                .and_then(|mut text| {
                    text.push('\n');
                    std::fs::write(&path, text).map_err(|e| format!("write {}: {e}", path.display()))
                });
            if let Err(e) = result {
                write_error.get_or_insert(e);
            }
        }
    });
    drop(stdout);
    println!(
        "scanned {} sat {} unsat {} undecided {}",
        summary.scanned, summary.sat, summary.unsat, summary.undecided
    );
    if let Some(e) = write_error {
        eprintln!("{e}");
        return EXIT_INTERNAL;
    }
    EXIT_OK
}

fn cmd_tiles() -> i32 {
    use std::io::Write;
    // A closed pipe (e.g. `tiles | head`) ends the listing, not the process.
    let mut out = std::io::stdout().lock();
    for row in tile_table().rows() {
        let [a, b, c] = row.corners;
        if writeln!(out, "{a} {b} {c} {}", row.type_id).is_err() {
            break;
        }
    }
    EXIT_OK
}
