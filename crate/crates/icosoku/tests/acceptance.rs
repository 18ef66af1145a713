//! Acceptance checklist for the whole artifact, one test per criterion.
//!
//! Each test prints a `criterion N PASS` line on success (visible with
//! `--nocapture`); the test harness itself reports per-criterion pass/fail.
//! Wall-clock tolerances are generous bounds for commodity hardware, not
//! performance targets.

use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use icosoku::engine::{Model, Termination, Tuples, VarId};
use icosoku::harness::checkpoint::SweepCheckpoint;
use icosoku::harness::rank::{
    is_c5_representative, perm_rank, perm_unrank, vertex_values_of, ARRANGEMENT_COUNT,
};
use icosoku::harness::sweep::{random_sample, sweep, SampleConfig, SweepConfig};
use icosoku::model::{build_adts_model, total_dots, verify_adts, ModelOptions, Solution};
use icosoku::tiles::{tile_table, type_count_by_burnside, ROW_COUNT, TYPE_COUNT};
use icosoku::topology::build_icosahedron;

fn solve_fixed(rank: u64, budget: u64) -> Solution {
    let topology = build_icosahedron();
    let tiles = tile_table();
    let opts = ModelOptions {
        fixed_vertex_values: Some(vertex_values_of(&perm_unrank(rank))),
        ..ModelOptions::default()
    };
    let mut model = build_adts_model(&topology, &tiles, &opts).unwrap();
    let (solution, _, termination) = model.solve_first(budget);
    assert_eq!(termination, Termination::Completed, "rank {rank} exhausted its budget");
    solution.unwrap_or_else(|| panic!("rank {rank} has no solution"))
}

#[test]
fn criterion_1_tile_canonicalization() {
    let start = Instant::now();
    let table = tile_table();

    assert_eq!(table.rows().len(), ROW_COUNT);
    assert_eq!(ROW_COUNT, 64);

    let mut seen = [false; TYPE_COUNT + 1];
    for row in table.rows() {
        seen[row.type_id as usize] = true;
    }
    assert!(seen[1..].iter().all(|&s| s), "all 24 type ids appear in the table");
    assert_eq!(TYPE_COUNT, 24);
    assert_eq!(type_count_by_burnside(), 24);

    assert_eq!(table.type_of([0, 0, 0]), 1);
    assert_eq!(table.type_of([0, 0, 2]), 7);
    assert_eq!(table.type_of([0, 3, 3]), 10);
    assert_eq!(table.type_of([1, 2, 3]), 23);
    assert_eq!(table.type_of([3, 2, 1]), 24);

    assert!(start.elapsed().as_secs() < 1);
    println!("criterion 1 PASS: 24 tile classes, exemplar ids match, 64 table rows");
}

#[test]
fn criterion_2_model_accounting() {
    let topology = build_icosahedron();
    let tiles = tile_table();
    let model = build_adts_model(&topology, &tiles, &ModelOptions::default()).unwrap();
    assert_eq!(model.var_count(), 92);
    assert_eq!(model.constraint_count(), 35);
    println!("criterion 2 PASS: default model has 92 variables and 35 constraints");
}

#[test]
fn criterion_3_first_solution_with_v0_pinned() {
    let start = Instant::now();
    let topology = build_icosahedron();
    let tiles = tile_table();
    let mut model = build_adts_model(&topology, &tiles, &ModelOptions::default()).unwrap();
    let (solution, stats, termination) = model.solve_first(1_000_000);

    assert_eq!(termination, Termination::Completed);
    let solution = solution.expect("the unrestricted puzzle is satisfiable");
    assert_eq!(solution.vertices[0], 1);
    assert!(verify_adts(&topology, &tiles, &solution).is_empty());
    assert!(stats.nodes <= 1_000_000);
    assert!(start.elapsed().as_secs() < 60);
    println!(
        "criterion 3 PASS: first solution in {} nodes / {} backtracks, verified",
        stats.nodes, stats.backtracks
    );
}

#[test]
fn criterion_4_desk_scale_sweep_and_random_sample() {
    let start = Instant::now();

    let mut config = SweepConfig::new(0, 5_000);
    config.workers = 4;
    let report = sweep(&config).unwrap();
    // Every rank below 10! has the global minimum at v1, so the whole
    // slice consists of representatives.
    assert!(report.complete);
    assert_eq!(report.processed, 5_000);
    assert_eq!(report.sat, 5_000);
    assert!(report.counterexamples.is_empty());
    assert!(report.undecided.is_empty());

    let mut sample_config = SampleConfig::new(1_000, 20_260_815);
    sample_config.workers = 4;
    let sample = random_sample(&sample_config);
    assert_eq!(sample.sampled, 1_000);
    assert_eq!(sample.sat, 1_000);
    assert!(sample.counterexamples.is_empty());
    assert!(sample.undecided.is_empty());

    assert!(start.elapsed().as_secs() < 900);
    println!(
        "criterion 4 PASS: 5,000 representative ranks and 1,000 random permutations, \
         all satisfiable, in {:.1}s",
        start.elapsed().as_secs_f64()
    );
}

/// Tetrahedron analogue: 4 vertices with values 1..=4, 4 faces, 3 faces per
/// vertex, same 64-row tile relation, all face types pairwise distinct, no
/// symmetry breaking. Small enough to enumerate every corner assignment.
#[test]
fn criterion_5_oracle_equivalence_on_tetrahedron() {
    const FACES: [[usize; 3]; 4] = [[0, 1, 2], [0, 3, 1], [0, 2, 3], [1, 3, 2]];
    let tiles = tile_table();

    // Independent count: all 4^12 corner assignments, filtered directly.
    let mut incident: [Vec<(usize, usize)>; 4] = Default::default();
    for (f, face) in FACES.iter().enumerate() {
        for (j, &v) in face.iter().enumerate() {
            incident[v].push((f, j));
        }
    }
    assert!(incident.iter().all(|i| i.len() == 3));

    let mut brute_force = 0u64;
    for code in 0u32..4u32.pow(12) {
        let corner = |f: usize, j: usize| (code >> (2 * (3 * f + j))) & 3;
        let types: Vec<u32> =
            (0..4).map(|f| tiles.type_of([corner(f, 0), corner(f, 1), corner(f, 2)])).collect();
        if (0..4).any(|i| (i + 1..4).any(|j| types[i] == types[j])) {
            continue;
        }
        let mut value_seen = [false; 5];
        let mut ok = true;
        for faces_here in &incident {
            let sum: u32 = faces_here.iter().map(|&(f, j)| corner(f, j)).sum();
            if !(1..=4).contains(&sum) || value_seen[sum as usize] {
                ok = false;
                break;
            }
            value_seen[sum as usize] = true;
        }
        if ok {
            brute_force += 1;
        }
    }

    // Engine count over the same constraints.
    let mut model = Model::default();
    let vertex_vars: Vec<VarId> = (0..4).map(|_| model.new_var(1, 4)).collect();
    let mut corner_vars = [[VarId(0); 3]; 4];
    let mut type_vars = [VarId(0); 4];
    for f in 0..4 {
        for j in 0..3 {
            corner_vars[f][j] = model.new_var(0, 3);
        }
        type_vars[f] = model.new_var(1, TYPE_COUNT as u32);
    }
    model.post_all_different(&vertex_vars);
    model.post_all_different(&type_vars);
    let tuples = Arc::new(Tuples::new(
        4,
        tiles.rows().iter().map(|r| vec![r.corners[0], r.corners[1], r.corners[2], r.type_id]),
    ));
    for f in 0..4 {
        let scope = [corner_vars[f][0], corner_vars[f][1], corner_vars[f][2], type_vars[f]];
        model.post_table(&scope, Arc::clone(&tuples));
    }
    for faces_here in &incident {
        let scope: Vec<VarId> = faces_here.iter().map(|&(f, j)| corner_vars[f][j]).collect();
        let v = FACES[faces_here[0].0][faces_here[0].1];
        model.post_linear_sum(&scope, &[1, 1, 1], vertex_vars[v]);
    }
    let (engine_count, _, termination) = model.solve_all(200_000_000, &mut |_| {});

    assert_eq!(termination, Termination::Completed);
    assert_eq!(engine_count, brute_force);
    assert_eq!(engine_count, 32_160);
    println!("criterion 5 PASS: engine and brute force both count {engine_count} solutions");
}

#[test]
fn criterion_6_invariant_suite_over_100_solutions() {
    let topology = build_icosahedron();
    let tiles = tile_table();
    for k in 0..100u64 {
        let solution = solve_fixed(k * 399_167 + 17, 10_000_000);
        let violations = verify_adts(&topology, &tiles, &solution);
        assert!(violations.is_empty(), "solution {k}: {violations:?}");
        assert_eq!(total_dots(&solution), 78);
    }
    println!("criterion 6 PASS: 100 solutions verified with total dots 78");
}

#[test]
fn criterion_7_rotated_solutions_still_verify() {
    let topology = build_icosahedron();
    let tiles = tile_table();
    for k in 0..20u64 {
        let solution = solve_fixed(k * 1_000_003, 10_000_000);
        for step in 0..5 {
            let rotation = topology.rotation_about_apex(step);
            let rotated = icosoku::model::rotate_solution(&topology, &rotation, &solution);
            let violations = verify_adts(&topology, &tiles, &rotated);
            assert!(violations.is_empty(), "solution {k} rotation {step}: {violations:?}");
        }
    }
    println!("criterion 7 PASS: 20 solutions re-verify under all 5 apex rotations");
}

#[test]
fn criterion_8_rank_roundtrip_and_kill_resume() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..100_000 {
        let rank = rng.gen_range(0..ARRANGEMENT_COUNT);
        assert_eq!(perm_rank(&perm_unrank(rank)), rank);
    }
    assert_eq!(perm_rank(&perm_unrank(0)), 0);
    assert_eq!(perm_rank(&perm_unrank(ARRANGEMENT_COUNT - 1)), ARRANGEMENT_COUNT - 1);
    assert!(is_c5_representative(&perm_unrank(0)));

    let dir = tempfile::tempdir().unwrap();
    let (lo, hi) = (1_000, 3_000);

    let killed_path = dir.path().join("killed.ck");
    let mut config = SweepConfig::new(lo, hi);
    config.workers = 3;
    config.flush_interval = 64;
    config.checkpoint_path = Some(killed_path.clone());
    config.abort_after = Some(700);
    let partial = sweep(&config).unwrap();
    assert!(!partial.complete, "the aborted run must stop early");

    config.abort_after = None;
    let resumed = sweep(&config).unwrap();

    let straight_path = dir.path().join("straight.ck");
    let mut straight_config = SweepConfig::new(lo, hi);
    straight_config.checkpoint_path = Some(straight_path.clone());
    let straight = sweep(&straight_config).unwrap();

    assert!(resumed.complete && straight.complete);
    assert_eq!(resumed.processed, straight.processed);
    assert_eq!(resumed.counterexamples, straight.counterexamples);
    assert_eq!(
        SweepCheckpoint::load(&killed_path).unwrap().to_text(),
        SweepCheckpoint::load(&straight_path).unwrap().to_text(),
        "resumed checkpoint must match the uninterrupted one byte for byte"
    );
    println!("criterion 8 PASS: 100,000 rank roundtrips and kill-and-resume report parity");
}
