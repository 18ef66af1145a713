//! A small finite-domain constraint engine: integer variables over bitmask
//! domains, propagators for allDifferent / positive table / linear sum /
//! value assignment, FIFO fixpoint propagation, and depth-first search with
//! the min-domain lowest-value heuristic.
//!
//! Propagation strengths: allDifferent runs forward checking (an assigned
//! value is removed from every peer), table constraints are generalized
//! arc consistent in isolation (every remaining value keeps a supporting
//! tuple), and linear sums are bounds consistent. Search statistics follow
//! one convention throughout: a node is counted at each value decision, and
//! a backtrack is counted when a decision's subtree ends without a solution.

mod domain;

pub use domain::Domain;

use std::collections::VecDeque;
use std::sync::Arc;
use std::time::{Duration, Instant};

/// Index of a variable within one [`Model`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub usize);

/// An immutable positive-table relation: `rows × arity` values, flattened.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tuples {
    arity: usize,
    flat: Vec<u32>,
}

impl Tuples {
    pub fn new(arity: usize, rows: impl IntoIterator<Item = Vec<u32>>) -> Tuples {
        assert!(arity > 0, "table arity must be positive");
        let mut flat = Vec::new();
        for row in rows {
            assert_eq!(row.len(), arity, "tuple arity mismatch");
            flat.extend_from_slice(&row);
        }
        Tuples { arity, flat }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.flat.len() / self.arity
    }

    pub fn is_empty(&self) -> bool {
        self.flat.is_empty()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.flat.chunks_exact(self.arity)
    }
}

#[derive(Debug, Clone)]
enum ConstraintKind {
    AllDifferent,
    Table(Arc<Tuples>),
    LinearSum { coeffs: Vec<i64>, target: VarId },
    Assign(u32),
}

/// A posted constraint: a kind plus the ordered variable scope.
#[derive(Debug, Clone)]
pub struct Constraint {
    kind: ConstraintKind,
    scope: Vec<VarId>,
}

impl Constraint {
    /// Checks a complete assignment against this constraint alone, without
    /// any propagation machinery.
    pub fn is_satisfied_by(&self, values: &[u32]) -> bool {
        match &self.kind {
            ConstraintKind::AllDifferent => {
                let mut seen = 0u64;
                for &v in &self.scope {
                    let bit = 1u64 << values[v.0];
                    if seen & bit != 0 {
                        return false;
                    }
                    seen |= bit;
                }
                true
            }
            ConstraintKind::Table(tuples) => tuples
                .rows()
                .any(|row| row.iter().zip(&self.scope).all(|(&t, v)| t == values[v.0])),
            ConstraintKind::LinearSum { coeffs, target } => {
                let sum: i64 = self
                    .scope
                    .iter()
                    .zip(coeffs)
                    .map(|(v, &c)| c * values[v.0] as i64)
                    .sum();
                sum == values[target.0] as i64
            }
            ConstraintKind::Assign(value) => values[self.scope[0].0] == *value,
        }
    }
}

/// Outcome of running the propagators to a mutual fixpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Propagation {
    Fixpoint,
    Infeasible,
}

/// Whether a search ran to completion or stopped at its node budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    Completed,
    BudgetExhausted,
}

/// Search counters: nodes are value decisions, backtracks are decisions
/// whose subtree produced no solution.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub backtracks: u64,
    pub elapsed: Duration,
}

/// A constraint model: variables with current domains plus posted
/// constraints. Propagation and search mutate the domains in place;
/// propagation only ever removes values that appear in no solution.
#[derive(Debug, Clone, Default)]
pub struct Model {
    domains: Vec<Domain>,
    constraints: Vec<Constraint>,
    watchers: Vec<Vec<usize>>,
    queue: VecDeque<usize>,
    in_queue: Vec<bool>,
    trail: Vec<Domain>,
    changed: Vec<usize>,
    supports: Vec<Domain>,
}

struct Halt(Termination);

struct SearchCtx<'a> {
    budget: u64,
    nodes: u64,
    backtracks: u64,
    count: u64,
    first_only: bool,
    first: Option<Vec<u32>>,
    sink: Option<&'a mut dyn FnMut(&[u32])>,
}

impl Model {
    pub fn new() -> Model {
        Model::default()
    }

    pub fn new_var(&mut self, lo: u32, hi: u32) -> VarId {
        self.add_var(Domain::range(lo, hi))
    }

    pub fn new_var_from_values(&mut self, values: &[u32]) -> VarId {
        assert!(!values.is_empty(), "variable needs a non-empty domain");
        self.add_var(Domain::from_values(values.iter().copied()))
    }

    fn add_var(&mut self, domain: Domain) -> VarId {
        let id = self.domains.len();
        self.domains.push(domain);
        self.watchers.push(Vec::new());
        VarId(id)
    }

    pub fn var_count(&self) -> usize {
        self.domains.len()
    }

    pub fn constraint_count(&self) -> usize {
        self.constraints.len()
    }

    pub fn domain(&self, v: VarId) -> Domain {
        self.domains[v.0]
    }

    /// Pairwise-distinct values over `vars`. Propagates at forward-checking
    /// strength: a variable fixed to `v` removes `v` from every peer.
    pub fn post_all_different(&mut self, vars: &[VarId]) {
        assert!(!vars.is_empty(), "allDifferent needs variables");
        let mut sorted: Vec<usize> = vars.iter().map(|v| v.0).collect();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), vars.len(), "allDifferent scope must be distinct");
        self.push_constraint(Constraint { kind: ConstraintKind::AllDifferent, scope: vars.to_vec() });
    }

    /// Restricts `vars` to the rows of `tuples`. Propagation removes every
    /// value that no remaining row supports.
    pub fn post_table(&mut self, vars: &[VarId], tuples: Arc<Tuples>) {
        assert_eq!(vars.len(), tuples.arity(), "table scope/arity mismatch");
        self.push_constraint(Constraint { kind: ConstraintKind::Table(tuples), scope: vars.to_vec() });
    }

    /// Enforces Σ coeffs[i]·vars[i] = target with bounds-consistent filtering.
    pub fn post_linear_sum(&mut self, vars: &[VarId], coeffs: &[i64], target: VarId) {
        assert_eq!(vars.len(), coeffs.len(), "coefficient count mismatch");
        self.push_constraint(Constraint {
            kind: ConstraintKind::LinearSum { coeffs: coeffs.to_vec(), target },
            scope: vars.to_vec(),
        });
    }

    /// Fixes `var` to `value` at first propagation; fails if absent.
    pub fn post_assign(&mut self, var: VarId, value: u32) {
        self.push_constraint(Constraint { kind: ConstraintKind::Assign(value), scope: vec![var] });
    }

    fn push_constraint(&mut self, c: Constraint) {
        let ci = self.constraints.len();
        for v in c.scope.iter().copied() {
            if !self.watchers[v.0].contains(&ci) {
                self.watchers[v.0].push(ci);
            }
        }
        if let ConstraintKind::LinearSum { target, .. } = &c.kind {
            if !self.watchers[target.0].contains(&ci) {
                self.watchers[target.0].push(ci);
            }
        }
        self.constraints.push(c);
        self.in_queue.push(false);
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// Checks a complete assignment against every posted constraint using
    /// the naive per-constraint evaluators (no propagation involved).
    pub fn satisfies(&self, values: &[u32]) -> bool {
        assert_eq!(values.len(), self.domains.len());
        self.constraints.iter().all(|c| c.is_satisfied_by(values))
    }

    /// Runs every propagator to a mutual fixpoint.
    pub fn propagate(&mut self) -> Propagation {
        for ci in 0..self.constraints.len() {
            if !self.in_queue[ci] {
                self.in_queue[ci] = true;
                self.queue.push_back(ci);
            }
        }
        self.run_queue()
    }

    /// Fixpoint propagation seeded only by the constraints watching `var`.
    fn propagate_from(&mut self, var: usize) -> Propagation {
        for i in 0..self.watchers[var].len() {
            let ci = self.watchers[var][i];
            if !self.in_queue[ci] {
                self.in_queue[ci] = true;
                self.queue.push_back(ci);
            }
        }
        self.run_queue()
    }

    fn run_queue(&mut self) -> Propagation {
        while let Some(ci) = self.queue.pop_front() {
            self.in_queue[ci] = false;
            self.changed.clear();
            let ok = {
                let Model { domains, constraints, changed, supports, .. } = self;
                run_constraint(&constraints[ci], domains, changed, supports)
            };
            if !ok {
                while let Some(c) = self.queue.pop_front() {
                    self.in_queue[c] = false;
                }
                return Propagation::Infeasible;
            }
            for i in 0..self.changed.len() {
                let v = self.changed[i];
                for j in 0..self.watchers[v].len() {
                    let w = self.watchers[v][j];
                    if !self.in_queue[w] {
                        self.in_queue[w] = true;
                        self.queue.push_back(w);
                    }
                }
            }
        }
        Propagation::Fixpoint
    }

    /// Depth-first search for the first solution. Branches on an unassigned
    /// variable of minimum domain size (ties to the lowest id), values in
    /// increasing order.
    pub fn solve_first(&mut self, budget: u64) -> (Option<Vec<u32>>, SearchStats, Termination) {
        assert!(budget > 0, "node budget must be positive");
        let mut ctx = SearchCtx {
            budget,
            nodes: 0,
            backtracks: 0,
            count: 0,
            first_only: true,
            first: None,
            sink: None,
        };
        let (termination, elapsed) = self.run_search(&mut ctx);
        let stats = SearchStats { nodes: ctx.nodes, backtracks: ctx.backtracks, elapsed };
        (ctx.first, stats, termination)
    }

    /// Enumerates every solution, feeding each to `sink`. Returns the count
    /// and whether enumeration was exhaustive or stopped at the budget.
    pub fn solve_all(
        &mut self,
        budget: u64,
        sink: &mut dyn FnMut(&[u32]),
    ) -> (u64, SearchStats, Termination) {
        assert!(budget > 0, "node budget must be positive");
        let mut ctx = SearchCtx {
            budget,
            nodes: 0,
            backtracks: 0,
            count: 0,
            first_only: false,
            first: None,
            sink: Some(sink),
        };
        let (termination, elapsed) = self.run_search(&mut ctx);
        let stats = SearchStats { nodes: ctx.nodes, backtracks: ctx.backtracks, elapsed };
        (ctx.count, stats, termination)
    }

    fn run_search(&mut self, ctx: &mut SearchCtx) -> (Termination, Duration) {
        let start = Instant::now();
        let termination = if self.propagate() == Propagation::Infeasible {
            Termination::Completed
        } else {
            match self.dive(ctx) {
                Ok(_) => Termination::Completed,
                Err(Halt(t)) => t,
            }
        };
        (termination, start.elapsed())
    }

    fn pick_branch_var(&self) -> Option<usize> {
        let mut best: Option<(u32, usize)> = None;
        for (i, d) in self.domains.iter().enumerate() {
            let size = d.size();
            if size > 1 && best.map_or(true, |(s, _)| size < s) {
                best = Some((size, i));
            }
        }
        best.map(|(_, i)| i)
    }

    /// Explores the subtree under the current domains. Returns whether any
    /// solution was found in it; `Err` aborts the whole search.
    fn dive(&mut self, ctx: &mut SearchCtx) -> Result<bool, Halt> {
        let var = match self.pick_branch_var() {
            Some(v) => v,
            None => {
                let values: Vec<u32> =
                    self.domains.iter().map(|d| d.value().expect("solution domains singleton")).collect();
                debug_assert!(self.satisfies(&values), "search produced an invalid assignment");
                ctx.count += 1;
                if let Some(sink) = ctx.sink.as_mut() {
                    sink(&values);
                }
                if ctx.first_only {
                    ctx.first = Some(values);
                    return Err(Halt(Termination::Completed));
                }
                return Ok(true);
            }
        };

        let mut found_any = false;
        for value in self.domains[var].iter() {
            if ctx.nodes >= ctx.budget {
                return Err(Halt(Termination::BudgetExhausted));
            }
            ctx.nodes += 1;

            let mark = self.trail.len();
            self.trail.extend_from_slice(&self.domains);
            self.domains[var] = Domain::singleton(value);

            let result = if self.propagate_from(var) == Propagation::Fixpoint {
                self.dive(ctx)
            } else {
                Ok(false)
            };

            let n = self.domains.len();
            self.domains.copy_from_slice(&self.trail[mark..mark + n]);
            self.trail.truncate(mark);

            match result {
                Err(halt) => return Err(halt),
                Ok(true) => found_any = true,
                Ok(false) => ctx.backtracks += 1,
            }
        }
        Ok(found_any)
    }
}

fn run_constraint(
    constraint: &Constraint,
    domains: &mut [Domain],
    changed: &mut Vec<usize>,
    supports: &mut Vec<Domain>,
) -> bool {
    match &constraint.kind {
        ConstraintKind::AllDifferent => {
            let mut used = Domain::empty();
            for &v in &constraint.scope {
                if let Some(value) = domains[v.0].value() {
                    if used.contains(value) {
                        return false;
                    }
                    used.insert(value);
                }
            }
            for &v in &constraint.scope {
                let d = &mut domains[v.0];
                if d.is_singleton() {
                    continue;
                }
                if d.subtract(used) {
                    if d.is_empty() {
                        return false;
                    }
                    changed.push(v.0);
                }
            }
            true
        }
        ConstraintKind::Table(tuples) => {
            let arity = tuples.arity();
            supports.clear();
            supports.resize(arity, Domain::empty());
            let mut any_valid = false;
            'rows: for row in tuples.rows() {
                for (j, &t) in row.iter().enumerate() {
                    if !domains[constraint.scope[j].0].contains(t) {
                        continue 'rows;
                    }
                }
                any_valid = true;
                for (j, &t) in row.iter().enumerate() {
                    supports[j].insert(t);
                }
            }
            if !any_valid {
                return false;
            }
            for (j, &v) in constraint.scope.iter().enumerate() {
                let d = &mut domains[v.0];
                if d.intersect(supports[j]) {
                    if d.is_empty() {
                        return false;
                    }
                    changed.push(v.0);
                }
            }
            true
        }
        ConstraintKind::LinearSum { coeffs, target } => {
            // Treat as Σ aᵢ·yᵢ = 0 with the target folded in at coefficient -1.
            let terms = constraint.scope.len() + 1;
            let term = |j: usize| -> (i64, usize) {
                if j < constraint.scope.len() {
                    (coeffs[j], constraint.scope[j].0)
                } else {
                    (-1, target.0)
                }
            };
            let mut lo_sum = 0i64;
            let mut hi_sum = 0i64;
            for j in 0..terms {
                let (a, v) = term(j);
                let (Some(min), Some(max)) = (domains[v].min(), domains[v].max()) else {
                    return false;
                };
                let (lo, hi) = contribution_bounds(a, min, max);
                lo_sum += lo;
                hi_sum += hi;
            }
            if lo_sum > 0 || hi_sum < 0 {
                return false;
            }
            for j in 0..terms {
                let (a, v) = term(j);
                if a == 0 {
                    continue;
                }
                let (min, max) = (domains[v].min().unwrap(), domains[v].max().unwrap());
                let (lo, hi) = contribution_bounds(a, min, max);
                let rest_lo = lo_sum - lo;
                let rest_hi = hi_sum - hi;
                // a·y ∈ [-rest_hi, -rest_lo]
                let (y_lo, y_hi) = if a > 0 {
                    (div_ceil(-rest_hi, a), div_floor(-rest_lo, a))
                } else {
                    (div_ceil(-rest_lo, a), div_floor(-rest_hi, a))
                };
                let d = &mut domains[v];
                if d.restrict_to_bounds(y_lo, y_hi) {
                    if d.is_empty() {
                        return false;
                    }
                    changed.push(v);
                }
            }
            true
        }
        ConstraintKind::Assign(value) => {
            let v = constraint.scope[0];
            let d = &mut domains[v.0];
            if !d.contains(*value) {
                return false;
            }
            if !d.is_singleton() {
                *d = Domain::singleton(*value);
                changed.push(v.0);
            }
            true
        }
    }
}

fn contribution_bounds(a: i64, min: u32, max: u32) -> (i64, i64) {
    if a >= 0 {
        (a * min as i64, a * max as i64)
    } else {
        (a * max as i64, a * min as i64)
    }
}

fn div_floor(a: i64, b: i64) -> i64 {
    let q = a / b;
    if a % b != 0 && (a < 0) != (b < 0) {
        q - 1
    } else {
        q
    }
}

fn div_ceil(a: i64, b: i64) -> i64 {
    let q = a / b;
    if a % b != 0 && (a < 0) == (b < 0) {
        q + 1
    } else {
        q
    }
}
