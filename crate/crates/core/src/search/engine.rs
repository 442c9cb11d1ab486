//! Depth-first backtracking over the free cells of a table.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::error::SearchError;
use crate::table::CayleyTable;

use super::partial::{evaluate, Grid, Tri, UNSET};
use super::spec::{FixedRoles, Polarity, Predicate, SearchSpec};

#[derive(Debug, Default, Clone)]
pub(crate) struct BranchResult {
    pub witnesses: Vec<CayleyTable>,
    pub nodes: u64,
    pub explored: u64,
    pub pruned: u64,
    /// The branch stopped because it reached the witness cap.
    pub capped: bool,
}

struct Shared<'a> {
    spec: &'a SearchSpec,
    checks: Vec<(Predicate, Polarity, FixedRoles)>,
    e2pm: bool,
    free: Vec<(usize, usize)>,
    cap: usize,
    budget: u64,
    nodes: AtomicU64,
    /// Branches with a larger index are no longer needed.
    cutoff: AtomicUsize,
}

enum Flow {
    Go,
    Halt,
}

struct Worker<'s, 'a> {
    shared: &'s Shared<'a>,
    grid: Grid,
    branch: usize,
    out: BranchResult,
}

impl Worker<'_, '_> {
    fn charge_node(&mut self) -> Result<bool, SearchError> {
        self.out.nodes += 1;
        let total = self.shared.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if total > self.shared.budget {
            return Err(SearchError::ResourceLimit {
                budget: self.shared.budget,
                nodes: total,
            });
        }
        Ok(self.branch <= self.shared.cutoff.load(Ordering::Relaxed))
    }

    fn row_ok(&self, i: usize) -> bool {
        let n = self.grid.n;
        let row = &self.grid.cells[i * n..(i + 1) * n];
        if self.shared.e2pm {
            if row.iter().all(|&v| v as usize == i) {
                return false;
            }
            if (0..i).any(|k| &self.grid.cells[k * n..(k + 1) * n] == row) {
                return false;
            }
        }
        if self.shared.spec.symmetry_breaking && i >= 3 {
            let prev = &self.grid.cells[(i - 1) * n..i * n];
            if row <= prev {
                return false;
            }
        }
        true
    }

    fn consistent(&self, completed_row: Option<usize>) -> bool {
        if let Some(i) = completed_row {
            if !self.row_ok(i) {
                return false;
            }
        }
        let reading = self.shared.spec.classifier_reading;
        self.shared.checks.iter().all(|(pred, pol, roles)| {
            let t = evaluate(*pred, &self.grid, roles, reading);
            !matches!((pol, t), (Polarity::Require, Tri::False) | (Polarity::Forbid, Tri::True))
        })
    }

    fn leaf(&mut self) -> Flow {
        self.out.explored += 1;
        let table = CayleyTable::from_bytes_unchecked(self.grid.n, self.grid.cells.clone());
        if self.shared.spec.satisfied_by(&table) {
            self.out.witnesses.push(table);
            if self.out.witnesses.len() >= self.shared.cap {
                self.out.capped = true;
                return Flow::Halt;
            }
        }
        Flow::Go
    }

    fn descend(&mut self, depth: usize) -> Result<Flow, SearchError> {
        let Some(&(i, j)) = self.shared.free.get(depth) else {
            return Ok(self.leaf());
        };
        let n = self.grid.n;
        let completes = (j + 1 == n).then_some(i);
        for v in 0..n {
            self.grid.cells[i * n + j] = v as u8;
            if !self.charge_node()? {
                self.grid.cells[i * n + j] = UNSET;
                return Ok(Flow::Halt);
            }
            if !self.consistent(completes) {
                self.out.pruned += 1;
                continue;
            }
            if let Flow::Halt = self.descend(depth + 1)? {
                self.grid.cells[i * n + j] = UNSET;
                return Ok(Flow::Halt);
            }
        }
        self.grid.cells[i * n + j] = UNSET;
        Ok(Flow::Go)
    }
}

/// Per-branch results in branch order, truncated where the cumulative
/// witness count first reaches the cap. Branch `k` assigns value `k` to the
/// first free cell; with no free cell there is a single branch.
pub(crate) fn run(spec: &SearchSpec, threads: usize) -> Result<Vec<BranchResult>, SearchError> {
    let n = spec.n;
    let checks = spec
        .constraints
        .iter()
        .filter(|c| c.pred != Predicate::E2PM)
        .map(|c| {
            let roles = match c.polarity {
                Polarity::Require => spec.fixed_roles,
                Polarity::Forbid => FixedRoles::default(),
            };
            (c.pred, c.polarity, roles)
        })
        .collect();
    let free: Vec<(usize, usize)> = (2..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let shared = Shared {
        spec,
        checks,
        e2pm: spec.requires(Predicate::E2PM),
        free,
        cap: spec.limit.unwrap_or(usize::MAX),
        budget: spec.budget(),
        nodes: AtomicU64::new(0),
        cutoff: AtomicUsize::new(usize::MAX),
    };

    let mut root = Worker {
        shared: &shared,
        grid: Grid::with_absorbers(n),
        branch: 0,
        out: BranchResult::default(),
    };
    root.charge_node()?;
    if !root.consistent(None) {
        root.out.pruned += 1;
        return Ok(vec![root.out]);
    }
    if shared.free.is_empty() {
        root.leaf();
        return Ok(vec![root.out]);
    }
    let root_stats = root.out;

    let (fi, fj) = shared.free[0];
    let run_branch = |branch: usize| -> Result<BranchResult, SearchError> {
        let mut w = Worker {
            shared: &shared,
            grid: Grid::with_absorbers(n),
            branch,
            out: BranchResult::default(),
        };
        w.grid.cells[fi * n + fj] = branch as u8;
        if !w.charge_node()? {
            return Ok(w.out);
        }
        if !w.consistent((fj + 1 == n).then_some(fi)) {
            w.out.pruned += 1;
        } else {
            w.descend(1)?;
        }
        Ok(w.out)
    };

    let slots: Vec<Mutex<Option<Result<BranchResult, SearchError>>>> = (0..n).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let record = |branch: usize, res: Result<BranchResult, SearchError>| {
        *slots[branch].lock().expect("slot lock") = Some(res);
        let mut total = 0usize;
        for (k, slot) in slots.iter().enumerate() {
            match &*slot.lock().expect("slot lock") {
                Some(Ok(r)) => {
                    total = total.saturating_add(r.witnesses.len());
                    if total >= shared.cap {
                        shared.cutoff.fetch_min(k, Ordering::Relaxed);
                        break;
                    }
                }
                Some(Err(_)) => {
                    shared.cutoff.fetch_min(k, Ordering::Relaxed);
                    break;
                }
                None => break,
            }
        }
    };
    let work = || loop {
        let b = next.fetch_add(1, Ordering::Relaxed);
        if b >= n || b > shared.cutoff.load(Ordering::Relaxed) {
            break;
        }
        record(b, run_branch(b));
    };
    let threads = threads.clamp(1, n);
    if threads == 1 {
        work();
    } else {
        std::thread::scope(|s| {
            for _ in 0..threads {
                s.spawn(work);
            }
        });
    }

    let mut results = Vec::new();
    let mut total = 0usize;
    for slot in slots {
        let Some(res) = slot.into_inner().expect("slot lock") else {
            break;
        };
        let mut r = res?;
        if results.is_empty() {
            r.nodes += root_stats.nodes;
        }
        total = total.saturating_add(r.witnesses.len());
        let done = total >= shared.cap;
        results.push(r);
        if done {
            break;
        }
    }
    Ok(results)
}
