//! Exhaustive backtracking search for tables satisfying a conjunction of
//! required and forbidden properties.
//!
//! Absorber rows `0` and `1` are fixed; the remaining cells are assigned
//! depth-first in row-major order with ascending values. Every candidate
//! that survives pruning is re-checked with the capability checkers.

mod engine;
mod partial;
mod spec;

pub use spec::{
    holds, Constraint, FixedRoles, Polarity, Predicate, SearchSpec, DEFAULT_BUDGET, MAX_SEARCH_ORDER,
};

use serde::{Deserialize, Serialize};

use crate::error::SearchError;
use crate::table::CayleyTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SearchStatus {
    Found,
    /// No table of this size satisfies the spec (certified).
    Unsat,
    /// Nothing found in a symmetry-reduced space; not a certificate.
    NotFound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub witnesses: Vec<CayleyTable>,
    /// Complete assignments examined.
    pub explored: u64,
    /// Subtrees cut.
    pub pruned: u64,
    /// Cell assignments made, including the root.
    pub nodes: u64,
    /// No symmetry breaking was used and no witness cap was hit.
    pub exhaustive: bool,
}

impl SearchOutcome {
    pub fn found(&self) -> bool {
        self.status == SearchStatus::Found
    }

    pub fn first(&self) -> Option<&CayleyTable> {
        self.witnesses.first()
    }
}

/// Runs `spec` on a single thread.
pub fn search(spec: &SearchSpec) -> Result<SearchOutcome, SearchError> {
    search_with_threads(spec, 1)
}

/// Runs `spec`, exploring top-level branches on up to `threads` threads.
/// The outcome does not depend on `threads`.
pub fn search_with_threads(spec: &SearchSpec, threads: usize) -> Result<SearchOutcome, SearchError> {
    spec.validate()?;
    let branches = engine::run(spec, threads)?;
    let cap = spec.limit.unwrap_or(usize::MAX);
    let mut out = SearchOutcome {
        status: SearchStatus::Unsat,
        witnesses: Vec::new(),
        explored: 0,
        pruned: 0,
        nodes: 0,
        exhaustive: true,
    };
    for b in branches {
        out.explored += b.explored;
        out.pruned += b.pruned;
        out.nodes += b.nodes;
        out.witnesses.extend(b.witnesses);
    }
    if out.witnesses.len() >= cap {
        out.witnesses.truncate(cap);
        out.exhaustive = false;
    }
    if spec.symmetry_breaking {
        out.exhaustive = false;
    }
    out.status = if !out.witnesses.is_empty() {
        SearchStatus::Found
    } else if spec.symmetry_breaking {
        SearchStatus::NotFound
    } else {
        SearchStatus::Unsat
    };
    Ok(out)
}

/// Result of one size in a [`minimal_size`] scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeResult {
    pub n: usize,
    pub outcome: Result<SearchOutcome, SearchError>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    pub sizes: Vec<SizeResult>,
    /// Smallest size with a witness, if any size in range had one.
    pub first_found: Option<usize>,
}

impl BoundsReport {
    /// A witness exists and every smaller size scanned is certified Unsat.
    pub fn tight(&self) -> bool {
        let Some(m) = self.first_found else {
            return false;
        };
        self.sizes.iter().filter(|s| s.n < m).all(|s| {
            matches!(&s.outcome, Ok(o) if o.status == SearchStatus::Unsat && o.exhaustive)
        })
    }
}

/// Searches sizes `n_min..=n_max` in order, stopping at the first witness.
/// The template's `n` is ignored; its limit defaults to one witness.
pub fn minimal_size(
    template: &SearchSpec,
    n_min: usize,
    n_max: usize,
    threads: usize,
) -> Result<BoundsReport, SearchError> {
    if n_min < 2 || n_min > n_max {
        return Err(SearchError::SpecInvalid(format!("size range {n_min}..={n_max} is empty or below 2")));
    }
    let mut sizes = Vec::new();
    let mut first_found = None;
    for n in n_min..=n_max {
        let mut spec = template.clone();
        spec.n = n;
        spec.limit = Some(spec.limit.unwrap_or(1));
        spec.validate()?;
        let outcome = search_with_threads(&spec, threads);
        let found = matches!(&outcome, Ok(o) if o.found());
        sizes.push(SizeResult { n, outcome });
        if found {
            first_found = Some(n);
            break;
        }
    }
    Ok(BoundsReport { sizes, first_found })
}

/// Searches for a table of size `n` containing an element `k` with
/// `(k·a)·b = a` for all `a`, `b`. No other structure is imposed.
///
/// Row `k` is assigned cell by cell; choosing `k·a = u` forces row `u` to
/// be constant `a`, and a clash with an earlier forced cell prunes.
pub fn search_k_combinator(n: usize, budget: Option<u64>) -> Result<SearchOutcome, SearchError> {
    if n == 0 || n > MAX_SEARCH_ORDER {
        return Err(SearchError::SpecInvalid(format!("size {n} outside 1..={MAX_SEARCH_ORDER}")));
    }
    let budget = budget.unwrap_or(DEFAULT_BUDGET);
    let mut out = SearchOutcome {
        status: SearchStatus::Unsat,
        witnesses: Vec::new(),
        explored: 0,
        pruned: 0,
        nodes: 0,
        exhaustive: true,
    };
    for k in 0..n {
        let mut ks = KSearch {
            n,
            k,
            cells: vec![partial::UNSET; n * n],
            trail: Vec::new(),
            budget,
        };
        if ks.assign_row(0, &mut out)? {
            let entries = ks.cells.iter().map(|&v| if v == partial::UNSET { 0 } else { v as usize }).collect();
            out.witnesses.push(CayleyTable::new(n, entries).expect("cells in range"));
            out.status = SearchStatus::Found;
            out.exhaustive = false;
            break;
        }
    }
    Ok(out)
}

struct KSearch {
    n: usize,
    k: usize,
    cells: Vec<u8>,
    trail: Vec<usize>,
    budget: u64,
}

impl KSearch {
    fn set(&mut self, idx: usize, v: usize) -> bool {
        match self.cells[idx] {
            c if c == partial::UNSET => {
                self.cells[idx] = v as u8;
                self.trail.push(idx);
                true
            }
            c => c as usize == v,
        }
    }

    fn undo(&mut self, mark: usize) {
        for idx in self.trail.drain(mark..) {
            self.cells[idx] = partial::UNSET;
        }
    }

    fn assign_row(&mut self, a: usize, out: &mut SearchOutcome) -> Result<bool, SearchError> {
        let n = self.n;
        if a == n {
            out.explored += 1;
            return Ok(true);
        }
        for u in 0..n {
            out.nodes += 1;
            if out.nodes > self.budget {
                return Err(SearchError::ResourceLimit {
                    budget: self.budget,
                    nodes: out.nodes,
                });
            }
            let mark = self.trail.len();
            let ok = self.set(self.k * n + a, u) && (0..n).all(|b| self.set(u * n + b, a));
            if ok && self.assign_row(a + 1, out)? {
                return Ok(true);
            }
            if !ok {
                out.pruned += 1;
            }
            self.undo(mark);
        }
        Ok(false)
    }
}

/// The size at which [`derive_nontriviality_separation`] searches.
pub const SEPARATION_ORDER: usize = 6;

/// The search behind [`derive_nontriviality_separation`].
pub fn nontriviality_separation_spec() -> SearchSpec {
    SearchSpec::from_lists(
        SEPARATION_ORDER,
        &[Predicate::E2PM, Predicate::RMutual, Predicate::WeakIcpNoNontrivial],
        &[Predicate::H],
    )
    .with_limit(1)
}

/// Finds a 6-element table with a mutual anchored retraction pair that
/// satisfies the ICP without its non-triviality clause but not the full
/// ICP.
///
/// The search is split by retraction pair: each `(s, r)` in ascending order
/// is pinned and searched exhaustively, and the first witness is returned.
pub fn derive_nontriviality_separation() -> Result<CayleyTable, SearchError> {
    let base = nontriviality_separation_spec();
    for s in 2..SEPARATION_ORDER {
        for r in 2..SEPARATION_ORDER {
            let spec = base.clone().with_roles(FixedRoles {
                s: Some(s),
                r: Some(r),
                ..FixedRoles::default()
            });
            if let Some(t) = search(&spec)?.witnesses.into_iter().next() {
                return Ok(t);
            }
        }
    }
    Err(SearchError::Contradiction(
        "no 6-element table separates the weakened ICP from the full ICP".into(),
    ))
}
