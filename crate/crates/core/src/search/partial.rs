//! Three-valued evaluation of predicates on partially filled tables.
//!
//! Absorbers are always `0` and `1`. An evaluator answers `False` only
//! when no completion of the grid can satisfy the predicate, and `True`
//! only when every completion does.

use crate::capabilities::ClassifierReading;
use crate::table::Element;

use super::spec::{FixedRoles, Predicate};

pub(crate) const UNSET: u8 = u8::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Tri {
    False,
    Unknown,
    True,
}

impl From<bool> for Tri {
    fn from(b: bool) -> Self {
        if b {
            Tri::True
        } else {
            Tri::False
        }
    }
}

impl Tri {
    fn and(self, other: impl FnOnce() -> Tri) -> Tri {
        match self {
            Tri::False => Tri::False,
            Tri::True => other(),
            Tri::Unknown => match other() {
                Tri::False => Tri::False,
                _ => Tri::Unknown,
            },
        }
    }

    fn not(self) -> Tri {
        match self {
            Tri::False => Tri::True,
            Tri::True => Tri::False,
            Tri::Unknown => Tri::Unknown,
        }
    }
}

fn all(items: impl Iterator<Item = Tri>) -> Tri {
    let mut acc = Tri::True;
    for t in items {
        match t {
            Tri::False => return Tri::False,
            Tri::Unknown => acc = Tri::Unknown,
            Tri::True => {}
        }
    }
    acc
}

fn any(items: impl Iterator<Item = Tri>) -> Tri {
    let mut acc = Tri::False;
    for t in items {
        match t {
            Tri::True => return Tri::True,
            Tri::Unknown => acc = Tri::Unknown,
            Tri::False => {}
        }
    }
    acc
}

/// A row-major grid whose unassigned cells hold [`UNSET`].
#[derive(Debug, Clone)]
pub(crate) struct Grid {
    pub n: usize,
    pub cells: Vec<u8>,
}

impl Grid {
    /// Absorber rows filled, every other cell unset.
    pub fn with_absorbers(n: usize) -> Self {
        let mut cells = vec![UNSET; n * n];
        cells[..n].fill(0);
        cells[n..2 * n].fill(1);
        Grid { n, cells }
    }

    #[inline]
    pub fn get(&self, a: Element, b: Element) -> Option<Element> {
        match self.cells[a * self.n + b] {
            UNSET => None,
            v => Some(v as Element),
        }
    }

    #[inline]
    fn eq(&self, a: Element, b: Element, v: Element) -> Tri {
        match self.get(a, b) {
            None => Tri::Unknown,
            Some(w) => (w == v).into(),
        }
    }

    #[inline]
    fn absorbing(&self, a: Element, b: Element) -> Tri {
        match self.get(a, b) {
            None => Tri::Unknown,
            Some(w) => (w < 2).into(),
        }
    }

    fn core(&self) -> std::ops::Range<Element> {
        2..self.n
    }

    /// `a·(b·x)` compared with `v`, unknown while either step is unset.
    #[inline]
    fn eq2(&self, a: Element, b: Element, x: Element, v: Element) -> Tri {
        match self.get(b, x) {
            None => Tri::Unknown,
            Some(y) => self.eq(a, y, v),
        }
    }
}

fn candidates(fixed: Option<Element>, n: usize) -> std::ops::Range<Element> {
    match fixed {
        Some(e) => e..e + 1,
        None => 2..n,
    }
}

/// Evaluates every predicate except `E2PM`, which the engine tracks
/// incrementally.
pub(crate) fn evaluate(
    pred: Predicate,
    g: &Grid,
    roles: &FixedRoles,
    reading: ClassifierReading,
) -> Tri {
    match pred {
        Predicate::E2PM => Tri::Unknown,
        Predicate::RMutual => retraction(g, roles, true),
        Predicate::ROneSided => retraction(g, roles, false),
        Predicate::D => dichotomy(g, roles, reading),
        Predicate::H | Predicate::ComposeInert => icp(g, roles, true, true),
        Predicate::WeakIcpNoDistinct => icp(g, roles, false, true),
        Predicate::WeakIcpNoNontrivial => icp(g, roles, true, false),
        Predicate::Associative => associative(g),
        Predicate::RightIdentity => right_identity(g),
        Predicate::Commutative => commutative(g),
        Predicate::KCombinator => k_combinator(g),
    }
}

/// False once the known core entries of row `e` repeat a value or hit `avoid`.
fn injective_on_core(g: &Grid, e: Element, avoid: Option<Element>) -> bool {
    let mut seen = 0u32;
    for x in g.core() {
        if let Some(v) = g.get(e, x) {
            if Some(v) == avoid || seen & (1 << v) != 0 {
                return false;
            }
            seen |= 1 << v;
        }
    }
    true
}

fn retraction(g: &Grid, roles: &FixedRoles, mutual: bool) -> Tri {
    let sections = candidates(roles.s, g.n).filter(|&s| injective_on_core(g, s, Some(0)));
    any(sections.flat_map(|s| {
        let retractions = candidates(roles.r, g.n).filter(move |&r| !mutual || injective_on_core(g, r, None));
        retractions.map(move |r| {
            g.eq(r, 0, 0)
                .and(|| all(g.core().map(|x| g.eq2(r, s, x, x))))
                .and(|| {
                    if mutual {
                        all(g.core().map(|x| g.eq2(s, r, x, x)))
                    } else {
                        Tri::True
                    }
                })
        })
    }))
}

/// `(hits an absorber, hits the core, has unset cells)` for the core row of `y`.
fn core_row_kind(g: &Grid, y: Element) -> (bool, bool, bool) {
    let (mut absorb, mut core, mut unknown) = (false, false, false);
    for x in g.core() {
        match g.get(y, x) {
            None => unknown = true,
            Some(v) if v < 2 => absorb = true,
            Some(_) => core = true,
        }
    }
    (absorb, core, unknown)
}

fn dichotomy(g: &Grid, roles: &FixedRoles, reading: ClassifierReading) -> Tri {
    let classifier_on = |tau: Element| match reading {
        ClassifierReading::Strict => all((0..g.n).map(|x| g.absorbing(tau, x))),
        ClassifierReading::CoreOnly => all(g.core().map(|x| g.absorbing(tau, x))),
    };
    let mut split = Tri::True;
    let mut nonclassifier = Tri::False;
    for y in g.core() {
        let (absorb, core, unknown) = core_row_kind(g, y);
        if absorb && core {
            return Tri::False;
        }
        if unknown {
            split = Tri::Unknown;
        }
        if !absorb {
            if unknown {
                if nonclassifier == Tri::False {
                    nonclassifier = Tri::Unknown;
                }
            } else {
                nonclassifier = Tri::True;
            }
        }
    }
    split
        .and(|| nonclassifier)
        .and(|| any(candidates(roles.tau, g.n).map(classifier_on)))
}

fn icp(g: &Grid, roles: &FixedRoles, distinct: bool, nontrivial: bool) -> Tri {
    let mut acc = Tri::False;
    for b in candidates(roles.b, g.n) {
        let preserving = all(g.core().map(|x| g.absorbing(b, x).not()));
        if preserving == Tri::False {
            continue;
        }
        for a in candidates(roles.a, g.n) {
            if distinct && a == b {
                continue;
            }
            let spread = if nontrivial { image_spread(g, a) } else { Tri::True };
            if spread == Tri::False {
                continue;
            }
            for c in candidates(roles.c, g.n) {
                if distinct && (c == a || c == b) {
                    continue;
                }
                let factor = all(g.core().map(|x| match g.get(a, x) {
                    None => Tri::Unknown,
                    Some(v) => g.eq2(c, b, x, v),
                }));
                match preserving.and(|| spread).and(|| factor) {
                    Tri::True => return Tri::True,
                    Tri::Unknown => acc = Tri::Unknown,
                    Tri::False => {}
                }
            }
        }
    }
    acc
}

/// Whether the core image of `a` has at least two values.
fn image_spread(g: &Grid, a: Element) -> Tri {
    let mut first = None;
    let mut unknown = false;
    for x in g.core() {
        match g.get(a, x) {
            None => unknown = true,
            Some(v) => match first {
                None => first = Some(v),
                Some(f) if f != v => return Tri::True,
                Some(_) => {}
            },
        }
    }
    if unknown {
        Tri::Unknown
    } else {
        Tri::False
    }
}

fn associative(g: &Grid) -> Tri {
    let n = g.n;
    all((0..n).flat_map(|a| {
        (0..n).flat_map(move |b| {
            (0..n).map(move |c| match (g.get(a, b), g.get(b, c)) {
                (Some(ab), Some(bc)) => match (g.get(ab, c), g.get(a, bc)) {
                    (Some(l), Some(r)) => (l == r).into(),
                    _ => Tri::Unknown,
                },
                _ => Tri::Unknown,
            })
        })
    }))
}

fn right_identity(g: &Grid) -> Tri {
    any((0..g.n).map(|e| all((0..g.n).map(|a| g.eq(a, e, a)))))
}

fn commutative(g: &Grid) -> Tri {
    all((0..g.n).flat_map(|a| {
        (a + 1..g.n).map(move |b| match (g.get(a, b), g.get(b, a)) {
            (Some(x), Some(y)) => (x == y).into(),
            _ => Tri::Unknown,
        })
    }))
}

fn k_combinator(g: &Grid) -> Tri {
    any((0..g.n).map(|k| all((0..g.n).flat_map(|a| (0..g.n).map(move |b| k_step(g, k, a, b))))))
}

/// `(k·a)·b = a`.
#[inline]
fn k_step(g: &Grid, k: Element, a: Element, b: Element) -> Tri {
    match g.get(k, a) {
        None => Tri::Unknown,
        Some(u) => g.eq(u, b, a),
    }
}
