use serde::{Deserialize, Serialize};

use crate::table::{CayleyTable, Element};

/// Outcome of a universally quantified law, with the first violation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LawCheck<W> {
    pub holds: bool,
    pub counterexample: Option<W>,
}

impl<W> LawCheck<W> {
    fn from_violation(v: Option<W>) -> Self {
        LawCheck {
            holds: v.is_none(),
            counterexample: v,
        }
    }
}

/// `(a·b)·c = a·(b·c)` for all triples; the counterexample is the
/// lexicographically first violation.
pub fn is_associative(t: &CayleyTable) -> LawCheck<[Element; 3]> {
    let n = t.order();
    let mut violation = None;
    'outer: for a in 0..n {
        for b in 0..n {
            let ab = t.op(a, b);
            for c in 0..n {
                if t.op(ab, c) != t.op(a, t.op(b, c)) {
                    violation = Some([a, b, c]);
                    break 'outer;
                }
            }
        }
    }
    LawCheck::from_violation(violation)
}

/// The smallest `e` with `a·e = a` for all `a`, if any.
pub fn right_identity(t: &CayleyTable) -> Option<Element> {
    t.elements().find(|&e| t.elements().all(|a| t.op(a, e) == a))
}

/// `a·b = b·a` for all pairs; the counterexample is the first `(a, b)`
/// with `a < b` that fails.
pub fn is_commutative(t: &CayleyTable) -> LawCheck<[Element; 2]> {
    let n = t.order();
    let violation = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| [a, b]))
        .find(|&[a, b]| t.op(a, b) != t.op(b, a));
    LawCheck::from_violation(violation)
}

/// Elements `k` with `(k·a)·b = a` for all `a`, `b`.
pub fn k_combinators(t: &CayleyTable) -> Vec<Element> {
    t.elements()
        .filter(|&k| t.elements().all(|a| t.elements().all(|b| t.op(t.op(k, a), b) == a)))
        .collect()
}
