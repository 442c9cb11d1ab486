//! Absorber-preserving isomorphisms: transport of tables along bijections,
//! isomorphism enumeration, and invariance checks.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::capabilities::{full_report_with, ClassifierReading, DichotomyStatus, IcpTriple};
use crate::error::IsoError;
use crate::magma::{decompose, E2pm, PointedMagma};
use crate::table::{is_permutation, Element};

/// A bijection on `0..n`, image of `i` at position `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IsoWitness {
    pub perm: Vec<Element>,
    pub fixes_absorbers: bool,
}

fn check_perm(m: &PointedMagma, perm: &[Element]) -> Result<(), IsoError> {
    if !is_permutation(perm, m.order()) {
        return Err(IsoError::NotPermutation(m.order()));
    }
    for z in [m.z1(), m.z2()] {
        if perm[z] != z {
            return Err(IsoError::AbsorberNotFixed(z));
        }
    }
    Ok(())
}

/// The table `m'` with `m'(perm a, perm b) = perm(m(a, b))`. `perm` must
/// fix both absorbers.
pub fn transport(m: &E2pm, perm: &[Element]) -> Result<E2pm, IsoError> {
    check_perm(m, perm)?;
    let table = m.table().relabel(perm);
    Ok(E2pm::try_from(PointedMagma::new(table, m.z1(), m.z2())).expect("relabelling preserves the axioms"))
}

/// `p ∘ q`: apply `q` first.
pub fn compose(p: &[Element], q: &[Element]) -> Vec<Element> {
    q.iter().map(|&i| p[i]).collect()
}

/// Every permutation of `0..n` fixing `z1` and `z2`, in lexicographic order.
pub fn core_permutations(n: usize, z1: Element, z2: Element) -> Vec<Vec<Element>> {
    let core: Vec<Element> = (0..n).filter(|&e| e != z1 && e != z2).collect();
    let mut images = core.clone();
    let mut out = Vec::new();
    loop {
        let mut perm: Vec<Element> = (0..n).collect();
        for (&c, &img) in core.iter().zip(&images) {
            perm[c] = img;
        }
        out.push(perm);
        if !next_permutation(&mut images) {
            return out;
        }
    }
}

fn next_permutation(v: &mut [Element]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot has a successor");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All bijections `φ` with `φ(a ·₁ b) = φ(a) ·₂ φ(b)`, `φ(z1) = z1'` and
/// `φ(z2) = z2'`, in lexicographic order of `perm`.
pub fn find_isomorphisms(m1: &E2pm, m2: &E2pm) -> Result<Vec<IsoWitness>, IsoError> {
    let n = m1.order();
    if n != m2.order() {
        return Err(IsoError::SizeMismatch(n, m2.order()));
    }
    let mut st = IsoSearch {
        m1,
        m2,
        fwd: vec![None; n],
        used: vec![false; n],
        order: Vec::with_capacity(n),
        out: Vec::new(),
    };
    st.fwd[m1.z1()] = Some(m2.z1());
    st.fwd[m1.z2()] = Some(m2.z2());
    st.used[m2.z1()] = true;
    st.used[m2.z2()] = true;
    st.order.extend([m1.z1(), m1.z2()]);
    if st.consistent() {
        let core = m1.core();
        st.extend(&core, 0);
    }
    Ok(st.out)
}

struct IsoSearch<'a> {
    m1: &'a E2pm,
    m2: &'a E2pm,
    fwd: Vec<Option<Element>>,
    used: Vec<bool>,
    order: Vec<Element>,
    out: Vec<IsoWitness>,
}

impl IsoSearch<'_> {
    /// Checks the homomorphism equation on every pair of assigned elements.
    fn consistent(&self) -> bool {
        let ok = |a: Element, b: Element| {
            let (Some(pa), Some(pb)) = (self.fwd[a], self.fwd[b]) else {
                return true;
            };
            let target = self.m2.op(pa, pb);
            match self.fwd[self.m1.op(a, b)] {
                Some(img) => img == target,
                None => !self.used[target],
            }
        };
        self.order.iter().all(|&a| self.order.iter().all(|&b| ok(a, b)))
    }

    fn extend(&mut self, core: &[Element], k: usize) {
        if k == core.len() {
            let perm: Vec<Element> = self.fwd.iter().map(|p| p.expect("complete")).collect();
            self.out.push(IsoWitness {
                perm,
                fixes_absorbers: true,
            });
            return;
        }
        let a = core[k];
        for img in 0..self.fwd.len() {
            if self.used[img] {
                continue;
            }
            self.fwd[a] = Some(img);
            self.used[img] = true;
            self.order.push(a);
            if self.consistent() {
                self.extend(core, k + 1);
            }
            self.order.pop();
            self.used[img] = false;
            self.fwd[a] = None;
        }
    }
}

/// Whether the decomposition of the transported table is the image of the
/// original decomposition, class by class.
pub fn verify_functoriality(m: &E2pm, perm: &[Element]) -> Result<bool, IsoError> {
    let before = decompose(m).map_err(|e| IsoError::PreconditionUnmet(format!("table lacks a decomposition: {e}")))?;
    let moved = transport(m, perm)?;
    let after = decompose(&moved).map_err(|e| IsoError::PreconditionUnmet(format!("transported table lacks a decomposition: {e}")))?;
    Ok(after == before.map(perm))
}

fn map_triples(ts: &[IcpTriple], perm: &[Element]) -> BTreeSet<(Element, Element, Element)> {
    ts.iter().map(|t| (perm[t.a], perm[t.b], perm[t.c])).collect()
}

/// Whether every capability flag agrees between `m` and its transport
/// along `perm`, with witness sets corresponding under `perm`.
pub fn verify_capability_invariance(m: &E2pm, perm: &[Element]) -> Result<bool, IsoError> {
    verify_capability_invariance_with(m, perm, ClassifierReading::Strict)
}

pub fn verify_capability_invariance_with(
    m: &E2pm,
    perm: &[Element],
    reading: ClassifierReading,
) -> Result<bool, IsoError> {
    let moved = transport(m, perm)?;
    let before = full_report_with(m, reading);
    let after = full_report_with(&moved, reading);
    if before.summary() != after.summary() {
        return Ok(false);
    }
    let pairs = |ps: &[crate::capabilities::RetractionPair], map: bool| -> BTreeSet<(Element, Element, bool, bool)> {
        ps.iter()
            .map(|p| {
                let (s, r) = if map { (perm[p.s], perm[p.r]) } else { (p.s, p.r) };
                (s, r, p.mutual, p.anchored)
            })
            .collect()
    };
    let identity: Vec<Element> = (0..m.order()).collect();
    let triples_ok = map_triples(&before.h, perm) == map_triples(&after.h, &identity);
    let ci = |r: &crate::capabilities::CapabilityReport, p: &[Element]| {
        let ts: Vec<IcpTriple> = r.compose_inert.iter().map(|&t| t.into()).collect();
        map_triples(&ts, p)
    };
    let d_ok = match (&before.d, &after.d) {
        (DichotomyStatus::Decomposed(x), DichotomyStatus::Decomposed(y)) => {
            let w: BTreeSet<Element> = x.witnesses.iter().map(|&t| perm[t]).collect();
            x.decomposition.map(perm) == y.decomposition
                && w == y.witnesses.iter().copied().collect()
                && x.degenerate == y.degenerate
        }
        (DichotomyStatus::Violation(_), DichotomyStatus::Violation(_)) => true,
        (DichotomyStatus::EmptyCore, DichotomyStatus::EmptyCore) => true,
        _ => false,
    };
    Ok(pairs(&before.r_onesided, true) == pairs(&after.r_onesided, false)
        && pairs(&before.r_mutual, true) == pairs(&after.r_mutual, false)
        && triples_ok
        && ci(&before, perm) == ci(&after, &identity)
        && d_ok)
}
