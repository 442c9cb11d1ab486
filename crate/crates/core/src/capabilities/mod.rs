//! Decision procedures for the capabilities R, D, H and the classical
//! laws, each returning explicit witnesses.

mod dichotomy;
mod icp;
mod laws;
mod retraction;

pub use dichotomy::{
    check_dichotomy, dichotomy_status, strict_classifiers, verify_placement, ClassifierReading,
    Degeneracy, DichotomyReport, DichotomyStatus,
};
pub use icp::{
    find_compose_inert_triples, find_icp_triples, find_weak_icp_no_distinctness,
    find_weak_icp_no_nontriviality, has_icp, ComposeInertTriple, IcpTriple,
};
pub use laws::{is_associative, is_commutative, k_combinators, right_identity, LawCheck};
pub use retraction::{find_retraction_pairs, has_retraction, RetractionPair};

use serde::{Deserialize, Serialize};

use crate::magma::PointedMagma;
use crate::table::Element;

/// Every checker's output for one magma.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapabilityReport {
    /// All one-sided retraction pairs, anchored or not.
    pub r_onesided: Vec<RetractionPair>,
    /// Mutual, anchored retraction pairs (capability R).
    pub r_mutual: Vec<RetractionPair>,
    pub d: DichotomyStatus,
    pub h: Vec<IcpTriple>,
    pub compose_inert: Vec<ComposeInertTriple>,
    pub associative: LawCheck<[Element; 3]>,
    pub right_identity: Option<Element>,
    pub commutative: LawCheck<[Element; 2]>,
}

/// The boolean flags of a [`CapabilityReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CapabilitySummary {
    pub r: bool,
    pub d: bool,
    pub h: bool,
    pub associative: bool,
    pub right_identity: bool,
    pub commutative: bool,
}

impl CapabilityReport {
    pub fn r(&self) -> bool {
        !self.r_mutual.is_empty()
    }

    pub fn d(&self) -> bool {
        self.d.holds()
    }

    pub fn h(&self) -> bool {
        !self.h.is_empty()
    }

    pub fn summary(&self) -> CapabilitySummary {
        CapabilitySummary {
            r: self.r(),
            d: self.d(),
            h: self.h(),
            associative: self.associative.holds,
            right_identity: self.right_identity.is_some(),
            commutative: self.commutative.holds,
        }
    }

    /// Re-evaluates every listed witness against the raw table.
    pub fn recheck(&self, m: &PointedMagma) -> Result<(), String> {
        let core = m.core();
        let t = m.table();
        let on_core = |f: &dyn Fn(Element) -> bool| core.iter().all(|&x| f(x));
        for p in self.r_onesided.iter().chain(&self.r_mutual) {
            if !core.contains(&p.s) || !core.contains(&p.r) {
                return Err(format!("retraction pair {p:?} leaves core"));
            }
            if !on_core(&|x| t.op(p.r, t.op(p.s, x)) == x) {
                return Err(format!("retraction pair {p:?} fails r(s x) = x"));
            }
            if p.mutual != on_core(&|x| t.op(p.s, t.op(p.r, x)) == x) {
                return Err(format!("retraction pair {p:?} has a wrong mutual flag"));
            }
            if p.anchored != (t.op(p.r, m.z1()) == m.z1()) {
                return Err(format!("retraction pair {p:?} has a wrong anchor flag"));
            }
        }
        if self.r_mutual.iter().any(|p| !p.mutual || !p.anchored) {
            return Err("r_mutual lists a non-mutual or unanchored pair".into());
        }
        let icp_ok = |a: Element, b: Element, c: Element| {
            let distinct = a != b && b != c && a != c;
            let in_core = [a, b, c].iter().all(|e| core.contains(e));
            let preserving = on_core(&|x| !m.is_absorber(t.op(b, x)));
            let factors = on_core(&|x| t.op(a, x) == t.op(c, t.op(b, x)));
            let image: std::collections::HashSet<Element> = core.iter().map(|&x| t.op(a, x)).collect();
            distinct && in_core && preserving && factors && image.len() >= 2
        };
        for w in &self.h {
            if !icp_ok(w.a, w.b, w.c) {
                return Err(format!("ICP triple {w:?} does not re-check"));
            }
        }
        for w in &self.compose_inert {
            if !icp_ok(w.eta, w.g, w.rho) {
                return Err(format!("Compose+Inert triple {w:?} does not re-check"));
            }
        }
        match &self.d {
            DichotomyStatus::Decomposed(rep) => {
                let dec = &rep.decomposition;
                for &y in &dec.classifiers {
                    if !on_core(&|x| m.is_absorber(t.op(y, x))) {
                        return Err(format!("{y} listed as classifier"));
                    }
                }
                for &y in &dec.nonclassifiers {
                    if !on_core(&|x| !m.is_absorber(t.op(y, x))) {
                        return Err(format!("{y} listed as non-classifier"));
                    }
                }
                for &tau in &rep.witnesses {
                    let ok = match rep.reading {
                        ClassifierReading::Strict => t.elements().all(|x| m.is_absorber(t.op(tau, x))),
                        ClassifierReading::CoreOnly => on_core(&|x| m.is_absorber(t.op(tau, x))),
                    };
                    if !ok || !core.contains(&tau) {
                        return Err(format!("classifier witness {tau} does not re-check"));
                    }
                }
            }
            DichotomyStatus::Violation(v) => {
                let (xa, xc) = v.mixed_outputs;
                if !m.is_absorber(t.op(v.element, xa)) || m.is_absorber(t.op(v.element, xc)) {
                    return Err(format!("violation {v:?} does not re-check"));
                }
            }
            DichotomyStatus::EmptyCore => {
                if !core.is_empty() {
                    return Err("EmptyCore reported for non-empty core".into());
                }
            }
        }
        if let Some([a, b, c]) = self.associative.counterexample {
            if t.op(t.op(a, b), c) == t.op(a, t.op(b, c)) {
                return Err("associativity counterexample does not re-check".into());
            }
        }
        if let Some(e) = self.right_identity {
            if t.elements().any(|a| t.op(a, e) != a) {
                return Err(format!("{e} is not a right identity"));
            }
        }
        if let Some([a, b]) = self.commutative.counterexample {
            if t.op(a, b) == t.op(b, a) {
                return Err("commutativity counterexample does not re-check".into());
            }
        }
        Ok(())
    }
}

/// Runs every checker under the strict classifier reading.
pub fn full_report(m: &PointedMagma) -> CapabilityReport {
    full_report_with(m, ClassifierReading::Strict)
}

pub fn full_report_with(m: &PointedMagma, reading: ClassifierReading) -> CapabilityReport {
    let r_onesided = find_retraction_pairs(m, false, false);
    let r_mutual = r_onesided
        .iter()
        .copied()
        .filter(|p| p.mutual && p.anchored)
        .collect();
    CapabilityReport {
        r_onesided,
        r_mutual,
        d: dichotomy_status(m, reading),
        h: find_icp_triples(m),
        compose_inert: find_compose_inert_triples(m),
        associative: is_associative(m.table()),
        right_identity: right_identity(m.table()),
        commutative: is_commutative(m.table()),
    }
}
