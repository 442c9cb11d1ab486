use serde::{Deserialize, Serialize};

use crate::magma::PointedMagma;
use crate::table::Element;

/// A witness `(a, b, c)` to the internal composition property:
/// `b` keeps core inside core and `a·x = c·(b·x)` for every core `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IcpTriple {
    pub a: Element,
    pub b: Element,
    pub c: Element,
}

/// A witness `(η, g, ρ)` to Compose (`η·x = ρ·(g·x)`) and Inert
/// (`g·x ∉ {z1, z2}`) on core.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ComposeInertTriple {
    pub eta: Element,
    pub g: Element,
    pub rho: Element,
}

impl From<ComposeInertTriple> for IcpTriple {
    fn from(t: ComposeInertTriple) -> Self {
        IcpTriple {
            a: t.eta,
            b: t.g,
            c: t.rho,
        }
    }
}

#[derive(Clone, Copy)]
struct IcpConditions {
    distinct: bool,
    nontrivial: bool,
}

fn icp_family(m: &PointedMagma, cond: IcpConditions) -> Vec<IcpTriple> {
    let core = m.core();
    if cond.distinct && core.len() < 3 {
        return Vec::new();
    }
    let preserving: Vec<bool> = (0..m.order())
        .map(|b| !m.is_absorber(b) && core.iter().all(|&x| !m.is_absorber(m.op(b, x))))
        .collect();
    let nontrivial: Vec<bool> = (0..m.order())
        .map(|a| core.iter().any(|&x| m.op(a, x) != m.op(a, core[0])))
        .collect();
    let mut out = Vec::new();
    for &a in &core {
        if cond.nontrivial && !nontrivial[a] {
            continue;
        }
        for &b in &core {
            if !preserving[b] || (cond.distinct && b == a) {
                continue;
            }
            for &c in &core {
                if cond.distinct && (c == a || c == b) {
                    continue;
                }
                if core.iter().all(|&x| m.op(a, x) == m.op(c, m.op(b, x))) {
                    out.push(IcpTriple { a, b, c });
                }
            }
        }
    }
    out
}

/// All ICP witnesses, ascending by `(a, b, c)`. Capability H is a
/// non-empty result. Empty whenever the core has fewer than 3 elements.
pub fn find_icp_triples(m: &PointedMagma) -> Vec<IcpTriple> {
    icp_family(
        m,
        IcpConditions {
            distinct: true,
            nontrivial: true,
        },
    )
}

/// ICP with the pairwise-distinctness requirement dropped.
pub fn find_weak_icp_no_distinctness(m: &PointedMagma) -> Vec<IcpTriple> {
    icp_family(
        m,
        IcpConditions {
            distinct: false,
            nontrivial: true,
        },
    )
}

/// ICP with the non-triviality requirement dropped.
pub fn find_weak_icp_no_nontriviality(m: &PointedMagma) -> Vec<IcpTriple> {
    icp_family(
        m,
        IcpConditions {
            distinct: true,
            nontrivial: false,
        },
    )
}

/// Capability H.
pub fn has_icp(m: &PointedMagma) -> bool {
    !find_icp_triples(m).is_empty()
}

/// All Compose+Inert witnesses with a non-trivial composite, ascending by
/// `(η, g, ρ)`.
///
/// Written against the operational axioms directly rather than through
/// [`find_icp_triples`], so the two can be compared.
pub fn find_compose_inert_triples(m: &PointedMagma) -> Vec<ComposeInertTriple> {
    let n = m.order();
    let non_absorbers: Vec<Element> = (0..n).filter(|&e| !m.is_absorber(e)).collect();
    let mut out = Vec::new();
    for &eta in &non_absorbers {
        let image: std::collections::BTreeSet<Element> =
            non_absorbers.iter().map(|&x| m.op(eta, x)).collect();
        if image.len() < 2 {
            continue;
        }
        for &g in &non_absorbers {
            if g == eta {
                continue;
            }
            let inert = non_absorbers.iter().all(|&x| {
                let y = m.op(g, x);
                y != m.z1() && y != m.z2()
            });
            if !inert {
                continue;
            }
            for &rho in &non_absorbers {
                if rho == eta || rho == g {
                    continue;
                }
                let compose = non_absorbers
                    .iter()
                    .all(|&x| m.op(eta, x) == m.op(rho, m.op(g, x)));
                if compose {
                    out.push(ComposeInertTriple { eta, g, rho });
                }
            }
        }
    }
    out
}
