use serde::{Deserialize, Serialize};

use crate::magma::PointedMagma;
use crate::table::Element;

/// Core elements `s`, `r` with `r·(s·x) = x` for every core `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RetractionPair {
    pub s: Element,
    pub r: Element,
    /// `s·(r·x) = x` also holds on core.
    pub mutual: bool,
    /// `r·z1 = z1`.
    pub anchored: bool,
}

/// All ordered core pairs `(s, r)` with `r·(s·x) = x` on core, filtered by
/// the mutual-inverse and anchoring flags, ascending by `(s, r)`.
///
/// Capability R in the usual convention is a non-empty result with both
/// flags set.
pub fn find_retraction_pairs(
    m: &PointedMagma,
    require_mutual: bool,
    require_anchor: bool,
) -> Vec<RetractionPair> {
    let core = m.core();
    let mut out = Vec::new();
    for &s in &core {
        for &r in &core {
            if !undoes(m, &core, s, r) {
                continue;
            }
            let mutual = undoes(m, &core, r, s);
            let anchored = m.op(r, m.z1()) == m.z1();
            if (require_mutual && !mutual) || (require_anchor && !anchored) {
                continue;
            }
            out.push(RetractionPair { s, r, mutual, anchored });
        }
    }
    out
}

/// `r·(s·x) = x` for all core `x`.
fn undoes(m: &PointedMagma, core: &[Element], s: Element, r: Element) -> bool {
    core.iter().all(|&x| m.op(r, m.op(s, x)) == x)
}

/// Capability R: a mutual, anchored retraction pair exists.
pub fn has_retraction(m: &PointedMagma) -> bool {
    !find_retraction_pairs(m, true, true).is_empty()
}
