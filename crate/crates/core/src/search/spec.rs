use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::capabilities::{
    check_dichotomy, find_compose_inert_triples, find_icp_triples, find_retraction_pairs,
    find_weak_icp_no_distinctness, find_weak_icp_no_nontriviality, is_associative, is_commutative,
    k_combinators, right_identity, ClassifierReading, IcpTriple,
};
use crate::error::SearchError;
use crate::magma::{validate_e2pm, PointedMagma};
use crate::table::{CayleyTable, Element};

/// Properties a search can require or forbid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Predicate {
    E2PM,
    /// Mutual, anchored retraction pair (capability R).
    #[serde(rename = "R_mutual", alias = "R")]
    RMutual,
    /// One-sided, anchored retraction pair.
    #[serde(rename = "R_onesided")]
    ROneSided,
    D,
    H,
    ComposeInert,
    WeakIcpNoDistinct,
    WeakIcpNoNontrivial,
    Associative,
    RightIdentity,
    Commutative,
    KCombinator,
}

impl Predicate {
    pub const ALL: [Predicate; 12] = [
        Predicate::E2PM,
        Predicate::RMutual,
        Predicate::ROneSided,
        Predicate::D,
        Predicate::H,
        Predicate::ComposeInert,
        Predicate::WeakIcpNoDistinct,
        Predicate::WeakIcpNoNontrivial,
        Predicate::Associative,
        Predicate::RightIdentity,
        Predicate::Commutative,
        Predicate::KCombinator,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Predicate::E2PM => "E2PM",
            Predicate::RMutual => "R_mutual",
            Predicate::ROneSided => "R_onesided",
            Predicate::D => "D",
            Predicate::H => "H",
            Predicate::ComposeInert => "ComposeInert",
            Predicate::WeakIcpNoDistinct => "WeakIcpNoDistinct",
            Predicate::WeakIcpNoNontrivial => "WeakIcpNoNontrivial",
            Predicate::Associative => "Associative",
            Predicate::RightIdentity => "RightIdentity",
            Predicate::Commutative => "Commutative",
            Predicate::KCombinator => "KCombinator",
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Predicate {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "R" {
            return Ok(Predicate::RMutual);
        }
        Predicate::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown predicate {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Polarity {
    #[serde(rename = "require", alias = "+")]
    Require,
    #[serde(rename = "forbid", alias = "-")]
    Forbid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Constraint {
    pub pred: Predicate,
    pub polarity: Polarity,
}

impl Constraint {
    pub fn require(pred: Predicate) -> Self {
        Constraint {
            pred,
            polarity: Polarity::Require,
        }
    }

    pub fn forbid(pred: Predicate) -> Self {
        Constraint {
            pred,
            polarity: Polarity::Forbid,
        }
    }
}

/// Pins the witness of a required predicate to specific elements.
///
/// `s`, `r` constrain retraction pairs, `tau` the classifier, and `a`, `b`,
/// `c` every ICP-style triple (`η`, `g`, `ρ` for Compose+Inert). Roles only
/// affect constraints with [`Polarity::Require`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedRoles {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Element>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<Element>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<Element>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Element>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Element>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Element>,
}

impl FixedRoles {
    pub fn is_empty(&self) -> bool {
        *self == FixedRoles::default()
    }

    fn all(&self) -> [(&'static str, Option<Element>); 6] {
        [
            ("s", self.s),
            ("r", self.r),
            ("tau", self.tau),
            ("a", self.a),
            ("b", self.b),
            ("c", self.c),
        ]
    }

    pub(crate) fn triple_matches(&self, t: &IcpTriple) -> bool {
        self.a.is_none_or(|a| a == t.a)
            && self.b.is_none_or(|b| b == t.b)
            && self.c.is_none_or(|c| c == t.c)
    }
}

/// A conjunction of required / forbidden properties at a fixed size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchSpec {
    pub n: usize,
    pub constraints: Vec<Constraint>,
    #[serde(default, skip_serializing_if = "FixedRoles::is_empty")]
    pub fixed_roles: FixedRoles,
    /// Maximum number of witnesses to collect.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limit: Option<usize>,
    /// Node budget; defaults to [`DEFAULT_BUDGET`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    /// Require core rows in strictly increasing lexicographic order.
    /// Results are then never certified exhaustive.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub symmetry_breaking: bool,
    #[serde(default)]
    pub classifier_reading: ClassifierReading,
}

pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

/// Largest size the engine accepts.
pub const MAX_SEARCH_ORDER: usize = 16;

impl SearchSpec {
    pub fn new(n: usize, constraints: Vec<Constraint>) -> Self {
        SearchSpec {
            n,
            constraints,
            fixed_roles: FixedRoles::default(),
            limit: None,
            budget: None,
            symmetry_breaking: false,
            classifier_reading: ClassifierReading::Strict,
        }
    }

    /// Shorthand: `require` and `forbid` lists.
    pub fn from_lists(n: usize, require: &[Predicate], forbid: &[Predicate]) -> Self {
        let constraints = require
            .iter()
            .map(|&p| Constraint::require(p))
            .chain(forbid.iter().map(|&p| Constraint::forbid(p)))
            .collect();
        SearchSpec::new(n, constraints)
    }

    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = Some(limit);
        self
    }

    pub fn with_roles(mut self, roles: FixedRoles) -> Self {
        self.fixed_roles = roles;
        self
    }

    pub fn budget(&self) -> u64 {
        self.budget.unwrap_or(DEFAULT_BUDGET)
    }

    pub fn requires(&self, pred: Predicate) -> bool {
        self.constraints
            .iter()
            .any(|c| c.pred == pred && c.polarity == Polarity::Require)
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        let invalid = |m: String| Err(SearchError::SpecInvalid(m));
        if self.n < 2 {
            return invalid(format!("n = {} but the absorber rows need n >= 2", self.n));
        }
        if self.n > MAX_SEARCH_ORDER {
            return invalid(format!("n = {} exceeds the maximum of {MAX_SEARCH_ORDER}", self.n));
        }
        for (name, role) in self.fixed_roles.all() {
            if let Some(e) = role {
                if e >= self.n || e < 2 {
                    return invalid(format!("role {name} = {e} must be a core element in 2..{}", self.n));
                }
            }
        }
        let mut seen = std::collections::HashSet::new();
        for c in &self.constraints {
            if !seen.insert(c.pred) {
                return invalid(format!("predicate {} listed more than once", c.pred));
            }
        }
        if self.limit == Some(0) {
            return invalid("limit must be positive".into());
        }
        Ok(())
    }

    /// Whether a complete table (with absorbers `0`, `1`) satisfies every
    /// constraint, decided by the capability checkers.
    pub fn satisfied_by(&self, table: &CayleyTable) -> bool {
        if table.order() != self.n {
            return false;
        }
        let m = PointedMagma::new(table.clone(), 0, 1);
        self.constraints.iter().all(|c| {
            let roles = match c.polarity {
                Polarity::Require => self.fixed_roles,
                Polarity::Forbid => FixedRoles::default(),
            };
            holds(c.pred, &m, &roles, self.classifier_reading) == (c.polarity == Polarity::Require)
        })
    }
}

/// Decides `pred` on a complete pointed table.
pub fn holds(pred: Predicate, m: &PointedMagma, roles: &FixedRoles, reading: ClassifierReading) -> bool {
    let pair_ok = |s: Element, r: Element| roles.s.is_none_or(|x| x == s) && roles.r.is_none_or(|x| x == r);
    match pred {
        Predicate::E2PM => validate_e2pm(m.table().clone(), m.z1(), m.z2()).is_ok(),
        Predicate::RMutual => find_retraction_pairs(m, true, true)
            .iter()
            .any(|p| pair_ok(p.s, p.r)),
        Predicate::ROneSided => find_retraction_pairs(m, false, true)
            .iter()
            .any(|p| pair_ok(p.s, p.r)),
        Predicate::D => match check_dichotomy(m, reading) {
            Ok(rep) => rep.holds() && roles.tau.is_none_or(|t| rep.witnesses.contains(&t)),
            Err(_) => false,
        },
        Predicate::H => find_icp_triples(m).iter().any(|t| roles.triple_matches(t)),
        Predicate::ComposeInert => find_compose_inert_triples(m)
            .into_iter()
            .any(|t| roles.triple_matches(&t.into())),
        Predicate::WeakIcpNoDistinct => find_weak_icp_no_distinctness(m)
            .iter()
            .any(|t| roles.triple_matches(t)),
        Predicate::WeakIcpNoNontrivial => find_weak_icp_no_nontriviality(m)
            .iter()
            .any(|t| roles.triple_matches(t)),
        Predicate::Associative => is_associative(m.table()).holds,
        Predicate::RightIdentity => right_identity(m.table()).is_some(),
        Predicate::Commutative => is_commutative(m.table()).holds,
        Predicate::KCombinator => !k_combinators(m.table()).is_empty(),
    }
}
