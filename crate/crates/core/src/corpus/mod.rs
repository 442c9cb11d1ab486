//! The frozen witness corpus and the table file formats.

mod format;
mod tables;

pub use format::{
    canonicalize, load_structured, load_table, load_text, save_structured, save_table, LoadedTable,
};

use serde::{Deserialize, Serialize};

use crate::capabilities::{
    find_icp_triples, find_retraction_pairs, find_weak_icp_no_nontriviality, strict_classifiers,
    CapabilitySummary, IcpTriple,
};
use crate::magma::{core_behaviour, validate_e2pm, CoreBehaviour, E2pm, PointedMagma};
use crate::table::{CayleyTable, Element};

/// Role annotations attached to a corpus table.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Roles {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Element>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<Element>,
    /// Classifiers.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tau: Vec<Element>,
    /// ICP witness `(a, b, c)`, equivalently `(η, g, ρ)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub icp: Option<IcpTriple>,
    /// Triple satisfying the ICP without its non-triviality clause.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weak_icp: Option<IcpTriple>,
    /// Elements whose core rows mix absorber and core outputs.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub mixed: Vec<Element>,
}

/// A named corpus table with its roles and expected capability flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedWitness {
    pub name: &'static str,
    pub magma: E2pm,
    pub roles: Roles,
    pub expected: CapabilitySummary,
    /// Produced by this toolkit's search rather than transcribed.
    pub derived: bool,
}

impl NamedWitness {
    pub fn to_document(&self) -> LoadedTable {
        LoadedTable {
            name: Some(self.name.to_string()),
            table: self.magma.table().clone(),
            z1: self.magma.z1(),
            z2: self.magma.z2(),
            roles: Some(self.roles.clone()),
            expected: Some(self.expected),
        }
    }
}

/// Problems with `roles` as annotations of `m`; empty when every role
/// re-checks.
pub fn check_roles(m: &PointedMagma, roles: &Roles) -> Vec<String> {
    let mut problems = Vec::new();
    let core = m.core();
    if let (Some(s), Some(r)) = (roles.s, roles.r) {
        if !find_retraction_pairs(m, true, true).iter().any(|p| p.s == s && p.r == r) {
            problems.push(format!("({s}, {r}) is not a mutual anchored retraction pair"));
        }
    } else if roles.s.is_some() || roles.r.is_some() {
        problems.push("s and r must be given together".into());
    }
    let classifiers = strict_classifiers(m);
    for &t in &roles.tau {
        if !classifiers.contains(&t) {
            problems.push(format!("{t} is not a classifier"));
        }
    }
    if let Some(t) = roles.icp {
        if !find_icp_triples(m).contains(&t) {
            problems.push(format!("({}, {}, {}) is not an ICP triple", t.a, t.b, t.c));
        }
    }
    if let Some(t) = roles.weak_icp {
        if !find_weak_icp_no_nontriviality(m).contains(&t) {
            problems.push(format!("({}, {}, {}) is not a weakened ICP triple", t.a, t.b, t.c));
        }
    }
    for &e in &roles.mixed {
        if !core.contains(&e) || !matches!(core_behaviour(m, &core, e), CoreBehaviour::Mixed { .. }) {
            problems.push(format!("{e} does not mix absorber and core outputs"));
        }
    }
    problems
}

/// Corpus names in their stable order.
pub const CORPUS_NAMES: [&str; 12] = [
    "kripke4",
    "kripke5",
    "witness5",
    "witness6",
    "countermodel8",
    "sNoH6",
    "dNotH10",
    "hNotD10",
    "dNotS4",
    "hNotS5",
    "hNotD5",
    "witness10",
];

const fn flags(r: bool, d: bool, h: bool) -> CapabilitySummary {
    CapabilitySummary {
        r,
        d,
        h,
        associative: false,
        right_identity: false,
        commutative: false,
    }
}

fn build(
    name: &'static str,
    rows: &[&[usize]],
    roles: Roles,
    expected: CapabilitySummary,
) -> NamedWitness {
    let table = CayleyTable::from_rows(rows).expect("corpus table is well-formed");
    let magma = validate_e2pm(table, 0, 1).expect("corpus table is an E2PM");
    NamedWitness {
        name,
        magma,
        roles,
        expected,
        derived: false,
    }
}

fn sr(s: Element, r: Element) -> Roles {
    Roles {
        s: Some(s),
        r: Some(r),
        ..Roles::default()
    }
}

fn icp(a: Element, b: Element, c: Element) -> Option<IcpTriple> {
    Some(IcpTriple { a, b, c })
}

/// The twelve transcribed tables, in [`CORPUS_NAMES`] order.
pub fn corpus_all() -> Vec<NamedWitness> {
    use tables::*;
    vec![
        build("kripke4", KRIPKE4, Roles { tau: vec![2], ..sr(3, 3) }, flags(true, true, false)),
        build("kripke5", KRIPKE5, Roles { tau: vec![4], ..sr(2, 3) }, flags(true, true, false)),
        build(
            "witness5",
            WITNESS5,
            Roles {
                tau: vec![3, 4],
                icp: icp(3, 2, 4),
                ..sr(2, 2)
            },
            flags(true, true, true),
        ),
        build(
            "witness6",
            WITNESS6,
            Roles {
                tau: vec![4],
                icp: icp(2, 3, 5),
                ..sr(2, 3)
            },
            flags(true, true, true),
        ),
        build(
            "countermodel8",
            COUNTERMODEL8,
            Roles {
                tau: vec![4],
                mixed: vec![5, 7],
                ..sr(2, 3)
            },
            flags(true, false, false),
        ),
        build("sNoH6", S_NO_H6, sr(2, 2), flags(true, false, false)),
        build("dNotH10", D_NOT_H10, Roles { tau: vec![4], ..sr(2, 3) }, flags(true, true, false)),
        build(
            "hNotD10",
            H_NOT_D10,
            Roles {
                tau: vec![4],
                icp: icp(8, 6, 7),
                mixed: vec![5],
                ..sr(2, 3)
            },
            flags(true, false, true),
        ),
        build("dNotS4", D_NOT_S4, Roles { tau: vec![2], ..Roles::default() }, flags(false, true, false)),
        build("hNotS5", H_NOT_S5, Roles::default(), flags(false, false, true)),
        build("hNotD5", H_NOT_D5, Roles::default(), flags(false, false, true)),
        build(
            "witness10",
            WITNESS10,
            Roles {
                tau: vec![4],
                icp: icp(8, 6, 7),
                ..sr(2, 3)
            },
            flags(true, true, true),
        ),
    ]
}

/// Looks up a transcribed or derived entry by name.
pub fn by_name(name: &str) -> Option<NamedWitness> {
    corpus_all()
        .into_iter()
        .chain(derived_entries())
        .find(|w| w.name == name)
}

/// Names of the derived entries.
pub const DERIVED_NAMES: [&str; 1] = ["nontrivialitySep6"];

/// Tables produced by this toolkit's own search and frozen afterwards.
pub fn derived_entries() -> Vec<NamedWitness> {
    let mut sep = build(
        "nontrivialitySep6",
        tables::NONTRIVIALITY_SEP6,
        Roles {
            tau: vec![3, 4],
            weak_icp: icp(4, 5, 3),
            ..sr(2, 2)
        },
        flags(true, true, false),
    );
    sep.derived = true;
    vec![sep]
}
