use serde::{Deserialize, Serialize};

use crate::error::{CapabilityError, DecomposeError};
use crate::magma::{decompose, Decomposition, DichotomyViolation, PointedMagma};
use crate::table::Element;

/// Quantifier domain for the classifier-existence clause.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassifierReading {
    /// `τ·x ∈ {z1, z2}` for every `x` in the carrier.
    #[default]
    Strict,
    /// `τ·x ∈ {z1, z2}` for every core `x`.
    CoreOnly,
}

/// Why a decomposable magma still fails the dichotomy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Degeneracy {
    /// No element satisfies the classifier-existence clause.
    NoClassifier,
    /// Every core element is a classifier.
    NoNonClassifier,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DichotomyReport {
    pub decomposition: Decomposition,
    /// Classifiers satisfying the existence clause under `reading`.
    pub witnesses: Vec<Element>,
    pub reading: ClassifierReading,
    pub degenerate: Option<Degeneracy>,
}

impl DichotomyReport {
    pub fn holds(&self) -> bool {
        self.degenerate.is_none()
    }
}

/// Outcome of the dichotomy check, distinguishing every failure mode.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum DichotomyStatus {
    Decomposed(DichotomyReport),
    Violation(DichotomyViolation),
    EmptyCore,
}

impl DichotomyStatus {
    /// Capability D.
    pub fn holds(&self) -> bool {
        matches!(self, DichotomyStatus::Decomposed(r) if r.holds())
    }

    pub fn decomposition(&self) -> Option<&Decomposition> {
        match self {
            DichotomyStatus::Decomposed(r) => Some(&r.decomposition),
            _ => None,
        }
    }

    pub fn violation(&self) -> Option<&DichotomyViolation> {
        match self {
            DichotomyStatus::Violation(v) => Some(v),
            _ => None,
        }
    }
}

impl From<Result<DichotomyReport, DecomposeError>> for DichotomyStatus {
    fn from(r: Result<DichotomyReport, DecomposeError>) -> Self {
        match r {
            Ok(rep) => DichotomyStatus::Decomposed(rep),
            Err(DecomposeError::Violation(v)) => DichotomyStatus::Violation(v),
            Err(DecomposeError::EmptyCore) => DichotomyStatus::EmptyCore,
        }
    }
}

/// Core elements whose whole row (over every column) is absorber-valued.
pub fn strict_classifiers(m: &PointedMagma) -> Vec<Element> {
    m.core()
        .into_iter()
        .filter(|&t| m.table().elements().all(|x| m.is_absorber(m.op(t, x))))
        .collect()
}

/// Checks capability D.
///
/// Classifier existence is quantified according to `reading`; the
/// classifier / non-classifier branches always range over core.
pub fn check_dichotomy(
    m: &PointedMagma,
    reading: ClassifierReading,
) -> Result<DichotomyReport, DecomposeError> {
    let decomposition = decompose(m)?;
    let witnesses = match reading {
        ClassifierReading::Strict => strict_classifiers(m),
        ClassifierReading::CoreOnly => decomposition.classifiers.clone(),
    };
    let degenerate = if witnesses.is_empty() {
        Some(Degeneracy::NoClassifier)
    } else if decomposition.nonclassifiers.is_empty() {
        Some(Degeneracy::NoNonClassifier)
    } else {
        None
    };
    Ok(DichotomyReport {
        decomposition,
        witnesses,
        reading,
        degenerate,
    })
}

pub fn dichotomy_status(m: &PointedMagma, reading: ClassifierReading) -> DichotomyStatus {
    check_dichotomy(m, reading).into()
}

/// Placement of retraction pairs in the presence of R and D: every mutual
/// retraction pair has both members among the non-classifiers.
pub fn verify_placement(m: &PointedMagma, reading: ClassifierReading) -> Result<bool, CapabilityError> {
    let report = check_dichotomy(m, reading)
        .ok()
        .filter(DichotomyReport::holds)
        .ok_or_else(|| CapabilityError::PreconditionUnmet("dichotomy does not hold".into()))?;
    if !super::has_retraction(m) {
        return Err(CapabilityError::PreconditionUnmet("no mutual anchored retraction pair".into()));
    }
    let n_set = &report.decomposition.nonclassifiers;
    Ok(super::find_retraction_pairs(m, true, false)
        .iter()
        .all(|p| n_set.contains(&p.s) && n_set.contains(&p.r)))
}
