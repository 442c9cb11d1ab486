//! Two-pointed magmas, the extensional 2-pointed magma axioms, and the
//! zero / classifier / non-classifier decomposition.

use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{DecomposeError, ValidationError};
use crate::table::{CayleyTable, Element};

/// A Cayley table with two designated elements `z1`, `z2`.
///
/// Nothing about the designated elements is checked here; see
/// [`validate_e2pm`] for the validated form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PointedMagma {
    table: CayleyTable,
    z1: Element,
    z2: Element,
}

impl PointedMagma {
    /// Panics if either designated element is outside the carrier.
    pub fn new(table: CayleyTable, z1: Element, z2: Element) -> Self {
        assert!(z1 < table.order() && z2 < table.order(), "absorber index out of range");
        PointedMagma { table, z1, z2 }
    }

    #[inline]
    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    #[inline]
    pub fn z1(&self) -> Element {
        self.z1
    }

    #[inline]
    pub fn z2(&self) -> Element {
        self.z2
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.table.order()
    }

    #[inline]
    pub fn op(&self, a: Element, b: Element) -> Element {
        self.table.op(a, b)
    }

    /// Whether `v` is one of the designated absorbers.
    #[inline]
    pub fn is_absorber(&self, v: Element) -> bool {
        v == self.z1 || v == self.z2
    }

    /// All elements except `z1`, `z2`, ascending.
    pub fn core(&self) -> Vec<Element> {
        self.table.elements().filter(|&e| !self.is_absorber(e)).collect()
    }

    pub fn into_table(self) -> CayleyTable {
        self.table
    }
}

/// A validated extensional 2-pointed magma.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct E2pm(PointedMagma);

impl Deref for E2pm {
    type Target = PointedMagma;

    fn deref(&self) -> &PointedMagma {
        &self.0
    }
}

impl E2pm {
    pub fn as_pointed(&self) -> &PointedMagma {
        &self.0
    }

    pub fn into_pointed(self) -> PointedMagma {
        self.0
    }
}

impl TryFrom<PointedMagma> for E2pm {
    type Error = ValidationError;

    fn try_from(m: PointedMagma) -> Result<Self, Self::Error> {
        check_axioms(&m.table, m.z1, m.z2)?;
        Ok(E2pm(m))
    }
}

/// Validates the extensional 2-pointed magma axioms.
///
/// Errors report the first failing axiom: absorber checks come before
/// extensionality, and elements are scanned in ascending order.
pub fn validate_e2pm(table: CayleyTable, z1: Element, z2: Element) -> Result<E2pm, ValidationError> {
    check_axioms(&table, z1, z2)?;
    Ok(E2pm(PointedMagma { table, z1, z2 }))
}

fn check_axioms(table: &CayleyTable, z1: Element, z2: Element) -> Result<(), ValidationError> {
    let n = table.order();
    for z in [z1, z2] {
        if z >= n {
            return Err(ValidationError::AbsorberOutOfRange(z));
        }
    }
    if z1 == z2 {
        return Err(ValidationError::SameAbsorbers);
    }
    for z in [z1, z2] {
        if !table.is_left_absorber(z) {
            return Err(ValidationError::AbsorberMissing(z));
        }
    }
    if let Some(e) = table
        .elements()
        .find(|&e| e != z1 && e != z2 && table.is_left_absorber(e))
    {
        return Err(ValidationError::ExtraAbsorber(e));
    }
    for a in 0..n {
        for b in a + 1..n {
            if table.row(a) == table.row(b) {
                return Err(ValidationError::ExtensionalityViolation(a, b));
            }
        }
    }
    Ok(())
}

/// Core of a validated magma: every element except the two absorbers.
pub fn core_elements(m: &E2pm) -> Vec<Element> {
    m.core()
}

/// The zero / classifier / non-classifier partition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Decomposition {
    pub zeros: Vec<Element>,
    pub classifiers: Vec<Element>,
    pub nonclassifiers: Vec<Element>,
}

impl Decomposition {
    /// Image of every class under `perm`, each class sorted ascending.
    pub fn map(&self, perm: &[Element]) -> Decomposition {
        let img = |set: &[Element]| {
            let mut v: Vec<Element> = set.iter().map(|&e| perm[e]).collect();
            v.sort_unstable();
            v
        };
        Decomposition {
            zeros: img(&self.zeros),
            classifiers: img(&self.classifiers),
            nonclassifiers: img(&self.nonclassifiers),
        }
    }
}

/// A core element whose core row hits both absorbers and core elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DichotomyViolation {
    pub element: Element,
    /// `(x, y)`: the first core input sent to an absorber and the first
    /// core input sent to a core element.
    pub mixed_outputs: (Element, Element),
}

/// How a single core element behaves on core inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum CoreBehaviour {
    Classifier,
    NonClassifier,
    Mixed { to_absorber: Element, to_core: Element },
}

pub(crate) fn core_behaviour(m: &PointedMagma, core: &[Element], y: Element) -> CoreBehaviour {
    let mut to_absorber = None;
    let mut to_core = None;
    for &x in core {
        if m.is_absorber(m.op(y, x)) {
            to_absorber.get_or_insert(x);
        } else {
            to_core.get_or_insert(x);
        }
    }
    match (to_absorber, to_core) {
        (Some(a), Some(c)) => CoreBehaviour::Mixed {
            to_absorber: a,
            to_core: c,
        },
        (_, None) => CoreBehaviour::Classifier,
        (None, Some(_)) => CoreBehaviour::NonClassifier,
    }
}

/// Partitions the carrier into absorbers, classifiers and non-classifiers,
/// or reports the first core element (ascending) whose core row is mixed.
pub fn decompose(m: &PointedMagma) -> Result<Decomposition, DecomposeError> {
    let core = m.core();
    if core.is_empty() {
        return Err(DecomposeError::EmptyCore);
    }
    let mut classifiers = Vec::new();
    let mut nonclassifiers = Vec::new();
    for &y in &core {
        match core_behaviour(m, &core, y) {
            CoreBehaviour::Classifier => classifiers.push(y),
            CoreBehaviour::NonClassifier => nonclassifiers.push(y),
            CoreBehaviour::Mixed { to_absorber, to_core } => {
                return Err(DecomposeError::Violation(DichotomyViolation {
                    element: y,
                    mixed_outputs: (to_absorber, to_core),
                }))
            }
        }
    }
    let mut zeros = vec![m.z1, m.z2];
    zeros.sort_unstable();
    Ok(Decomposition {
        zeros,
        classifiers,
        nonclassifiers,
    })
}

/// Permutation sending `z1 -> 0` and `z2 -> 1` by at most two
/// transpositions; every other element not involved stays put.
pub fn normalizing_permutation(n: usize, z1: Element, z2: Element) -> Vec<Element> {
    // Track where each original element currently sits.
    let mut perm: Vec<Element> = (0..n).collect();
    let swap_images = |perm: &mut Vec<Element>, a: Element, b: Element| {
        for p in perm.iter_mut() {
            if *p == a {
                *p = b;
            } else if *p == b {
                *p = a;
            }
        }
    };
    let at = perm[z1];
    swap_images(&mut perm, at, 0);
    if perm[z2] != 1 {
        let at = perm[z2];
        swap_images(&mut perm, at, 1);
    }
    perm
}

/// Relabels `m` so that `z1 = 0` and `z2 = 1`. Idempotent.
pub fn normalize(m: &E2pm) -> E2pm {
    normalize_with_permutation(m).0
}

/// Like [`normalize`], also returning the applied relabelling.
pub fn normalize_with_permutation(m: &E2pm) -> (E2pm, Vec<Element>) {
    let perm = normalizing_permutation(m.order(), m.z1, m.z2);
    if perm.iter().enumerate().all(|(i, &p)| i == p) {
        return (m.clone(), perm);
    }
    let table = m.table.relabel(&perm);
    let out = E2pm(PointedMagma {
        table,
        z1: perm[m.z1],
        z2: perm[m.z2],
    });
    debug_assert!(check_axioms(&out.table, out.z1, out.z2).is_ok());
    (out, perm)
}
