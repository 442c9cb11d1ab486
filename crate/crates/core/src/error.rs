use thiserror::Error;

use crate::table::Element;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("carrier must have at least one element")]
    EmptyCarrier,
    #[error("carrier of size {0} exceeds the supported maximum")]
    TooLarge(usize),
    #[error("expected {expected} entries, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("entry ({row}, {col}) = {value} is outside 0..{n}")]
    OutOfRange {
        row: usize,
        col: usize,
        value: usize,
        n: usize,
    },
}

/// First failing axiom of an extensional 2-pointed magma.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("designated absorber {0} is not an element of the carrier")]
    AbsorberOutOfRange(Element),
    #[error("the two designated absorbers coincide")]
    SameAbsorbers,
    #[error("element {0} is not a left-absorber")]
    AbsorberMissing(Element),
    #[error("element {0} is an extra left-absorber")]
    ExtraAbsorber(Element),
    #[error("elements {0} and {1} have identical rows")]
    ExtensionalityViolation(Element, Element),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("core is empty; decomposition is degenerate")]
    EmptyCore,
    #[error("element {} mixes absorber and core outputs on core", .0.element)]
    Violation(crate::magma::DichotomyViolation),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CapabilityError {
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("entry {value} at line {line}, column {column} is outside 0..{n}")]
    Domain {
        line: usize,
        column: usize,
        value: usize,
        n: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("not a permutation of 0..{0}")]
    NotPermutation(usize),
    #[error("permutation does not fix absorber {0}")]
    AbsorberNotFixed(Element),
    #[error("carrier sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("invalid search spec: {0}")]
    SpecInvalid(String),
    #[error("node budget of {budget} exhausted after {nodes} nodes")]
    ResourceLimit { budget: u64, nodes: u64 },
    #[error("search result contradicts a known theorem: {0}")]
    Contradiction(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CnfError {
    #[error("invalid search spec: {0}")]
    SpecInvalid(String),
    #[error("cell ({row}, {col}) has {true_count} true values in the model")]
    ModelInconsistent {
        row: usize,
        col: usize,
        true_count: usize,
    },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}
