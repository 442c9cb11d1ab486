//! Verification and exhaustive search for finite extensional 2-pointed
//! magmas: Cayley tables with exactly two left-absorbers and pairwise
//! distinct rows.
//!
//! The crate decides three capabilities on concrete tables:
//!
//! * **R**, a retraction pair `s`, `r` in the core with `r·(s·x) = x`;
//! * **D**, the classifier dichotomy splitting the core into classifiers
//!   and non-classifiers;
//! * **H**, the internal composition property `a·x = c·(b·x)`;
//!
//! together with the classical laws, and searches table space
//! exhaustively for models of any combination of them.

pub mod capabilities;
pub mod cnf;
pub mod corpus;
pub mod error;
pub mod iso;
pub mod magma;
pub mod search;
pub mod table;

pub use capabilities::{full_report, CapabilityReport, CapabilitySummary};
pub use error::*;
pub use magma::{decompose, validate_e2pm, Decomposition, DichotomyViolation, E2pm, PointedMagma};
pub use table::{CayleyTable, Element};
