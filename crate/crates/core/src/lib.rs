//! Exact toolkit for generalized hypergraph coloring under hereditary
//! properties.
//!
//! The library models finite loopless multi-hypergraphs and provides:
//!
//! - construction and reduction operations (induced subhypergraphs,
//!   shrinking, merging, edge replication) with exact degree arithmetic,
//! - connectivity, block decompositions and brick recognition,
//! - strict degeneracy, vector functions, exhaustive f-partition search,
//!   and a hard-pair recognizer producing structural certificates,
//! - hereditary ("smooth") properties as plug-ins, with the edgeless,
//!   bounded-degree and bounded-degeneracy families built in,
//! - list colorings whose color classes live in a chosen property,
//!   chromatic and list-chromatic numbers, and criticality tests,
//! - exact-rational Gallai-style degree-sum machinery, and
//! - exhaustive enumeration of small instances up to isomorphism, feeding
//!   the sweep drivers in [`sweep`].
//!
//! Everything is pure and deterministic: instances are immutable values,
//! sweeps merge their per-instance results in generation order, so reports
//! are byte-identical across runs and thread counts.

pub mod coloring;
pub mod degeneracy;
pub mod enumerate;
pub mod exec;
pub mod hypergraph;
pub mod property;
pub mod structure;
pub mod sweep;
pub mod theorems;

mod kernel;

pub use coloring::{Coloring, CriticalityReport, ListAssignment};
pub use degeneracy::{HardPairCertificate, Partition, VectorFunction};
pub use enumerate::EnumerationBounds;
pub use hypergraph::{DegreeProfile, Hypergraph};
pub use property::Property;
pub use structure::{BlockDecomposition, BrickClassification};

/// Errors shared by all modules.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// An invariant of a value under construction was violated.
    #[error("construction error: {0}")]
    Construction(String),
    /// An argument was outside an operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A named precondition of a verifier was not met.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A configurable size guard was exceeded.
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    /// Input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
