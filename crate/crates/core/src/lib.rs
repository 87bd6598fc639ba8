//! Typed graph rewriting: DPO rules with negative application conditions,
//! critical-pair analysis, second-order rule rewriting and whole-grammar
//! evolution.

pub mod cpa;
pub mod evolution;
pub mod graph;
pub mod io;
pub mod morphism;
pub mod pushout;
pub mod rule;
pub mod search;
pub mod second_order;

pub use graph::{Elem, Graph, Id, Kind, TypedEdge, TypedGraph, Violation};
pub use morphism::Morphism;

use std::fmt;

/// Failure of the DPO gluing condition for a given match.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GluingViolation {
    /// Edges of the host attached to a deleted node but not deleted themselves.
    Dangling(Vec<Id>),
    /// Deleted elements identified with some other element by the match.
    Identification(Vec<Elem>),
}

impl fmt::Display for GluingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GluingViolation::Dangling(es) => write!(f, "dangling edges {}", join(es)),
            GluingViolation::Identification(es) => write!(f, "identified elements {}", join(es)),
        }
    }
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain mismatch at {0}")]
    DomainMismatch(String),
    #[error("gluing condition violated: {0}")]
    Gluing(GluingViolation),
    #[error("graph with {size} elements exceeds the oracle bound {bound}")]
    BoundExceeded { size: usize, bound: usize },
    #[error("match is not applicable: {0}")]
    NotApplicable(String),
    #[error("NAC shift requires a mono morphism")]
    NonMonoShift,
    #[error("rule {rule} uses types removed by the evolution: {types}")]
    TypeOrphan { rule: String, types: String },
    #[error("evolution did not reach a fixpoint within {0} steps")]
    IterationBoundExceeded(usize),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid document: {0}")]
    Semantic(String),
    #[error("evolution rule set has red issues; use --force to override")]
    RedIssues,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
