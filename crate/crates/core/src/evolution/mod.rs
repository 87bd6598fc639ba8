//! Whole-grammar evolution driven by second-order rules.

pub mod catalog;
pub mod critical;
pub mod execute;
pub mod gc;
pub mod interplay;

pub use catalog::{IssueCode, OpenIssue, Severity, CATALOG};
pub use critical::check_evolution_rules;
pub use execute::{
    check_compatible, execute_evolution, validate_evolution, EvolutionResult, EvolutionStructure, ExecuteOptions, TraceStep, TypeSpan,
};
pub use gc::{gc_hints, GcHints};
pub use interplay::{interplay, interplay_of, InterplayFinding, InterplayKind, InterplayReport};

use crate::rule::Grammar;

/// Rule-set issues plus interplay of `es` with the rules of `g`.
pub fn interplay_report(es: &EvolutionStructure, g: &Grammar) -> (InterplayReport, Vec<OpenIssue>) {
    let report = interplay_of(&es.rules, &g.rules);
    let mut issues = check_evolution_rules(&es.rules);
    issues.extend(report.issues.iter().cloned());
    (report, issues)
}
