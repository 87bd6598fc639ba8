use std::collections::BTreeSet;

use serde::Serialize;

use crate::cpa::{cpa_graph, CpaGraph};
use crate::rule::Grammar;
use crate::second_order::rules_isomorphic;

/// Garbage-collection hints after an evolution. Nothing is deleted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GcHints {
    /// No conflict or dependency edge in the new CPA graph.
    pub disconnected_rules: Vec<String>,
    /// Rules whose span is an isomorphism.
    pub effect_free_rules: Vec<String>,
    /// Pairs of isomorphic rules.
    pub duplicate_pairs: Vec<(String, String)>,
    /// Delete-delete pairs of the old graph that are gone in the new one.
    pub vanished_branch_points: Vec<(String, String)>,
    /// Dependencies `(from, to)` of the old graph that are gone in the new one.
    pub vanished_dependencies: Vec<(String, String)>,
    /// Rules that can apply indefinitely often at the same place.
    pub non_self_conflicting: Vec<String>,
}

impl GcHints {
    pub fn is_empty(&self) -> bool {
        self == &GcHints::default()
    }
}

pub fn gc_hints(old: &Grammar, new: &Grammar) -> GcHints {
    gc_hints_with(&cpa_graph(old), &cpa_graph(new), new)
}

/// As [`gc_hints`] with both CPA graphs precomputed.
pub fn gc_hints_with(old: &CpaGraph, new: &CpaGraph, grammar: &Grammar) -> GcHints {
    let live: BTreeSet<&String> = grammar.rules.keys().collect();
    let both = |a: &String, b: &String| live.contains(a) && live.contains(b);
    let rules: Vec<_> = grammar.rules.values().collect();
    let mut duplicate_pairs = Vec::new();
    for (i, p) in rules.iter().enumerate() {
        for q in &rules[i + 1..] {
            if rules_isomorphic(p, q) {
                duplicate_pairs.push((p.name().to_owned(), q.name().to_owned()));
            }
        }
    }
    GcHints {
        disconnected_rules: new.disconnected(),
        effect_free_rules: rules.iter().filter(|p| p.rule.is_effect_free()).map(|p| p.name().to_owned()).collect(),
        duplicate_pairs,
        vanished_branch_points: old
            .delete_delete
            .iter()
            .filter(|(a, b)| both(a, b) && !new.is_dd(a, b))
            .cloned()
            .collect(),
        vanished_dependencies: old
            .dependencies
            .keys()
            .filter(|(a, b)| both(a, b) && !new.has_dependency(a, b))
            .cloned()
            .collect(),
        non_self_conflicting: new.rules.iter().filter(|r| !new.has_conflict(r, r)).cloned().collect(),
    }
}
