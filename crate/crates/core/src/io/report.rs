use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use crate::cpa::CpaGraph;
use crate::evolution::{EvolutionResult, GcHints, InterplayFinding, InterplayReport, OpenIssue, Severity};

#[derive(Serialize)]
struct PairDoc<'a> {
    from: &'a str,
    to: &'a str,
    kinds: BTreeMap<&'static str, usize>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct CpaDoc<'a> {
    rules: &'a [String],
    conflicts: Vec<PairDoc<'a>>,
    dependencies: Vec<PairDoc<'a>>,
    delete_delete: Vec<[&'a str; 2]>,
    double_produce_forbid: Vec<[&'a str; 2]>,
}

fn pretty<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("reports serialize");
    s.push('\n');
    s
}

pub fn cpa_json(c: &CpaGraph) -> String {
    let doc = CpaDoc {
        rules: &c.rules,
        conflicts: c
            .conflicts
            .iter()
            .map(|((a, b), ks)| PairDoc { from: a, to: b, kinds: ks.iter().map(|(k, n)| (k.label(), *n)).collect() })
            .collect(),
        dependencies: c
            .dependencies
            .iter()
            .map(|((a, b), ks)| PairDoc { from: a, to: b, kinds: ks.iter().map(|(k, n)| (k.label(), *n)).collect() })
            .collect(),
        delete_delete: c.delete_delete.iter().map(|(a, b)| [a.as_str(), b.as_str()]).collect(),
        double_produce_forbid: c.double_produce_forbid.iter().map(|(a, b)| [a.as_str(), b.as_str()]).collect(),
    };
    pretty(&doc)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct CheckDoc<'a> {
    red_issues: usize,
    modified_rules: Vec<String>,
    issues: &'a [OpenIssue],
    findings: &'a [InterplayFinding],
}

pub fn check_json(report: &InterplayReport, issues: &[OpenIssue]) -> String {
    pretty(&CheckDoc {
        red_issues: issues.iter().filter(|i| i.severity == Severity::Red).count(),
        modified_rules: report.modified_rules().into_iter().collect(),
        issues,
        findings: &report.findings,
    })
}

pub fn check_text(report: &InterplayReport, issues: &[OpenIssue]) -> String {
    let mut out = String::new();
    let modified: Vec<String> = report.modified_rules().into_iter().collect();
    let red = issues.iter().filter(|i| i.severity == Severity::Red).count();
    let _ = writeln!(out, "modified step rules: {}", if modified.is_empty() { "none".into() } else { modified.join(", ") });
    let _ = writeln!(out, "red issues: {red}");
    for i in issues {
        let _ = writeln!(out, "{} [{}] {}: {}", i.code, i.severity, i.subjects.join(" / "), i.problem);
        let _ = writeln!(out, "    action: {}", i.action);
    }
    for f in &report.findings {
        let _ = writeln!(
            out,
            "{} on {}: {} ({}) [{}]",
            f.evolution_rule,
            f.step_rule,
            f.kind,
            f.note,
            f.witness.join(", ")
        );
    }
    out
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct StepDoc<'a> {
    evolution_rule: &'a str,
    step_rule: &'a str,
    dropped_nacs: Vec<String>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct TraceDoc<'a> {
    iterations: usize,
    deleted: &'a [String],
    changed: &'a [String],
    added: &'a [String],
    steps: Vec<StepDoc<'a>>,
}

/// The changed/deleted/added lists and step sequence of an evolution.
pub fn trace_json(r: &EvolutionResult) -> String {
    pretty(&TraceDoc {
        iterations: r.iterations,
        deleted: &r.deleted,
        changed: &r.changed,
        added: &r.added,
        steps: r
            .trace
            .iter()
            .map(|t| StepDoc {
                evolution_rule: &t.evolution_rule,
                step_rule: &t.step_rule,
                dropped_nacs: t.dropped_nacs.iter().map(|d| d.label.clone()).collect(),
            })
            .collect(),
    })
}

pub fn gc_json(h: &GcHints) -> String {
    pretty(h)
}

pub fn gc_text(h: &GcHints) -> String {
    let mut out = String::new();
    let list = |xs: &[String]| if xs.is_empty() { "none".to_owned() } else { xs.join(", ") };
    let pairs = |xs: &[(String, String)]| {
        if xs.is_empty() {
            "none".to_owned()
        } else {
            xs.iter().map(|(a, b)| format!("{a}/{b}")).collect::<Vec<_>>().join(", ")
        }
    };
    let _ = writeln!(out, "disconnected: {}", list(&h.disconnected_rules));
    let _ = writeln!(out, "effect-free: {}", list(&h.effect_free_rules));
    let _ = writeln!(out, "duplicates: {}", pairs(&h.duplicate_pairs));
    let _ = writeln!(out, "vanished branch points: {}", pairs(&h.vanished_branch_points));
    let _ = writeln!(out, "vanished dependencies: {}", pairs(&h.vanished_dependencies));
    let _ = writeln!(out, "not self-conflicting: {}", list(&h.non_self_conflicting));
    out
}
