//! One check per acceptance criterion, shared by the fixture tests and the
//! acceptance report.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use gtevo::cpa::{conflict_oracle, cpa_graph};
use gtevo::evolution::{
    execute_evolution, gc_hints, interplay_report, EvolutionResult, EvolutionStructure, ExecuteOptions, InterplayKind,
    IssueCode, Severity,
};
use gtevo::io::document::canonical_evolution;
use gtevo::io::report::{check_json, check_text, cpa_json, gc_json, gc_text, trace_json};
use gtevo::io::{emit_dot, parse_evolution, parse_grammar, serialize_evolution, serialize_grammar};
use gtevo::rule::Grammar;
use gtevo::search::MorphismKind;
use gtevo::second_order::{apply_second_order, rules_isomorphic};

use super::*;

pub struct Verdict {
    pub pass: bool,
    pub detail: String,
    /// For a failing criterion: whether every failure falls in the class
    /// recorded as a known limitation.
    pub explained: bool,
    pub elapsed: Duration,
}

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict { pass, detail, explained: false, elapsed: Duration::ZERO }
}

/// Runs `check` and fails it if it exceeds `limit`.
pub fn timed(limit: Duration, check: impl FnOnce() -> Verdict) -> Verdict {
    let start = Instant::now();
    let mut v = check();
    v.elapsed = start.elapsed();
    if v.elapsed > limit {
        v.pass = false;
        v.detail = format!("{} (took {:?}, limit {:?})", v.detail, v.elapsed, limit);
    }
    v
}

pub fn login() -> Grammar {
    parse_grammar(&fixture("login.json")).expect("login fixture")
}

pub fn login_v2() -> Grammar {
    parse_grammar(&fixture("login-v2.json")).expect("login-v2 fixture")
}

pub fn evolution1() -> EvolutionStructure {
    parse_evolution(&fixture("evolution1.json")).expect("evolution1 fixture")
}

pub fn evolution2() -> EvolutionStructure {
    parse_evolution(&fixture("evolution2.json")).expect("evolution2 fixture")
}

fn names(v: &serde_json::Value) -> BTreeSet<String> {
    v.as_array().into_iter().flatten().filter_map(|s| s.as_str().map(str::to_owned)).collect()
}

fn pairs(v: &serde_json::Value) -> BTreeSet<(String, String)> {
    v.as_array()
        .into_iter()
        .flatten()
        .map(|p| (p[0].as_str().unwrap_or_default().to_owned(), p[1].as_str().unwrap_or_default().to_owned()))
        .collect()
}

pub fn login_cpa() -> Verdict {
    let g = login();
    let golden: serde_json::Value = serde_json::from_str(&fixture("login-cpa.golden.json")).expect("golden file");
    let c = cpa_graph(&g);
    let self_conflicting: BTreeSet<String> = c.rules.iter().filter(|r| c.has_conflict(r, r)).cloned().collect();
    let dd: BTreeSet<(String, String)> = c.delete_delete.iter().filter(|(a, b)| a != b).cloned().collect();
    let ff = c.double_produce_forbid.clone();
    let mut mismatches = Vec::new();
    for (a, r1) in &g.rules {
        for (b, r2) in &g.rules {
            let found = conflict_oracle(r1, r2, ORACLE_HOST, 1).map(|w| !w.is_empty()).unwrap_or(false);
            if found != c.has_conflict(a, b) {
                mismatches.push(format!("{a}->{b}"));
            }
        }
    }
    let facts = self_conflicting == names(&golden["selfConflicting"])
        && dd == pairs(&golden["deleteDelete"])
        && ff == pairs(&golden["doubleProduceForbid"]);
    verdict(
        facts && mismatches.is_empty(),
        format!(
            "{} self-conflicting rules, dd {:?}, ff {:?}; oracle disagreements: {}",
            self_conflicting.len(),
            dd,
            ff,
            if mismatches.is_empty() { "none".into() } else { mismatches.join(", ") }
        ),
    )
}

pub fn evolution1_impact() -> Verdict {
    let (report, issues) = interplay_report(&evolution1(), &login());
    let modified = report.modified_rules();
    let ev8 = issues.iter().any(|i| i.code == IssueCode::Ev8 && i.subjects.iter().any(|s| s == "Exit"));
    let red = issues.iter().filter(|i| i.severity == Severity::Red).count();
    let exit_only = modified.len() == 1 && modified.contains("Exit");
    verdict(exit_only && ev8 && red == 0, format!("modified {modified:?}, OI.Ev8 on Exit: {ev8}, red issues: {red}"))
}

fn run(es: &EvolutionStructure, g: &Grammar) -> EvolutionResult {
    execute_evolution(es, g, &ExecuteOptions::default()).expect("evolution runs")
}

fn node_types(g: &gtevo::TypedGraph) -> BTreeSet<&str> {
    g.nodes.values().map(|t| t.as_str()).collect()
}

pub fn evolution1_execution() -> Verdict {
    let g = login();
    let es = evolution1();
    let r = run(&es, &g);
    let exit = &r.grammar.rules["Exit"].rule.rhs;
    let output_swapped =
        node_types(exit).contains("Output:ChooseId") && !node_types(exit).contains("Output:InsertCard");
    let unchanged: Vec<&String> = g
        .rules
        .keys()
        .filter(|n| *n != "Exit" && !rules_isomorphic(&g.rules[*n], &r.grammar.rules[*n]))
        .collect();
    let added = es.new.iter().all(|p| r.grammar.rules.contains_key(p.name()));
    let golden = serialize_grammar(&r.grammar) == fixture("login-v2.json");
    verdict(
        output_swapped && unchanged.is_empty() && added && golden,
        format!(
            "Exit outputs {:?}; other rules changed: {unchanged:?}; new rules present: {added}; matches login-v2.json: {golden}",
            node_types(exit).into_iter().filter(|t| t.starts_with("Output")).collect::<Vec<_>>()
        ),
    )
}

pub fn evolution2_interplay() -> Verdict {
    let (report, _) = interplay_report(&evolution2(), &login_v2());
    let wanted = [
        ("rule-Evol2", "InsertCard", InterplayKind::Gp),
        ("rule-Evol2", "InsertCard", InterplayKind::Np),
        ("rule-Evol6", "AskPwd", InterplayKind::D2d),
        ("rule-Evol4", "InsertCard", InterplayKind::D2p),
    ];
    let missing: Vec<String> = wanted
        .iter()
        .filter(|(a, p, k)| !report.has(a, p, *k))
        .map(|(a, p, k)| format!("{} on {p} ({a})", k.label()))
        .collect();
    verdict(
        missing.is_empty(),
        format!("{} findings; missing: {}", report.findings.len(), if missing.is_empty() { "none".into() } else { missing.join(", ") }),
    )
}

pub fn evolution2_gc() -> Verdict {
    let g = login_v2();
    let mut es = evolution2();
    es.delete.clear();
    let r = run(&es, &g);
    let h = gc_hints(&g, &r.grammar);
    let flagged = |n: &str| h.effect_free_rules.iter().any(|x| x == n) && h.disconnected_rules.iter().any(|x| x == n);
    let fprt = h.non_self_conflicting.iter().any(|x| x == "ChooseId-fprt");
    verdict(
        flagged("InsertCard") && flagged("ChooseId-card") && fprt,
        format!(
            "effect-free {:?}, disconnected {:?}, not self-conflicting {:?}",
            h.effect_free_rules, h.disconnected_rules, h.non_self_conflicting
        ),
    )
}

pub const THEOREM_SEEDS: u64 = 500;

pub fn theorems() -> Verdict {
    let mut all = TheoremTally::default();
    let mut restricted = TheoremTally::default();
    let (mut blocking_explained, mut allowing_explained) = (true, true);
    for seed in 0..THEOREM_SEEDS {
        let c = theorem_case_full(seed, LhsChange::Any);
        all.add(c.tally);
        blocking_explained &= c.tally.blocking_violations == 0 || c.dropped;
        allowing_explained &= c.tally.allowing_violations == 0 || c.deletes_lhs || c.dropped;
        restricted.add(theorem_case(seed, LhsChange::NoDeletion));
    }
    let star = star_instance();
    let step = apply_second_order(&star.a, &star.m, &star.p).expect("star evolution applies");
    let any = check_theorems(&star.p, &step, &star.host, MorphismKind::Any);
    let mono = check_theorems(&star.p, &step, &star.host, MorphismKind::Mono);
    let star_ok = any.allowing_violations > 0 && mono.allowing_violations == 0 && mono.blocking_violations == 0;
    let clean = all.blocking_violations == 0 && all.allowing_violations == 0;
    let mut v = verdict(
        all.instances >= 500 && clean && star_ok,
        format!(
            "{} instances: {} blocking and {} allowing violations; without LHS deletion or dropped NACs: {} instances, {} + {}; star instance flips only for non-injective matches: {star_ok}",
            all.instances,
            all.blocking_violations,
            all.allowing_violations,
            restricted.instances,
            restricted.blocking_violations,
            restricted.allowing_violations
        ),
    );
    v.explained = blocking_explained
        && allowing_explained
        && star_ok
        && restricted.instances >= 500
        && restricted.blocking_violations == 0
        && restricted.allowing_violations == 0;
    v
}

pub const CATEGORICAL_SEEDS: u64 = 1000;

pub fn categorical() -> Verdict {
    let pushouts = (0..CATEGORICAL_SEEDS).filter(|s| !pushout_law(*s)).count();
    let (checked, reconstruction) = (0..CATEGORICAL_SEEDS)
        .map(reconstruction_law)
        .fold((0, 0), |(a, b), (c, d)| (a + c, b + d));
    let counts = (0..CATEGORICAL_SEEDS).filter(|s| !count_law(*s)).count();
    verdict(
        pushouts == 0 && reconstruction == 0 && counts == 0 && checked >= 1000,
        format!(
            "{CATEGORICAL_SEEDS} spans: {pushouts} universal-property failures, {counts} count-law failures; {checked} matches: {reconstruction} reconstruction failures"
        ),
    )
}

pub const CPA_PAIRS: u64 = 200;

pub fn cpa_oracle() -> Verdict {
    let mut conflicting = 0;
    let mut failures = Vec::new();
    for seed in 0..CPA_PAIRS {
        match cpa_agrees_with_oracle(seed) {
            Ok(c) => conflicting += usize::from(c),
            Err(_) => failures.push(seed),
        }
    }
    verdict(
        failures.is_empty(),
        format!("{CPA_PAIRS} pairs, {conflicting} conflicting; disagreeing seeds: {failures:?}"),
    )
}

pub fn determinism() -> Verdict {
    let t = order_suite(0, 50, 10);
    let mut v = verdict(
        t.clean >= 50 && t.disagreeing == 0,
        format!(
            "{} clean structures ({} with steps), 10 orders each: {} order-dependent, {} of them with a self-ambiguous evolution rule",
            t.clean, t.nontrivial, t.disagreeing, t.disagreeing_ambiguous
        ),
    );
    v.explained = t.clean >= 50 && t.disagreeing == t.disagreeing_ambiguous;
    v
}

fn emitted() -> Vec<String> {
    let g = login();
    let es = evolution1();
    let c = cpa_graph(&g);
    let (report, issues) = interplay_report(&es, &g);
    let r = run(&es, &g);
    let h = gc_hints(&g, &r.grammar);
    vec![
        serialize_grammar(&g),
        serialize_evolution(&es),
        emit_dot(&c),
        cpa_json(&c),
        check_json(&report, &issues),
        check_text(&report, &issues),
        trace_json(&r),
        gc_json(&h),
        gc_text(&h),
    ]
}

pub fn round_trip() -> Verdict {
    let mut bad = Vec::new();
    for name in ["login.json", "login-v2.json"] {
        let g = parse_grammar(&fixture(name)).unwrap();
        let text = serialize_grammar(&g);
        let again = parse_grammar(&text).unwrap();
        if again != g || serialize_grammar(&again) != text {
            bad.push(name);
        }
    }
    for name in ["evolution1.json", "evolution2.json"] {
        let es = parse_evolution(&fixture(name)).unwrap();
        let text = serialize_evolution(&es);
        let again = parse_evolution(&text).unwrap();
        if canonical_evolution(&again) != canonical_evolution(&es) || serialize_evolution(&again) != text {
            bad.push(name);
        }
    }
    let stable = emitted() == emitted();
    verdict(
        bad.is_empty() && stable,
        format!("round-trip failures: {bad:?}; emitters byte-stable: {stable}"),
    )
}
