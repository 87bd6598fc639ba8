use std::collections::{BTreeMap, BTreeSet};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use super::catalog::{OpenIssue, Severity};
use super::critical::check_evolution_rules;
use super::interplay::{interplay_of, InterplayReport};
use crate::graph::{validate_typed, Graph, Id, TypedGraph, Violation};
use crate::morphism::{validate_plain_morphism, Morphism};
use crate::rule::{validate_rule, Grammar, Nac, Rule, RuleWithNacs};
use crate::second_order::{
    apply_second_order, find_second_order_matches, validate_second_order_rule, Component, DroppedNac,
    RuleEvolution, SecondOrderRule,
};
use crate::Error;

/// `T <- T' -> T''` with mono legs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeSpan {
    pub original: Graph,
    pub interface: Graph,
    pub evolved: Graph,
    pub left: Morphism,
    pub right: Morphism,
}

impl TypeSpan {
    /// `T <- T -> T`.
    pub fn identity(t: &Graph) -> Self {
        let id = Morphism::identity_plain(t);
        TypeSpan { original: t.clone(), interface: t.clone(), evolved: t.clone(), left: id.clone(), right: id }
    }

    /// Partial translation of node and edge types from `T` to `T''`.
    pub fn translation(&self) -> (BTreeMap<Id, Id>, BTreeMap<Id, Id>) {
        let nodes = self.left.nodes.iter().map(|(k, t)| (t.clone(), self.right.nodes[k].clone())).collect();
        let edges = self.left.edges.iter().map(|(k, t)| (t.clone(), self.right.edges[k].clone())).collect();
        (nodes, edges)
    }
}

pub fn validate_type_span(ts: &TypeSpan) -> Vec<Violation> {
    let mut out = Vec::new();
    for (name, g) in [("original", &ts.original), ("interface", &ts.interface), ("evolved", &ts.evolved)] {
        out.extend(crate::graph::validate_graph(g).into_iter().map(|v| Violation::new(format!("{name} types: {v}"))));
    }
    for (name, f, cod) in [("left", &ts.left, &ts.original), ("right", &ts.right, &ts.evolved)] {
        let vs = validate_plain_morphism(f, &ts.interface, cod);
        let ok = vs.is_empty();
        out.extend(vs.into_iter().map(|v| Violation::new(format!("type span {name}: {v}"))));
        if ok && !f.is_injective() {
            out.push(Violation::new(format!("type span {name} not mono")));
        }
    }
    out
}

/// Type span, evolution rules, rules to delete and rules to add.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvolutionStructure {
    pub type_span: TypeSpan,
    pub rules: Vec<SecondOrderRule>,
    pub delete: BTreeSet<String>,
    pub new: Vec<RuleWithNacs>,
}

impl EvolutionStructure {
    pub fn new(type_span: TypeSpan) -> Self {
        EvolutionStructure { type_span, rules: Vec::new(), delete: BTreeSet::new(), new: Vec::new() }
    }
}

pub fn validate_evolution(es: &EvolutionStructure) -> Vec<Violation> {
    let ts = &es.type_span;
    let mut out = validate_type_span(ts);
    let mut names = BTreeSet::new();
    for a in &es.rules {
        if !names.insert(&a.name) {
            out.push(Violation::new(format!("duplicate evolution rule {}", a.name)));
        }
        let mut vs = validate_second_order_rule(a);
        for (p, tg, side) in [(&a.lhs, &ts.original, "lhs"), (&a.rhs, &ts.evolved, "rhs")] {
            for c in Component::ALL {
                let g = crate::second_order::side(p, c);
                vs.extend(
                    validate_typed(g, tg)
                        .into_iter()
                        .map(|v| Violation::new(format!("{side} rule {c}: {v}"))),
                );
            }
        }
        out.extend(vs.into_iter().map(|v| Violation::new(format!("evolution rule {}: {v}", a.name))));
    }
    let mut new_names = BTreeSet::new();
    for p in &es.new {
        if !new_names.insert(p.name()) {
            out.push(Violation::new(format!("duplicate new rule {}", p.name())));
        }
        out.extend(
            validate_rule(p, Some(&ts.evolved))
                .into_iter()
                .map(|v| Violation::new(format!("new rule {}: {v}", p.name()))),
        );
    }
    out
}

#[derive(Clone, Debug, Default)]
pub struct ExecuteOptions {
    /// Run despite Red rule-set issues.
    pub force: bool,
    /// Maximum number of evolution steps; defaults to `10 * |EP| * |rules|`.
    pub bound: Option<usize>,
    /// Pick the next (rule, match) at random from this seed instead of in
    /// canonical order.
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub evolution_rule: String,
    pub step_rule: String,
    pub evolution: RuleEvolution,
    pub dropped_nacs: Vec<DroppedNac>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvolutionResult {
    pub grammar: Grammar,
    pub trace: Vec<TraceStep>,
    pub iterations: usize,
    pub deleted: Vec<String>,
    pub changed: Vec<String>,
    pub added: Vec<String>,
    pub issues: Vec<OpenIssue>,
    pub report: InterplayReport,
}

fn retype_graph(
    g: &TypedGraph,
    tr: &(BTreeMap<Id, Id>, BTreeMap<Id, Id>),
    target: &Graph,
    orphans: &mut BTreeSet<Id>,
) -> TypedGraph {
    for t in g.nodes.values() {
        if !tr.0.contains_key(t) && !target.nodes.contains(t) {
            orphans.insert(t.clone());
        }
    }
    for e in g.edges.values() {
        if !tr.1.contains_key(&e.ty) && !target.edges.contains_key(&e.ty) {
            orphans.insert(e.ty.clone());
        }
    }
    g.retyped(&tr.0, &tr.1)
}

fn retype_rule(p: &RuleWithNacs, tr: &(BTreeMap<Id, Id>, BTreeMap<Id, Id>), target: &Graph) -> Result<RuleWithNacs, Error> {
    let mut orphans = BTreeSet::new();
    let mut rt = |g: &TypedGraph| retype_graph(g, tr, target, &mut orphans);
    let rule = Rule {
        name: p.rule.name.clone(),
        lhs: rt(&p.rule.lhs),
        interface: rt(&p.rule.interface),
        rhs: rt(&p.rule.rhs),
        l: p.rule.l.clone(),
        r: p.rule.r.clone(),
    };
    let nacs = p
        .nacs
        .iter()
        .map(|n| Nac { label: n.label.clone(), graph: rt(&n.graph), map: n.map.clone() })
        .collect();
    if orphans.is_empty() {
        Ok(RuleWithNacs { rule, nacs })
    } else {
        let types = orphans.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(", ");
        Err(Error::TypeOrphan { rule: p.name().to_owned(), types })
    }
}

/// Drops elements whose type does not survive, with their incident edges.
fn retype_start_graph(g: &TypedGraph, tr: &(BTreeMap<Id, Id>, BTreeMap<Id, Id>), target: &Graph) -> TypedGraph {
    let mut out = TypedGraph::new();
    for (n, t) in &g.nodes {
        match tr.0.get(t).or(target.nodes.contains(t).then_some(t)) {
            Some(t2) => out.add_node(n.clone(), t2.clone()),
            None => continue,
        }
    }
    for (e, te) in &g.edges {
        if !out.nodes.contains_key(&te.source) || !out.nodes.contains_key(&te.target) {
            continue;
        }
        if let Some(t2) = tr.1.get(&te.ty).or(target.edges.contains_key(&te.ty).then_some(&te.ty)) {
            out.add_edge(e.clone(), t2.clone(), te.source.clone(), te.target.clone());
        }
    }
    out
}

/// The next evolution step: evolution rules by name, step rules by name,
/// matches in canonical order; or a random choice when `rng` is given.
fn next_step(
    ep: &[&SecondOrderRule],
    rules: &BTreeMap<String, RuleWithNacs>,
    rng: Option<&mut StdRng>,
) -> Option<(usize, String, crate::second_order::RuleMorphism)> {
    match rng {
        None => {
            for (i, a) in ep.iter().enumerate() {
                for (name, p) in rules {
                    if let Some(m) = find_second_order_matches(a, p).into_iter().next() {
                        return Some((i, name.clone(), m));
                    }
                }
            }
            None
        }
        Some(rng) => {
            let mut all = Vec::new();
            for (i, a) in ep.iter().enumerate() {
                for (name, p) in rules {
                    for m in find_second_order_matches(a, p) {
                        all.push((i, name.clone(), m));
                    }
                }
            }
            all.choose(rng).cloned()
        }
    }
}

/// Fails unless the type span starts at the grammar's type graph.
pub fn check_compatible(es: &EvolutionStructure, g: &Grammar) -> Result<(), Error> {
    if es.type_span.original != g.type_graph {
        return Err(Error::Semantic("evolution type span does not start at the grammar's type graph".into()));
    }
    Ok(())
}

/// Removes `Del`, rewrites the remaining rules until no evolution rule
/// applies, retypes everything over `T''` and adds `New`.
pub fn execute_evolution(es: &EvolutionStructure, g: &Grammar, opts: &ExecuteOptions) -> Result<EvolutionResult, Error> {
    check_compatible(es, g)?;
    let issues = check_evolution_rules(&es.rules);
    if !opts.force && issues.iter().any(|i| i.severity == Severity::Red) {
        return Err(Error::RedIssues);
    }
    if let Some(d) = es.delete.iter().find(|d| !g.rules.contains_key(*d)) {
        return Err(Error::Semantic(format!("rule {d} marked for deletion does not exist")));
    }
    let mut rules: BTreeMap<String, RuleWithNacs> =
        g.rules.iter().filter(|(n, _)| !es.delete.contains(*n)).map(|(n, r)| (n.clone(), r.clone())).collect();
    let report = interplay_of(&es.rules, &rules);

    let mut ep: Vec<&SecondOrderRule> = es.rules.iter().collect();
    ep.sort_by(|a, b| a.name.cmp(&b.name));
    let bound = opts.bound.unwrap_or(10 * ep.len().max(1) * rules.len().max(1));
    let mut rng = opts.seed.map(StdRng::seed_from_u64);
    let mut trace = Vec::new();
    while let Some((i, name, m)) = next_step(&ep, &rules, rng.as_mut()) {
        if trace.len() == bound {
            return Err(Error::IterationBoundExceeded(bound));
        }
        let step = apply_second_order(ep[i], &m, &rules[&name])?;
        rules.insert(name.clone(), step.rule);
        trace.push(TraceStep {
            evolution_rule: ep[i].name.clone(),
            step_rule: name,
            evolution: step.evolution,
            dropped_nacs: step.dropped,
        });
    }

    let tr = es.type_span.translation();
    let target = &es.type_span.evolved;
    let mut out = Grammar::new(target.clone());
    out.start_graph = g.start_graph.as_ref().map(|s| retype_start_graph(s, &tr, target));
    for p in rules.values() {
        out.rules.insert(p.name().to_owned(), retype_rule(p, &tr, target)?);
    }
    for p in &es.new {
        if out.rules.insert(p.name().to_owned(), p.clone()).is_some() {
            return Err(Error::Semantic(format!("new rule {} clashes with an existing rule", p.name())));
        }
    }
    let changed: BTreeSet<String> = trace.iter().map(|t| t.step_rule.clone()).collect();
    Ok(EvolutionResult {
        grammar: out,
        iterations: trace.len(),
        trace,
        deleted: es.delete.iter().cloned().collect(),
        changed: changed.into_iter().collect(),
        added: es.new.iter().map(|p| p.name().to_owned()).collect(),
        issues,
        report,
    })
}
