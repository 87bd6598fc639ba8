//! JSON grammar and evolution documents.
//!
//! Graph elements are written as strings: nodes `id:Type`, edges
//! `id:Type(source,target)`; type-graph nodes `Type`, edge types
//! `Type(SourceType,TargetType)`. Ids may not contain `:`, `(`, `)` or `,`;
//! type names may contain `:`. Interfaces and maps may be omitted on input,
//! in which case they default to the common part by id and identities. Output
//! is always explicit, with sorted ids.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::evolution::{validate_evolution, EvolutionStructure, TypeSpan};
use crate::graph::{Graph, Id, TypedGraph};
use crate::morphism::{validate_morphism, validate_plain_morphism, Morphism};
use crate::rule::{validate_grammar, Grammar, Nac, Rule, RuleWithNacs};
use crate::second_order::{RuleMorphism, SecondOrderNac, SecondOrderRule};
use crate::{Error, Violation};

pub const GRAMMAR_FORMAT: &str = "gtevo-grammar";
pub const EVOLUTION_FORMAT: &str = "gtevo-evolution";
pub const VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
struct GrammarDoc {
    format: String,
    version: u32,
    type_graph: TypeGraphDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    start_graph: Option<GraphDoc>,
    #[serde(default)]
    rules: Vec<RuleDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TypeGraphDoc {
    #[serde(default)]
    nodes: Vec<String>,
    #[serde(default)]
    edges: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    #[serde(default)]
    nodes: Vec<String>,
    #[serde(default)]
    edges: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapDoc {
    #[serde(default)]
    nodes: BTreeMap<String, String>,
    #[serde(default)]
    edges: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RuleDoc {
    #[serde(default, skip_serializing_if = "String::is_empty")]
    name: String,
    lhs: GraphDoc,
    #[serde(default)]
    interface: Option<GraphDoc>,
    rhs: GraphDoc,
    #[serde(default)]
    l: Option<MapDoc>,
    #[serde(default)]
    r: Option<MapDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    nacs: Vec<NacDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NacDoc {
    label: String,
    graph: GraphDoc,
    #[serde(default)]
    map: Option<MapDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
struct EvolutionDoc {
    format: String,
    version: u32,
    type_span: TypeSpanDoc,
    #[serde(default)]
    rules: Vec<SecondOrderRuleDoc>,
    #[serde(default)]
    delete: Vec<String>,
    #[serde(default)]
    new: Vec<RuleDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TypeSpanDoc {
    original: TypeGraphDoc,
    #[serde(default)]
    interface: Option<TypeGraphDoc>,
    evolved: TypeGraphDoc,
    #[serde(default)]
    left: Option<MapDoc>,
    #[serde(default)]
    right: Option<MapDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SecondOrderRuleDoc {
    name: String,
    lhs: RuleDoc,
    interface: RuleDoc,
    rhs: RuleDoc,
    #[serde(default)]
    left: Option<RuleMapDoc>,
    #[serde(default)]
    right: Option<RuleMapDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    nacs: Vec<SecondOrderNacDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RuleMapDoc {
    #[serde(default)]
    lhs: Option<MapDoc>,
    #[serde(default)]
    interface: Option<MapDoc>,
    #[serde(default)]
    rhs: Option<MapDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SecondOrderNacDoc {
    label: String,
    rule: RuleDoc,
    #[serde(default)]
    map: Option<RuleMapDoc>,
}

fn semantic(msg: impl Into<String>) -> Error {
    Error::Semantic(msg.into())
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, Error> {
    serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), column: e.column(), message: e.to_string() })
}

fn check_id(id: &str, what: &str) -> Result<Id, Error> {
    if id.is_empty() || id.contains([':', '(', ')', ',']) {
        return Err(semantic(format!("invalid {what} id {id:?}")));
    }
    Ok(Id::from(id.trim()))
}

/// `Name(A,B)` into its three parts.
fn split_call(s: &str) -> Option<(&str, &str, &str)> {
    let (head, rest) = s.split_once('(')?;
    let inner = rest.strip_suffix(')')?;
    let (a, b) = inner.split_once(',')?;
    Some((head.trim(), a.trim(), b.trim()))
}

fn type_graph_from(doc: &TypeGraphDoc) -> Result<Graph, Error> {
    let mut g = Graph::new();
    for n in &doc.nodes {
        if n.trim().is_empty() {
            return Err(semantic("empty node type"));
        }
        if !g.nodes.insert(Id::from(n.trim())) {
            return Err(semantic(format!("duplicate node type {n}")));
        }
    }
    for e in &doc.edges {
        let (ty, s, t) = split_call(e).ok_or_else(|| semantic(format!("malformed edge type {e:?}")))?;
        if g.edges.insert(Id::from(ty), (Id::from(s), Id::from(t))).is_some() {
            return Err(semantic(format!("duplicate edge type {ty}")));
        }
    }
    Ok(g)
}

fn type_graph_doc(g: &Graph) -> TypeGraphDoc {
    TypeGraphDoc {
        nodes: g.nodes.iter().map(|n| n.to_string()).collect(),
        edges: g.edges.iter().map(|(e, (s, t))| format!("{e}({s},{t})")).collect(),
    }
}

fn graph_from(doc: &GraphDoc, ctx: &str) -> Result<TypedGraph, Error> {
    let mut g = TypedGraph::new();
    for n in &doc.nodes {
        let (id, ty) = n.split_once(':').ok_or_else(|| semantic(format!("{ctx}: malformed node {n:?}")))?;
        let id = check_id(id, "node")?;
        if g.nodes.insert(id.clone(), Id::from(ty.trim())).is_some() {
            return Err(semantic(format!("{ctx}: duplicate node {id}")));
        }
    }
    for e in &doc.edges {
        let bad = || semantic(format!("{ctx}: malformed edge {e:?}"));
        let (id, rest) = e.split_once(':').ok_or_else(bad)?;
        let id = check_id(id, "edge")?;
        let (ty, s, t) = split_call(rest).ok_or_else(bad)?;
        for end in [s, t] {
            if !g.nodes.contains_key(end) {
                return Err(semantic(format!("{ctx}: edge {id} refers to unknown node {end}")));
            }
        }
        if g.edges.contains_key(&id) {
            return Err(semantic(format!("{ctx}: duplicate edge {id}")));
        }
        g.add_edge(id, ty, s, t);
    }
    Ok(g)
}

fn graph_doc(g: &TypedGraph) -> GraphDoc {
    GraphDoc {
        nodes: g.nodes.iter().map(|(n, t)| format!("{n}:{t}")).collect(),
        edges: g.edges.iter().map(|(e, te)| format!("{e}:{}({},{})", te.ty, te.source, te.target)).collect(),
    }
}

/// Elements of `a` also present in `b` with the same type and endpoints.
fn common_part(a: &TypedGraph, b: &TypedGraph) -> TypedGraph {
    let mut out = TypedGraph::new();
    for (n, t) in &a.nodes {
        if b.nodes.get(n) == Some(t) {
            out.add_node(n.clone(), t.clone());
        }
    }
    for (e, te) in &a.edges {
        if b.edges.get(e) == Some(te) && out.nodes.contains_key(&te.source) && out.nodes.contains_key(&te.target) {
            out.add_edge(e.clone(), te.ty.clone(), te.source.clone(), te.target.clone());
        }
    }
    out
}

fn map_from(doc: Option<&MapDoc>, dom: &TypedGraph, cod: &TypedGraph, ctx: &str) -> Result<Morphism, Error> {
    let m = match doc {
        None => Morphism::identity(dom),
        Some(d) => Morphism {
            nodes: d.nodes.iter().map(|(a, b)| (Id::from(a.as_str()), Id::from(b.as_str()))).collect(),
            edges: d.edges.iter().map(|(a, b)| (Id::from(a.as_str()), Id::from(b.as_str()))).collect(),
        },
    };
    for x in m.nodes.keys() {
        if !dom.nodes.contains_key(x) {
            return Err(semantic(format!("{ctx}: map refers to unknown node {x}")));
        }
    }
    for x in m.edges.keys() {
        if !dom.edges.contains_key(x) {
            return Err(semantic(format!("{ctx}: map refers to unknown edge {x}")));
        }
    }
    if let Some(v) = validate_morphism(&m, dom, cod).first() {
        return Err(semantic(format!("{ctx}: {v}")));
    }
    Ok(m)
}

fn map_doc(m: &Morphism) -> MapDoc {
    MapDoc {
        nodes: m.nodes.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        edges: m.edges.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
    }
}

fn rule_from(doc: &RuleDoc, default_name: &str) -> Result<RuleWithNacs, Error> {
    let name = if doc.name.is_empty() { default_name.to_owned() } else { doc.name.clone() };
    let ctx = format!("rule {name}");
    let lhs = graph_from(&doc.lhs, &format!("{ctx} lhs"))?;
    let rhs = graph_from(&doc.rhs, &format!("{ctx} rhs"))?;
    let interface = match &doc.interface {
        Some(k) => graph_from(k, &format!("{ctx} interface"))?,
        None => common_part(&lhs, &rhs),
    };
    let l = map_from(doc.l.as_ref(), &interface, &lhs, &format!("{ctx} l"))?;
    let r = map_from(doc.r.as_ref(), &interface, &rhs, &format!("{ctx} r"))?;
    let mut nacs = Vec::new();
    for n in &doc.nacs {
        let nctx = format!("{ctx} nac {}", n.label);
        let graph = graph_from(&n.graph, &nctx)?;
        let map = map_from(n.map.as_ref(), &lhs, &graph, &nctx)?;
        nacs.push(Nac { label: n.label.clone(), graph, map });
    }
    Ok(RuleWithNacs { rule: Rule { name, lhs, interface, rhs, l, r }, nacs })
}

fn rule_doc(p: &RuleWithNacs, with_name: bool) -> RuleDoc {
    RuleDoc {
        name: if with_name { p.rule.name.clone() } else { String::new() },
        lhs: graph_doc(&p.rule.lhs),
        interface: Some(graph_doc(&p.rule.interface)),
        rhs: graph_doc(&p.rule.rhs),
        l: Some(map_doc(&p.rule.l)),
        r: Some(map_doc(&p.rule.r)),
        nacs: p
            .nacs
            .iter()
            .map(|n| NacDoc { label: n.label.clone(), graph: graph_doc(&n.graph), map: Some(map_doc(&n.map)) })
            .collect(),
    }
}

fn fail_on(vs: Vec<Violation>) -> Result<(), Error> {
    if vs.is_empty() {
        Ok(())
    } else {
        Err(semantic(vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")))
    }
}

fn check_format(found: &str, version: u32, want: &str) -> Result<(), Error> {
    if found != want {
        return Err(semantic(format!("expected format {want}, found {found}")));
    }
    if version != VERSION {
        return Err(semantic(format!("unsupported version {version}")));
    }
    Ok(())
}

/// Parses and validates a grammar document.
pub fn parse_grammar(text: &str) -> Result<Grammar, Error> {
    let doc: GrammarDoc = parse_json(text)?;
    check_format(&doc.format, doc.version, GRAMMAR_FORMAT)?;
    let mut g = Grammar::new(type_graph_from(&doc.type_graph)?);
    g.start_graph = doc.start_graph.as_ref().map(|s| graph_from(s, "start graph")).transpose()?;
    for r in &doc.rules {
        if r.name.is_empty() {
            return Err(semantic("rule without a name"));
        }
        let rw = rule_from(r, &r.name)?;
        if g.rules.insert(rw.rule.name.clone(), rw).is_some() {
            return Err(semantic(format!("duplicate rule {}", r.name)));
        }
    }
    fail_on(validate_grammar(&g))?;
    Ok(g)
}

/// Canonical JSON text of a grammar, newline-terminated.
pub fn serialize_grammar(g: &Grammar) -> String {
    let doc = GrammarDoc {
        format: GRAMMAR_FORMAT.into(),
        version: VERSION,
        type_graph: type_graph_doc(&g.type_graph),
        start_graph: g.start_graph.as_ref().map(graph_doc),
        rules: g.rules.values().map(|r| rule_doc(r, true)).collect(),
    };
    to_text(&doc)
}

fn to_text<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

fn type_common(a: &Graph, b: &Graph) -> Graph {
    let mut out = Graph::new();
    out.nodes = a.nodes.intersection(&b.nodes).cloned().collect();
    for (e, ends) in &a.edges {
        if b.edges.get(e) == Some(ends) {
            out.edges.insert(e.clone(), ends.clone());
        }
    }
    out
}

fn plain_map_from(doc: Option<&MapDoc>, dom: &Graph, cod: &Graph, ctx: &str) -> Result<Morphism, Error> {
    let m = match doc {
        None => Morphism::identity_plain(dom),
        Some(d) => Morphism {
            nodes: d.nodes.iter().map(|(a, b)| (Id::from(a.as_str()), Id::from(b.as_str()))).collect(),
            edges: d.edges.iter().map(|(a, b)| (Id::from(a.as_str()), Id::from(b.as_str()))).collect(),
        },
    };
    if let Some(v) = validate_plain_morphism(&m, dom, cod).first() {
        return Err(semantic(format!("{ctx}: {v}")));
    }
    Ok(m)
}

fn rule_map_from(doc: Option<&RuleMapDoc>, dom: &Rule, cod: &Rule, ctx: &str) -> Result<RuleMorphism, Error> {
    Ok(RuleMorphism {
        lhs: map_from(doc.and_then(|d| d.lhs.as_ref()), &dom.lhs, &cod.lhs, &format!("{ctx} L"))?,
        interface: map_from(
            doc.and_then(|d| d.interface.as_ref()),
            &dom.interface,
            &cod.interface,
            &format!("{ctx} K"),
        )?,
        rhs: map_from(doc.and_then(|d| d.rhs.as_ref()), &dom.rhs, &cod.rhs, &format!("{ctx} R"))?,
    })
}

fn rule_map_doc(m: &RuleMorphism) -> RuleMapDoc {
    RuleMapDoc {
        lhs: Some(map_doc(&m.lhs)),
        interface: Some(map_doc(&m.interface)),
        rhs: Some(map_doc(&m.rhs)),
    }
}

fn plain_rule(doc: &RuleDoc, name: &str) -> Result<Rule, Error> {
    let rw = rule_from(doc, name)?;
    if !rw.nacs.is_empty() {
        return Err(semantic(format!("{name}: NACs are not allowed inside evolution rules")));
    }
    Ok(rw.rule)
}

/// Parses and validates an evolution document.
pub fn parse_evolution(text: &str) -> Result<EvolutionStructure, Error> {
    let doc: EvolutionDoc = parse_json(text)?;
    check_format(&doc.format, doc.version, EVOLUTION_FORMAT)?;
    let ts = &doc.type_span;
    let original = type_graph_from(&ts.original)?;
    let evolved = type_graph_from(&ts.evolved)?;
    let interface = match &ts.interface {
        Some(i) => type_graph_from(i)?,
        None => type_common(&original, &evolved),
    };
    let left = plain_map_from(ts.left.as_ref(), &interface, &original, "type span left")?;
    let right = plain_map_from(ts.right.as_ref(), &interface, &evolved, "type span right")?;
    let mut es = EvolutionStructure::new(TypeSpan { original, interface, evolved, left, right });
    for a in &doc.rules {
        let n = &a.name;
        let lhs = plain_rule(&a.lhs, &format!("{n}.lhs"))?;
        let interface = plain_rule(&a.interface, &format!("{n}.interface"))?;
        let rhs = plain_rule(&a.rhs, &format!("{n}.rhs"))?;
        let left = rule_map_from(a.left.as_ref(), &interface, &lhs, &format!("{n} left"))?;
        let right = rule_map_from(a.right.as_ref(), &interface, &rhs, &format!("{n} right"))?;
        let mut nacs = Vec::new();
        for nac in &a.nacs {
            let rule = plain_rule(&nac.rule, &format!("{n}.{}", nac.label))?;
            let map = rule_map_from(nac.map.as_ref(), &lhs, &rule, &format!("{n} nac {}", nac.label))?;
            nacs.push(SecondOrderNac { label: nac.label.clone(), rule, map });
        }
        es.rules.push(SecondOrderRule { name: n.clone(), lhs, interface, rhs, left, right, nacs });
    }
    es.delete = doc.delete.iter().cloned().collect::<BTreeSet<_>>();
    for r in &doc.new {
        if r.name.is_empty() {
            return Err(semantic("new rule without a name"));
        }
        es.new.push(rule_from(r, &r.name)?);
    }
    fail_on(validate_evolution(&es))?;
    Ok(es)
}

fn nested_rule_doc(p: &Rule) -> RuleDoc {
    rule_doc(&RuleWithNacs::new(p.clone()), true)
}

/// Canonical JSON text of an evolution structure, newline-terminated.
pub fn serialize_evolution(es: &EvolutionStructure) -> String {
    let ts = &es.type_span;
    let mut rules: Vec<&SecondOrderRule> = es.rules.iter().collect();
    rules.sort_by(|a, b| a.name.cmp(&b.name));
    let mut new: Vec<&RuleWithNacs> = es.new.iter().collect();
    new.sort_by(|a, b| a.name().cmp(b.name()));
    let doc = EvolutionDoc {
        format: EVOLUTION_FORMAT.into(),
        version: VERSION,
        type_span: TypeSpanDoc {
            original: type_graph_doc(&ts.original),
            interface: Some(type_graph_doc(&ts.interface)),
            evolved: type_graph_doc(&ts.evolved),
            left: Some(map_doc(&ts.left)),
            right: Some(map_doc(&ts.right)),
        },
        rules: rules
            .into_iter()
            .map(|a| SecondOrderRuleDoc {
                name: a.name.clone(),
                lhs: nested_rule_doc(&a.lhs),
                interface: nested_rule_doc(&a.interface),
                rhs: nested_rule_doc(&a.rhs),
                left: Some(rule_map_doc(&a.left)),
                right: Some(rule_map_doc(&a.right)),
                nacs: a
                    .nacs
                    .iter()
                    .map(|n| SecondOrderNacDoc {
                        label: n.label.clone(),
                        rule: nested_rule_doc(&n.rule),
                        map: Some(rule_map_doc(&n.map)),
                    })
                    .collect(),
            })
            .collect(),
        delete: es.delete.iter().cloned().collect(),
        new: new.into_iter().map(|r| rule_doc(r, true)).collect(),
    };
    to_text(&doc)
}

/// Evolution structure in canonical order, for comparisons after a round trip.
pub fn canonical_evolution(es: &EvolutionStructure) -> EvolutionStructure {
    let mut out = es.clone();
    out.rules.sort_by(|a, b| a.name.cmp(&b.name));
    out.new.sort_by(|a, b| a.name().cmp(b.name()));
    out
}
