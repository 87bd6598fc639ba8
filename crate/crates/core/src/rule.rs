//! First-order DPO rules with NACs, matching and application.

use std::collections::{BTreeMap, BTreeSet};

use crate::graph::{validate_carrier, validate_typed, Elem, Graph, TypedGraph, Violation};
use crate::morphism::{compose, validate_morphism, Morphism};
use crate::pushout::{check_gluing, pushout, pushout_complement};
use crate::search::{exists_extension, find_morphisms, MorphismKind};
use crate::Error;

/// A span `L <- K -> R` with mono legs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub name: String,
    pub lhs: TypedGraph,
    pub interface: TypedGraph,
    pub rhs: TypedGraph,
    /// `l: K -> L`
    pub l: Morphism,
    /// `r: K -> R`
    pub r: Morphism,
}

/// Negative application condition `n: L -> N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nac {
    pub label: String,
    pub graph: TypedGraph,
    pub map: Morphism,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleWithNacs {
    pub rule: Rule,
    pub nacs: Vec<Nac>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Grammar {
    pub type_graph: Graph,
    pub start_graph: Option<TypedGraph>,
    /// Rules keyed by name, so names are unique by construction.
    pub rules: BTreeMap<String, RuleWithNacs>,
}

/// A DPO step `G => H` with all witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub rule: String,
    /// `m: L -> G`
    pub matching: Morphism,
    pub context: TypedGraph,
    pub result: TypedGraph,
    /// `m': R -> H`
    pub comatch: Morphism,
    /// `k: K -> D`
    pub k: Morphism,
    /// `d: D -> G`
    pub d: Morphism,
    /// `h: D -> H`
    pub h: Morphism,
}

impl Rule {
    /// Rule whose three sides are `g` and whose legs are identities.
    pub fn identity(name: impl Into<String>, g: &TypedGraph) -> Self {
        let id = Morphism::identity(g);
        Rule {
            name: name.into(),
            lhs: g.clone(),
            interface: g.clone(),
            rhs: g.clone(),
            l: id.clone(),
            r: id,
        }
    }

    /// Builds a rule where `K` is given explicitly and the legs are inclusions
    /// by id.
    pub fn by_inclusion(name: impl Into<String>, lhs: TypedGraph, interface: TypedGraph, rhs: TypedGraph) -> Self {
        let l = Morphism::identity(&interface);
        let r = l.clone();
        Rule { name: name.into(), lhs, interface, rhs, l, r }
    }

    /// Elements of `L` not in the image of `l`.
    pub fn deleted(&self) -> BTreeSet<Elem> {
        let kept = self.l.image();
        self.lhs.elements().filter(|x| !kept.contains(x)).collect()
    }

    /// Elements of `R` not in the image of `r`.
    pub fn created(&self) -> BTreeSet<Elem> {
        let kept = self.r.image();
        self.rhs.elements().filter(|x| !kept.contains(x)).collect()
    }

    /// Both legs are isomorphisms, so the rule has no effect.
    pub fn is_effect_free(&self) -> bool {
        self.deleted().is_empty() && self.created().is_empty()
    }

    /// `R <- K -> L`.
    pub fn inverse(&self) -> Rule {
        Rule {
            name: self.name.clone(),
            lhs: self.rhs.clone(),
            interface: self.interface.clone(),
            rhs: self.lhs.clone(),
            l: self.r.clone(),
            r: self.l.clone(),
        }
    }
}

impl RuleWithNacs {
    pub fn new(rule: Rule) -> Self {
        RuleWithNacs { rule, nacs: Vec::new() }
    }

    pub fn with_nac(mut self, nac: Nac) -> Self {
        self.nacs.push(nac);
        self
    }

    pub fn name(&self) -> &str {
        &self.rule.name
    }
}

impl Grammar {
    pub fn new(type_graph: Graph) -> Self {
        Grammar { type_graph, start_graph: None, rules: BTreeMap::new() }
    }

    pub fn with_rule(mut self, rw: RuleWithNacs) -> Self {
        self.rules.insert(rw.rule.name.clone(), rw);
        self
    }
}

/// Checks the rule's graphs, typing, legs and NAC domains. With no type graph
/// only carriers are checked.
pub fn validate_rule(rw: &RuleWithNacs, type_graph: Option<&Graph>) -> Vec<Violation> {
    let p = &rw.rule;
    let mut out = Vec::new();
    let check = |name: &str, g: &TypedGraph, out: &mut Vec<Violation>| {
        let vs = match type_graph {
            Some(tg) => validate_typed(g, tg),
            None => validate_carrier(g),
        };
        out.extend(vs.into_iter().map(|v| Violation::new(format!("{name}: {v}"))));
    };
    check("lhs", &p.lhs, &mut out);
    check("interface", &p.interface, &mut out);
    check("rhs", &p.rhs, &mut out);
    for (leg, map, cod) in [("l", &p.l, &p.lhs), ("r", &p.r, &p.rhs)] {
        let vs = validate_morphism(map, &p.interface, cod);
        let valid = vs.is_empty();
        out.extend(vs.into_iter().map(|v| Violation::new(format!("{leg}: {v}"))));
        if valid && !map.is_injective() {
            out.push(Violation::new(format!("{leg} not mono")));
        }
    }
    for nac in &rw.nacs {
        check(&format!("nac {}", nac.label), &nac.graph, &mut out);
        out.extend(
            validate_morphism(&nac.map, &p.lhs, &nac.graph)
                .into_iter()
                .map(|v| Violation::new(format!("nac {}: {v}", nac.label))),
        );
    }
    out
}

/// Validates every rule and the start graph, prefixing violations with the
/// rule name.
pub fn validate_grammar(g: &Grammar) -> Vec<Violation> {
    let mut out = Vec::new();
    out.extend(crate::graph::validate_graph(&g.type_graph));
    if let Some(s) = &g.start_graph {
        out.extend(validate_typed(s, &g.type_graph).into_iter().map(|v| Violation::new(format!("start graph: {v}"))));
    }
    for (name, rw) in &g.rules {
        if name != &rw.rule.name {
            out.push(Violation::new(format!("rule key {name} differs from rule name {}", rw.rule.name)));
        }
        out.extend(
            validate_rule(rw, Some(&g.type_graph))
                .into_iter()
                .map(|v| Violation::new(format!("rule {name}: {v}"))),
        );
    }
    out
}

/// `m: L -> G` satisfies `n: L -> N` iff no injective `q: N -> G` has `q . n = m`.
pub fn satisfies_nac(nac: &Nac, m: &Morphism, g: &TypedGraph) -> bool {
    let mut partial = Morphism::new();
    for (x, nx) in &nac.map.nodes {
        let want = &m.nodes[x];
        if let Some(prev) = partial.nodes.insert(nx.clone(), want.clone()) {
            if &prev != want {
                return true;
            }
        }
    }
    for (x, nx) in &nac.map.edges {
        let want = &m.edges[x];
        if let Some(prev) = partial.edges.insert(nx.clone(), want.clone()) {
            if &prev != want {
                return true;
            }
        }
    }
    !exists_extension(&nac.graph, g, MorphismKind::Mono, &partial)
}

pub fn satisfies_nacs(rw: &RuleWithNacs, m: &Morphism, g: &TypedGraph) -> bool {
    rw.nacs.iter().all(|n| satisfies_nac(n, m, g))
}

/// Injective matches satisfying the gluing condition and every NAC, in
/// canonical order.
pub fn find_applicable_matches(rw: &RuleWithNacs, g: &TypedGraph) -> Vec<Morphism> {
    find_matches_with(rw, g, MorphismKind::Mono)
}

/// As [`find_applicable_matches`] but with a chosen match kind. Only the test
/// suite uses anything other than `Mono`.
pub fn find_matches_with(rw: &RuleWithNacs, g: &TypedGraph, kind: MorphismKind) -> Vec<Morphism> {
    find_morphisms(&rw.rule.lhs, g, kind)
        .into_iter()
        .filter(|m| check_gluing(&rw.rule.lhs, &rw.rule.l, g, m).is_ok())
        .filter(|m| satisfies_nacs(rw, m, g))
        .collect()
}

/// Applies the rule at `m`. NACs are not rechecked.
pub fn apply(rw: &RuleWithNacs, m: &Morphism, g: &TypedGraph) -> Result<Derivation, Error> {
    apply_rule(&rw.rule, m, g)
}

pub fn apply_rule(p: &Rule, m: &Morphism, g: &TypedGraph) -> Result<Derivation, Error> {
    let pc = pushout_complement(&p.lhs, &p.l, g, m).map_err(Error::Gluing)?;
    let po = pushout(&p.interface, &pc.object, &p.rhs, &pc.k, &p.r);
    Ok(Derivation {
        rule: p.name.clone(),
        matching: m.clone(),
        context: pc.object,
        result: po.object,
        comatch: po.from_c,
        k: pc.k,
        d: pc.d,
        h: po.from_b,
    })
}

/// Composite `q . n` check used by several oracles: whether `q: N -> G`
/// extends `m` along `n`.
pub fn extends_along(n: &Morphism, q: &Morphism, m: &Morphism) -> bool {
    compose(n, q).map(|c| &c == m).unwrap_or(false)
}
