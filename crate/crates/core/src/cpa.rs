//! Critical-pair analysis over jointly surjective overlaps with injective matches.
//!
//! Conflicts (`r1` disables an `r2` match):
//! - use-delete: `r1` deletes an element the `r2` match uses;
//! - produce-dangling: `r1` creates an edge at a node `r2` deletes, so the
//!   `r2` match breaks the dangling condition afterwards;
//! - produce-forbid: `r1` creates context forbidden by a NAC of `r2`.
//!
//! Dependencies (`r1` enables an `r2` match): produce-use and delete-forbid.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::graph::{Elem, Id, TypedGraph};
use crate::morphism::{compose, Morphism};
use crate::pushout::{check_gluing, pushout};
use crate::rule::{apply_rule, find_matches_with, satisfies_nacs, Derivation, Grammar, Rule, RuleWithNacs};
use crate::search::MorphismKind;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ConflictKind {
    UseDelete,
    ProduceDangling,
    ProduceForbid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum DependencyKind {
    ProduceUse,
    DeleteForbid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PairKind {
    Conflict(ConflictKind),
    Dependency(DependencyKind),
}

impl ConflictKind {
    pub fn label(self) -> &'static str {
        match self {
            ConflictKind::UseDelete => "ud",
            ConflictKind::ProduceDangling => "pd",
            ConflictKind::ProduceForbid => "pf",
        }
    }
}

impl DependencyKind {
    pub fn label(self) -> &'static str {
        match self {
            DependencyKind::ProduceUse => "pu",
            DependencyKind::DeleteForbid => "df",
        }
    }
}

impl fmt::Display for PairKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairKind::Conflict(k) => f.write_str(k.label()),
            PairKind::Dependency(k) => f.write_str(k.label()),
        }
    }
}

/// A realizable interaction between two rule applications.
///
/// `overlap` is the host before `r1` is applied, with `m1` and `m2` both
/// applicable there. `after` is the host after applying `r1` at `m1`.
/// For use-delete, produce-dangling and delete-forbid the witness names
/// elements of `overlap`; for produce-forbid and produce-use it names
/// elements of `after`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPair {
    pub rule1: String,
    pub rule2: String,
    pub kind: PairKind,
    pub overlap: TypedGraph,
    pub m1: Morphism,
    pub m2: Morphism,
    pub after: TypedGraph,
    pub witness: BTreeSet<Elem>,
    /// NAC of `r2` involved (produce-forbid, delete-forbid).
    pub nac: Option<String>,
}

/// Jointly surjective pair of monos `left: X -> graph`, `right: Y -> graph`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overlap {
    pub graph: TypedGraph,
    pub left: Morphism,
    pub right: Morphism,
}

/// All overlaps of `x` and `y`: one per partial injective, type-preserving
/// identification of `x` elements with `y` elements (edges only when their
/// endpoints are identified accordingly).
pub fn overlaps(x: &TypedGraph, y: &TypedGraph) -> Vec<Overlap> {
    identifications(x, y, &Morphism::new(), &|_, _| true)
        .iter()
        .map(|phi| overlap_along(x, y, phi))
        .collect()
}

/// Partial injective type-preserving maps `phi` from `x` to `y` that extend
/// `forced` and only pair elements accepted by `allowed`. An edge is paired
/// only if its endpoints are paired with the endpoints of its image.
pub fn identifications(
    x: &TypedGraph,
    y: &TypedGraph,
    forced: &Morphism,
    allowed: &dyn Fn(&Elem, &Elem) -> bool,
) -> Vec<Morphism> {
    struct Search<'a> {
        x: &'a TypedGraph,
        y: &'a TypedGraph,
        forced: &'a Morphism,
        allowed: &'a dyn Fn(&Elem, &Elem) -> bool,
        xn: Vec<&'a Id>,
        xe: Vec<&'a Id>,
        phi: Morphism,
        used_n: BTreeSet<Id>,
        used_e: BTreeSet<Id>,
        out: Vec<Morphism>,
    }
    impl Search<'_> {
        fn nodes(&mut self, i: usize) {
            if i == self.xn.len() {
                return self.edges(0);
            }
            let n = self.xn[i];
            if let Some(f) = self.forced.nodes.get(n) {
                if self.used_n.contains(f) || self.y.nodes.get(f) != self.x.nodes.get(n) {
                    return;
                }
                return self.bind_node(i, n, f.clone());
            }
            self.nodes(i + 1);
            let ty = &self.x.nodes[n];
            let cands: Vec<Id> = self
                .y
                .nodes
                .iter()
                .filter(|(m, t)| *t == ty && !self.used_n.contains(*m))
                .filter(|(m, _)| (self.allowed)(&Elem::node(n), &Elem::node(*m)))
                .map(|(m, _)| m.clone())
                .collect();
            for m in cands {
                self.bind_node(i, n, m);
            }
        }

        fn bind_node(&mut self, i: usize, n: &Id, m: Id) {
            self.phi.nodes.insert(n.clone(), m.clone());
            self.used_n.insert(m.clone());
            self.nodes(i + 1);
            self.used_n.remove(&m);
            self.phi.nodes.remove(n);
        }

        fn edges(&mut self, i: usize) {
            if i == self.xe.len() {
                self.out.push(self.phi.clone());
                return;
            }
            let e = self.xe[i];
            let ex = &self.x.edges[e];
            let ends = (self.phi.nodes.get(&ex.source).cloned(), self.phi.nodes.get(&ex.target).cloned());
            let fits = |f: &Id, s: &Search<'_>| {
                let ey = &s.y.edges[f];
                ey.ty == ex.ty
                    && Some(&ey.source) == ends.0.as_ref()
                    && Some(&ey.target) == ends.1.as_ref()
                    && !s.used_e.contains(f)
            };
            if let Some(f) = self.forced.edges.get(e) {
                if self.y.edges.contains_key(f) && fits(f, self) {
                    self.bind_edge(i, e, f.clone());
                }
                return;
            }
            self.edges(i + 1);
            if ends.0.is_none() || ends.1.is_none() {
                return;
            }
            let cands: Vec<Id> = self
                .y
                .edges
                .keys()
                .filter(|f| fits(f, self))
                .filter(|f| (self.allowed)(&Elem::edge(e), &Elem::edge(*f)))
                .cloned()
                .collect();
            for f in cands {
                self.bind_edge(i, e, f);
            }
        }

        fn bind_edge(&mut self, i: usize, e: &Id, f: Id) {
            self.phi.edges.insert(e.clone(), f.clone());
            self.used_e.insert(f.clone());
            self.edges(i + 1);
            self.used_e.remove(&f);
            self.phi.edges.remove(e);
        }
    }
    let mut s = Search {
        x,
        y,
        forced,
        allowed,
        xn: x.nodes.keys().collect(),
        xe: x.edges.keys().collect(),
        phi: Morphism::new(),
        used_n: BTreeSet::new(),
        used_e: BTreeSet::new(),
        out: Vec::new(),
    };
    s.nodes(0);
    s.out
}

/// The overlap of `x` and `y` gluing exactly the pairs of `phi`.
pub fn overlap_along(x: &TypedGraph, y: &TypedGraph, phi: &Morphism) -> Overlap {
    let mut common = TypedGraph::new();
    for a in phi.nodes.keys() {
        common.add_node(a.clone(), x.nodes[a].clone());
    }
    for a in phi.edges.keys() {
        let e = &x.edges[a];
        common.add_edge(a.clone(), e.ty.clone(), e.source.clone(), e.target.clone());
    }
    let incl = Morphism::identity(&common);
    let po = pushout(&common, x, y, &incl, phi);
    Overlap { graph: po.object, left: po.from_b, right: po.from_c }
}

/// `m` is an applicable injective match of `rw` in `g`.
pub fn applicable(rw: &RuleWithNacs, m: &Morphism, g: &TypedGraph) -> bool {
    m.is_injective() && check_gluing(&rw.rule.lhs, &rw.rule.l, g, m).is_ok() && satisfies_nacs(rw, m, g)
}

/// Carries `m: L -> G` along a derivation `G => H`, if nothing it uses is deleted.
pub fn track(m: &Morphism, d: &Derivation) -> Option<Morphism> {
    let mut out = Morphism::new();
    for (x, y) in &m.nodes {
        if !d.context.nodes.contains_key(y) {
            return None;
        }
        out.nodes.insert(x.clone(), d.h.nodes[y].clone());
    }
    for (x, y) in &m.edges {
        if !d.context.edges.contains_key(y) {
            return None;
        }
        out.edges.insert(x.clone(), d.h.edges[y].clone());
    }
    Some(out)
}

/// How `r1` at `m1` disables `r2` at `m2` in `g` (both assumed applicable).
/// Returns the derivation and the conflict kinds observed.
pub fn disabling_kinds(
    r1: &RuleWithNacs,
    m1: &Morphism,
    r2: &RuleWithNacs,
    m2: &Morphism,
    g: &TypedGraph,
) -> Option<(Derivation, BTreeSet<ConflictKind>)> {
    let d = apply_rule(&r1.rule, m1, g).ok()?;
    let mut kinds = BTreeSet::new();
    match track(m2, &d) {
        None => {
            kinds.insert(ConflictKind::UseDelete);
        }
        Some(t) => {
            if check_gluing(&r2.rule.lhs, &r2.rule.l, &d.result, &t).is_err() {
                kinds.insert(ConflictKind::ProduceDangling);
            }
            if !satisfies_nacs(r2, &t, &d.result) {
                kinds.insert(ConflictKind::ProduceForbid);
            }
        }
    }
    Some((d, kinds))
}

fn image_of(m: &Morphism, els: &BTreeSet<Elem>) -> BTreeSet<Elem> {
    els.iter().filter_map(|x| m.elem(x)).collect()
}

/// Undoes `r1` on a post-state: applies the inverse rule at the comatch.
/// Returns the pre-state, the match of `r1` in it and the derivation of the
/// inverse step, or `None` when the inverse step is not possible.
fn undo(r1: &Rule, comatch: &Morphism, post: &TypedGraph) -> Option<(TypedGraph, Morphism, Derivation)> {
    let inv = r1.inverse();
    check_gluing(&inv.lhs, &inv.l, post, comatch).ok()?;
    let d = apply_rule(&inv, comatch, post).ok()?;
    Some((d.result.clone(), d.comatch.clone(), d))
}

/// All conflict pairs of `r1` before `r2`.
pub fn conflicts(r1: &RuleWithNacs, r2: &RuleWithNacs) -> Vec<CriticalPair> {
    let mut out = Vec::new();
    let del1 = r1.rule.deleted();
    for ov in overlaps(&r1.rule.lhs, &r2.rule.lhs) {
        let (g, m1, m2) = (&ov.graph, &ov.left, &ov.right);
        if !applicable(r1, m1, g) || !applicable(r2, m2, g) {
            continue;
        }
        let Some((d, kinds)) = disabling_kinds(r1, m1, r2, m2, g) else { continue };
        let used2: BTreeSet<Elem> = m2.image();
        for kind in kinds {
            let witness = match kind {
                ConflictKind::UseDelete => image_of(m1, &del1).intersection(&used2).cloned().collect(),
                ConflictKind::ProduceDangling => image_of(m2, &r2.rule.deleted())
                    .into_iter()
                    .filter(|x| x.kind == crate::Kind::Node)
                    .collect(),
                // NAC violations caused by L-overlaps are found again from the
                // R1 + N2 overlaps below, with a proper witness.
                ConflictKind::ProduceForbid => continue,
            };
            out.push(CriticalPair {
                rule1: r1.name().to_owned(),
                rule2: r2.name().to_owned(),
                kind: PairKind::Conflict(kind),
                overlap: g.clone(),
                m1: m1.clone(),
                m2: m2.clone(),
                after: d.result.clone(),
                witness,
                nac: None,
            });
        }
    }
    let created1 = r1.rule.created();
    for nac in &r2.nacs {
        for ov in overlaps(&r1.rule.rhs, &nac.graph) {
            let (post, co1, q) = (&ov.graph, &ov.left, &ov.right);
            let Ok(m2_post) = compose(&nac.map, q) else { continue };
            if !m2_post.is_injective() {
                continue;
            }
            let created = image_of(co1, &created1);
            let witness: BTreeSet<Elem> = q.image().intersection(&created).cloned().collect();
            if witness.is_empty() || !m2_post.image().is_disjoint(&created) {
                continue;
            }
            let Some((pre, m1, inv)) = undo(&r1.rule, co1, post) else { continue };
            let Some(m2) = track(&m2_post, &inv) else { continue };
            if !applicable(r1, &m1, &pre) || !applicable(r2, &m2, &pre) {
                continue;
            }
            let Some((d, kinds)) = disabling_kinds(r1, &m1, r2, &m2, &pre) else { continue };
            if !kinds.contains(&ConflictKind::ProduceForbid) {
                continue;
            }
            let Some(t) = track(&m2, &d) else { continue };
            // Re-express the witness in the recomputed post-state.
            let witness = forbidden_created(&d, &t, nac, r1);
            if witness.is_empty() {
                continue;
            }
            out.push(CriticalPair {
                rule1: r1.name().to_owned(),
                rule2: r2.name().to_owned(),
                kind: PairKind::Conflict(ConflictKind::ProduceForbid),
                overlap: pre,
                m1,
                m2,
                after: d.result,
                witness,
                nac: Some(nac.label.clone()),
            });
        }
    }
    out
}

/// Created elements of `d` covered by some violation of `nac` at `t`.
fn forbidden_created(d: &Derivation, t: &Morphism, nac: &crate::rule::Nac, r1: &RuleWithNacs) -> BTreeSet<Elem> {
    let created = image_of(&d.comatch, &r1.rule.created());
    let mut out = BTreeSet::new();
    let mut partial = Morphism::new();
    for (x, nx) in &nac.map.nodes {
        partial.nodes.insert(nx.clone(), t.nodes[x].clone());
    }
    for (x, nx) in &nac.map.edges {
        partial.edges.insert(nx.clone(), t.edges[x].clone());
    }
    for q in crate::search::find_extensions(&nac.graph, &d.result, MorphismKind::Mono, &partial) {
        out.extend(q.image().intersection(&created).cloned());
    }
    out
}

/// All dependency pairs: `r2` depends on `r1`.
pub fn dependencies(r1: &RuleWithNacs, r2: &RuleWithNacs) -> Vec<CriticalPair> {
    let mut out = Vec::new();
    let created1 = r1.rule.created();
    for ov in overlaps(&r1.rule.rhs, &r2.rule.lhs) {
        let (post, co1, m2_post) = (&ov.graph, &ov.left, &ov.right);
        let created = image_of(co1, &created1);
        let witness: BTreeSet<Elem> = m2_post.image().intersection(&created).cloned().collect();
        if witness.is_empty() {
            continue;
        }
        let Some((pre, m1, _)) = undo(&r1.rule, co1, post) else { continue };
        if !applicable(r1, &m1, &pre) {
            continue;
        }
        let Ok(d) = apply_rule(&r1.rule, &m1, &pre) else { continue };
        // Follow the post-state naming of the recomputed derivation.
        let Some(iso) = align(post, co1, &d) else { continue };
        let Ok(m2_after) = compose(m2_post, &iso) else { continue };
        if !applicable(r2, &m2_after, &d.result) {
            continue;
        }
        out.push(CriticalPair {
            rule1: r1.name().to_owned(),
            rule2: r2.name().to_owned(),
            kind: PairKind::Dependency(DependencyKind::ProduceUse),
            overlap: pre,
            m1,
            m2: m2_after.clone(),
            after: d.result.clone(),
            witness: image_of(&iso, &witness),
            nac: None,
        });
    }
    let del1 = r1.rule.deleted();
    for nac in &r2.nacs {
        for ov in overlaps(&r1.rule.lhs, &nac.graph) {
            let (g, m1, q) = (&ov.graph, &ov.left, &ov.right);
            let Ok(m2) = compose(&nac.map, q) else { continue };
            if !m2.is_injective() {
                continue;
            }
            let deleted = image_of(m1, &del1);
            let witness: BTreeSet<Elem> = q.image().intersection(&deleted).cloned().collect();
            if witness.is_empty() || !m2.image().is_disjoint(&deleted) {
                continue;
            }
            if !applicable(r1, m1, g) {
                continue;
            }
            let Ok(d) = apply_rule(&r1.rule, m1, g) else { continue };
            let Some(t) = track(&m2, &d) else { continue };
            if !applicable(r2, &t, &d.result) {
                continue;
            }
            out.push(CriticalPair {
                rule1: r1.name().to_owned(),
                rule2: r2.name().to_owned(),
                kind: PairKind::Dependency(DependencyKind::DeleteForbid),
                overlap: g.clone(),
                m1: m1.clone(),
                m2,
                after: d.result,
                witness,
                nac: Some(nac.label.clone()),
            });
        }
    }
    out
}

/// Isomorphism from a post-state `post` (with comatch `co1`) onto the result
/// of a recomputed derivation `d`, agreeing on the comatch and on the
/// preserved context.
fn align(post: &TypedGraph, co1: &Morphism, d: &Derivation) -> Option<Morphism> {
    let mut partial = Morphism::new();
    for (x, y) in &co1.nodes {
        partial.nodes.insert(y.clone(), d.comatch.nodes[x].clone());
    }
    for (x, y) in &co1.edges {
        partial.edges.insert(y.clone(), d.comatch.edges[x].clone());
    }
    crate::search::first_extension(post, &d.result, MorphismKind::Iso, &partial)
}

/// Unordered pair key, smaller name first.
fn unordered(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_owned(), b.to_owned())
    } else {
        (b.to_owned(), a.to_owned())
    }
}

/// Aggregated conflicts and dependencies of a grammar.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CpaGraph {
    pub rules: Vec<String>,
    /// (r1, r2) -> kind -> number of critical pairs
    pub conflicts: BTreeMap<(String, String), BTreeMap<ConflictKind, usize>>,
    pub dependencies: BTreeMap<(String, String), BTreeMap<DependencyKind, usize>>,
    /// Unordered pairs (smaller name first) in delete-delete conflict.
    pub delete_delete: BTreeSet<(String, String)>,
    /// Unordered pairs in produce-forbid conflict in both directions.
    pub double_produce_forbid: BTreeSet<(String, String)>,
}

impl CpaGraph {
    pub fn has_conflict(&self, a: &str, b: &str) -> bool {
        self.conflicts.contains_key(&(a.to_owned(), b.to_owned()))
    }

    pub fn has_conflict_kind(&self, a: &str, b: &str, k: ConflictKind) -> bool {
        self.conflicts.get(&(a.to_owned(), b.to_owned())).is_some_and(|m| m.contains_key(&k))
    }

    pub fn has_dependency(&self, a: &str, b: &str) -> bool {
        self.dependencies.contains_key(&(a.to_owned(), b.to_owned()))
    }

    pub fn has_dependency_kind(&self, a: &str, b: &str, k: DependencyKind) -> bool {
        self.dependencies.get(&(a.to_owned(), b.to_owned())).is_some_and(|m| m.contains_key(&k))
    }

    pub fn is_dd(&self, a: &str, b: &str) -> bool {
        self.delete_delete.contains(&unordered(a, b))
    }

    pub fn is_ff(&self, a: &str, b: &str) -> bool {
        self.double_produce_forbid.contains(&unordered(a, b))
    }

    /// Rules with no conflict or dependency edge at all, self-loops included.
    pub fn disconnected(&self) -> Vec<String> {
        self.rules
            .iter()
            .filter(|r| {
                !self.conflicts.keys().chain(self.dependencies.keys()).any(|(a, b)| a == *r || b == *r)
            })
            .cloned()
            .collect()
    }
}

/// Conflicts and dependencies over all ordered rule pairs, self-pairs included.
pub fn cpa_graph(g: &Grammar) -> CpaGraph {
    cpa_of_rules(&g.rules.values().collect::<Vec<_>>())
}

pub fn cpa_of_rules(rules: &[&RuleWithNacs]) -> CpaGraph {
    let mut out = CpaGraph { rules: rules.iter().map(|r| r.name().to_owned()).collect(), ..Default::default() };
    out.rules.sort();
    let mut pf = BTreeSet::new();
    for r1 in rules {
        for r2 in rules {
            let key = (r1.name().to_owned(), r2.name().to_owned());
            let del2 = r2.rule.deleted();
            for cp in conflicts(r1, r2) {
                let PairKind::Conflict(k) = cp.kind else { continue };
                *out.conflicts.entry(key.clone()).or_default().entry(k).or_insert(0) += 1;
                if k == ConflictKind::UseDelete && !cp.witness.is_disjoint(&image_of(&cp.m2, &del2)) {
                    out.delete_delete.insert(unordered(&key.0, &key.1));
                }
                if k == ConflictKind::ProduceForbid {
                    pf.insert(key.clone());
                }
            }
            for cp in dependencies(r1, r2) {
                let PairKind::Dependency(k) = cp.kind else { continue };
                *out.dependencies.entry(key.clone()).or_default().entry(k).or_insert(0) += 1;
            }
        }
    }
    for (a, b) in &pf {
        if pf.contains(&(b.clone(), a.clone())) {
            out.double_produce_forbid.insert(unordered(a, b));
        }
    }
    out
}

/// A concrete host with applicable matches where applying `r1` disables `r2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub host: TypedGraph,
    pub m1: Morphism,
    pub m2: Morphism,
    pub kinds: BTreeSet<ConflictKind>,
}

/// Brute-force search over every host graph of at most `bound` elements built
/// from the types used by the two rules (node multisets in canonical order,
/// edges as multisets of typed node pairs), collecting all disabling pairs of
/// applicable matches. Stops after `limit` witnesses.
pub fn conflict_oracle(r1: &RuleWithNacs, r2: &RuleWithNacs, bound: usize, limit: usize) -> Result<Vec<Witness>, Error> {
    const HARD_BOUND: usize = 8;
    if bound > HARD_BOUND {
        return Err(Error::BoundExceeded { size: bound, bound: HARD_BOUND });
    }
    let (node_types, edge_types) = type_universe(&[r1, r2]);
    let mut out = Vec::new();
    for_each_host(&node_types, &edge_types, bound, &mut |host| {
        for m1 in find_matches_with(r1, host, MorphismKind::Mono) {
            for m2 in find_matches_with(r2, host, MorphismKind::Mono) {
                if let Some((_, kinds)) = disabling_kinds(r1, &m1, r2, &m2, host) {
                    if !kinds.is_empty() {
                        out.push(Witness { host: host.clone(), m1: m1.clone(), m2, kinds });
                        if out.len() >= limit {
                            return false;
                        }
                    }
                }
            }
        }
        true
    });
    Ok(out)
}

type EdgeType = (crate::Id, crate::Id, crate::Id);

fn type_universe(rules: &[&RuleWithNacs]) -> (Vec<crate::Id>, Vec<EdgeType>) {
    let mut nodes = BTreeSet::new();
    let mut edges = BTreeSet::new();
    for rw in rules {
        let p = &rw.rule;
        let graphs = [&p.lhs, &p.interface, &p.rhs].into_iter().chain(rw.nacs.iter().map(|n| &n.graph));
        for g in graphs {
            nodes.extend(g.nodes.values().cloned());
            for e in g.edges.values() {
                edges.insert((e.ty.clone(), g.nodes[&e.source].clone(), g.nodes[&e.target].clone()));
            }
        }
    }
    (nodes.into_iter().collect(), edges.into_iter().collect())
}

/// Visits every host; the visitor returns `false` to stop.
fn for_each_host(node_types: &[crate::Id], edge_types: &[EdgeType], bound: usize, visit: &mut dyn FnMut(&TypedGraph) -> bool) {
    for n in 0..=bound {
        let mut types = Vec::new();
        if !node_multisets(node_types, n, 0, &mut types, &mut |tys| {
            let mut g = TypedGraph::new();
            for (i, t) in tys.iter().enumerate() {
                g.add_node(format!("v{i}"), t.clone());
            }
            let slots: Vec<(crate::Id, crate::Id, crate::Id)> = edge_types
                .iter()
                .flat_map(|(et, st, tt)| {
                    let g = &g;
                    g.nodes.iter().filter(move |(_, t)| *t == st).flat_map(move |(s, _)| {
                        g.nodes
                            .iter()
                            .filter(move |(_, t)| *t == tt)
                            .map(move |(t, _)| (et.clone(), s.clone(), t.clone()))
                    })
                })
                .collect();
            edge_multisets(&slots, bound - n, 0, &mut g, visit)
        }) {
            return;
        }
    }
}

fn node_multisets(
    types: &[crate::Id],
    remaining: usize,
    from: usize,
    acc: &mut Vec<crate::Id>,
    visit: &mut dyn FnMut(&[crate::Id]) -> bool,
) -> bool {
    if remaining == 0 {
        return visit(acc);
    }
    for i in from..types.len() {
        acc.push(types[i].clone());
        let go_on = node_multisets(types, remaining - 1, i, acc, visit);
        acc.pop();
        if !go_on {
            return false;
        }
    }
    true
}

fn edge_multisets(
    slots: &[EdgeType],
    budget: usize,
    from: usize,
    g: &mut TypedGraph,
    visit: &mut dyn FnMut(&TypedGraph) -> bool,
) -> bool {
    if !visit(g) {
        return false;
    }
    if budget == 0 {
        return true;
    }
    for i in from..slots.len() {
        let (ty, s, t) = &slots[i];
        let id = crate::Id::new(format!("x{}", g.edges.len()));
        g.add_edge(id.clone(), ty.clone(), s.clone(), t.clone());
        let go_on = edge_multisets(slots, budget - 1, i, g, visit);
        g.edges.remove(&id);
        if !go_on {
            return false;
        }
    }
    true
}
