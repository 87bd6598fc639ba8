//! Backtracking enumeration of typed graph morphisms.
//!
//! Edges are assigned first, most-constrained first (edges whose endpoints are
//! already fixed come before free ones, then fewer same-typed candidates);
//! remaining nodes are assigned afterwards. Typing is the first filter on
//! every candidate.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::ControlFlow;

use crate::graph::{Id, TypedGraph};
use crate::morphism::Morphism;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MorphismKind {
    Any,
    Mono,
    Iso,
}

impl MorphismKind {
    fn injective(self) -> bool {
        !matches!(self, MorphismKind::Any)
    }
}

/// All typed morphisms `a -> b` of the requested kind, in canonical order.
pub fn find_morphisms(a: &TypedGraph, b: &TypedGraph, kind: MorphismKind) -> Vec<Morphism> {
    find_extensions(a, b, kind, &Morphism::new())
}

/// All morphisms of the requested kind that agree with `partial` on the
/// elements it defines, in canonical order.
pub fn find_extensions(
    a: &TypedGraph,
    b: &TypedGraph,
    kind: MorphismKind,
    partial: &Morphism,
) -> Vec<Morphism> {
    let mut out = Vec::new();
    for_each_extension(a, b, kind, partial, |m| {
        out.push(m.clone());
        ControlFlow::Continue(())
    });
    out.sort();
    out
}

/// First extension found by the search, if any.
pub fn first_extension(
    a: &TypedGraph,
    b: &TypedGraph,
    kind: MorphismKind,
    partial: &Morphism,
) -> Option<Morphism> {
    let mut found = None;
    for_each_extension(a, b, kind, partial, |m| {
        found = Some(m.clone());
        ControlFlow::Break(())
    });
    found
}

pub fn exists_extension(a: &TypedGraph, b: &TypedGraph, kind: MorphismKind, partial: &Morphism) -> bool {
    first_extension(a, b, kind, partial).is_some()
}

/// Some isomorphism `a -> b`, if the graphs are isomorphic.
pub fn graph_isomorphic(a: &TypedGraph, b: &TypedGraph) -> Option<Morphism> {
    if a.nodes.len() != b.nodes.len() || a.edges.len() != b.edges.len() {
        return None;
    }
    if type_histogram(a) != type_histogram(b) {
        return None;
    }
    first_extension(a, b, MorphismKind::Iso, &Morphism::new())
}

fn type_histogram(g: &TypedGraph) -> (BTreeMap<&Id, usize>, BTreeMap<&Id, usize>) {
    let mut n = BTreeMap::new();
    for t in g.nodes.values() {
        *n.entry(t).or_insert(0) += 1;
    }
    let mut e = BTreeMap::new();
    for ed in g.edges.values() {
        *e.entry(&ed.ty).or_insert(0) += 1;
    }
    (n, e)
}

/// Drives the search, calling `visit` on every complete morphism. Returns
/// `true` if the visitor stopped the search early.
pub fn for_each_extension<F>(
    a: &TypedGraph,
    b: &TypedGraph,
    kind: MorphismKind,
    partial: &Morphism,
    mut visit: F,
) -> bool
where
    F: FnMut(&Morphism) -> ControlFlow<()>,
{
    if kind == MorphismKind::Iso
        && (a.nodes.len() != b.nodes.len() || a.edges.len() != b.edges.len())
    {
        return false;
    }
    if kind.injective() && (a.nodes.len() > b.nodes.len() || a.edges.len() > b.edges.len()) {
        return false;
    }
    let Some(mut state) = State::seed(a, b, kind, partial) else {
        return false;
    };
    let plan = plan(a, b, &state);
    state.run(&plan, 0, &mut visit).is_break()
}

enum Step<'a> {
    Edge(&'a Id),
    Node(&'a Id),
}

struct State<'a> {
    a: &'a TypedGraph,
    b: &'a TypedGraph,
    injective: bool,
    current: Morphism,
    used_nodes: BTreeSet<Id>,
    used_edges: BTreeSet<Id>,
}

impl<'a> State<'a> {
    fn seed(a: &'a TypedGraph, b: &'a TypedGraph, kind: MorphismKind, partial: &Morphism) -> Option<Self> {
        let mut s = State {
            a,
            b,
            injective: kind.injective(),
            current: Morphism::new(),
            used_nodes: BTreeSet::new(),
            used_edges: BTreeSet::new(),
        };
        for (x, y) in &partial.nodes {
            if !s.try_node(x, y) {
                return None;
            }
        }
        for (x, y) in &partial.edges {
            let ea = a.edges.get(x)?;
            let eb = b.edges.get(y)?;
            if ea.ty != eb.ty || (s.injective && s.used_edges.contains(y)) {
                return None;
            }
            if !s.try_node(&ea.source, &eb.source) || !s.try_node(&ea.target, &eb.target) {
                return None;
            }
            s.current.edges.insert(x.clone(), y.clone());
            s.used_edges.insert(y.clone());
        }
        Some(s)
    }

    /// Assigns `x -> y` permanently if consistent (used during seeding).
    fn try_node(&mut self, x: &Id, y: &Id) -> bool {
        match (self.a.nodes.get(x), self.b.nodes.get(y)) {
            (Some(tx), Some(ty)) if tx == ty => {}
            _ => return false,
        }
        match self.current.nodes.get(x) {
            Some(prev) => prev == y,
            None => {
                if self.injective && self.used_nodes.contains(y) {
                    return false;
                }
                self.current.nodes.insert(x.clone(), y.clone());
                self.used_nodes.insert(y.clone());
                true
            }
        }
    }

    fn run<F>(&mut self, plan: &[Step<'a>], i: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&Morphism) -> ControlFlow<()>,
    {
        let Some(step) = plan.get(i) else {
            return visit(&self.current);
        };
        match step {
            Step::Edge(e) => {
                let ea = &self.a.edges[*e];
                for (f, eb) in &self.b.edges {
                    if eb.ty != ea.ty || (self.injective && self.used_edges.contains(f)) {
                        continue;
                    }
                    let mut assigned = Vec::new();
                    if !self.bind(&ea.source, &eb.source, &mut assigned)
                        || !self.bind(&ea.target, &eb.target, &mut assigned)
                    {
                        self.unbind(assigned);
                        continue;
                    }
                    self.current.edges.insert((*e).clone(), f.clone());
                    self.used_edges.insert(f.clone());
                    let flow = self.run(plan, i + 1, visit);
                    self.current.edges.remove(*e);
                    self.used_edges.remove(f);
                    self.unbind(assigned);
                    flow?;
                }
                ControlFlow::Continue(())
            }
            Step::Node(n) => {
                if self.current.nodes.contains_key(*n) {
                    return self.run(plan, i + 1, visit);
                }
                let ty = &self.a.nodes[*n];
                for (m, tm) in &self.b.nodes {
                    if tm != ty || (self.injective && self.used_nodes.contains(m)) {
                        continue;
                    }
                    self.current.nodes.insert((*n).clone(), m.clone());
                    self.used_nodes.insert(m.clone());
                    let flow = self.run(plan, i + 1, visit);
                    self.current.nodes.remove(*n);
                    self.used_nodes.remove(m);
                    flow?;
                }
                ControlFlow::Continue(())
            }
        }
    }

    fn bind(&mut self, x: &Id, y: &Id, assigned: &mut Vec<Id>) -> bool {
        match self.current.nodes.get(x) {
            Some(prev) => prev == y,
            None => {
                if self.a.nodes.get(x) != self.b.nodes.get(y) {
                    return false;
                }
                if self.injective && self.used_nodes.contains(y) {
                    return false;
                }
                self.current.nodes.insert(x.clone(), y.clone());
                self.used_nodes.insert(y.clone());
                assigned.push(x.clone());
                true
            }
        }
    }

    fn unbind(&mut self, assigned: Vec<Id>) {
        for x in assigned {
            if let Some(y) = self.current.nodes.remove(&x) {
                self.used_nodes.remove(&y);
            }
        }
    }
}

fn plan<'a>(a: &'a TypedGraph, b: &TypedGraph, seed: &State<'_>) -> Vec<Step<'a>> {
    let mut candidates: BTreeMap<&Id, usize> = BTreeMap::new();
    for eb in b.edges.values() {
        *candidates.entry(&eb.ty).or_insert(0) += 1;
    }
    let mut covered: BTreeSet<&Id> = a.nodes.keys().filter(|n| seed.current.nodes.contains_key(*n)).collect();
    let mut remaining: Vec<&Id> = a.edges.keys().filter(|e| !seed.current.edges.contains_key(*e)).collect();
    let mut steps = Vec::new();
    while !remaining.is_empty() {
        let (pos, _) = remaining
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let ea = &a.edges[*e];
                let fixed = covered.contains(&ea.source) as usize + covered.contains(&ea.target) as usize;
                let cands = candidates.get(&ea.ty).copied().unwrap_or(0);
                (i, (std::cmp::Reverse(fixed), cands, *e))
            })
            .min_by(|x, y| x.1.cmp(&y.1))
            .expect("nonempty");
        let e = remaining.remove(pos);
        let ea = &a.edges[e];
        covered.insert(&ea.source);
        covered.insert(&ea.target);
        steps.push(Step::Edge(e));
    }
    for n in a.nodes.keys() {
        if !covered.contains(n) {
            steps.push(Step::Node(n));
        }
    }
    steps
}
