//! Graph morphisms as explicit node and edge maps.

use std::collections::{BTreeMap, BTreeSet};

use crate::graph::{Elem, Graph, Id, Kind, TypedGraph, Violation};
use crate::Error;

/// A (typed) graph morphism. Domain and codomain are not stored; every
/// operation that needs them takes them as arguments.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Morphism {
    pub nodes: BTreeMap<Id, Id>,
    pub edges: BTreeMap<Id, Id>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub injective: bool,
    pub surjective: bool,
    pub iso: bool,
}

impl Morphism {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn identity(g: &TypedGraph) -> Self {
        Morphism {
            nodes: g.nodes.keys().map(|n| (n.clone(), n.clone())).collect(),
            edges: g.edges.keys().map(|e| (e.clone(), e.clone())).collect(),
        }
    }

    pub fn identity_plain(g: &Graph) -> Self {
        Morphism {
            nodes: g.nodes.iter().map(|n| (n.clone(), n.clone())).collect(),
            edges: g.edges.keys().map(|e| (e.clone(), e.clone())).collect(),
        }
    }

    pub fn with_node(mut self, from: impl Into<Id>, to: impl Into<Id>) -> Self {
        self.nodes.insert(from.into(), to.into());
        self
    }

    pub fn with_edge(mut self, from: impl Into<Id>, to: impl Into<Id>) -> Self {
        self.edges.insert(from.into(), to.into());
        self
    }

    pub fn node(&self, n: &Id) -> Option<&Id> {
        self.nodes.get(n)
    }

    pub fn edge(&self, e: &Id) -> Option<&Id> {
        self.edges.get(e)
    }

    pub fn elem(&self, el: &Elem) -> Option<Elem> {
        match el.kind {
            Kind::Node => self.nodes.get(&el.id).map(Elem::node),
            Kind::Edge => self.edges.get(&el.id).map(Elem::edge),
        }
    }

    /// Both component maps are injective.
    pub fn is_injective(&self) -> bool {
        is_injective_map(&self.nodes) && is_injective_map(&self.edges)
    }

    /// Image of the morphism as a set of elements.
    pub fn image(&self) -> BTreeSet<Elem> {
        self.nodes
            .values()
            .map(Elem::node)
            .chain(self.edges.values().map(Elem::edge))
            .collect()
    }

    /// Restriction to the elements present in `g`.
    pub fn restrict_to(&self, g: &TypedGraph) -> Morphism {
        Morphism {
            nodes: self.nodes.iter().filter(|(k, _)| g.nodes.contains_key(*k)).map(|(k, v)| (k.clone(), v.clone())).collect(),
            edges: self.edges.iter().filter(|(k, _)| g.edges.contains_key(*k)).map(|(k, v)| (k.clone(), v.clone())).collect(),
        }
    }

    /// Inverse of an injective morphism (as a partial map on the codomain).
    pub fn inverse(&self) -> Morphism {
        Morphism {
            nodes: self.nodes.iter().map(|(k, v)| (v.clone(), k.clone())).collect(),
            edges: self.edges.iter().map(|(k, v)| (v.clone(), k.clone())).collect(),
        }
    }

    /// `then ∘ self`: first apply `self`, then `then`.
    pub fn then(&self, then: &Morphism) -> Result<Morphism, Error> {
        compose(self, then)
    }

    /// Whether `self` and `other` agree on every element both define.
    pub fn agrees_with(&self, other: &Morphism) -> bool {
        self.nodes.iter().all(|(k, v)| other.nodes.get(k).map_or(true, |w| w == v))
            && self.edges.iter().all(|(k, v)| other.edges.get(k).map_or(true, |w| w == v))
    }
}

fn is_injective_map(m: &BTreeMap<Id, Id>) -> bool {
    let mut seen = BTreeSet::new();
    m.values().all(|v| seen.insert(v))
}

/// Composition `g ∘ f` where `f: A -> B` and `g: B -> C`.
///
/// Fails with [`Error::DomainMismatch`] when some image of `f` is outside the
/// domain of `g`.
pub fn compose(f: &Morphism, g: &Morphism) -> Result<Morphism, Error> {
    let mut out = Morphism::new();
    for (a, b) in &f.nodes {
        let c = g.nodes.get(b).ok_or_else(|| Error::DomainMismatch(format!("node {b}")))?;
        out.nodes.insert(a.clone(), c.clone());
    }
    for (a, b) in &f.edges {
        let c = g.edges.get(b).ok_or_else(|| Error::DomainMismatch(format!("edge {b}")))?;
        out.edges.insert(a.clone(), c.clone());
    }
    Ok(out)
}

/// Validates a typed morphism `f: dom -> cod`: totality, homomorphism
/// squares and type preservation. Elements mapped outside `dom` are reported
/// as well.
pub fn validate_morphism(f: &Morphism, dom: &TypedGraph, cod: &TypedGraph) -> Vec<Violation> {
    let mut out = Vec::new();
    for (n, ty) in &dom.nodes {
        match f.nodes.get(n) {
            None => out.push(Violation::new(format!("node {n} is unmapped"))),
            Some(m) => match cod.nodes.get(m) {
                None => out.push(Violation::new(format!("node {n} maps to missing node {m}"))),
                Some(t2) if t2 != ty => out.push(Violation::new(format!(
                    "typing triangle fails at node {n}: {ty} -> {t2}"
                ))),
                _ => {}
            },
        }
    }
    for (e, edge) in &dom.edges {
        let Some(m) = f.edges.get(e) else {
            out.push(Violation::new(format!("edge {e} is unmapped")));
            continue;
        };
        let Some(target) = cod.edges.get(m) else {
            out.push(Violation::new(format!("edge {e} maps to missing edge {m}")));
            continue;
        };
        if target.ty != edge.ty {
            out.push(Violation::new(format!(
                "typing triangle fails at edge {e}: {} -> {}",
                edge.ty, target.ty
            )));
        }
        if f.nodes.get(&edge.source) != Some(&target.source) {
            out.push(Violation::new(format!("source square fails at edge {e}")));
        }
        if f.nodes.get(&edge.target) != Some(&target.target) {
            out.push(Violation::new(format!("target square fails at edge {e}")));
        }
    }
    for n in f.nodes.keys().filter(|n| !dom.nodes.contains_key(*n)) {
        out.push(Violation::new(format!("node {n} is not in the domain")));
    }
    for e in f.edges.keys().filter(|e| !dom.edges.contains_key(*e)) {
        out.push(Violation::new(format!("edge {e} is not in the domain")));
    }
    out
}

/// Validates an untyped morphism between plain graphs.
pub fn validate_plain_morphism(f: &Morphism, dom: &Graph, cod: &Graph) -> Vec<Violation> {
    let mut out = Vec::new();
    for n in &dom.nodes {
        match f.nodes.get(n) {
            None => out.push(Violation::new(format!("node {n} is unmapped"))),
            Some(m) if !cod.nodes.contains(m) => {
                out.push(Violation::new(format!("node {n} maps to missing node {m}")))
            }
            _ => {}
        }
    }
    for (e, (s, t)) in &dom.edges {
        let Some(m) = f.edges.get(e) else {
            out.push(Violation::new(format!("edge {e} is unmapped")));
            continue;
        };
        let Some((s2, t2)) = cod.edges.get(m) else {
            out.push(Violation::new(format!("edge {e} maps to missing edge {m}")));
            continue;
        };
        if f.nodes.get(s) != Some(s2) {
            out.push(Violation::new(format!("source square fails at edge {e}")));
        }
        if f.nodes.get(t) != Some(t2) {
            out.push(Violation::new(format!("target square fails at edge {e}")));
        }
    }
    out
}

/// Injective / surjective / iso classification of a valid `f: dom -> cod`.
pub fn classify(f: &Morphism, cod: &TypedGraph) -> Classification {
    let injective = f.is_injective();
    let img_nodes: BTreeSet<&Id> = f.nodes.values().collect();
    let img_edges: BTreeSet<&Id> = f.edges.values().collect();
    let surjective = img_nodes.len() == cod.nodes.len() && img_edges.len() == cod.edges.len();
    Classification { injective, surjective, iso: injective && surjective }
}

/// Whether the square `a -f-> b -g-> d` equals `a -h-> c -k-> d`.
pub fn commutes(f: &Morphism, g: &Morphism, h: &Morphism, k: &Morphism) -> bool {
    match (compose(f, g), compose(h, k)) {
        (Ok(x), Ok(y)) => x == y,
        _ => false,
    }
}
