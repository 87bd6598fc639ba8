//! Plain graphs (used as type graphs) and typed graphs.

use std::borrow::Borrow;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Identifier of a node or an edge. Nodes and edges live in separate namespaces.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Id(String);

impl Id {
    pub fn new(s: impl Into<String>) -> Self {
        Id(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Id with a prime appended, used to freshen names on clashes.
    pub fn primed(&self) -> Id {
        Id(format!("{}'", self.0))
    }
}

impl fmt::Display for Id {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Id {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<&str> for Id {
    fn from(s: &str) -> Self {
        Id(s.to_owned())
    }
}

impl From<String> for Id {
    fn from(s: String) -> Self {
        Id(s)
    }
}

impl From<&Id> for Id {
    fn from(s: &Id) -> Self {
        s.clone()
    }
}

impl Borrow<str> for Id {
    fn borrow(&self) -> &str {
        &self.0
    }
}

/// Element class, used when reporting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Node,
    Edge,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Node => f.write_str("node"),
            Kind::Edge => f.write_str("edge"),
        }
    }
}

/// A graph element reference: class plus id.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem {
    pub kind: Kind,
    pub id: Id,
}

impl Elem {
    pub fn node(id: impl Into<Id>) -> Self {
        Elem { kind: Kind::Node, id: id.into() }
    }

    pub fn edge(id: impl Into<Id>) -> Self {
        Elem { kind: Kind::Edge, id: id.into() }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kind, self.id)
    }
}

/// A structural problem found by one of the `validate_*` functions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation(pub String);

impl Violation {
    pub fn new(msg: impl Into<String>) -> Self {
        Violation(msg.into())
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Untyped directed multigraph. Type graphs are values of this type.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    pub nodes: BTreeSet<Id>,
    /// edge id -> (source, target)
    pub edges: BTreeMap<Id, (Id, Id)>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_node(mut self, id: impl Into<Id>) -> Self {
        self.nodes.insert(id.into());
        self
    }

    pub fn with_edge(mut self, id: impl Into<Id>, src: impl Into<Id>, tgt: impl Into<Id>) -> Self {
        self.edges.insert(id.into(), (src.into(), tgt.into()));
        self
    }

    pub fn element_count(&self) -> usize {
        self.nodes.len() + self.edges.len()
    }
}

/// Checks that every edge endpoint is a node of `g`.
///
/// Node and edge ids are kept in distinct maps, so the two namespaces never
/// collide by construction; only endpoint totality can fail.
pub fn validate_graph(g: &Graph) -> Vec<Violation> {
    let mut out = Vec::new();
    for (e, (s, t)) in &g.edges {
        if !g.nodes.contains(s) || !g.nodes.contains(t) {
            out.push(Violation::new(format!("dangling endpoint {e}")));
        }
    }
    out
}

/// An edge of a typed graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypedEdge {
    pub source: Id,
    pub target: Id,
    pub ty: Id,
}

/// Graph with a typing morphism into a type graph.
///
/// The typing is stored per element (`node -> node type`, `edge -> edge type`);
/// the type graph itself is held by the owning grammar and passed explicitly
/// to [`validate_typed`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TypedGraph {
    pub nodes: BTreeMap<Id, Id>,
    pub edges: BTreeMap<Id, TypedEdge>,
}

impl TypedGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_node(mut self, id: impl Into<Id>, ty: impl Into<Id>) -> Self {
        self.add_node(id, ty);
        self
    }

    pub fn with_edge(
        mut self,
        id: impl Into<Id>,
        ty: impl Into<Id>,
        src: impl Into<Id>,
        tgt: impl Into<Id>,
    ) -> Self {
        self.add_edge(id, ty, src, tgt);
        self
    }

    pub fn add_node(&mut self, id: impl Into<Id>, ty: impl Into<Id>) {
        self.nodes.insert(id.into(), ty.into());
    }

    pub fn add_edge(
        &mut self,
        id: impl Into<Id>,
        ty: impl Into<Id>,
        src: impl Into<Id>,
        tgt: impl Into<Id>,
    ) {
        self.edges.insert(
            id.into(),
            TypedEdge { source: src.into(), target: tgt.into(), ty: ty.into() },
        );
    }

    pub fn node_type(&self, n: &Id) -> Option<&Id> {
        self.nodes.get(n)
    }

    pub fn edge(&self, e: &Id) -> Option<&TypedEdge> {
        self.edges.get(e)
    }

    pub fn element_count(&self) -> usize {
        self.nodes.len() + self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty() && self.edges.is_empty()
    }

    pub fn contains(&self, el: &Elem) -> bool {
        match el.kind {
            Kind::Node => self.nodes.contains_key(&el.id),
            Kind::Edge => self.edges.contains_key(&el.id),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.nodes
            .keys()
            .map(|n| Elem::node(n))
            .chain(self.edges.keys().map(|e| Elem::edge(e)))
    }

    /// Edges with `n` as source or target.
    pub fn incident_edges<'a>(&'a self, n: &'a Id) -> impl Iterator<Item = &'a Id> + 'a {
        self.edges
            .iter()
            .filter(move |(_, e)| &e.source == n || &e.target == n)
            .map(|(id, _)| id)
    }

    /// Node types and edge types used by this graph.
    pub fn used_types(&self) -> (BTreeSet<Id>, BTreeSet<Id>) {
        (
            self.nodes.values().cloned().collect(),
            self.edges.values().map(|e| e.ty.clone()).collect(),
        )
    }

    /// Renames every type through the given maps. Unmapped types are kept.
    pub fn retyped(&self, node_types: &BTreeMap<Id, Id>, edge_types: &BTreeMap<Id, Id>) -> Self {
        TypedGraph {
            nodes: self
                .nodes
                .iter()
                .map(|(n, t)| (n.clone(), node_types.get(t).unwrap_or(t).clone()))
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|(id, e)| {
                    let ty = edge_types.get(&e.ty).unwrap_or(&e.ty).clone();
                    (id.clone(), TypedEdge { ty, ..e.clone() })
                })
                .collect(),
        }
    }

    /// A fresh id not used by any node of this graph, derived from `base`.
    pub fn fresh_node_id(&self, base: &Id) -> Id {
        let mut id = base.clone();
        while self.nodes.contains_key(&id) {
            id = id.primed();
        }
        id
    }

    pub fn fresh_edge_id(&self, base: &Id) -> Id {
        let mut id = base.clone();
        while self.edges.contains_key(&id) {
            id = id.primed();
        }
        id
    }
}

/// Validates the carrier graph and its typing against `type_graph`.
pub fn validate_typed(g: &TypedGraph, type_graph: &Graph) -> Vec<Violation> {
    let mut out = Vec::new();
    for (n, t) in &g.nodes {
        if !type_graph.nodes.contains(t) {
            out.push(Violation::new(format!("node {n} has unknown type {t}")));
        }
    }
    for (id, e) in &g.edges {
        let (Some(st), Some(tt)) = (g.nodes.get(&e.source), g.nodes.get(&e.target)) else {
            out.push(Violation::new(format!("dangling endpoint {id}")));
            continue;
        };
        match type_graph.edges.get(&e.ty) {
            None => out.push(Violation::new(format!("edge {id} has unknown type {}", e.ty))),
            Some((ts, tt2)) => {
                if ts != st || tt2 != tt {
                    out.push(Violation::new(format!(
                        "typing of edge {id} does not commute: {}({},{}) but endpoints typed ({st},{tt})",
                        e.ty, ts, tt2
                    )));
                }
            }
        }
    }
    out
}

/// Validates the carrier graph alone (endpoint totality).
pub fn validate_carrier(g: &TypedGraph) -> Vec<Violation> {
    g.edges
        .iter()
        .filter(|(_, e)| !g.nodes.contains_key(&e.source) || !g.nodes.contains_key(&e.target))
        .map(|(id, _)| Violation::new(format!("dangling endpoint {id}")))
        .collect()
}
