//! Pushouts, pushout complements and a brute-force universal-property oracle.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::ControlFlow;

use crate::graph::{Elem, Id, Kind, TypedGraph};
use crate::morphism::{commutes, Morphism};
use crate::search::{for_each_extension, MorphismKind};
use crate::{Error, GluingViolation};

/// Default element bound of [`is_pushout`].
pub const ORACLE_BOUND: usize = 10;

/// Result of [`pushout`]: `D` with `from_b: B -> D` and `from_c: C -> D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pushout {
    pub object: TypedGraph,
    pub from_b: Morphism,
    pub from_c: Morphism,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Side {
    B,
    C,
}

type Tagged = (Side, Id);

/// Union-find over tagged ids. Class representative is the smallest member.
#[derive(Default)]
struct Classes {
    parent: BTreeMap<Tagged, Tagged>,
}

impl Classes {
    fn add(&mut self, x: Tagged) {
        self.parent.entry(x.clone()).or_insert(x);
    }

    fn find(&mut self, x: &Tagged) -> Tagged {
        let p = self.parent[x].clone();
        if &p == x {
            return p;
        }
        let root = self.find(&p);
        self.parent.insert(x.clone(), root.clone());
        root
    }

    fn union(&mut self, x: &Tagged, y: &Tagged) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx < ry {
            self.parent.insert(ry, rx);
        } else if ry < rx {
            self.parent.insert(rx, ry);
        }
    }

    /// Class members grouped by representative.
    fn groups(&mut self) -> BTreeMap<Tagged, Vec<Tagged>> {
        let keys: Vec<Tagged> = self.parent.keys().cloned().collect();
        let mut out: BTreeMap<Tagged, Vec<Tagged>> = BTreeMap::new();
        for k in keys {
            let r = self.find(&k);
            out.entry(r).or_default().push(k);
        }
        out
    }
}

/// Names classes after their representative, priming C-side names that clash.
fn name_classes(groups: &BTreeMap<Tagged, Vec<Tagged>>) -> BTreeMap<Tagged, Id> {
    let mut taken = BTreeSet::new();
    let mut names = BTreeMap::new();
    for (side, id) in groups.keys() {
        if *side == Side::B {
            taken.insert(id.clone());
            names.insert((*side, id.clone()), id.clone());
        }
    }
    for (side, id) in groups.keys() {
        if *side == Side::C {
            let mut name = id.clone();
            while taken.contains(&name) {
                name = name.primed();
            }
            taken.insert(name.clone());
            names.insert((*side, id.clone()), name);
        }
    }
    names
}

/// Pushout of `f: A -> B` and `g: A -> C`, computed as the quotient of `B + C`
/// by the equivalence generated by `f(x) ~ g(x)`.
pub fn pushout(a: &TypedGraph, b: &TypedGraph, c: &TypedGraph, f: &Morphism, g: &Morphism) -> Pushout {
    let mut nodes = Classes::default();
    let mut edges = Classes::default();
    for n in b.nodes.keys() {
        nodes.add((Side::B, n.clone()));
    }
    for n in c.nodes.keys() {
        nodes.add((Side::C, n.clone()));
    }
    for e in b.edges.keys() {
        edges.add((Side::B, e.clone()));
    }
    for e in c.edges.keys() {
        edges.add((Side::C, e.clone()));
    }
    for n in a.nodes.keys() {
        nodes.union(&(Side::B, f.nodes[n].clone()), &(Side::C, g.nodes[n].clone()));
    }
    for e in a.edges.keys() {
        edges.union(&(Side::B, f.edges[e].clone()), &(Side::C, g.edges[e].clone()));
    }
    let node_groups = nodes.groups();
    let edge_groups = edges.groups();
    let node_names = name_classes(&node_groups);
    let edge_names = name_classes(&edge_groups);

    let mut out = Pushout { object: TypedGraph::new(), from_b: Morphism::new(), from_c: Morphism::new() };
    for (rep, members) in &node_groups {
        let name = &node_names[rep];
        let ty = match rep.0 {
            Side::B => &b.nodes[&rep.1],
            Side::C => &c.nodes[&rep.1],
        };
        out.object.add_node(name.clone(), ty.clone());
        for (side, id) in members {
            match side {
                Side::B => out.from_b.nodes.insert(id.clone(), name.clone()),
                Side::C => out.from_c.nodes.insert(id.clone(), name.clone()),
            };
        }
    }
    for (rep, members) in &edge_groups {
        let name = &edge_names[rep];
        let (edge, to_d) = match rep.0 {
            Side::B => (&b.edges[&rep.1], &out.from_b),
            Side::C => (&c.edges[&rep.1], &out.from_c),
        };
        let src = to_d.nodes[&edge.source].clone();
        let tgt = to_d.nodes[&edge.target].clone();
        out.object.add_edge(name.clone(), edge.ty.clone(), src, tgt);
        for (side, id) in members {
            match side {
                Side::B => out.from_b.edges.insert(id.clone(), name.clone()),
                Side::C => out.from_c.edges.insert(id.clone(), name.clone()),
            };
        }
    }
    out
}

/// Result of [`pushout_complement`]: context `D` with `k: K -> D` and the
/// inclusion `d: D -> G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complement {
    pub object: TypedGraph,
    pub k: Morphism,
    pub d: Morphism,
}

/// Elements of `G` deleted by a match `m: L -> G` of the span `l: K -> L`.
pub fn deleted_by(l_graph: &TypedGraph, l: &Morphism, m: &Morphism) -> BTreeSet<Elem> {
    let kept: BTreeSet<Elem> = l.image();
    l_graph
        .elements()
        .filter(|x| !kept.contains(x))
        .filter_map(|x| m.elem(&x))
        .collect()
}

/// Checks the gluing condition of `m: L -> G` for `l: K -> L`.
pub fn check_gluing(l_graph: &TypedGraph, l: &Morphism, g: &TypedGraph, m: &Morphism) -> Result<(), GluingViolation> {
    let kept = l.image();
    let mut identified = BTreeSet::new();
    for kind in [Kind::Node, Kind::Edge] {
        let map = match kind {
            Kind::Node => &m.nodes,
            Kind::Edge => &m.edges,
        };
        let mut preimages: BTreeMap<&Id, Vec<&Id>> = BTreeMap::new();
        for (x, y) in map {
            preimages.entry(y).or_default().push(x);
        }
        for xs in preimages.values().filter(|xs| xs.len() > 1) {
            for x in xs {
                let el = Elem { kind, id: (*x).clone() };
                if !kept.contains(&el) {
                    identified.insert(el);
                }
            }
        }
    }
    if !identified.is_empty() {
        return Err(GluingViolation::Identification(identified.into_iter().collect()));
    }
    let deleted = deleted_by(l_graph, l, m);
    let dangling: Vec<Id> = g
        .edges
        .iter()
        .filter(|(id, e)| {
            !deleted.contains(&Elem::edge(*id))
                && (deleted.contains(&Elem::node(&e.source)) || deleted.contains(&Elem::node(&e.target)))
        })
        .map(|(id, _)| id.clone())
        .collect();
    if !dangling.is_empty() {
        return Err(GluingViolation::Dangling(dangling));
    }
    Ok(())
}

/// Pushout complement of `l: K -> L` (mono) and `m: L -> G`:
/// `D = G \ m(L \ l(K))`.
pub fn pushout_complement(
    l_graph: &TypedGraph,
    l: &Morphism,
    g: &TypedGraph,
    m: &Morphism,
) -> Result<Complement, GluingViolation> {
    check_gluing(l_graph, l, g, m)?;
    let deleted = deleted_by(l_graph, l, m);
    let mut object = g.clone();
    object.nodes.retain(|n, _| !deleted.contains(&Elem::node(n)));
    object.edges.retain(|e, _| !deleted.contains(&Elem::edge(e)));
    let d = Morphism::identity(&object);
    let k = Morphism {
        nodes: l.nodes.iter().map(|(x, y)| (x.clone(), m.nodes[y].clone())).collect(),
        edges: l.edges.iter().map(|(x, y)| (x.clone(), m.edges[y].clone())).collect(),
    };
    Ok(Complement { object, k, d })
}

/// Universal-property oracle for the square
///
/// ```text
///   A --f--> B
///   |        |
///   g       gb
///   v        v
///   C --gc-> D
/// ```
///
/// Commutativity is checked first. Cocones are then enumerated exhaustively
/// as every coarsening of the equivalence on `B + C` generated by `A` (each a
/// jointly surjective cocone), plus `D` doubled over the joint image of `gb`
/// and `gc`, which detects elements of `D` outside that image. The square is
/// a pushout iff every such cocone has exactly one mediating morphism.
#[allow(clippy::too_many_arguments)]
pub fn is_pushout(
    a: &TypedGraph,
    b: &TypedGraph,
    c: &TypedGraph,
    d: &TypedGraph,
    f: &Morphism,
    g: &Morphism,
    gb: &Morphism,
    gc: &Morphism,
    bound: usize,
) -> Result<bool, Error> {
    for x in [a, b, c, d] {
        if x.element_count() > bound {
            return Err(Error::BoundExceeded { size: x.element_count(), bound });
        }
    }
    if !commutes(f, gb, g, gc) {
        return Ok(false);
    }
    let base = finest_cocone(a, b, c, f, g);
    let mut ok = true;
    base.for_each_coarsening(&mut |x, hb, hc| {
        if count_mediating(d, x, gb, gc, hb, hc, 2) != 1 {
            ok = false;
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    if !ok {
        return Ok(false);
    }
    let (x, inl) = double_over_image(d, gb, gc);
    let hb = gb.then(&inl)?;
    let hc = gc.then(&inl)?;
    Ok(count_mediating(d, &x, gb, gc, &hb, &hc, 2) == 1)
}

/// Number of `u: D -> X` with `u . gb = hb` and `u . gc = hc`, counted up to `cap`.
fn count_mediating(
    d: &TypedGraph,
    x: &TypedGraph,
    gb: &Morphism,
    gc: &Morphism,
    hb: &Morphism,
    hc: &Morphism,
    cap: usize,
) -> usize {
    let mut partial = Morphism::new();
    for (via, target) in [(gb, hb), (gc, hc)] {
        for (src, dn) in &via.nodes {
            let want = &target.nodes[src];
            if let Some(prev) = partial.nodes.insert(dn.clone(), want.clone()) {
                if &prev != want {
                    return 0;
                }
            }
        }
        for (src, de) in &via.edges {
            let want = &target.edges[src];
            if let Some(prev) = partial.edges.insert(de.clone(), want.clone()) {
                if &prev != want {
                    return 0;
                }
            }
        }
    }
    let mut count = 0;
    for_each_extension(d, x, MorphismKind::Any, &partial, |_| {
        count += 1;
        if count >= cap {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    count
}

/// `D +_I D` where `I` is the joint image of `gb` and `gc`, with the left
/// injection.
fn double_over_image(d: &TypedGraph, gb: &Morphism, gc: &Morphism) -> (TypedGraph, Morphism) {
    let image: BTreeSet<Elem> = gb.image().union(&gc.image()).cloned().collect();
    let mut x = TypedGraph::new();
    let mut inl = Morphism::new();
    let copy = |id: &Id| Id::new(format!("#{id}"));
    for (n, t) in &d.nodes {
        let l = Id::new(format!("@{n}"));
        x.add_node(l.clone(), t.clone());
        inl.nodes.insert(n.clone(), l.clone());
        if !image.contains(&Elem::node(n)) {
            x.add_node(copy(n), t.clone());
        }
    }
    let right_node = |n: &Id| {
        if image.contains(&Elem::node(n)) {
            Id::new(format!("@{n}"))
        } else {
            copy(n)
        }
    };
    for (e, ed) in &d.edges {
        let l = Id::new(format!("@{e}"));
        x.add_edge(l.clone(), ed.ty.clone(), format!("@{}", ed.source), format!("@{}", ed.target));
        inl.edges.insert(e.clone(), l);
        if !image.contains(&Elem::edge(e)) {
            x.add_edge(copy(e), ed.ty.clone(), right_node(&ed.source), right_node(&ed.target));
        }
    }
    (x, inl)
}

/// The quotient of `B + C` by the equivalence generated by `A`, computed by
/// naive fixpoint relabelling (deliberately independent of [`pushout`]).
struct Cocone {
    /// Node classes as (type, B members, C members).
    node_classes: Vec<(Id, Vec<Id>, Vec<Id>)>,
    /// Edge classes as (type, source class, target class, B members, C members).
    edge_classes: Vec<(Id, usize, usize, Vec<Id>, Vec<Id>)>,
}

fn finest_cocone(a: &TypedGraph, b: &TypedGraph, c: &TypedGraph, f: &Morphism, g: &Morphism) -> Cocone {
    fn classes(items: Vec<(bool, Id)>, pairs: Vec<((bool, Id), (bool, Id))>) -> Vec<Vec<(bool, Id)>> {
        let mut label: BTreeMap<(bool, Id), usize> = items.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        loop {
            let mut changed = false;
            for (x, y) in &pairs {
                let (lx, ly) = (label[x], label[y]);
                if lx != ly {
                    let (lo, hi) = (lx.min(ly), lx.max(ly));
                    for v in label.values_mut() {
                        if *v == hi {
                            *v = lo;
                        }
                    }
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let mut grouped: BTreeMap<usize, Vec<(bool, Id)>> = BTreeMap::new();
        for (x, l) in label {
            grouped.entry(l).or_default().push(x);
        }
        grouped.into_values().collect()
    }
    let node_items: Vec<(bool, Id)> =
        b.nodes.keys().map(|n| (false, n.clone())).chain(c.nodes.keys().map(|n| (true, n.clone()))).collect();
    let node_pairs = a.nodes.keys().map(|n| ((false, f.nodes[n].clone()), (true, g.nodes[n].clone()))).collect();
    let node_groups = classes(node_items, node_pairs);
    let edge_items: Vec<(bool, Id)> =
        b.edges.keys().map(|e| (false, e.clone())).chain(c.edges.keys().map(|e| (true, e.clone()))).collect();
    let edge_pairs = a.edges.keys().map(|e| ((false, f.edges[e].clone()), (true, g.edges[e].clone()))).collect();
    let edge_groups = classes(edge_items, edge_pairs);

    let mut node_of: BTreeMap<(bool, Id), usize> = BTreeMap::new();
    let node_classes = node_groups
        .iter()
        .enumerate()
        .map(|(i, members)| {
            for m in members {
                node_of.insert(m.clone(), i);
            }
            let (side, id) = &members[0];
            let ty = if *side { c.nodes[id].clone() } else { b.nodes[id].clone() };
            let bs = members.iter().filter(|m| !m.0).map(|m| m.1.clone()).collect();
            let cs = members.iter().filter(|m| m.0).map(|m| m.1.clone()).collect();
            (ty, bs, cs)
        })
        .collect();
    let edge_classes = edge_groups
        .iter()
        .map(|members| {
            let (side, id) = &members[0];
            let e = if *side { &c.edges[id] } else { &b.edges[id] };
            let s = node_of[&(*side, e.source.clone())];
            let t = node_of[&(*side, e.target.clone())];
            let bs = members.iter().filter(|m| !m.0).map(|m| m.1.clone()).collect();
            let cs = members.iter().filter(|m| m.0).map(|m| m.1.clone()).collect();
            (e.ty.clone(), s, t, bs, cs)
        })
        .collect();
    Cocone { node_classes, edge_classes }
}

impl Cocone {
    /// Calls `visit(X, hb, hc)` for every type- and endpoint-respecting
    /// coarsening of this cocone, itself included.
    fn for_each_coarsening(&self, visit: &mut dyn FnMut(&TypedGraph, &Morphism, &Morphism) -> ControlFlow<()>) {
        let node_types: Vec<&Id> = self.node_classes.iter().map(|c| &c.0).collect();
        let _ = for_each_partition(node_types.len(), &|i, j| node_types[i] == node_types[j], &mut |node_block| {
            let keys: Vec<(&Id, usize, usize)> = self
                .edge_classes
                .iter()
                .map(|(ty, s, t, _, _)| (ty, node_block[*s], node_block[*t]))
                .collect();
            for_each_partition(keys.len(), &|i, j| keys[i] == keys[j], &mut |edge_block| {
                let (x, hb, hc) = self.build(node_block, edge_block);
                visit(&x, &hb, &hc)
            })
        });
    }

    fn build(&self, node_block: &[usize], edge_block: &[usize]) -> (TypedGraph, Morphism, Morphism) {
        let mut x = TypedGraph::new();
        let mut hb = Morphism::new();
        let mut hc = Morphism::new();
        for (i, (ty, bs, cs)) in self.node_classes.iter().enumerate() {
            let name = Id::new(format!("n{}", node_block[i]));
            x.add_node(name.clone(), ty.clone());
            for m in bs {
                hb.nodes.insert(m.clone(), name.clone());
            }
            for m in cs {
                hc.nodes.insert(m.clone(), name.clone());
            }
        }
        for (i, (ty, s, t, bs, cs)) in self.edge_classes.iter().enumerate() {
            let name = Id::new(format!("e{}", edge_block[i]));
            x.add_edge(name.clone(), ty.clone(), format!("n{}", node_block[*s]), format!("n{}", node_block[*t]));
            for m in bs {
                hb.edges.insert(m.clone(), name.clone());
            }
            for m in cs {
                hc.edges.insert(m.clone(), name.clone());
            }
        }
        (x, hb, hc)
    }
}

/// Enumerates set partitions of `0..n` as block labels (restricted growth
/// strings), only putting `i` and `j` together when `compatible(i, j)`.
pub fn for_each_partition(
    n: usize,
    compatible: &dyn Fn(usize, usize) -> bool,
    visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    fn go(
        i: usize,
        n: usize,
        labels: &mut Vec<usize>,
        blocks: usize,
        compatible: &dyn Fn(usize, usize) -> bool,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if i == n {
            return visit(labels);
        }
        for blk in 0..=blocks {
            if blk < blocks && !(0..i).all(|j| labels[j] != blk || compatible(i, j)) {
                continue;
            }
            labels.push(blk);
            let next = if blk == blocks { blocks + 1 } else { blocks };
            let flow = go(i + 1, n, labels, next, compatible, visit);
            labels.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }
    go(0, n, &mut Vec::with_capacity(n), 0, compatible, visit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::graph_isomorphic;

    fn node(id: &str) -> TypedGraph {
        TypedGraph::new().with_node(id, "T")
    }

    #[test]
    fn identity_span_gives_the_same_graph() {
        let a = node("n").with_node("m", "T").with_edge("e", "E", "n", "m");
        let id = Morphism::identity(&a);
        let po = pushout(&a, &a, &a, &id, &id);
        assert!(graph_isomorphic(&po.object, &a).is_some());
        assert!(is_pushout(&a, &a, &a, &po.object, &id, &id, &po.from_b, &po.from_c, ORACLE_BOUND).unwrap());
    }

    #[test]
    fn node_plus_loop() {
        let a = node("n");
        let b = node("n").with_node("m", "T");
        let c = node("n").with_edge("l", "E", "n", "n");
        let f = Morphism::new().with_node("n", "n");
        let po = pushout(&a, &b, &c, &f, &f);
        assert_eq!(po.object.nodes.len(), 2);
        assert_eq!(po.object.edges.len(), 1);
        let loop_edge = po.object.edges.values().next().unwrap();
        assert_eq!(loop_edge.source, po.from_b.nodes[&Id::from("n")]);
        assert_eq!(loop_edge.source, loop_edge.target);
        assert!(is_pushout(&a, &b, &c, &po.object, &f, &f, &po.from_b, &po.from_c, ORACLE_BOUND).unwrap());
    }

    #[test]
    fn clashing_c_names_are_primed() {
        let a = TypedGraph::new();
        let b = node("x");
        let c = node("x");
        let e = Morphism::new();
        let po = pushout(&a, &b, &c, &e, &e);
        assert_eq!(po.from_c.nodes[&Id::from("x")], Id::from("x'"));
    }

    #[test]
    fn extra_unreachable_node_is_not_a_pushout() {
        let a = node("n");
        let f = Morphism::identity(&a);
        let d = node("n").with_node("z", "T");
        assert!(!is_pushout(&a, &a, &a, &d, &f, &f, &f, &f, ORACLE_BOUND).unwrap());
    }

    #[test]
    fn over_merged_square_is_not_a_pushout() {
        let a = TypedGraph::new();
        let b = node("x");
        let c = node("y");
        let d = node("z");
        let e = Morphism::new();
        let gb = Morphism::new().with_node("x", "z");
        let gc = Morphism::new().with_node("y", "z");
        assert!(!is_pushout(&a, &b, &c, &d, &e, &e, &gb, &gc, ORACLE_BOUND).unwrap());
    }

    #[test]
    fn non_commuting_square_is_rejected() {
        let a = node("n");
        let b = node("p").with_node("q", "T");
        let f = Morphism::new().with_node("n", "p");
        let g = Morphism::new().with_node("n", "q");
        let id = Morphism::identity(&b);
        assert!(!is_pushout(&a, &b, &b, &b, &f, &g, &id, &id, ORACLE_BOUND).unwrap());
    }

    #[test]
    fn oracle_bound_is_enforced() {
        let mut big = TypedGraph::new();
        for i in 0..11 {
            big.add_node(format!("n{i}"), "T");
        }
        let id = Morphism::identity(&big);
        assert!(matches!(
            is_pushout(&big, &big, &big, &big, &id, &id, &id, &id, ORACLE_BOUND),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn complement_of_identity_span_is_g() {
        let l = node("x");
        let id = Morphism::identity(&l);
        let g = node("a").with_node("b", "T");
        let m = Morphism::new().with_node("x", "a");
        let pc = pushout_complement(&l, &id, &g, &m).unwrap();
        assert_eq!(pc.object, g);
    }

    #[test]
    fn dangling_edge_blocks_deletion() {
        let l = node("x");
        let l_map = Morphism::new();
        let g = node("a").with_node("b", "T").with_edge("e", "E", "a", "b");
        let m = Morphism::new().with_node("x", "a");
        assert_eq!(
            pushout_complement(&l, &l_map, &g, &m),
            Err(GluingViolation::Dangling(vec![Id::from("e")]))
        );
    }

    #[test]
    fn identifying_a_deleted_node_fails() {
        let l = node("x").with_node("y", "T");
        let l_map = Morphism::new().with_node("y", "y");
        let g = node("a");
        let m = Morphism::new().with_node("x", "a").with_node("y", "a");
        assert_eq!(
            pushout_complement(&l, &l_map, &g, &m),
            Err(GluingViolation::Identification(vec![Elem::node("x")]))
        );
    }

    #[test]
    fn partitions_of_three_are_five() {
        let mut count = 0;
        let _ = for_each_partition(3, &|_, _| true, &mut |_| {
            count += 1;
            ControlFlow::Continue(())
        });
        assert_eq!(count, 5);
    }
}
