//! Rule morphisms, second-order rules and their application to first-order
//! rules, including evolution of NAC sets.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::graph::{Elem, Id, TypedGraph, Violation};
use crate::cpa::{identifications, overlap_along};
use crate::morphism::{compose, validate_morphism, Morphism};
use crate::pushout::{check_gluing, for_each_partition, pushout, pushout_complement};
use crate::rule::{Nac, Rule, RuleWithNacs};
use crate::search::{exists_extension, find_extensions, MorphismKind};
use crate::{Error, GluingViolation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Component {
    Lhs,
    Interface,
    Rhs,
}

impl Component {
    pub const ALL: [Component; 3] = [Component::Lhs, Component::Interface, Component::Rhs];

    pub fn label(self) -> &'static str {
        match self {
            Component::Lhs => "L",
            Component::Interface => "K",
            Component::Rhs => "R",
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Side of a rule.
pub fn side(p: &Rule, c: Component) -> &TypedGraph {
    match c {
        Component::Lhs => &p.lhs,
        Component::Interface => &p.interface,
        Component::Rhs => &p.rhs,
    }
}

/// Componentwise morphism between two rules.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RuleMorphism {
    pub lhs: Morphism,
    pub interface: Morphism,
    pub rhs: Morphism,
}

impl RuleMorphism {
    pub fn identity(p: &Rule) -> Self {
        RuleMorphism {
            lhs: Morphism::identity(&p.lhs),
            interface: Morphism::identity(&p.interface),
            rhs: Morphism::identity(&p.rhs),
        }
    }

    pub fn get(&self, c: Component) -> &Morphism {
        match c {
            Component::Lhs => &self.lhs,
            Component::Interface => &self.interface,
            Component::Rhs => &self.rhs,
        }
    }

    pub fn get_mut(&mut self, c: Component) -> &mut Morphism {
        match c {
            Component::Lhs => &mut self.lhs,
            Component::Interface => &mut self.interface,
            Component::Rhs => &mut self.rhs,
        }
    }

    pub fn is_injective(&self) -> bool {
        self.lhs.is_injective() && self.interface.is_injective() && self.rhs.is_injective()
    }

    /// `then . self`
    pub fn then(&self, then: &RuleMorphism) -> Result<RuleMorphism, Error> {
        Ok(RuleMorphism {
            lhs: compose(&self.lhs, &then.lhs)?,
            interface: compose(&self.interface, &then.interface)?,
            rhs: compose(&self.rhs, &then.rhs)?,
        })
    }

    /// Image per component, as (component, element) pairs.
    pub fn image(&self) -> BTreeSet<(Component, Elem)> {
        Component::ALL
            .iter()
            .flat_map(|c| self.get(*c).image().into_iter().map(move |e| (*c, e)))
            .collect()
    }
}

/// Checks components and both commuting squares of `f: p1 -> p2`.
pub fn validate_rule_morphism(f: &RuleMorphism, p1: &Rule, p2: &Rule) -> Vec<Violation> {
    let mut out = Vec::new();
    for c in Component::ALL {
        out.extend(
            validate_morphism(f.get(c), side(p1, c), side(p2, c))
                .into_iter()
                .map(|v| Violation::new(format!("{c}: {v}"))),
        );
    }
    if !out.is_empty() {
        return out;
    }
    for (leg, l1, l2, fx) in [("left", &p1.l, &p2.l, &f.lhs), ("right", &p1.r, &p2.r, &f.rhs)] {
        for (k, x) in &p1.interface.nodes.iter().map(|(k, _)| (k, l1.nodes[k].clone())).collect::<Vec<_>>() {
            if fx.nodes.get(x) != l2.nodes.get(&f.interface.nodes[*k]) {
                out.push(Violation::new(format!("{leg} square fails at node {k}")));
            }
        }
        for k in p1.interface.edges.keys() {
            let x = &l1.edges[k];
            if fx.edges.get(x) != l2.edges.get(&f.interface.edges[k]) {
                out.push(Violation::new(format!("{leg} square fails at edge {k}")));
            }
        }
    }
    out
}

/// Adds `leg_src(k) -> leg_tgt(fk(k))` to `partial` for every `k`; false on a clash.
fn push_square(partial: &mut Morphism, leg_src: &Morphism, fk: &Morphism, leg_tgt: &Morphism) -> bool {
    for (k, x) in &leg_src.nodes {
        let want = &leg_tgt.nodes[&fk.nodes[k]];
        if let Some(prev) = partial.nodes.insert(x.clone(), want.clone()) {
            if &prev != want {
                return false;
            }
        }
    }
    for (k, x) in &leg_src.edges {
        let want = &leg_tgt.edges[&fk.edges[k]];
        if let Some(prev) = partial.edges.insert(x.clone(), want.clone()) {
            if &prev != want {
                return false;
            }
        }
    }
    true
}

/// Enumerates rule morphisms `src -> tgt` extending `partial`, interface
/// first. With `injective`, every component is mono.
pub fn for_each_rule_morphism(
    src: &Rule,
    tgt: &Rule,
    partial: &RuleMorphism,
    injective: bool,
    visit: &mut dyn FnMut(&RuleMorphism) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let kind = if injective { MorphismKind::Mono } else { MorphismKind::Any };
    for fk in find_extensions(&src.interface, &tgt.interface, kind, &partial.interface) {
        let mut pl = partial.lhs.clone();
        if !push_square(&mut pl, &src.l, &fk, &tgt.l) {
            continue;
        }
        let mut pr = partial.rhs.clone();
        if !push_square(&mut pr, &src.r, &fk, &tgt.r) {
            continue;
        }
        for fl in find_extensions(&src.lhs, &tgt.lhs, kind, &pl) {
            for fr in find_extensions(&src.rhs, &tgt.rhs, kind, &pr) {
                visit(&RuleMorphism { lhs: fl.clone(), interface: fk.clone(), rhs: fr })?;
            }
        }
    }
    ControlFlow::Continue(())
}

pub fn rule_morphisms(src: &Rule, tgt: &Rule, partial: &RuleMorphism, injective: bool) -> Vec<RuleMorphism> {
    let mut out = Vec::new();
    let _ = for_each_rule_morphism(src, tgt, partial, injective, &mut |m| {
        out.push(m.clone());
        ControlFlow::Continue(())
    });
    out.sort();
    out
}

/// Second-order NAC: `map: lhs -> rule`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecondOrderNac {
    pub label: String,
    pub rule: Rule,
    pub map: RuleMorphism,
}

/// Span of mono rule morphisms `lhs <- interface -> rhs`, with NACs on `lhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecondOrderRule {
    pub name: String,
    pub lhs: Rule,
    pub interface: Rule,
    pub rhs: Rule,
    pub left: RuleMorphism,
    pub right: RuleMorphism,
    pub nacs: Vec<SecondOrderNac>,
}

impl SecondOrderRule {
    /// Second-order rule whose sides are all `p`, with identity legs.
    pub fn identity(name: impl Into<String>, p: &Rule) -> Self {
        let id = RuleMorphism::identity(p);
        SecondOrderRule {
            name: name.into(),
            lhs: p.clone(),
            interface: p.clone(),
            rhs: p.clone(),
            left: id.clone(),
            right: id,
            nacs: Vec::new(),
        }
    }

    /// Rule whose three sides are given and whose legs are inclusions by id.
    pub fn by_inclusion(name: impl Into<String>, lhs: Rule, interface: Rule, rhs: Rule) -> Self {
        let id = RuleMorphism::identity(&interface);
        SecondOrderRule { name: name.into(), lhs, interface, rhs, left: id.clone(), right: id, nacs: Vec::new() }
    }

    pub fn with_nac(mut self, nac: SecondOrderNac) -> Self {
        self.nacs.push(nac);
        self
    }

    /// `rhs <- interface -> lhs`, without NACs.
    pub fn inverse(&self) -> SecondOrderRule {
        SecondOrderRule {
            name: self.name.clone(),
            lhs: self.rhs.clone(),
            interface: self.interface.clone(),
            rhs: self.lhs.clone(),
            left: self.right.clone(),
            right: self.left.clone(),
            nacs: Vec::new(),
        }
    }

    /// Elements deleted per component (in `lhs`).
    pub fn deleted(&self) -> BTreeSet<(Component, Elem)> {
        removed(&self.lhs, &self.left)
    }

    /// Elements created per component (in `rhs`).
    pub fn created(&self) -> BTreeSet<(Component, Elem)> {
        removed(&self.rhs, &self.right)
    }

    /// Neither deletes nor creates anything.
    pub fn is_iso(&self) -> bool {
        self.deleted().is_empty() && self.created().is_empty()
    }
}

fn removed(p: &Rule, leg: &RuleMorphism) -> BTreeSet<(Component, Elem)> {
    let mut out = BTreeSet::new();
    for c in Component::ALL {
        let img = leg.get(c).image();
        for x in side(p, c).elements() {
            if !img.contains(&x) {
                out.insert((c, x));
            }
        }
    }
    out
}

pub fn validate_second_order_rule(a: &SecondOrderRule) -> Vec<Violation> {
    let mut out = Vec::new();
    for (name, p) in [("lhs", &a.lhs), ("interface", &a.interface), ("rhs", &a.rhs)] {
        out.extend(
            crate::rule::validate_rule(&RuleWithNacs::new(p.clone()), None)
                .into_iter()
                .map(|v| Violation::new(format!("{name} rule: {v}"))),
        );
    }
    if !out.is_empty() {
        return out;
    }
    for (name, f, cod) in [("left", &a.left, &a.lhs), ("right", &a.right, &a.rhs)] {
        let vs = validate_rule_morphism(f, &a.interface, cod);
        let ok = vs.is_empty();
        out.extend(vs.into_iter().map(|v| Violation::new(format!("{name}: {v}"))));
        if ok && !f.is_injective() {
            out.push(Violation::new(format!("{name} not mono")));
        }
    }
    for nac in &a.nacs {
        out.extend(
            validate_rule_morphism(&nac.map, &a.lhs, &nac.rule)
                .into_iter()
                .map(|v| Violation::new(format!("nac {}: {v}", nac.label))),
        );
    }
    out
}

/// Why a candidate morphism `L_Ev -> p` is not an applicable match.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    NotInjective,
    Gluing { component: Component, violation: GluingViolation },
    Nac(String),
    Structure(String),
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::NotInjective => f.write_str("match is not componentwise injective"),
            Rejection::Gluing { component, violation } => write!(f, "gluing fails in {component}: {violation}"),
            Rejection::Nac(l) => write!(f, "blocked by second-order NAC {l}"),
            Rejection::Structure(s) => write!(f, "result is not a rule: {s}"),
        }
    }
}

/// Componentwise gluing condition.
pub fn check_gluing_2(a: &SecondOrderRule, m: &RuleMorphism, p: &Rule) -> Result<(), Rejection> {
    for c in Component::ALL {
        check_gluing(side(&a.lhs, c), a.left.get(c), side(p, c), m.get(c))
            .map_err(|violation| Rejection::Gluing { component: c, violation })?;
    }
    Ok(())
}

/// Label of the first second-order NAC blocking `m`, if any.
pub fn blocking_nac(a: &SecondOrderRule, m: &RuleMorphism, p: &Rule) -> Option<String> {
    a.nacs.iter().find(|n| !satisfies_nac_2(n, m, p)).map(|n| n.label.clone())
}

/// `m` satisfies `n` iff no componentwise-injective `q: N -> p` has `q . n = m`.
pub fn satisfies_nac_2(nac: &SecondOrderNac, m: &RuleMorphism, p: &Rule) -> bool {
    let mut partial = RuleMorphism::default();
    for c in Component::ALL {
        let (n, mm, out) = (nac.map.get(c), m.get(c), partial.get_mut(c));
        for (x, nx) in &n.nodes {
            if let Some(prev) = out.nodes.insert(nx.clone(), mm.nodes[x].clone()) {
                if prev != mm.nodes[x] {
                    return true;
                }
            }
        }
        for (x, nx) in &n.edges {
            if let Some(prev) = out.edges.insert(nx.clone(), mm.edges[x].clone()) {
                if prev != mm.edges[x] {
                    return true;
                }
            }
        }
    }
    let mut found = false;
    let _ = for_each_rule_morphism(&nac.rule, p, &partial, true, &mut |_| {
        found = true;
        ControlFlow::Break(())
    });
    !found
}

/// Result of rewriting a rule `p` with a span of rule morphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleEvolution {
    pub original: Rule,
    pub interface: Rule,
    pub evolved: Rule,
    /// `p' -> p`
    pub left: RuleMorphism,
    /// `p' -> p''`
    pub right: RuleMorphism,
    /// `K_Ev -> p'`
    pub context_match: RuleMorphism,
    /// `R_Ev -> p''`
    pub comatch: RuleMorphism,
}

/// Three componentwise DPO steps plus the induced legs of `p'` and `p''`.
pub fn rewrite(a: &SecondOrderRule, m: &RuleMorphism, p: &Rule) -> Result<RuleEvolution, Rejection> {
    if !m.is_injective() {
        return Err(Rejection::NotInjective);
    }
    let mut ctx = Vec::new();
    let mut pos = Vec::new();
    for c in Component::ALL {
        let pc = pushout_complement(side(&a.lhs, c), a.left.get(c), side(p, c), m.get(c))
            .map_err(|violation| Rejection::Gluing { component: c, violation })?;
        let po = pushout(side(&a.interface, c), &pc.object, side(&a.rhs, c), &pc.k, a.right.get(c));
        ctx.push(pc);
        pos.push(po);
    }
    let (cl, ck, cr) = (&ctx[0], &ctx[1], &ctx[2]);
    let (pl, pk, pr) = (&pos[0], &pos[1], &pos[2]);

    // p' = (L' <- K' -> R') with legs restricted from p.
    let restrict = |leg: &Morphism, cod: &TypedGraph, name: &str| -> Result<Morphism, Rejection> {
        let mut out = Morphism::new();
        for n in ck.object.nodes.keys() {
            let y = &leg.nodes[n];
            if !cod.nodes.contains_key(y) {
                return Err(Rejection::Structure(format!("{name}' is not total at node {n}")));
            }
            out.nodes.insert(n.clone(), y.clone());
        }
        for e in ck.object.edges.keys() {
            let y = &leg.edges[e];
            if !cod.edges.contains_key(y) {
                return Err(Rejection::Structure(format!("{name}' is not total at edge {e}")));
            }
            out.edges.insert(e.clone(), y.clone());
        }
        Ok(out)
    };
    let l1 = restrict(&p.l, &cl.object, "l")?;
    let r1 = restrict(&p.r, &cr.object, "r")?;
    let interface = Rule {
        name: p.name.clone(),
        lhs: cl.object.clone(),
        interface: ck.object.clone(),
        rhs: cr.object.clone(),
        l: l1.clone(),
        r: r1.clone(),
    };

    // p'' legs from the universal property of the K'' pushout.
    let induce = |leg1: &Morphism, po_side: &crate::pushout::Pushout, rhs_leg: &Morphism, name: &str| {
        let mut out = Morphism::new();
        let mut clash = None;
        let mut put = |map: &mut std::collections::BTreeMap<Id, Id>, k: &Id, v: Id, what: &str| {
            if let Some(prev) = map.insert(k.clone(), v.clone()) {
                if prev != v {
                    clash = Some(format!("{name}'' is not well defined at {what} {k}"));
                }
            }
        };
        for (x, kx) in &pk.from_b.nodes {
            put(&mut out.nodes, kx, po_side.from_b.nodes[&leg1.nodes[x]].clone(), "node");
        }
        for (x, kx) in &pk.from_b.edges {
            put(&mut out.edges, kx, po_side.from_b.edges[&leg1.edges[x]].clone(), "edge");
        }
        for (y, ky) in &pk.from_c.nodes {
            put(&mut out.nodes, ky, po_side.from_c.nodes[&rhs_leg.nodes[y]].clone(), "node");
        }
        for (y, ky) in &pk.from_c.edges {
            put(&mut out.edges, ky, po_side.from_c.edges[&rhs_leg.edges[y]].clone(), "edge");
        }
        match clash {
            Some(c) => Err(Rejection::Structure(c)),
            None if !out.is_injective() => Err(Rejection::Structure(format!("{name}'' is not mono"))),
            None => Ok(out),
        }
    };
    let l2 = induce(&l1, pl, &a.rhs.l, "l")?;
    let r2 = induce(&r1, pr, &a.rhs.r, "r")?;
    let evolved = Rule {
        name: p.name.clone(),
        lhs: pl.object.clone(),
        interface: pk.object.clone(),
        rhs: pr.object.clone(),
        l: l2,
        r: r2,
    };
    for (leg, cod, name) in [(&evolved.l, &evolved.lhs, "l''"), (&evolved.r, &evolved.rhs, "r''")] {
        if let Some(v) = validate_morphism(leg, &evolved.interface, cod).first() {
            return Err(Rejection::Structure(format!("{name}: {v}")));
        }
    }
    Ok(RuleEvolution {
        original: p.clone(),
        interface,
        evolved,
        left: RuleMorphism { lhs: cl.d.clone(), interface: ck.d.clone(), rhs: cr.d.clone() },
        right: RuleMorphism { lhs: pl.from_b.clone(), interface: pk.from_b.clone(), rhs: pr.from_b.clone() },
        context_match: RuleMorphism { lhs: cl.k.clone(), interface: ck.k.clone(), rhs: cr.k.clone() },
        comatch: RuleMorphism { lhs: pl.from_c.clone(), interface: pk.from_c.clone(), rhs: pr.from_c.clone() },
    })
}

/// Checks a candidate in the order: injectivity, gluing, NACs, structure.
pub fn classify_candidate(a: &SecondOrderRule, m: &RuleMorphism, p: &Rule) -> Result<RuleEvolution, Rejection> {
    if !m.is_injective() {
        return Err(Rejection::NotInjective);
    }
    check_gluing_2(a, m, p)?;
    if let Some(l) = blocking_nac(a, m, p) {
        return Err(Rejection::Nac(l));
    }
    rewrite(a, m, p)
}

/// Every componentwise-injective rule morphism `L_Ev -> p`, applicable or not.
pub fn candidate_morphisms(a: &SecondOrderRule, p: &Rule) -> Vec<RuleMorphism> {
    rule_morphisms(&a.lhs, p, &RuleMorphism::default(), true)
}

/// Applicable second-order matches in canonical order.
pub fn find_second_order_matches(a: &SecondOrderRule, p: &RuleWithNacs) -> Vec<RuleMorphism> {
    candidate_morphisms(a, &p.rule)
        .into_iter()
        .filter(|m| classify_candidate(a, m, &p.rule).is_ok())
        .collect()
}

/// A NAC removed during evolution because its pushout complement does not exist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DroppedNac {
    pub label: String,
    pub violation: GluingViolation,
}

/// Result of [`apply_second_order`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecondOrderStep {
    pub rule: RuleWithNacs,
    pub evolution: RuleEvolution,
    pub dropped: Vec<DroppedNac>,
}

pub fn apply_second_order(a: &SecondOrderRule, m: &RuleMorphism, p: &RuleWithNacs) -> Result<SecondOrderStep, Error> {
    let ev = classify_candidate(a, m, &p.rule).map_err(|r| Error::NotApplicable(r.to_string()))?;
    let (nacs, dropped) = evolve_nacs(&ev, &p.nacs);
    Ok(SecondOrderStep { rule: RuleWithNacs { rule: ev.evolved.clone(), nacs }, evolution: ev, dropped })
}

/// One square of a NAC shift: `n': B -> N'` and `t': N -> N'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedNac {
    pub graph: TypedGraph,
    pub n: Morphism,
    pub t: Morphism,
}

/// All NAC-shift squares of `n: A -> N` along the mono `t: A -> B`: the
/// quotients of the pushout `N +_A B` that keep both legs injective.
pub fn nac_shift(
    a: &TypedGraph,
    n_graph: &TypedGraph,
    n: &Morphism,
    b: &TypedGraph,
    t: &Morphism,
) -> Result<Vec<ShiftedNac>, Error> {
    if !t.is_injective() {
        return Err(Error::NonMonoShift);
    }
    let po = pushout(a, b, n_graph, t, n);
    let p = &po.object;
    let from_n: BTreeSet<Elem> = po.from_c.image();
    let from_b: BTreeSet<Elem> = po.from_b.image();
    // Both legs stay mono: a block holds at most one element of each side.
    let apart = |x: Elem, y: Elem| {
        !(from_n.contains(&x) && from_n.contains(&y)) && !(from_b.contains(&x) && from_b.contains(&y))
    };
    let nodes: Vec<&Id> = p.nodes.keys().collect();
    let edges: Vec<&Id> = p.edges.keys().collect();
    let mut out = Vec::new();
    let node_ok = |i: usize, j: usize| {
        p.nodes[nodes[i]] == p.nodes[nodes[j]]
            && apart(Elem::node(nodes[i]), Elem::node(nodes[j]))
    };
    let _ = for_each_partition(nodes.len(), &node_ok, &mut |nb| {
        let block_of = |id: &Id| nb[nodes.iter().position(|x| *x == id).expect("node of P")];
        let edge_ok = |i: usize, j: usize| {
            let (ei, ej) = (&p.edges[edges[i]], &p.edges[edges[j]]);
            ei.ty == ej.ty
                && block_of(&ei.source) == block_of(&ej.source)
                && block_of(&ei.target) == block_of(&ej.target)
                && apart(Elem::edge(edges[i]), Elem::edge(edges[j]))
        };
        for_each_partition(edges.len(), &edge_ok, &mut |eb| {
            out.push(quotient(p, &nodes, nb, &edges, eb, &po.from_b, &po.from_c));
            ControlFlow::Continue(())
        })
    });
    Ok(out)
}

/// Quotient of `p` by block labels, each block named after its smallest id.
fn quotient(
    p: &TypedGraph,
    nodes: &[&Id],
    nb: &[usize],
    edges: &[&Id],
    eb: &[usize],
    from_b: &Morphism,
    from_n: &Morphism,
) -> ShiftedNac {
    let mut q = Morphism::new();
    let mut node_name = std::collections::BTreeMap::new();
    for (i, id) in nodes.iter().enumerate() {
        node_name.entry(nb[i]).or_insert_with(|| (*id).clone());
        q.nodes.insert((*id).clone(), node_name[&nb[i]].clone());
    }
    let mut edge_name = std::collections::BTreeMap::new();
    for (i, id) in edges.iter().enumerate() {
        edge_name.entry(eb[i]).or_insert_with(|| (*id).clone());
        q.edges.insert((*id).clone(), edge_name[&eb[i]].clone());
    }
    let mut graph = TypedGraph::new();
    for (id, ty) in &p.nodes {
        graph.add_node(q.nodes[id].clone(), ty.clone());
    }
    for (id, e) in &p.edges {
        graph.add_edge(q.edges[id].clone(), e.ty.clone(), q.nodes[&e.source].clone(), q.nodes[&e.target].clone());
    }
    ShiftedNac {
        graph,
        n: compose(from_b, &q).expect("total"),
        t: compose(from_n, &q).expect("total"),
    }
}

/// Evolves NACs along `p <- p' -> p''`: pushout complement along `L' -> L`,
/// then shift along `L' -> L''`. NACs without complement are dropped.
pub fn evolve_nacs(ev: &RuleEvolution, nacs: &[Nac]) -> (Vec<Nac>, Vec<DroppedNac>) {
    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    for nac in nacs {
        match pushout_complement(&ev.original.lhs, &ev.left.lhs, &nac.graph, &nac.map) {
            Err(violation) => dropped.push(DroppedNac { label: nac.label.clone(), violation }),
            Ok(pc) => {
                let shifted = nac_shift(&ev.interface.lhs, &pc.object, &pc.k, &ev.evolved.lhs, &ev.right.lhs)
                    .expect("legs of a rule evolution are mono");
                let many = shifted.len() > 1;
                for (i, s) in shifted.into_iter().enumerate() {
                    let label = if many { format!("{}.{}", nac.label, i + 1) } else { nac.label.clone() };
                    kept.push(Nac { label, graph: s.graph, map: s.n });
                }
            }
        }
    }
    (kept, dropped)
}

/// `m: L -> G` and `m'': L'' -> G` satisfy gluing for their rules and agree
/// on `L'`.
pub fn related_matches(ev: &RuleEvolution, m: &Morphism, m2: &Morphism, g: &TypedGraph) -> bool {
    let p = &ev.original;
    let p2 = &ev.evolved;
    if check_gluing(&p.lhs, &p.l, g, m).is_err() || check_gluing(&p2.lhs, &p2.l, g, m2).is_err() {
        return false;
    }
    match (compose(&ev.left.lhs, m), compose(&ev.right.lhs, m2)) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}

/// Carries a rule morphism into `p` across an evolution `p => p''`, if every
/// element it uses survives.
pub fn track_2(m: &RuleMorphism, ev: &RuleEvolution) -> Option<RuleMorphism> {
    let mut out = RuleMorphism::default();
    for c in Component::ALL {
        let ctx = side(&ev.interface, c);
        let h = ev.right.get(c);
        let (src, dst) = (m.get(c), out.get_mut(c));
        for (x, y) in &src.nodes {
            if !ctx.nodes.contains_key(y) {
                return None;
            }
            dst.nodes.insert(x.clone(), h.nodes[y].clone());
        }
        for (x, y) in &src.edges {
            if !ctx.edges.contains_key(y) {
                return None;
            }
            dst.edges.insert(x.clone(), h.edges[y].clone());
        }
    }
    Some(out)
}

/// Equal up to renaming: an isomorphism of spans that also carries the NACs
/// one to one onto isomorphic NACs.
pub fn rules_isomorphic(p: &RuleWithNacs, q: &RuleWithNacs) -> bool {
    let (a, b) = (&p.rule, &q.rule);
    let same_size = Component::ALL.iter().all(|c| {
        let (x, y) = (side(a, *c), side(b, *c));
        x.nodes.len() == y.nodes.len() && x.edges.len() == y.edges.len()
    });
    if !same_size || p.nacs.len() != q.nacs.len() {
        return false;
    }
    let mut found = false;
    let _ = for_each_rule_morphism(a, b, &RuleMorphism::default(), true, &mut |f| {
        let mut used = vec![false; q.nacs.len()];
        if nacs_correspond(&p.nacs, &q.nacs, &f.lhs, &mut used) {
            found = true;
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    found
}

fn nacs_correspond(ps: &[Nac], qs: &[Nac], fl: &Morphism, used: &mut [bool]) -> bool {
    let Some((n, rest)) = ps.split_first() else { return true };
    for (j, m) in qs.iter().enumerate() {
        if !used[j] && nac_isomorphic(n, m, fl) {
            used[j] = true;
            if nacs_correspond(rest, qs, fl, used) {
                return true;
            }
            used[j] = false;
        }
    }
    false
}

fn nac_isomorphic(n: &Nac, m: &Nac, fl: &Morphism) -> bool {
    let mut partial = Morphism::new();
    for (x, nx) in &n.map.nodes {
        let want = &m.map.nodes[&fl.nodes[x]];
        if partial.nodes.insert(nx.clone(), want.clone()).is_some_and(|p| &p != want) {
            return false;
        }
    }
    for (x, nx) in &n.map.edges {
        let want = &m.map.edges[&fl.edges[x]];
        if partial.edges.insert(nx.clone(), want.clone()).is_some_and(|p| &p != want) {
            return false;
        }
    }
    exists_extension(&n.graph, &m.graph, MorphismKind::Iso, &partial)
}

/// Overlap of two rules with its componentwise inclusions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleOverlap {
    pub rule: Rule,
    pub left: RuleMorphism,
    pub right: RuleMorphism,
}

fn forced_along(leg_a: &Morphism, phi_k: &Morphism, leg_b: &Morphism) -> Morphism {
    let mut out = Morphism::new();
    for (k, k2) in &phi_k.nodes {
        out.nodes.insert(leg_a.nodes[k].clone(), leg_b.nodes[k2].clone());
    }
    for (k, k2) in &phi_k.edges {
        out.edges.insert(leg_a.edges[k].clone(), leg_b.edges[k2].clone());
    }
    out
}

/// Induced leg of an overlap rule: `k_a . leg_a` and `k_b . leg_b` glued.
fn glued_leg(
    ka: &Morphism,
    kb: &Morphism,
    leg_a: &Morphism,
    leg_b: &Morphism,
    side_a: &Morphism,
    side_b: &Morphism,
) -> Morphism {
    let mut out = Morphism::new();
    for (inj, leg, side) in [(ka, leg_a, side_a), (kb, leg_b, side_b)] {
        for (k, o) in &inj.nodes {
            out.nodes.insert(o.clone(), side.nodes[&leg.nodes[k]].clone());
        }
        for (k, o) in &inj.edges {
            out.edges.insert(o.clone(), side.edges[&leg.edges[k]].clone());
        }
    }
    out
}

/// All componentwise jointly surjective overlaps of `a` and `b` whose
/// glued spans stay mono: an interface identification is chosen first, which
/// fixes the identification of the interface images on both sides.
pub fn rule_overlaps(a: &Rule, b: &Rule) -> Vec<RuleOverlap> {
    let mut out = Vec::new();
    for phi_k in identifications(&a.interface, &b.interface, &Morphism::new(), &|_, _| true) {
        let ko = overlap_along(&a.interface, &b.interface, &phi_k);
        let side_maps = |la: &Morphism, lb: &Morphism, ga: &TypedGraph, gb: &TypedGraph| {
            let (ia, ib) = (la.image(), lb.image());
            identifications(ga, gb, &forced_along(la, &phi_k, lb), &|x, y| !(ia.contains(x) && ib.contains(y)))
        };
        let ls = side_maps(&a.l, &b.l, &a.lhs, &b.lhs);
        if ls.is_empty() {
            continue;
        }
        let rs = side_maps(&a.r, &b.r, &a.rhs, &b.rhs);
        for phi_l in &ls {
            let lo = overlap_along(&a.lhs, &b.lhs, phi_l);
            for phi_r in &rs {
                let ro = overlap_along(&a.rhs, &b.rhs, phi_r);
                let rule = Rule {
                    name: format!("{}+{}", a.name, b.name),
                    lhs: lo.graph.clone(),
                    interface: ko.graph.clone(),
                    rhs: ro.graph.clone(),
                    l: glued_leg(&ko.left, &ko.right, &a.l, &b.l, &lo.left, &lo.right),
                    r: glued_leg(&ko.left, &ko.right, &a.r, &b.r, &ro.left, &ro.right),
                };
                debug_assert!(rule.l.is_injective() && rule.r.is_injective());
                out.push(RuleOverlap {
                    rule,
                    left: RuleMorphism { lhs: lo.left.clone(), interface: ko.left.clone(), rhs: ro.left },
                    right: RuleMorphism { lhs: lo.right.clone(), interface: ko.right.clone(), rhs: ro.right },
                });
            }
        }
    }
    out
}
