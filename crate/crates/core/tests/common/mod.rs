#![allow(dead_code)]

pub mod criteria;

use std::collections::BTreeSet;
use std::path::PathBuf;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use gtevo::pushout::check_gluing;
use gtevo::rule::{satisfies_nacs, Nac, Rule, RuleWithNacs};
use gtevo::search::{find_morphisms, MorphismKind};
use gtevo::second_order::{apply_second_order, related_matches, RuleMorphism, SecondOrderRule, SecondOrderStep};
use gtevo::{Elem, Graph, Id, Morphism, TypedGraph};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).expect("fixture readable")
}

/// Proptest settings without failure persistence files.
pub fn config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config { cases, failure_persistence: None, ..Default::default() }
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Two node types and one edge type `e: A -> B`.
pub fn types() -> Graph {
    Graph::new().with_node("A").with_node("B").with_edge("e", "A", "B")
}

fn of_type<'a>(g: &'a TypedGraph, ty: &str) -> Vec<&'a Id> {
    g.nodes.iter().filter(|(_, t)| t.as_str() == ty).map(|(n, _)| n).collect()
}

/// Adds up to `nodes` fresh nodes and up to `edges` fresh edges, ids prefixed
/// with `prefix`. Edges may attach to existing nodes.
pub fn grow(rng: &mut StdRng, g: &mut TypedGraph, prefix: &str, nodes: usize, edges: usize) {
    for i in 0..rng.gen_range(0..=nodes) {
        g.add_node(format!("{prefix}{i}"), if rng.gen_bool(0.5) { "A" } else { "B" });
    }
    for i in 0..rng.gen_range(0..=edges) {
        let (src, tgt) = (of_type(g, "A"), of_type(g, "B"));
        if let (Some(s), Some(t)) = (src.choose(rng), tgt.choose(rng)) {
            let (s, t) = ((*s).clone(), (*t).clone());
            g.add_edge(format!("{prefix}e{i}"), "e", s, t);
        }
    }
}

pub fn random_graph(rng: &mut StdRng, prefix: &str, nodes: usize, edges: usize) -> TypedGraph {
    let mut g = TypedGraph::new();
    grow(rng, &mut g, prefix, nodes, edges);
    g
}

/// Subgraph on `keep`, dropping edges whose endpoints are not kept.
pub fn sub(g: &TypedGraph, keep: &BTreeSet<Elem>) -> TypedGraph {
    let mut out = TypedGraph::new();
    for (n, t) in &g.nodes {
        if keep.contains(&Elem::node(n.clone())) {
            out.add_node(n.clone(), t.clone());
        }
    }
    for (e, te) in &g.edges {
        if keep.contains(&Elem::edge(e.clone()))
            && out.nodes.contains_key(&te.source)
            && out.nodes.contains_key(&te.target)
        {
            out.add_edge(e.clone(), te.ty.clone(), te.source.clone(), te.target.clone());
        }
    }
    out
}

fn elements(g: &TypedGraph) -> BTreeSet<Elem> {
    g.elements().collect()
}

/// A rule `L <- K -> R` by inclusion with `|K| <= 3`, `|L|, |R| <= 6`.
pub fn random_rule(rng: &mut StdRng, name: &str) -> Rule {
    let k = random_graph(rng, "k", 2, 1);
    let mut l = k.clone();
    grow(rng, &mut l, "l", 2, 1);
    let mut r = k.clone();
    grow(rng, &mut r, "r", 2, 1);
    Rule::by_inclusion(name, l, k, r)
}

/// Up to `max` NACs, each adding at least one element to `L`.
pub fn random_nacs(rng: &mut StdRng, p: &Rule, max: usize) -> Vec<Nac> {
    let mut out = Vec::new();
    for i in 0..rng.gen_range(0..=max) {
        let mut n = p.lhs.clone();
        while n.element_count() == p.lhs.element_count() {
            grow(rng, &mut n, &format!("n{i}"), 1, 2);
        }
        out.push(Nac { label: format!("n{i}"), graph: n, map: Morphism::identity(&p.lhs) });
    }
    out
}

pub fn random_rule_with_nacs(rng: &mut StdRng, name: &str, max_nacs: usize) -> RuleWithNacs {
    let p = random_rule(rng, name);
    let nacs = random_nacs(rng, &p, max_nacs);
    RuleWithNacs { rule: p, nacs }
}

fn sub_rule(p: &Rule, keep: &BTreeSet<Elem>) -> Rule {
    let l = sub(&p.lhs, keep);
    let r = sub(&p.rhs, keep);
    let k_keep: BTreeSet<Elem> = elements(&l).intersection(&elements(&r)).cloned().collect();
    let k = sub(&p.interface, &k_keep);
    Rule::by_inclusion(p.name.clone(), l, k, r)
}

fn random_subset(rng: &mut StdRng, all: &BTreeSet<Elem>, p_keep: f64) -> BTreeSet<Elem> {
    all.iter().filter(|_| rng.gen_bool(p_keep)).cloned().collect()
}

/// What an evolution rule may do to its step rule's left-hand side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LhsChange {
    Any,
    /// The evolution's `L` component keeps every matched element.
    NoDeletion,
}

/// An evolution rule whose left-hand side is a sub-rule of `p`, together with
/// its inclusion into `p`.
pub fn random_evolution(rng: &mut StdRng, p: &Rule, change: LhsChange) -> (SecondOrderRule, RuleMorphism) {
    let all: BTreeSet<Elem> = elements(&p.lhs).union(&elements(&p.rhs)).cloned().collect();
    let lr = sub_rule(p, &random_subset(rng, &all, 0.7));

    let drop_l = match change {
        LhsChange::Any => random_subset(rng, &elements(&lr.lhs), 0.25),
        LhsChange::NoDeletion => BTreeSet::new(),
    };
    let drop_k = random_subset(rng, &elements(&lr.interface), 0.2);
    let drop_r = random_subset(rng, &elements(&lr.rhs), 0.25);
    let keep = |g: &TypedGraph, d: &BTreeSet<Elem>| sub(g, &elements(g).difference(d).cloned().collect());
    let il = keep(&lr.lhs, &drop_l);
    let ir = keep(&lr.rhs, &drop_r);
    let ik_keep: BTreeSet<Elem> =
        elements(&il).intersection(&elements(&ir)).filter(|e| !drop_k.contains(e)).cloned().collect();
    let ik = sub(&lr.interface, &ik_keep);
    let interface = Rule::by_inclusion(p.name.clone(), il.clone(), ik.clone(), ir.clone());

    let (mut rl, mut rk, mut rr) = (il, ik, ir);
    for i in 0..rng.gen_range(0..=2) {
        let ty = if rng.gen_bool(0.5) { "A" } else { "B" };
        let id = format!("x{i}");
        match rng.gen_range(0..3) {
            0 => {
                rk.add_node(id.clone(), ty);
                rl.add_node(id.clone(), ty);
                rr.add_node(id, ty);
            }
            1 => rl.add_node(id, ty),
            _ => rr.add_node(id, ty),
        }
    }
    if rng.gen_bool(0.5) {
        let g = if rng.gen_bool(0.5) { &mut rl } else { &mut rr };
        let (src, tgt) = (of_type(g, "A"), of_type(g, "B"));
        if let (Some(s), Some(t)) = (src.choose(rng), tgt.choose(rng)) {
            let (s, t) = ((*s).clone(), (*t).clone());
            g.add_edge("xe", "e", s, t);
        }
    }
    let rhs = Rule::by_inclusion(p.name.clone(), rl, rk, rr);
    let m = RuleMorphism::identity(&lr);
    (SecondOrderRule::by_inclusion("ev", lr, interface, rhs), m)
}

/// Whether the evolution's `L` component deletes anything.
pub fn deletes_lhs(a: &SecondOrderRule) -> bool {
    a.lhs.lhs.element_count() != a.interface.lhs.element_count()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TheoremTally {
    /// (evolution, host, related injective match pair) instances checked.
    pub instances: usize,
    pub blocking_violations: usize,
    pub allowing_violations: usize,
}

impl TheoremTally {
    pub fn add(&mut self, other: TheoremTally) {
        self.instances += other.instances;
        self.blocking_violations += other.blocking_violations;
        self.allowing_violations += other.allowing_violations;
    }
}

/// A host of at most `max` elements containing `base`.
pub fn random_host(rng: &mut StdRng, base: &TypedGraph, max: usize) -> Option<TypedGraph> {
    let mut g = base.clone();
    grow(rng, &mut g, "h", 1, 2);
    (g.element_count() <= max).then_some(g)
}

/// Compares NAC behavior of `p` and the evolved rule on every pair of related
/// matches into `g`, using matches of the given kind.
pub fn check_theorems(p: &RuleWithNacs, step: &SecondOrderStep, g: &TypedGraph, kind: MorphismKind) -> TheoremTally {
    let ev = &step.evolution;
    let evolved = &step.rule;
    let mut tally = TheoremTally::default();
    let ms: Vec<Morphism> = find_morphisms(&p.rule.lhs, g, kind)
        .into_iter()
        .filter(|m| check_gluing(&p.rule.lhs, &p.rule.l, g, m).is_ok())
        .collect();
    let m2s: Vec<Morphism> = find_morphisms(&evolved.rule.lhs, g, kind)
        .into_iter()
        .filter(|m| check_gluing(&evolved.rule.lhs, &evolved.rule.l, g, m).is_ok())
        .collect();
    for m in &ms {
        let before = satisfies_nacs(p, m, g);
        for m2 in &m2s {
            if !related_matches(ev, m, m2, g) {
                continue;
            }
            tally.instances += 1;
            let after = satisfies_nacs(evolved, m2, g);
            if !before && after {
                tally.blocking_violations += 1;
            }
            if before && !after {
                tally.allowing_violations += 1;
            }
        }
    }
    tally
}

/// One generated theorem case: a step rule with NACs, an evolution applied to
/// it, and the tally over every host tried.
#[derive(Clone, Copy, Debug, Default)]
pub struct TheoremCase {
    pub tally: TheoremTally,
    /// Some NAC could not be evolved and was dropped.
    pub dropped: bool,
    /// The evolution deletes elements of the step rule's left-hand side.
    pub deletes_lhs: bool,
}

/// Cases where the evolution does not apply yield an empty tally.
pub fn theorem_case_full(seed: u64, change: LhsChange) -> TheoremCase {
    let mut rng = rng(seed);
    let p = random_rule_with_nacs(&mut rng, "p", 2);
    let (a, m) = random_evolution(&mut rng, &p.rule, change);
    let Ok(step) = apply_second_order(&a, &m, &p) else { return TheoremCase::default() };
    let mut out = TheoremCase { dropped: !step.dropped.is_empty(), deletes_lhs: deletes_lhs(&a), ..Default::default() };
    let bases: Vec<&TypedGraph> = std::iter::once(&p.rule.lhs).chain(p.nacs.iter().map(|n| &n.graph)).collect();
    for _ in 0..4 {
        let base = bases[rng.gen_range(0..bases.len())];
        if let Some(g) = random_host(&mut rng, base, 6) {
            out.tally.add(check_theorems(&p, &step, &g, MorphismKind::Mono));
        }
    }
    out
}

/// As [`theorem_case_full`], counting nothing when a NAC was dropped.
pub fn theorem_case(seed: u64, change: LhsChange) -> TheoremTally {
    let c = theorem_case_full(seed, change);
    if c.dropped {
        TheoremTally::default()
    } else {
        c.tally
    }
}

/// A step rule, an evolution of it with its match, a host and a match of the
/// step rule into the host.
pub struct Instance {
    pub p: RuleWithNacs,
    pub a: SecondOrderRule,
    pub m: RuleMorphism,
    pub host: TypedGraph,
    pub host_match: Morphism,
}

/// Deletes a star in the presence of two circles and two squares. One NAC
/// forbids a second star, the other identifies the circles. The evolution
/// removes one square. The host has one star, one circle and one square, and
/// the host match identifies both circles and both squares.
pub fn star_instance() -> Instance {
    let k = TypedGraph::new()
        .with_node("c1", "Circle")
        .with_node("c2", "Circle")
        .with_node("q1", "Square")
        .with_node("q2", "Square");
    let l = k.clone().with_node("s", "Star");
    let p = Rule::by_inclusion("p", l.clone(), k.clone(), k.clone());
    let n1 = Nac { label: "n1".into(), graph: l.clone().with_node("s2", "Star"), map: Morphism::identity(&l) };
    let n2_graph = TypedGraph::new()
        .with_node("s", "Star")
        .with_node("c", "Circle")
        .with_node("q1", "Square")
        .with_node("q2", "Square");
    let n2_map = Morphism::new()
        .with_node("s", "s")
        .with_node("c1", "c")
        .with_node("c2", "c")
        .with_node("q1", "q1")
        .with_node("q2", "q2");
    let n2 = Nac { label: "n2".into(), graph: n2_graph, map: n2_map };
    let p = RuleWithNacs { rule: p, nacs: vec![n1, n2] };

    let square = TypedGraph::new().with_node("q2", "Square");
    let a = SecondOrderRule::by_inclusion(
        "dropSquare",
        Rule::identity("lhs", &square),
        Rule::identity("interface", &TypedGraph::new()),
        Rule::identity("rhs", &TypedGraph::new()),
    );
    let one = |g: &TypedGraph| Morphism::identity(g);
    let m = RuleMorphism { lhs: one(&square), interface: one(&square), rhs: one(&square) };
    let host = TypedGraph::new().with_node("s", "Star").with_node("c", "Circle").with_node("q", "Square");
    let host_match = Morphism::new()
        .with_node("s", "s")
        .with_node("c1", "c")
        .with_node("c2", "c")
        .with_node("q1", "q")
        .with_node("q2", "q");
    Instance { p, a, m, host, host_match }
}

/// The step rule preserves one `A` node and forbids a second one. The
/// evolution deletes the preserved node. In a host with a single `A`, the
/// original match is allowed while the related empty match of the evolved
/// rule is blocked.
pub fn deleting_instance() -> Instance {
    let x = TypedGraph::new().with_node("x", "A");
    let n = Nac { label: "n".into(), graph: x.clone().with_node("y", "A"), map: Morphism::identity(&x) };
    let p = RuleWithNacs { rule: Rule::identity("p", &x), nacs: vec![n] };
    let empty = TypedGraph::new();
    let a = SecondOrderRule::by_inclusion(
        "dropX",
        Rule::identity("lhs", &x),
        Rule::identity("interface", &empty),
        Rule::identity("rhs", &empty),
    );
    let m = RuleMorphism::identity(&p.rule);
    let host = TypedGraph::new().with_node("g1", "A");
    let host_match = Morphism::new().with_node("x", "g1");
    Instance { p, a, m, host, host_match }
}

/// A rule small enough for the brute-force conflict oracle: at most two
/// interface nodes and one edge, one extra node and one edge on each side,
/// and at most one NAC adding up to two elements.
pub fn small_rule(rng: &mut StdRng, name: &str) -> RuleWithNacs {
    let k = random_graph(rng, "k", 2, 1);
    let mut l = k.clone();
    grow(rng, &mut l, "l", 1, 1);
    let mut r = k.clone();
    grow(rng, &mut r, "r", 1, 1);
    let p = Rule::by_inclusion(name, l, k, r);
    let mut nacs = Vec::new();
    if rng.gen_bool(0.4) {
        let mut n = p.lhs.clone();
        while n.element_count() == p.lhs.element_count() {
            grow(rng, &mut n, "n", 1, 2);
        }
        nacs.push(Nac { label: "n".into(), graph: n, map: Morphism::identity(&p.lhs) });
    }
    RuleWithNacs { rule: p, nacs }
}

/// Host size sufficient for the oracle to realize any conflict of the pair.
pub fn oracle_bound(r1: &RuleWithNacs, r2: &RuleWithNacs) -> usize {
    let l1 = r1.rule.lhs.element_count();
    let widest = r2.nacs.iter().map(|n| n.graph.element_count()).chain([r2.rule.lhs.element_count()]).max().unwrap_or(0);
    l1 + widest
}

/// Largest host the oracle enumerates.
pub const ORACLE_HOST: usize = 8;

/// A pair of small rules whose conflicts fit in hosts of [`ORACLE_HOST`]
/// elements.
pub fn oracle_pair(seed: u64) -> (RuleWithNacs, RuleWithNacs) {
    let mut rng = rng(seed);
    loop {
        let r1 = small_rule(&mut rng, "r1");
        let r2 = small_rule(&mut rng, "r2");
        if oracle_bound(&r1, &r2) <= ORACLE_HOST {
            return (r1, r2);
        }
    }
}

/// Whether the critical pair analysis and the brute-force oracle agree on
/// the existence of a conflict of `r1` on `r2`.
pub fn cpa_agrees_with_oracle(seed: u64) -> Result<bool, String> {
    let (r1, r2) = oracle_pair(seed);
    let bound = oracle_bound(&r1, &r2);
    let cpa = !gtevo::cpa::conflicts(&r1, &r2).is_empty();
    let oracle = !gtevo::cpa::conflict_oracle(&r1, &r2, bound, 1).map_err(|e| e.to_string())?.is_empty();
    if cpa != oracle {
        return Err(format!("cpa {cpa}, oracle {oracle} (bound {bound})\nr1 = {r1:?}\nr2 = {r2:?}"));
    }
    Ok(cpa)
}

/// A grammar of three rules over [`types`] and an evolution structure with
/// one or two evolution rules matching some of them, if the structure has no
/// Red issue and evolves within its bound in canonical order.
pub fn clean_structure(seed: u64) -> Option<(gtevo::evolution::EvolutionStructure, gtevo::rule::Grammar, usize)> {
    use gtevo::evolution::{check_evolution_rules, execute_evolution, EvolutionStructure, ExecuteOptions, Severity, TypeSpan};
    let mut rng = rng(seed);
    let p0 = random_rule_with_nacs(&mut rng, "p0", 1);
    let mut p1 = p0.clone();
    p1.rule.name = "p1".into();
    grow(&mut rng, &mut p1.rule.lhs, "w", 1, 1);
    let k = p1.rule.interface.clone();
    p1.rule = Rule::by_inclusion("p1", p1.rule.lhs.clone(), k, p1.rule.rhs.clone());
    p1.nacs = random_nacs(&mut rng, &p1.rule, 1);
    let p2 = random_rule_with_nacs(&mut rng, "p2", 1);
    let g = gtevo::rule::Grammar::new(types()).with_rule(p0.clone()).with_rule(p1.clone()).with_rule(p2);

    let mut es = EvolutionStructure::new(TypeSpan::identity(&types()));
    let (mut a, _) = random_evolution(&mut rng, &p0.rule, LhsChange::Any);
    a.name = "ev1".into();
    es.rules.push(a);
    if rng.gen_bool(0.5) {
        let (mut b, _) = random_evolution(&mut rng, &p1.rule, LhsChange::Any);
        b.name = "ev2".into();
        es.rules.push(b);
    }
    if check_evolution_rules(&es.rules).iter().any(|i| i.severity == Severity::Red) {
        return None;
    }
    let r = execute_evolution(&es, &g, &ExecuteOptions::default()).ok()?;
    Some((es, g, r.iterations))
}

pub fn grammars_isomorphic(a: &gtevo::rule::Grammar, b: &gtevo::rule::Grammar) -> bool {
    a.type_graph == b.type_graph
        && a.rules.keys().eq(b.rules.keys())
        && a.rules.iter().all(|(n, p)| gtevo::second_order::rules_isomorphic(p, &b.rules[n]))
}

/// Runs `es` in `orders` seeded random orders and compares every result with
/// the canonical one.
pub fn orders_agree(es: &gtevo::evolution::EvolutionStructure, g: &gtevo::rule::Grammar, orders: u64) -> bool {
    use gtevo::evolution::{execute_evolution, ExecuteOptions};
    let base = execute_evolution(es, g, &ExecuteOptions::default()).unwrap().grammar;
    (0..orders).all(|s| {
        let opts = ExecuteOptions { seed: Some(s), ..Default::default() };
        execute_evolution(es, g, &opts).map(|r| grammars_isomorphic(&base, &r.grammar)).unwrap_or(false)
    })
}

/// Whether some evolution rule has two matches into one step rule of `g` with
/// non-isomorphic results.
pub fn self_ambiguous(es: &gtevo::evolution::EvolutionStructure, g: &gtevo::rule::Grammar) -> bool {
    use gtevo::second_order::{find_second_order_matches, rules_isomorphic};
    es.rules.iter().any(|a| {
        g.rules.values().any(|p| {
            let results: Vec<RuleWithNacs> = find_second_order_matches(a, p)
                .iter()
                .filter_map(|m| apply_second_order(a, m, p).ok().map(|s| s.rule))
                .collect();
            results.windows(2).any(|w| !rules_isomorphic(&w[0], &w[1]))
        })
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OrderTally {
    pub clean: usize,
    /// Clean structures where at least one evolution step happens.
    pub nontrivial: usize,
    pub disagreeing: usize,
    /// Disagreeing structures with a self-ambiguous evolution rule.
    pub disagreeing_ambiguous: usize,
}

/// Checks the first `want` clean structures found from seed `from` on.
pub fn order_suite(from: u64, want: usize, orders: u64) -> OrderTally {
    let mut t = OrderTally::default();
    let mut seed = from;
    while t.clean < want && seed < from + 20 * want as u64 {
        if let Some((es, g, iterations)) = clean_structure(seed) {
            t.clean += 1;
            t.nontrivial += usize::from(iterations > 0);
            if !orders_agree(&es, &g, orders) {
                t.disagreeing += 1;
                t.disagreeing_ambiguous += usize::from(self_ambiguous(&es, &g));
            }
        }
        seed += 1;
    }
    t
}

/// A graph containing `a` and a morphism from `a` into it: the inclusion, or
/// with even odds an arbitrary morphism into a fresh graph when one exists.
fn leg(rng: &mut StdRng, a: &TypedGraph, prefix: &str) -> (TypedGraph, Morphism) {
    if rng.gen_bool(0.5) {
        let other = random_graph(rng, prefix, 3, 2);
        if let Some(f) = find_morphisms(a, &other, MorphismKind::Any).choose(rng) {
            return (other, f.clone());
        }
    }
    let mut b = a.clone();
    grow(rng, &mut b, prefix, 2, 1);
    (b, Morphism::identity(a))
}

/// Whether the computed pushout of a random span passes the universal
/// property oracle.
pub fn pushout_law(seed: u64) -> bool {
    use gtevo::pushout::{is_pushout, pushout, ORACLE_BOUND};
    let mut rng = rng(seed);
    let a = random_graph(&mut rng, "a", 2, 1);
    let (b, f) = leg(&mut rng, &a, "b");
    let (c, g) = leg(&mut rng, &a, "c");
    let po = pushout(&a, &b, &c, &f, &g);
    is_pushout(&a, &b, &c, &po.object, &f, &g, &po.from_b, &po.from_c, ORACLE_BOUND).unwrap_or(false)
}

/// For every injective match of a random rule side into a random host:
/// the complement exists iff gluing holds, and gluing it back yields the
/// host up to isomorphism. Returns (matches checked, failures).
pub fn reconstruction_law(seed: u64) -> (usize, usize) {
    use gtevo::pushout::{pushout, pushout_complement};
    use gtevo::search::graph_isomorphic;
    let mut rng = rng(seed);
    let k = random_graph(&mut rng, "k", 2, 1);
    let mut l = k.clone();
    grow(&mut rng, &mut l, "l", 2, 2);
    let lk = Morphism::identity(&k);
    let mut host = l.clone();
    grow(&mut rng, &mut host, "h", 2, 2);
    let (mut checked, mut failures) = (0, 0);
    for m in find_morphisms(&l, &host, MorphismKind::Mono) {
        checked += 1;
        let glue = check_gluing(&l, &lk, &host, &m).is_ok();
        let ok = match pushout_complement(&l, &lk, &host, &m) {
            Err(_) => !glue,
            Ok(pc) => glue && graph_isomorphic(&pushout(&k, &pc.object, &l, &pc.k, &lk).object, &host).is_some(),
        };
        failures += usize::from(!ok);
    }
    (checked, failures)
}

/// `|B +_A C| = |B| + |C| - |A|` for nodes and edges when both legs are mono.
pub fn count_law(seed: u64) -> bool {
    let mut rng = rng(seed);
    let a = random_graph(&mut rng, "a", 2, 1);
    let mut b = a.clone();
    grow(&mut rng, &mut b, "b", 2, 2);
    let mut c = a.clone();
    grow(&mut rng, &mut c, "c", 2, 2);
    let id = Morphism::identity(&a);
    let d = gtevo::pushout::pushout(&a, &b, &c, &id, &id).object;
    d.nodes.len() + a.nodes.len() == b.nodes.len() + c.nodes.len()
        && d.edges.len() + a.edges.len() == b.edges.len() + c.edges.len()
}
