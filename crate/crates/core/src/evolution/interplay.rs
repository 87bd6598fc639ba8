use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use super::catalog::{IssueCode, OpenIssue};
use crate::graph::{Elem, Kind};
use crate::rule::{Nac, RuleWithNacs};
use crate::second_order::{
    blocking_nac, candidate_morphisms, check_gluing_2, rewrite, Component, Rejection, RuleMorphism,
    SecondOrderRule,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InterplayKind {
    Gp,
    Np,
    D2d,
    D2p,
    C2d,
    C2p,
    C2c,
    D2c,
}

impl InterplayKind {
    pub fn label(self) -> &'static str {
        match self {
            InterplayKind::Gp => "gp",
            InterplayKind::Np => "np",
            InterplayKind::D2d => "d2d",
            InterplayKind::D2p => "d2p",
            InterplayKind::C2d => "c2d",
            InterplayKind::C2p => "c2p",
            InterplayKind::C2c => "c2c",
            InterplayKind::D2c => "d2c",
        }
    }

    pub fn issue(self) -> IssueCode {
        match self {
            InterplayKind::Gp => IssueCode::Ev4,
            InterplayKind::Np => IssueCode::Ev5,
            InterplayKind::D2d | InterplayKind::D2p => IssueCode::Ev6,
            InterplayKind::C2d | InterplayKind::C2p => IssueCode::Ev7,
            InterplayKind::C2c | InterplayKind::D2c => IssueCode::Ev8,
        }
    }

    /// Kinds that change where the step rule applies.
    pub fn changes_applicability(self) -> bool {
        matches!(self, Self::D2d | Self::D2p | Self::C2d | Self::C2p)
    }
}

impl fmt::Display for InterplayKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct InterplayFinding {
    pub evolution_rule: String,
    pub step_rule: String,
    pub kind: InterplayKind,
    /// Elements of the step rule (or of its evolved form for creations), as `component:kind:id`.
    pub witness: Vec<String>,
    pub note: String,
    #[serde(skip)]
    pub matching: RuleMorphism,
}

fn show(c: Component, e: &Elem) -> String {
    let k = match e.kind {
        Kind::Node => "node",
        Kind::Edge => "edge",
    };
    format!("{c}:{k}:{}", e.id)
}

/// Elements witnessing that removing `gone` from the step rule's LHS has no
/// pushout complement in the NAC: forbidden edges left dangling, or removed
/// items the NAC identifies with others. Either way the forbidden context is
/// lost and the NAC stops forbidding anything.
fn nac_gluing_problem(nac: &Nac, lhs_image: &BTreeSet<Elem>, gone: &BTreeSet<Elem>) -> Option<Vec<String>> {
    let gone_n: BTreeSet<Elem> = gone.iter().filter_map(|x| nac.map.elem(x)).collect();
    let mut witness = Vec::new();
    for (e, te) in &nac.graph.edges {
        let el = Elem::edge(e.clone());
        if lhs_image.contains(&el) || gone_n.contains(&el) {
            continue;
        }
        if gone_n.contains(&Elem::node(te.source.clone())) || gone_n.contains(&Elem::node(te.target.clone())) {
            witness.push(format!("{}:edge:{e}", nac.label));
        }
    }
    let mut hits: BTreeMap<Elem, usize> = BTreeMap::new();
    for y in nac.map.nodes.values().map(Elem::node).chain(nac.map.edges.values().map(Elem::edge)) {
        *hits.entry(y).or_insert(0) += 1;
    }
    for y in &gone_n {
        if hits.get(y).copied().unwrap_or(0) > 1 {
            witness.push(format!("{}:{}:{}", nac.label, y.kind, y.id));
        }
    }
    (!witness.is_empty()).then_some(witness)
}

/// Findings for one candidate morphism `m: L_Ev -> p`. Empty when the
/// evolution rule is an isomorphism or its own NACs block `m`.
pub fn classify_morphism(a: &SecondOrderRule, p: &RuleWithNacs, m: &RuleMorphism) -> Vec<InterplayFinding> {
    if a.is_iso() || blocking_nac(a, m, &p.rule).is_some() {
        return Vec::new();
    }
    let mut kinds: BTreeMap<InterplayKind, (Vec<String>, String)> = BTreeMap::new();
    let mut add = |k: InterplayKind, w: String, note: &str| {
        let entry = kinds.entry(k).or_insert_with(|| (Vec::new(), note.to_owned()));
        entry.0.push(w);
    };

    let deleted = a.deleted();
    let gone_l: BTreeSet<Elem> =
        deleted.iter().filter(|(c, _)| *c == Component::Lhs).filter_map(|(_, x)| m.lhs.elem(x)).collect();
    let lhs_image = m.lhs.image();
    for nac in &p.nacs {
        if let Some(w) = nac_gluing_problem(nac, &lhs_image, &gone_l) {
            for x in w {
                add(InterplayKind::Np, x, &format!("NAC {} would no longer forbid anything", nac.label));
            }
        }
    }

    let ev = match check_gluing_2(a, m, &p.rule).and_then(|_| rewrite(a, m, &p.rule)) {
        Ok(ev) => Some(ev),
        Err(Rejection::Gluing { component, violation }) => {
            add(InterplayKind::Gp, format!("{component}:{violation}"), "gluing condition fails");
            None
        }
        Err(r) => {
            add(InterplayKind::Gp, r.to_string(), "evolved span would not be a rule");
            None
        }
    };
    if let Some(ev) = ev {
        let step_deleted = p.rule.deleted();
        let step_created = p.rule.created();
        for (c, x) in &deleted {
            match c {
                Component::Lhs => {
                    let y = m.lhs.elem(x).expect("total");
                    let k = if step_deleted.contains(&y) { InterplayKind::D2d } else { InterplayKind::D2p };
                    add(k, show(*c, &y), "item removed from the step rule's LHS");
                }
                Component::Rhs => {
                    let y = m.rhs.elem(x).expect("total");
                    if step_created.contains(&y) {
                        add(InterplayKind::D2c, show(*c, &y), "created item removed from the step rule");
                    }
                }
                Component::Interface => {}
            }
        }
        let new_preserved = a.rhs.l.image();
        let new_kept = a.rhs.r.image();
        for (c, x) in &a.created() {
            match c {
                Component::Lhs => {
                    let y = ev.comatch.lhs.elem(x).expect("total");
                    let k = if new_preserved.contains(x) { InterplayKind::C2p } else { InterplayKind::C2d };
                    add(k, show(*c, &y), "item inserted into the step rule's LHS");
                }
                Component::Rhs if !new_kept.contains(x) => {
                    let y = ev.comatch.rhs.elem(x).expect("total");
                    add(InterplayKind::C2c, show(*c, &y), "item inserted into the step rule's RHS");
                }
                _ => {}
            }
        }
    }
    kinds
        .into_iter()
        .map(|(kind, (mut witness, note))| {
            witness.sort();
            witness.dedup();
            InterplayFinding {
                evolution_rule: a.name.clone(),
                step_rule: p.name().to_owned(),
                kind,
                witness,
                note,
                matching: m.clone(),
            }
        })
        .collect()
}

/// Findings over every componentwise-injective morphism `L_Ev -> p`,
/// including those that are not applicable matches.
pub fn interplay(a: &SecondOrderRule, p: &RuleWithNacs) -> Vec<InterplayFinding> {
    candidate_morphisms(a, &p.rule).iter().flat_map(|m| classify_morphism(a, p, m)).collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct InterplayReport {
    pub findings: Vec<InterplayFinding>,
    pub issues: Vec<OpenIssue>,
}

impl InterplayReport {
    /// Step rules with at least one finding other than gp/np.
    pub fn modified_rules(&self) -> BTreeSet<String> {
        self.findings
            .iter()
            .filter(|f| !matches!(f.kind, InterplayKind::Gp | InterplayKind::Np))
            .map(|f| f.step_rule.clone())
            .collect()
    }

    pub fn has(&self, evolution_rule: &str, step_rule: &str, kind: InterplayKind) -> bool {
        self.findings.iter().any(|f| f.evolution_rule == evolution_rule && f.step_rule == step_rule && f.kind == kind)
    }
}

/// Interplay of every evolution rule with every step rule, with the
/// corresponding open issues (one per evolution rule, step rule and code).
pub fn interplay_of(ep: &[SecondOrderRule], rules: &BTreeMap<String, RuleWithNacs>) -> InterplayReport {
    let mut findings = Vec::new();
    for a in ep {
        for p in rules.values() {
            findings.extend(interplay(a, p));
        }
    }
    let issues: BTreeSet<OpenIssue> = findings
        .iter()
        .map(|f| OpenIssue::new(f.kind.issue(), vec![f.evolution_rule.clone(), f.step_rule.clone()]))
        .collect();
    InterplayReport { findings, issues: issues.into_iter().collect() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rule::Rule;
    use crate::TypedGraph;

    fn g(nodes: &[(&str, &str)]) -> TypedGraph {
        let mut out = TypedGraph::new();
        for (n, t) in nodes {
            out.add_node(*n, *t);
        }
        out
    }

    #[test]
    fn deleting_a_deleted_item_is_d2d() {
        let p = RuleWithNacs::new(Rule::by_inclusion("p", g(&[("x", "A"), ("y", "B")]), g(&[("x", "A")]), g(&[("x", "A")])));
        let lhs = Rule::by_inclusion("l", g(&[("b", "B")]), g(&[]), g(&[]));
        let a = SecondOrderRule::by_inclusion("a", lhs, Rule::identity("k", &g(&[])), Rule::identity("r", &g(&[])));
        let fs = interplay(&a, &p);
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].kind, InterplayKind::D2d);
        assert_eq!(fs[0].witness, ["L:node:y"]);
    }

    #[test]
    fn iso_evolution_rules_have_no_interplay() {
        let p = RuleWithNacs::new(Rule::identity("p", &g(&[("x", "A")])));
        let a = SecondOrderRule::identity("id", &Rule::identity("e", &g(&[("a", "A")])));
        assert!(interplay(&a, &p).is_empty());
    }
}
