//! Critical pairs between evolution rules.

use std::collections::BTreeSet;

use serde::Serialize;

use super::catalog::{IssueCode, OpenIssue};
use crate::second_order::{
    classify_candidate, rewrite, rule_overlaps, track_2, Component, RuleMorphism, SecondOrderRule,
};
use crate::Elem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SecondOrderPairKind {
    /// The first rule deletes part of the second match.
    UseDelete,
    /// The second match survives but is no longer applicable.
    Disable,
    /// The first rule creates context forbidden by a NAC of the second.
    ProduceForbid,
    /// The first rule creates part of the second match.
    ProduceUse,
    /// The first rule deletes context forbidden by a NAC of the second.
    DeleteForbid,
}

impl SecondOrderPairKind {
    pub fn is_conflict(self) -> bool {
        matches!(self, Self::UseDelete | Self::Disable | Self::ProduceForbid)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SecondOrderPair {
    pub rule1: String,
    pub rule2: String,
    pub kind: SecondOrderPairKind,
}

fn image_of(m: &RuleMorphism, els: &BTreeSet<(Component, Elem)>) -> BTreeSet<(Component, Elem)> {
    els.iter().filter_map(|(c, x)| m.get(*c).elem(x).map(|y| (*c, y))).collect()
}

fn pair(a1: &SecondOrderRule, a2: &SecondOrderRule, kind: SecondOrderPairKind) -> SecondOrderPair {
    SecondOrderPair { rule1: a1.name.clone(), rule2: a2.name.clone(), kind }
}

fn nac_morphism(m: &RuleMorphism, q: &RuleMorphism) -> Option<RuleMorphism> {
    m.then(q).ok()
}

/// Conflicts of `a1` before `a2` on their minimal overlapping contexts.
pub fn conflicts_2(a1: &SecondOrderRule, a2: &SecondOrderRule) -> Vec<SecondOrderPair> {
    let mut out = Vec::new();
    for ov in rule_overlaps(&a1.lhs, &a2.lhs) {
        let Ok(ev) = classify_candidate(a1, &ov.left, &ov.rule) else { continue };
        if classify_candidate(a2, &ov.right, &ov.rule).is_err() {
            continue;
        }
        match track_2(&ov.right, &ev) {
            None => out.push(pair(a1, a2, SecondOrderPairKind::UseDelete)),
            Some(t) if classify_candidate(a2, &t, &ev.evolved).is_err() => {
                out.push(pair(a1, a2, SecondOrderPairKind::Disable))
            }
            Some(_) => {}
        }
    }
    let inv = a1.inverse();
    let created = a1.created();
    for nac in &a2.nacs {
        for ov in rule_overlaps(&a1.rhs, &nac.rule) {
            let Some(m2_post) = nac_morphism(&nac.map, &ov.right) else { continue };
            if !m2_post.is_injective() {
                continue;
            }
            let new = image_of(&ov.left, &created);
            if ov.right.image().is_disjoint(&new) || !m2_post.image().is_disjoint(&new) {
                continue;
            }
            let Ok(back) = rewrite(&inv, &ov.left, &ov.rule) else { continue };
            let Some(m2) = track_2(&m2_post, &back) else { continue };
            if classify_candidate(a1, &back.comatch, &back.evolved).is_ok()
                && classify_candidate(a2, &m2, &back.evolved).is_ok()
            {
                out.push(pair(a1, a2, SecondOrderPairKind::ProduceForbid));
            }
        }
    }
    out
}

/// Dependencies of `a2` on `a1`.
pub fn dependencies_2(a1: &SecondOrderRule, a2: &SecondOrderRule) -> Vec<SecondOrderPair> {
    let mut out = Vec::new();
    let inv = a1.inverse();
    let created = a1.created();
    for ov in rule_overlaps(&a1.rhs, &a2.lhs) {
        if ov.right.image().is_disjoint(&image_of(&ov.left, &created)) {
            continue;
        }
        let Ok(back) = rewrite(&inv, &ov.left, &ov.rule) else { continue };
        if classify_candidate(a1, &back.comatch, &back.evolved).is_ok()
            && classify_candidate(a2, &ov.right, &ov.rule).is_ok()
        {
            out.push(pair(a1, a2, SecondOrderPairKind::ProduceUse));
        }
    }
    let deleted = a1.deleted();
    for nac in &a2.nacs {
        for ov in rule_overlaps(&a1.lhs, &nac.rule) {
            let Some(m2) = nac_morphism(&nac.map, &ov.right) else { continue };
            if !m2.is_injective() {
                continue;
            }
            let gone = image_of(&ov.left, &deleted);
            if ov.right.image().is_disjoint(&gone) || !m2.image().is_disjoint(&gone) {
                continue;
            }
            let Ok(ev) = classify_candidate(a1, &ov.left, &ov.rule) else { continue };
            if track_2(&m2, &ev).is_some_and(|t| classify_candidate(a2, &t, &ev.evolved).is_ok()) {
                out.push(pair(a1, a2, SecondOrderPairKind::DeleteForbid));
            }
        }
    }
    out
}

/// Second-order critical pairs over all ordered pairs, self-pairs included.
pub fn rule_set_pairs(ep: &[SecondOrderRule]) -> Vec<SecondOrderPair> {
    let mut out = Vec::new();
    for a1 in ep {
        for a2 in ep {
            out.extend(conflicts_2(a1, a2));
            out.extend(dependencies_2(a1, a2));
        }
    }
    out
}

/// Rule-set sanity checks: each rule conflicts with itself, nothing depends
/// on anything, distinct rules do not conflict.
pub fn check_evolution_rules(ep: &[SecondOrderRule]) -> Vec<OpenIssue> {
    let pairs = rule_set_pairs(ep);
    let mut issues = BTreeSet::new();
    for a in ep {
        if !pairs.iter().any(|p| p.kind.is_conflict() && p.rule1 == a.name && p.rule2 == a.name) {
            issues.insert(OpenIssue::new(IssueCode::Ev1, vec![a.name.clone()]));
        }
    }
    for p in &pairs {
        if !p.kind.is_conflict() {
            issues.insert(OpenIssue::new(IssueCode::Ev2, vec![p.rule2.clone(), p.rule1.clone()]));
        } else if p.rule1 != p.rule2 {
            issues.insert(OpenIssue::new(IssueCode::Ev3, vec![p.rule1.clone(), p.rule2.clone()]));
        }
    }
    issues.into_iter().collect()
}
