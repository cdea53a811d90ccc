//! D-class reports, the stability check, and null/regular J-class tags.

use super::{green, maximal_subgroup, FiniteInverseSemigroup, FiniteSemigroup, GreenStructure};
use crate::error::Result;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct DClassEntry {
    pub class_index: usize,
    pub size: usize,
    pub idempotent_count: usize,
    pub r_class_count: usize,
    pub l_class_count: usize,
    pub maximal_subgroup_order: usize,
    pub representative_idempotent: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct DClassReport {
    pub classes: Vec<DClassEntry>,
    pub maximal_subgroup_orders: Vec<usize>,
    /// The reduction this report certifies: KS is stably finite over a
    /// commutative unital K iff KG is stably finite for every listed maximal
    /// subgroup G.
    pub reduction: String,
    /// Over characteristic zero every finite-group algebra is stably finite,
    /// so the reduction closes.
    pub stably_finite_char_zero: bool,
}

/// Per-D-class shape report for a finite inverse semigroup, with the global
/// stable-finiteness reduction to maximal subgroups.
pub fn d_class_report(s: &FiniteInverseSemigroup) -> Result<DClassReport> {
    let gr = green(s.base());
    let mut classes = Vec::new();
    let mut orders = Vec::new();
    for (idx, members) in gr.d_classes.iter().enumerate() {
        let idems: Vec<usize> = members
            .iter()
            .copied()
            .filter(|&x| s.is_idempotent(x))
            .collect();
        let rep = *idems
            .first()
            .expect("every D-class of an inverse semigroup contains an idempotent");
        let subgroup = maximal_subgroup(s, rep)?;
        let r_count = count_distinct(members.iter().map(|&x| gr.r_class_of[x]));
        let l_count = count_distinct(members.iter().map(|&x| gr.l_class_of[x]));
        orders.push(subgroup.group.size());
        classes.push(DClassEntry {
            class_index: idx,
            size: members.len(),
            idempotent_count: idems.len(),
            r_class_count: r_count,
            l_class_count: l_count,
            maximal_subgroup_order: subgroup.group.size(),
            representative_idempotent: s.label(rep).to_string(),
        });
    }
    Ok(DClassReport {
        classes,
        maximal_subgroup_orders: orders,
        reduction: "KS stably finite iff KG stably finite for every listed maximal subgroup G"
            .to_string(),
        stably_finite_char_zero: true,
    })
}

fn count_distinct(it: impl Iterator<Item = usize>) -> usize {
    let mut v: Vec<usize> = it.collect();
    v.sort_unstable();
    v.dedup();
    v.len()
}

#[derive(Debug, Clone, Serialize)]
pub struct StabilityReport {
    pub stable: bool,
    /// (s, t, violated law) when unstable.
    pub counterexample: Option<(String, String, String)>,
}

/// Checks stability over all pairs: s J st implies s R st, and s J ts
/// implies s L ts.  Every finite semigroup is stable, so on corpus input the
/// answer is always `true`; the scan is the point.
pub fn is_stable(s: &FiniteSemigroup) -> StabilityReport {
    let gr = green(s);
    let n = s.size();
    for a in 0..n {
        for b in 0..n {
            let ab = s.mul(a, b);
            if gr.j_related(a, ab) && !gr.r_related(a, ab) {
                return StabilityReport {
                    stable: false,
                    counterexample: Some((
                        s.label(a).to_string(),
                        s.label(b).to_string(),
                        "s J st but not s R st".to_string(),
                    )),
                };
            }
            let ba = s.mul(b, a);
            if gr.j_related(a, ba) && !gr.l_related(a, ba) {
                return StabilityReport {
                    stable: false,
                    counterexample: Some((
                        s.label(a).to_string(),
                        s.label(b).to_string(),
                        "s J ts but not s L ts".to_string(),
                    )),
                };
            }
        }
    }
    StabilityReport {
        stable: true,
        counterexample: None,
    }
}

#[derive(Debug, Clone, Serialize)]
pub enum JClassKind {
    /// J² ∩ J = ∅.
    Null,
    /// Every element regular; idempotents listed per R-class and per L-class
    /// of the J-class.
    Regular {
        idempotents_by_r_class: Vec<Vec<String>>,
        idempotents_by_l_class: Vec<Vec<String>>,
    },
}

/// Tags each J-class as null or regular.
pub fn j_class_classify(s: &FiniteSemigroup) -> Vec<JClassKind> {
    let gr = green(s);
    j_class_classify_with(s, &gr)
}

pub fn j_class_classify_with(s: &FiniteSemigroup, gr: &GreenStructure) -> Vec<JClassKind> {
    let mut out = Vec::new();
    for members in &gr.j_classes {
        let in_class = |x: usize| gr.j_class_of[x] == gr.j_class_of[members[0]];
        let square_meets = members
            .iter()
            .any(|&a| members.iter().any(|&b| in_class(s.mul(a, b))));
        if !square_meets {
            out.push(JClassKind::Null);
            continue;
        }
        debug_assert!(members
            .iter()
            .all(|&a| (0..s.size()).any(|t| s.mul(s.mul(a, t), a) == a)));
        let mut by_r: std::collections::BTreeMap<usize, Vec<String>> = Default::default();
        let mut by_l: std::collections::BTreeMap<usize, Vec<String>> = Default::default();
        for &x in members {
            if s.is_idempotent(x) {
                by_r.entry(gr.r_class_of[x])
                    .or_default()
                    .push(s.label(x).to_string());
                by_l.entry(gr.l_class_of[x])
                    .or_default()
                    .push(s.label(x).to_string());
            }
        }
        out.push(JClassKind::Regular {
            idempotents_by_r_class: by_r.into_values().collect(),
            idempotents_by_l_class: by_l.into_values().collect(),
        });
    }
    out
}
