//! Brute-force reference for `recommend`, written without the engine's
//! traversal or scoring code: eligibility comes from enumerating every
//! start-to-pattern path in the acyclic graph, scores from direct summation
//! of each QA's weight times its net count of applied impacts,
//! and the ranking from the documented total order.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use msa_decide_core::engine::Requirements;
use msa_decide_core::knowledge::{
    Conjunction, ContextFacts, DecisionModel, Edge, Effect, FactValue, Guard, NodeKind, Severity,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tri {
    T,
    F,
    U,
}

pub fn tri(c: &Conjunction, ctx: &ContextFacts) -> Tri {
    let values: Vec<FactValue> = c.clauses().iter().map(|cl| ctx.get(cl.fact)).collect();
    let falsified = c
        .clauses()
        .iter()
        .zip(&values)
        .any(|(cl, v)| *v != FactValue::Unknown && *v != cl.value);
    if falsified {
        Tri::F
    } else if values.contains(&FactValue::Unknown) {
        Tri::U
    } else {
        Tri::T
    }
}

/// `Some(true)` = activates via a true/choice edge, `Some(false)` = activates
/// with the unknown flag, `None` = does not activate. `Err` = ambiguity.
pub fn edge_status(
    model: &DecisionModel,
    edge: &Edge,
    ctx: &ContextFacts,
) -> Result<Option<bool>, String> {
    let source = model.node(&edge.from).unwrap();
    let siblings: Vec<&Edge> = model
        .edges()
        .iter()
        .filter(|e| e.from == edge.from)
        .collect();
    let value = |e: &Edge| -> Option<Tri> {
        match &e.guard {
            None => Some(Tri::T),
            Some(Guard::When(c)) => Some(tri(c, ctx)),
            Some(Guard::Otherwise) => None,
        }
    };
    let guarded: Vec<Tri> = siblings.iter().filter_map(|e| value(e)).collect();
    let default_holds = guarded.iter().all(|t| *t == Tri::F);
    let own = value(edge).unwrap_or(if default_holds { Tri::T } else { Tri::F });
    match source.kind {
        NodeKind::And => Ok(Some(true)),
        NodeKind::Pattern(_) | NodeKind::End => Ok(None),
        NodeKind::Start | NodeKind::Or => Ok(match own {
            Tri::T => Some(true),
            Tri::U => Some(false),
            Tri::F => None,
        }),
        NodeKind::Xor => {
            if siblings.iter().all(|e| e.guard.is_none()) {
                return Ok(Some(true));
            }
            let n_true = guarded.iter().filter(|t| **t == Tri::T).count();
            let n_unknown = guarded.iter().filter(|t| **t == Tri::U).count();
            if n_true > 1 {
                return Err(format!("ambiguous xor {}", edge.from));
            }
            let is_default = edge.guard == Some(Guard::Otherwise);
            Ok(if n_true == 1 {
                (own == Tri::T && !is_default).then_some(true)
            } else if n_unknown > 0 {
                (own == Tri::U).then_some(false)
            } else {
                (is_default && own == Tri::T).then_some(true)
            })
        }
    }
}

/// Every simple path (as edge lists) from `from` to `to`.
pub fn all_paths<'m>(model: &'m DecisionModel, from: &str, to: &str) -> Vec<Vec<&'m Edge>> {
    fn walk<'m>(
        model: &'m DecisionModel,
        at: &str,
        to: &str,
        path: &mut Vec<&'m Edge>,
        out: &mut Vec<Vec<&'m Edge>>,
    ) {
        if at == to {
            out.push(path.clone());
            return;
        }
        for e in model.edges().iter().filter(|e| e.from == at) {
            path.push(e);
            walk(model, &e.to, to, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    walk(model, from, to, &mut Vec::new(), &mut out);
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleEntry {
    pub pattern: String,
    pub score: f64,
    pub positive_hits: usize,
    pub negatives: usize,
    pub warning_codes: BTreeSet<&'static str>,
    pub complements: Vec<String>,
}

/// Patterns reached by at least one fully activated path, with whether any
/// such path avoids unknown-flagged edges. `Err` when a reached xor gateway
/// has several true guards.
pub fn reached_patterns(
    model: &DecisionModel,
    ctx: &ContextFacts,
) -> Result<BTreeMap<String, bool>, String> {
    let start = model
        .nodes()
        .iter()
        .find(|n| n.kind == NodeKind::Start)
        .unwrap()
        .id
        .clone();
    let mut reached = BTreeMap::new();
    let mut reached_nodes = BTreeSet::from([start.clone()]);
    for target in model.nodes() {
        for path in all_paths(model, &start, &target.id) {
            let mut active = true;
            let mut certain = true;
            for e in &path {
                match edge_status(model, e, ctx) {
                    Ok(Some(c)) => certain &= c,
                    Ok(None) => {
                        active = false;
                        break;
                    }
                    Err(_) => {
                        active = false;
                        break;
                    }
                }
            }
            if !active {
                continue;
            }
            reached_nodes.insert(target.id.clone());
            if let NodeKind::Pattern(p) = &target.kind {
                let slot = reached.entry(p.clone()).or_insert(false);
                *slot |= certain;
            }
        }
    }
    // An ambiguous xor is an error only if the flow actually reaches it.
    for n in &reached_nodes {
        for e in model.edges().iter().filter(|e| &e.from == n) {
            edge_status(model, e, ctx)?;
        }
    }
    Ok(reached)
}

pub fn oracle_recommend(
    model: &DecisionModel,
    req: &Requirements,
) -> Result<Vec<OracleEntry>, String> {
    let reached = reached_patterns(model, &req.context)?;
    let mut entries = Vec::new();
    for (pid, certain) in &reached {
        let p = model.pattern(pid).unwrap();
        let mut codes = BTreeSet::new();
        if !certain {
            codes.insert("W_CONTEXT_INCOMPLETE");
        }
        let mut excluded = false;
        for c in &p.constraints {
            match (c.severity, tri(&c.guard, &req.context)) {
                (Severity::Hard, Tri::F) => excluded = true,
                (Severity::Hard, Tri::U) => {
                    codes.insert("W_CONTEXT_INCOMPLETE");
                }
                (Severity::Soft, Tri::F | Tri::U) => {
                    codes.insert("W_SOFT_CONSTRAINT");
                }
                _ => {}
            }
        }
        if excluded {
            continue;
        }
        let mut per_qa: BTreeMap<&str, (f64, i32)> = BTreeMap::new();
        let mut hits = 0;
        for i in &p.impacts {
            let w = req.weights.get(&i.qa).copied().unwrap_or(0.0);
            if w == 0.0 {
                continue;
            }
            let cond = i
                .condition
                .as_ref()
                .map_or(Tri::T, |c| tri(c, &req.context));
            match cond {
                Tri::T => {
                    let e = per_qa.entry(i.qa.as_str()).or_insert((w, 0));
                    e.1 += if i.effect == Effect::Positive { 1 } else { -1 };
                    if i.effect == Effect::Positive {
                        hits += 1;
                    }
                }
                Tri::U => {
                    codes.insert("W_CONDITIONAL_IMPACT_UNKNOWN");
                }
                Tri::F => {}
            }
        }
        let mut score = 0.0;
        for (w, k) in per_qa.values() {
            if *k != 0 {
                score += *k as f64 * w;
            }
        }
        entries.push(OracleEntry {
            pattern: pid.clone(),
            score,
            positive_hits: hits,
            negatives: p
                .impacts
                .iter()
                .filter(|i| i.effect == Effect::Negative)
                .count(),
            warning_codes: codes,
            complements: Vec::new(),
        });
    }
    let eligible: BTreeSet<String> = entries.iter().map(|e| e.pattern.clone()).collect();
    for e in &mut entries {
        e.complements = model
            .pattern(&e.pattern)
            .unwrap()
            .complements
            .iter()
            .filter(|c| eligible.contains(*c))
            .cloned()
            .collect();
    }
    entries.sort_by(|a, b| {
        b.score
            .partial_cmp(&a.score)
            .unwrap()
            .then(b.positive_hits.cmp(&a.positive_hits))
            .then(a.negatives.cmp(&b.negatives))
            .then(a.pattern.cmp(&b.pattern))
    });
    Ok(entries)
}

/// Projects an engine report onto the oracle's shape.
pub fn project(report: &msa_decide_core::RecommendationReport) -> Vec<OracleEntry> {
    report
        .entries
        .iter()
        .map(|e| OracleEntry {
            pattern: e.pattern_id.clone(),
            score: e.score,
            positive_hits: e.positive_hits,
            negatives: e.negative_impacts,
            warning_codes: e.warnings.iter().map(|w| w.code.as_str()).collect(),
            complements: e.complements.clone(),
        })
        .collect()
}
