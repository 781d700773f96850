//! Gateway traversal: which patterns the decision flow reaches for a context.
//!
//! Nodes are processed in topological order (Kahn's algorithm with a FIFO
//! queue seeded in id order), so every incoming edge of a node is settled
//! before the node itself is expanded.
//!
//! Edge activation per source node:
//! - `start`, `or`: every edge whose guard is true activates; unknown guards
//!   activate with the unknown flag. Unguarded edges are true.
//! - `and`: every edge activates.
//! - `xor` with only unguarded edges: a practitioner choice. Every branch is
//!   offered as a mutually exclusive alternative (outcome `choice`).
//! - `xor` with guards: one true guard activates alone; more than one is an
//!   error; with none true, unknown guards activate flagged; with every
//!   guard false the `otherwise` edge activates.
//!
//! A pattern reached only through unknown-flagged edges is eligible but
//! carries `W_CONTEXT_INCOMPLETE`. Hard constraints then filter the reached
//! patterns.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use super::guard::{eval_conjunction, eval_guard, Truth};
use super::{Warning, WarningCode};
use crate::error::EngineError;
use crate::knowledge::{ContextFacts, DecisionModel, Edge, Guard, NodeKind, Severity};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeOutcome {
    True,
    Unknown,
    Choice,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActivatedEdge {
    pub from: String,
    pub to: String,
    pub outcome: EdgeOutcome,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ExclusionReason {
    #[serde(rename = "R_NOT_REACHED")]
    NotReached,
    #[serde(rename = "R_HARD_CONSTRAINT")]
    HardConstraint,
}

impl ExclusionReason {
    pub fn code(self) -> &'static str {
        match self {
            ExclusionReason::NotReached => "R_NOT_REACHED",
            ExclusionReason::HardConstraint => "R_HARD_CONSTRAINT",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Exclusion {
    pub pattern: String,
    pub reason: ExclusionReason,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct EligibilityTrace {
    pub visited: Vec<String>,
    pub activated_edges: Vec<ActivatedEdge>,
    pub excluded: Vec<Exclusion>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EligiblePattern {
    pub id: String,
    /// Reached through at least one path of fully true (or chosen) edges.
    pub certain: bool,
    pub warnings: Vec<Warning>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Eligibility {
    /// Sorted by pattern id.
    pub patterns: Vec<EligiblePattern>,
    pub trace: EligibilityTrace,
}

impl Eligibility {
    pub fn ids(&self) -> Vec<&str> {
        self.patterns.iter().map(|p| p.id.as_str()).collect()
    }

    pub fn get(&self, id: &str) -> Option<&EligiblePattern> {
        self.patterns.iter().find(|p| p.id == id)
    }
}

/// Edges that activate when `node` is expanded under `context`.
pub fn activate<'m>(
    model: &'m DecisionModel,
    node: &str,
    context: &ContextFacts,
) -> Result<Vec<(&'m Edge, EdgeOutcome)>, EngineError> {
    let Some(n) = model.node(node) else {
        return Ok(Vec::new());
    };
    let outgoing = model.outgoing(node);
    let truths: Vec<Option<Truth>> = outgoing
        .iter()
        .map(|e| match &e.guard {
            None => Some(Truth::True),
            Some(Guard::When(c)) => Some(eval_conjunction(c, context)),
            Some(Guard::Otherwise) => None,
        })
        .collect();
    let all_false = truths.iter().flatten().all(|t| *t == Truth::False);
    let resolved = |i: usize| -> Truth {
        truths[i].unwrap_or_else(|| eval_guard(&Guard::Otherwise, context, all_false))
    };

    let out = match n.kind {
        NodeKind::Pattern(_) | NodeKind::End => Vec::new(),
        NodeKind::And => outgoing.iter().map(|e| (e, EdgeOutcome::True)).collect(),
        NodeKind::Start | NodeKind::Or => outgoing
            .iter()
            .enumerate()
            .filter_map(|(i, e)| match resolved(i) {
                Truth::True => Some((e, EdgeOutcome::True)),
                Truth::Unknown => Some((e, EdgeOutcome::Unknown)),
                Truth::False => None,
            })
            .collect(),
        NodeKind::Xor if !outgoing.is_empty() && outgoing.iter().all(|e| e.guard.is_none()) => {
            outgoing.iter().map(|e| (e, EdgeOutcome::Choice)).collect()
        }
        NodeKind::Xor => {
            let trues: Vec<usize> = (0..outgoing.len())
                .filter(|&i| truths[i] == Some(Truth::True))
                .collect();
            let unknowns: Vec<usize> = (0..outgoing.len())
                .filter(|&i| truths[i] == Some(Truth::Unknown))
                .collect();
            match trues.as_slice() {
                [one] => vec![(&outgoing[*one], EdgeOutcome::True)],
                [] if !unknowns.is_empty() => unknowns
                    .iter()
                    .map(|&i| (&outgoing[i], EdgeOutcome::Unknown))
                    .collect(),
                [] => (0..outgoing.len())
                    .filter(|&i| truths[i].is_none() && resolved(i) == Truth::True)
                    .map(|i| (&outgoing[i], EdgeOutcome::True))
                    .collect(),
                many => {
                    return Err(EngineError::AmbiguousExclusive {
                        gateway: node.to_string(),
                        edges: many.iter().map(|&i| outgoing[i].to.clone()).collect(),
                    })
                }
            }
        }
    };
    Ok(out)
}

/// Computes the eligible patterns for `context`. Depends on the context only.
pub fn eligible_patterns(
    model: &DecisionModel,
    context: &ContextFacts,
) -> Result<Eligibility, EngineError> {
    let mut trace = EligibilityTrace::default();
    // node id -> reached through a certain path
    let mut reached: BTreeMap<&str, bool> = BTreeMap::new();
    for n in model.nodes() {
        if n.kind == NodeKind::Start {
            reached.insert(n.id.as_str(), true);
        }
    }

    for node in topological_order(model) {
        let Some(&certain) = reached.get(node) else {
            continue;
        };
        trace.visited.push(node.to_string());
        for (edge, outcome) in activate(model, node, context)? {
            trace.activated_edges.push(ActivatedEdge {
                from: edge.from.clone(),
                to: edge.to.clone(),
                outcome,
            });
            let via_certain = certain && outcome != EdgeOutcome::Unknown;
            let slot = reached.entry(edge.to.as_str()).or_insert(false);
            *slot |= via_certain;
        }
    }

    let mut patterns = Vec::new();
    for p in model.patterns() {
        let reached_certain = model
            .pattern_nodes(&p.id)
            .filter_map(|n| reached.get(n.id.as_str()).copied())
            .reduce(|a, b| a || b);
        let Some(certain) = reached_certain else {
            trace.excluded.push(Exclusion {
                pattern: p.id.clone(),
                reason: ExclusionReason::NotReached,
                detail: "the decision flow does not reach this pattern".into(),
            });
            continue;
        };

        let mut warnings = Vec::new();
        if !certain {
            warnings.push(Warning {
                code: WarningCode::ContextIncomplete,
                message: "reached only through branches whose guards depend on unknown facts"
                    .into(),
            });
        }
        let mut violated = None;
        for c in &p.constraints {
            let truth = eval_conjunction(&c.guard, context);
            match (c.severity, truth) {
                (_, Truth::True) => {}
                (Severity::Hard, Truth::False) => {
                    violated = Some(c);
                    break;
                }
                (Severity::Hard, Truth::Unknown) => warnings.push(Warning {
                    code: WarningCode::ContextIncomplete,
                    message: format!(
                        "hard constraint `{}` ({}) depends on unknown facts",
                        c.id, c.guard
                    ),
                }),
                (Severity::Soft, Truth::False) => warnings.push(Warning {
                    code: WarningCode::SoftConstraint,
                    message: format!(
                        "soft constraint `{}` ({}) is not met: {}",
                        c.id, c.guard, c.description
                    ),
                }),
                (Severity::Soft, Truth::Unknown) => warnings.push(Warning {
                    code: WarningCode::SoftConstraint,
                    message: format!(
                        "soft constraint `{}` ({}) depends on unknown facts: {}",
                        c.id, c.guard, c.description
                    ),
                }),
            }
        }
        if let Some(c) = violated {
            trace.excluded.push(Exclusion {
                pattern: p.id.clone(),
                reason: ExclusionReason::HardConstraint,
                detail: format!(
                    "hard constraint `{}` ({}) is violated: {}",
                    c.id, c.guard, c.description
                ),
            });
            continue;
        }
        patterns.push(EligiblePattern {
            id: p.id.clone(),
            certain,
            warnings,
        });
    }

    Ok(Eligibility { patterns, trace })
}

fn topological_order(model: &DecisionModel) -> Vec<&str> {
    let mut indegree: BTreeMap<&str, usize> =
        model.nodes().iter().map(|n| (n.id.as_str(), 0)).collect();
    for e in model.edges() {
        if let Some(d) = indegree.get_mut(e.to.as_str()) {
            *d += 1;
        }
    }
    let mut queue: VecDeque<&str> = indegree
        .iter()
        .filter(|(_, d)| **d == 0)
        .map(|(n, _)| *n)
        .collect();
    let mut order = Vec::with_capacity(indegree.len());
    while let Some(n) = queue.pop_front() {
        order.push(n);
        for e in model.outgoing(n) {
            let d = indegree.get_mut(e.to.as_str()).expect("resolved edge");
            *d -= 1;
            if *d == 0 {
                queue.push_back(e.to.as_str());
            }
        }
    }
    order
}
