//! Structural validation of a reference-resolved model.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use super::model::{ContextFacts, DecisionModel, Guard, NodeKind};
use crate::engine::guard::{eval_conjunction, Truth};
use crate::par;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FindingSeverity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub code: &'static str,
    pub severity: FindingSeverity,
    pub message: String,
    pub element: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn errors(&self) -> impl Iterator<Item = &Finding> {
        self.findings
            .iter()
            .filter(|f| f.severity == FindingSeverity::Error)
    }

    pub fn has(&self, code: &str) -> bool {
        self.findings.iter().any(|f| f.code == code)
    }
}

struct Collector(Vec<Finding>);

impl Collector {
    fn error(&mut self, code: &'static str, element: &str, message: String) {
        self.push(code, FindingSeverity::Error, element, message);
    }

    fn warn(&mut self, code: &'static str, element: &str, message: String) {
        self.push(code, FindingSeverity::Warning, element, message);
    }

    fn push(
        &mut self,
        code: &'static str,
        severity: FindingSeverity,
        element: &str,
        message: String,
    ) {
        self.0.push(Finding {
            code,
            severity,
            message,
            element: element.to_string(),
        });
    }
}

/// Reports every structural problem in `model`. Never fails; findings are
/// sorted by `(code, element)`.
pub fn validate_model(model: &DecisionModel) -> ValidationReport {
    let mut out = Collector(Vec::new());

    let starts: Vec<&str> = model
        .nodes()
        .iter()
        .filter(|n| n.kind == NodeKind::Start)
        .map(|n| n.id.as_str())
        .collect();
    match starts.len() {
        0 => out.error("E_START", "", "model has no start node".into()),
        1 => {}
        n => {
            for s in &starts {
                out.error("E_START", s, format!("model has {n} start nodes"));
            }
        }
    }
    for s in &starts {
        if model.incoming(s).next().is_some() {
            out.error("E_START", s, format!("start node `{s}` has incoming edges"));
        }
    }

    for p in model.patterns() {
        let count = model.pattern_nodes(&p.id).count();
        if count != 1 {
            out.error(
                "E_PATTERN_NODE",
                &p.id,
                format!(
                    "pattern `{}` is referenced by {count} pattern nodes (expected exactly one)",
                    p.id
                ),
            );
        }
        if p.impacts.is_empty() {
            out.warn(
                "W_NO_IMPACTS",
                &p.id,
                format!("pattern `{}` declares no impacts", p.id),
            );
        }
    }

    check_cycles(model, &mut out);

    if let [start] = starts.as_slice() {
        let reachable = reachable_from(model, start);
        for n in model.nodes() {
            if reachable.contains(n.id.as_str()) {
                continue;
            }
            match &n.kind {
                NodeKind::Pattern(p) => out.error(
                    "E_UNREACHABLE",
                    &n.id,
                    format!(
                        "pattern node `{}` ({p}) is not reachable from `{start}`",
                        n.id
                    ),
                ),
                NodeKind::Start => {}
                _ => out.warn(
                    "W_UNREACHABLE_NODE",
                    &n.id,
                    format!("node `{}` is not reachable from `{start}`", n.id),
                ),
            }
        }
    }

    let known_contexts = ContextFacts::all_known();
    for n in model.nodes() {
        let outgoing = model.outgoing(&n.id);
        if matches!(n.kind, NodeKind::Pattern(_) | NodeKind::End) && !outgoing.is_empty() {
            out.error(
                "E_TERMINAL_EDGE",
                &n.id,
                format!(
                    "terminal node `{}` has {} outgoing edges",
                    n.id,
                    outgoing.len()
                ),
            );
        }
        if n.kind.is_gateway() && outgoing.len() < 2 {
            out.warn(
                "W_DEGENERATE_GATEWAY",
                &n.id,
                format!("gateway `{}` has {} outgoing edges", n.id, outgoing.len()),
            );
        }
        let defaults = outgoing
            .iter()
            .filter(|e| e.guard == Some(Guard::Otherwise))
            .count();
        if defaults > 1 {
            out.error(
                "E_MULTIPLE_DEFAULT",
                &n.id,
                format!("node `{}` has {defaults} otherwise edges", n.id),
            );
        }
        if n.kind != NodeKind::Xor {
            continue;
        }
        let unguarded = outgoing.iter().filter(|e| e.guard.is_none()).count();
        if unguarded > 0 && unguarded < outgoing.len() {
            out.error(
                "E_MIXED_EXCLUSIVE",
                &n.id,
                format!(
                    "exclusive gateway `{}` mixes {unguarded} unguarded choice edges with guarded edges",
                    n.id
                ),
            );
            continue;
        }
        let guards: Vec<_> = outgoing
            .iter()
            .filter_map(|e| match &e.guard {
                Some(Guard::When(c)) => Some((e, c)),
                _ => None,
            })
            .collect();
        if guards.len() < 2 {
            continue;
        }
        // A true guard needs every tested fact known, so the known contexts
        // are a complete witness space.
        let witness = par::find_first(&known_contexts, |ctx| {
            guards
                .iter()
                .filter(|(_, c)| eval_conjunction(c, ctx) == Truth::True)
                .count()
                > 1
        });
        if let Some(ctx) = witness {
            let overlapping: Vec<&str> = guards
                .iter()
                .filter(|(_, c)| eval_conjunction(c, ctx) == Truth::True)
                .map(|(e, _)| e.to.as_str())
                .collect();
            out.error(
                "E_AMBIGUOUS_EXCLUSIVE",
                &n.id,
                format!(
                    "exclusive gateway `{}`: guards towards {} hold together for {}",
                    n.id,
                    overlapping.join(", "),
                    describe_context(ctx)
                ),
            );
        }
    }

    let mut findings = out.0;
    findings
        .sort_by(|a, b| (a.code, &a.element, &a.message).cmp(&(b.code, &b.element, &b.message)));
    let ok = !findings
        .iter()
        .any(|f| f.severity == FindingSeverity::Error);
    ValidationReport { ok, findings }
}

fn describe_context(ctx: &ContextFacts) -> String {
    super::model::Fact::ALL
        .iter()
        .map(|f| format!("{f}={}", ctx.get(*f)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn reachable_from<'a>(model: &'a DecisionModel, start: &'a str) -> BTreeSet<&'a str> {
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(n) = queue.pop_front() {
        for e in model.outgoing(n) {
            if seen.insert(e.to.as_str()) {
                queue.push_back(e.to.as_str());
            }
        }
    }
    seen
}

fn check_cycles(model: &DecisionModel, out: &mut Collector) {
    let mut indegree: BTreeMap<&str, usize> =
        model.nodes().iter().map(|n| (n.id.as_str(), 0)).collect();
    for e in model.edges() {
        *indegree.get_mut(e.to.as_str()).expect("resolved edge") += 1;
    }
    let mut queue: VecDeque<&str> = indegree
        .iter()
        .filter(|(_, d)| **d == 0)
        .map(|(n, _)| *n)
        .collect();
    while let Some(n) = queue.pop_front() {
        for e in model.outgoing(n) {
            let d = indegree.get_mut(e.to.as_str()).expect("resolved edge");
            *d -= 1;
            if *d == 0 {
                queue.push_back(e.to.as_str());
            }
        }
    }
    for (n, d) in indegree {
        if d > 0 {
            out.error(
                "E_CYCLE",
                n,
                format!("node `{n}` lies on or behind a cycle"),
            );
        }
    }
}
