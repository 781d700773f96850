use std::collections::BTreeMap;
use std::fmt::Write;

use super::guard::{eval_conjunction, Truth};
use super::rank::recommend;
use super::report::fmt_num;
use super::requirements::Requirements;
use super::score::ContributionStatus;
use super::traverse::{EdgeOutcome, EligibilityTrace};
use crate::error::EngineError;
use crate::knowledge::{DecisionModel, Effect, Guard, PatternKind, Severity};

/// Plain-text account of how `pattern_id` fares under `requirements`:
/// the path through the decision flow, every score term with its source
/// phrase, constraint status and complements. Deterministic.
pub fn explain(
    model: &DecisionModel,
    pattern_id: &str,
    requirements: &Requirements,
) -> Result<String, EngineError> {
    let pattern = model
        .pattern(pattern_id)
        .ok_or_else(|| EngineError::UnresolvedRef {
            id: pattern_id.to_string(),
        })?;
    let report = recommend(model, requirements)?;
    let entry = report.entry(pattern_id);
    let mut out = String::new();

    let kind = match pattern.kind {
        PatternKind::Pattern => "pattern",
        PatternKind::Strategy => "strategy",
    };
    writeln!(out, "{} ({kind} `{}`)", pattern.name, pattern.id).unwrap();
    writeln!(out, "  {}", pattern.summary).unwrap();
    writeln!(out).unwrap();

    match entry {
        Some(e) => writeln!(
            out,
            "Eligible: rank {} of {}, score {}",
            e.rank,
            report.entries.len(),
            fmt_num(e.score)
        )
        .unwrap(),
        None => {
            let why = report
                .trace
                .excluded
                .iter()
                .find(|x| x.pattern == pattern_id)
                .expect("ineligible pattern is listed as excluded");
            writeln!(out, "Not eligible ({}): {}", why.reason.code(), why.detail).unwrap();
        }
    }

    writeln!(out, "Path:").unwrap();
    match decision_path(model, &report.trace, pattern_id) {
        Some(steps) => {
            for step in steps {
                writeln!(out, "  {step}").unwrap();
            }
        }
        None => writeln!(out, "  not reached").unwrap(),
    }

    writeln!(out, "Contributions:").unwrap();
    let phrases: BTreeMap<(&str, Effect), &str> = pattern
        .impacts
        .iter()
        .map(|i| ((i.qa.as_str(), i.effect), i.phrase.as_str()))
        .collect();
    let weighted: Vec<_> = match entry {
        Some(e) => e.contributions.clone(),
        None => {
            super::score::score_pattern(pattern, &requirements.weights, &requirements.context)
                .contributions
        }
    };
    if weighted.is_empty() {
        writeln!(out, "  none (no weighted quality attribute is affected)").unwrap();
    }
    for c in &weighted {
        let status = match c.status {
            ContributionStatus::Applied => fmt_num(c.value),
            ContributionStatus::Suppressed => format!(
                "suppressed, condition {} unknown",
                c.condition.as_deref().unwrap_or("true")
            ),
        };
        writeln!(
            out,
            "  {} {} (weight {}): {}",
            c.effect.symbol(),
            c.qa,
            fmt_num(c.weight),
            status
        )
        .unwrap();
        if let Some(p) = phrases.get(&(c.qa.as_str(), c.effect)) {
            writeln!(out, "      \"{p}\"").unwrap();
        }
    }
    let unweighted: Vec<String> = pattern
        .impacts
        .iter()
        .filter(|i| requirements.weight(&i.qa) == 0.0)
        .map(|i| format!("{}{}", i.effect.symbol(), i.qa))
        .collect();
    if !unweighted.is_empty() {
        writeln!(out, "  unweighted impacts: {}", unweighted.join(", ")).unwrap();
    }

    writeln!(out, "Constraints:").unwrap();
    if pattern.constraints.is_empty() {
        writeln!(out, "  none").unwrap();
    }
    for c in &pattern.constraints {
        let status = match eval_conjunction(&c.guard, &requirements.context) {
            Truth::True => "satisfied",
            Truth::False => "violated",
            Truth::Unknown => "unknown",
        };
        let severity = match c.severity {
            Severity::Hard => "hard",
            Severity::Soft => "soft",
        };
        writeln!(out, "  [{severity}] {} ({}): {status}", c.id, c.guard).unwrap();
        writeln!(out, "      {}", c.description).unwrap();
    }

    writeln!(out, "Complements:").unwrap();
    if pattern.complements.is_empty() {
        writeln!(out, "  none").unwrap();
    }
    for c in &pattern.complements {
        let status = if report.entry(c).is_some() {
            "eligible"
        } else {
            "not eligible"
        };
        writeln!(out, "  {c} ({status})").unwrap();
    }

    if let Some(e) = entry {
        if !e.warnings.is_empty() {
            writeln!(out, "Warnings:").unwrap();
            for w in &e.warnings {
                writeln!(out, "  {}: {}", w.code.as_str(), w.message).unwrap();
            }
        }
    }
    Ok(out)
}

/// One activated path from the start node to the pattern, rendered step by
/// step. Walks back along activated edges, preferring the smallest source id.
fn decision_path(
    model: &DecisionModel,
    trace: &EligibilityTrace,
    pattern_id: &str,
) -> Option<Vec<String>> {
    let target = model.pattern_nodes(pattern_id).next()?;
    let mut steps = Vec::new();
    let mut current = target.id.as_str();
    while let Some(edge) = trace
        .activated_edges
        .iter()
        .filter(|a| a.to == current)
        .min_by(|a, b| a.from.cmp(&b.from))
    {
        let guard = model
            .outgoing(&edge.from)
            .iter()
            .find(|e| e.to == edge.to)
            .and_then(|e| e.guard.as_ref());
        let label = match (guard, edge.outcome) {
            (_, EdgeOutcome::Choice) => "practitioner choice".to_string(),
            (None, _) => "always".to_string(),
            (Some(Guard::Otherwise), _) => "otherwise".to_string(),
            (Some(g), EdgeOutcome::Unknown) => format!("{g} (unknown)"),
            (Some(g), EdgeOutcome::True) => g.to_string(),
        };
        steps.push(format!("{} -> {} [{label}]", edge.from, edge.to));
        current = edge.from.as_str();
    }
    if steps.is_empty() {
        return None;
    }
    steps.reverse();
    Some(steps)
}
