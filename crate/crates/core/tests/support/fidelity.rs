//! Comparison of a model against the checked-in fidelity tables.

#![allow(dead_code)]

use std::collections::BTreeSet;

use msa_decide_core::knowledge::{
    Conjunction, DecisionModel, Effect, PatternKind, Polarity, Severity,
};

pub const IMPACTS: &str = include_str!("../fixtures/fidelity_impacts.csv");
pub const PATTERNS: &str = include_str!("../fixtures/fidelity_patterns.tsv");
pub const QAS: &str = include_str!("../fixtures/fidelity_qas.csv");
pub const RELATIONS: &str = include_str!("../fixtures/fidelity_relations.csv");

fn rows(text: &str, sep: char) -> impl Iterator<Item = Vec<&str>> {
    text.lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(move |l| l.split(sep).collect())
}

fn conj(c: &Conjunction) -> String {
    c.clauses()
        .iter()
        .map(|cl| format!("{}={}", cl.fact.as_str(), cl.value.as_str()))
        .collect::<Vec<_>>()
        .join("&")
}

fn diff<T: Ord + std::fmt::Debug>(
    what: &str,
    expected: BTreeSet<T>,
    actual: BTreeSet<T>,
    out: &mut Vec<String>,
) {
    for missing in expected.difference(&actual) {
        out.push(format!("{what}: missing {missing:?}"));
    }
    for extra in actual.difference(&expected) {
        out.push(format!("{what}: unexpected {extra:?}"));
    }
}

/// Every mismatch between `model` and the tables; empty when faithful.
pub fn mismatches(model: &DecisionModel) -> Vec<String> {
    let mut out = Vec::new();

    let expected: BTreeSet<(String, String, String, String)> = rows(IMPACTS, ',')
        .map(|r| (r[0].into(), r[1].into(), r[2].into(), r[3].into()))
        .collect();
    if expected.len() != 33 {
        out.push(format!("fidelity table lists {} impacts", expected.len()));
    }
    let actual: BTreeSet<(String, String, String, String)> = model
        .patterns()
        .iter()
        .flat_map(|p| {
            p.impacts.iter().map(|i| {
                let effect = match i.effect {
                    Effect::Positive => "positive",
                    Effect::Negative => "negative",
                };
                (
                    p.id.clone(),
                    i.qa.clone(),
                    effect.to_string(),
                    i.condition.as_ref().map(conj).unwrap_or_default(),
                )
            })
        })
        .collect();
    let count: usize = model.patterns().iter().map(|p| p.impacts.len()).sum();
    if count != actual.len() {
        out.push(format!(
            "model holds {count} impacts but only {} distinct",
            actual.len()
        ));
    }
    diff("impact", expected, actual, &mut out);

    let expected: BTreeSet<(String, String, String, String, String)> = rows(PATTERNS, '\t')
        .map(|r| {
            (
                r[0].into(),
                r[1].into(),
                r[2].into(),
                r[3].into(),
                r[4].into(),
            )
        })
        .collect();
    let actual = model
        .patterns()
        .iter()
        .map(|p| {
            let kind = match p.kind {
                PatternKind::Pattern => "pattern",
                PatternKind::Strategy => "strategy",
            };
            (
                p.id.clone(),
                p.name.clone(),
                kind.to_string(),
                p.sources.join(" "),
                p.summary.clone(),
            )
        })
        .collect();
    diff("pattern", expected, actual, &mut out);

    let expected: BTreeSet<(String, String)> =
        rows(QAS, ',').map(|r| (r[0].into(), r[1].into())).collect();
    let actual = model
        .qas()
        .iter()
        .map(|q| {
            let pol = match q.polarity {
                Polarity::Benefit => "benefit",
                Polarity::Cost => "cost",
            };
            (q.id.clone(), pol.to_string())
        })
        .collect();
    diff("quality attribute", expected, actual, &mut out);

    let mut expected_constraints = BTreeSet::new();
    let mut expected_complements = BTreeSet::new();
    for r in rows(RELATIONS, ',') {
        match r[0] {
            "constraint" => {
                expected_constraints.insert((
                    r[1].to_string(),
                    r[2].to_string(),
                    r[3].to_string(),
                    r[4].to_string(),
                ));
            }
            _ => {
                expected_complements.insert((r[1].to_string(), r[2].to_string()));
                expected_complements.insert((r[2].to_string(), r[1].to_string()));
            }
        }
    }
    let mut constraints = BTreeSet::new();
    let mut complements = BTreeSet::new();
    for p in model.patterns() {
        for c in &p.constraints {
            let sev = match c.severity {
                Severity::Hard => "hard",
                Severity::Soft => "soft",
            };
            constraints.insert((p.id.clone(), c.id.clone(), sev.to_string(), conj(&c.guard)));
        }
        for c in &p.complements {
            complements.insert((p.id.clone(), c.clone()));
        }
    }
    diff("constraint", expected_constraints, constraints, &mut out);
    diff("complement", expected_complements, complements, &mut out);
    out
}
