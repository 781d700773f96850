//! The `.dmkb.json` knowledge-base document.
//!
//! Top-level keys appear in the order `metadata`, `qas`, `patterns`,
//! `nodes`, `edges`. Every list is written sorted by id (edges by
//! `(from, to)`, impacts by `(qa, condition)`), guard objects are written
//! with their fact names in ascending order, and empty optional lists are
//! omitted. The output uses 2-space indentation and ends with a newline.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::model::*;
use crate::error::KbError;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub metadata: Metadata,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub qas: Vec<QualityAttribute>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub patterns: Vec<PatternDoc>,
    pub nodes: Vec<NodeDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub edges: Vec<EdgeDoc>,
}

/// Guard object: fact name to required value.
pub type ClauseMap = BTreeMap<String, String>;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternDoc {
    pub id: String,
    pub name: String,
    pub kind: PatternKind,
    pub summary: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub impacts: Vec<ImpactDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constraints: Vec<ConstraintDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub complements: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sources: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImpactDoc {
    pub qa: String,
    pub effect: Effect,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub condition: Option<ClauseMap>,
    pub phrase: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintDoc {
    pub id: String,
    pub description: String,
    pub guard: ClauseMap,
    pub severity: Severity,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeDoc {
    pub id: String,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pattern: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GuardDoc {
    Keyword(String),
    Clauses(ClauseMap),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub from: String,
    pub to: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub guard: Option<GuardDoc>,
}

/// Parses a knowledge-base document and resolves all references.
///
/// Graph semantics (reachability, cycles, gateway ambiguity) are left to
/// [`super::validate_model`].
pub fn load_model(text: &str) -> Result<DecisionModel, KbError> {
    let doc: ModelDocument = serde_json::from_str(text).map_err(|e| KbError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    from_document(doc)
}

pub fn from_document(doc: ModelDocument) -> Result<DecisionModel, KbError> {
    let patterns = doc
        .patterns
        .into_iter()
        .map(|p| {
            let impacts = p
                .impacts
                .into_iter()
                .map(|i| {
                    let condition = match i.condition {
                        Some(map) => {
                            let ctx = format!("condition of impact `{}/{}`", p.id, i.qa);
                            let c = parse_clauses(&map, &ctx)?;
                            (!c.is_empty()).then_some(c)
                        }
                        None => None,
                    };
                    Ok(Impact {
                        qa: i.qa,
                        effect: i.effect,
                        condition,
                        phrase: i.phrase,
                    })
                })
                .collect::<Result<Vec<_>, KbError>>()?;
            let constraints = p
                .constraints
                .into_iter()
                .map(|c| {
                    let ctx = format!("guard of constraint `{}/{}`", p.id, c.id);
                    Ok(Constraint {
                        guard: parse_clauses(&c.guard, &ctx)?,
                        id: c.id,
                        description: c.description,
                        severity: c.severity,
                    })
                })
                .collect::<Result<Vec<_>, KbError>>()?;
            Ok(Pattern {
                id: p.id,
                name: p.name,
                kind: p.kind,
                summary: p.summary,
                impacts,
                constraints,
                complements: p.complements,
                sources: p.sources,
            })
        })
        .collect::<Result<Vec<_>, KbError>>()?;

    let nodes = doc
        .nodes
        .into_iter()
        .map(|n| {
            let kind = match (n.kind.as_str(), n.pattern) {
                ("start", None) => NodeKind::Start,
                ("xor", None) => NodeKind::Xor,
                ("or", None) => NodeKind::Or,
                ("and", None) => NodeKind::And,
                ("end", None) => NodeKind::End,
                ("pattern", Some(p)) => NodeKind::Pattern(p),
                ("pattern", None) => {
                    return Err(KbError::InvalidValue {
                        context: format!("node `{}` (pattern node without `pattern`)", n.id),
                        value: n.kind,
                    })
                }
                (_, Some(_))
                    if matches!(n.kind.as_str(), "start" | "xor" | "or" | "and" | "end") =>
                {
                    return Err(KbError::InvalidValue {
                        context: format!("node `{}` (`pattern` given on a non-pattern node)", n.id),
                        value: n.kind,
                    })
                }
                (other, _) => {
                    return Err(KbError::InvalidValue {
                        context: format!("kind of node `{}`", n.id),
                        value: other.to_string(),
                    })
                }
            };
            Ok(Node { id: n.id, kind })
        })
        .collect::<Result<Vec<_>, KbError>>()?;

    let edges = doc
        .edges
        .into_iter()
        .map(|e| {
            let guard = match e.guard {
                None => None,
                Some(GuardDoc::Keyword(k)) if k == "otherwise" => Some(Guard::Otherwise),
                Some(GuardDoc::Keyword(k)) => {
                    return Err(KbError::InvalidValue {
                        context: format!("guard of edge {} -> {}", e.from, e.to),
                        value: k,
                    })
                }
                Some(GuardDoc::Clauses(map)) => {
                    let ctx = format!("guard of edge {} -> {}", e.from, e.to);
                    Some(Guard::When(parse_clauses(&map, &ctx)?))
                }
            };
            Ok(Edge {
                from: e.from,
                to: e.to,
                guard,
            })
        })
        .collect::<Result<Vec<_>, KbError>>()?;

    DecisionModel::from_parts(doc.metadata, doc.qas, patterns, nodes, edges)
}

fn parse_clauses(map: &ClauseMap, context: &str) -> Result<Conjunction, KbError> {
    let clauses = map
        .iter()
        .map(|(name, value)| {
            let fact = Fact::parse(name).ok_or_else(|| KbError::UnknownFact {
                name: name.clone(),
                context: context.to_string(),
            })?;
            let value = FactValue::parse(value)
                .filter(|v| fact.known_domain().contains(v))
                .ok_or_else(|| KbError::InvalidValue {
                    context: format!("fact `{name}` in {context}"),
                    value: value.clone(),
                })?;
            Ok(Clause::new(fact, value))
        })
        .collect::<Result<Vec<_>, KbError>>()?;
    Conjunction::new(clauses)
}

fn clause_map(c: &Conjunction) -> ClauseMap {
    c.clauses()
        .iter()
        .map(|cl| (cl.fact.as_str().to_string(), cl.value.as_str().to_string()))
        .collect()
}

pub fn to_document(model: &DecisionModel) -> ModelDocument {
    ModelDocument {
        metadata: model.metadata().clone(),
        qas: model.qas().to_vec(),
        patterns: model
            .patterns()
            .iter()
            .map(|p| PatternDoc {
                id: p.id.clone(),
                name: p.name.clone(),
                kind: p.kind,
                summary: p.summary.clone(),
                impacts: p
                    .impacts
                    .iter()
                    .map(|i| ImpactDoc {
                        qa: i.qa.clone(),
                        effect: i.effect,
                        condition: i.condition.as_ref().map(clause_map),
                        phrase: i.phrase.clone(),
                    })
                    .collect(),
                constraints: p
                    .constraints
                    .iter()
                    .map(|c| ConstraintDoc {
                        id: c.id.clone(),
                        description: c.description.clone(),
                        guard: clause_map(&c.guard),
                        severity: c.severity,
                    })
                    .collect(),
                complements: p.complements.clone(),
                sources: p.sources.clone(),
            })
            .collect(),
        nodes: model
            .nodes()
            .iter()
            .map(|n| NodeDoc {
                id: n.id.clone(),
                kind: n.kind.tag().to_string(),
                pattern: match &n.kind {
                    NodeKind::Pattern(p) => Some(p.clone()),
                    _ => None,
                },
            })
            .collect(),
        edges: model
            .edges()
            .iter()
            .map(|e| EdgeDoc {
                from: e.from.clone(),
                to: e.to.clone(),
                guard: e.guard.as_ref().map(|g| match g {
                    Guard::Otherwise => GuardDoc::Keyword("otherwise".into()),
                    Guard::When(c) => GuardDoc::Clauses(clause_map(c)),
                }),
            })
            .collect(),
    }
}

/// Writes the canonical form of `model`.
pub fn serialize_model(model: &DecisionModel) -> String {
    let mut out = serde_json::to_string_pretty(&to_document(model)).expect("document serializes");
    out.push('\n');
    out
}
