//! In-memory decision model.
//!
//! A [`DecisionModel`] is always held in canonical form: every list is
//! sorted, references are resolved and complement links are symmetric.
//! The only way to build one is [`DecisionModel::from_parts`] (or the
//! loader, which goes through it), so two models built from the same
//! content compare equal regardless of input ordering.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::KbError;

/// Whether more of a quality attribute is desirable or undesirable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Polarity {
    Benefit,
    Cost,
}

/// Desirability-normalized effect of a pattern on a quality attribute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Effect {
    Positive,
    Negative,
}

impl Effect {
    pub fn sign(self) -> f64 {
        match self {
            Effect::Positive => 1.0,
            Effect::Negative => -1.0,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Effect::Positive => "+",
            Effect::Negative => "-",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QualityAttribute {
    pub id: String,
    pub name: String,
    pub polarity: Polarity,
    pub description: String,
}

/// The project facts that gate branches of the decision flow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fact {
    TeamSize,
    LegacyCodeAvailable,
    DfdsAvailable,
    BusinessUnderstanding,
    TimeForScenarios,
    ProjectScaleLarge,
}

impl Fact {
    pub const ALL: [Fact; 6] = [
        Fact::TeamSize,
        Fact::LegacyCodeAvailable,
        Fact::DfdsAvailable,
        Fact::BusinessUnderstanding,
        Fact::TimeForScenarios,
        Fact::ProjectScaleLarge,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Fact::TeamSize => "team_size",
            Fact::LegacyCodeAvailable => "legacy_code_available",
            Fact::DfdsAvailable => "dfds_available",
            Fact::BusinessUnderstanding => "business_understanding",
            Fact::TimeForScenarios => "time_for_scenarios",
            Fact::ProjectScaleLarge => "project_scale_large",
        }
    }

    pub fn parse(name: &str) -> Option<Fact> {
        Fact::ALL.into_iter().find(|f| f.as_str() == name)
    }

    /// Every value the fact can hold, including `unknown` for tri-state facts.
    pub fn domain(self) -> &'static [FactValue] {
        match self {
            Fact::TeamSize => &[FactValue::Undefined, FactValue::Small5To9, FactValue::Large],
            _ => &[FactValue::Yes, FactValue::No, FactValue::Unknown],
        }
    }

    /// Values a guard clause may require; `unknown` is never a test target.
    pub fn known_domain(self) -> &'static [FactValue] {
        match self {
            Fact::TeamSize => &[FactValue::Undefined, FactValue::Small5To9, FactValue::Large],
            _ => &[FactValue::Yes, FactValue::No],
        }
    }

    pub fn default_value(self) -> FactValue {
        match self {
            Fact::TeamSize => FactValue::Undefined,
            _ => FactValue::Unknown,
        }
    }
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FactValue {
    #[serde(rename = "undefined")]
    Undefined,
    #[serde(rename = "small_5_to_9")]
    Small5To9,
    #[serde(rename = "large")]
    Large,
    #[serde(rename = "yes")]
    Yes,
    #[serde(rename = "no")]
    No,
    #[serde(rename = "unknown")]
    Unknown,
}

impl FactValue {
    pub fn as_str(self) -> &'static str {
        match self {
            FactValue::Undefined => "undefined",
            FactValue::Small5To9 => "small_5_to_9",
            FactValue::Large => "large",
            FactValue::Yes => "yes",
            FactValue::No => "no",
            FactValue::Unknown => "unknown",
        }
    }

    pub fn parse(s: &str) -> Option<FactValue> {
        [
            FactValue::Undefined,
            FactValue::Small5To9,
            FactValue::Large,
            FactValue::Yes,
            FactValue::No,
            FactValue::Unknown,
        ]
        .into_iter()
        .find(|v| v.as_str() == s)
    }
}

impl fmt::Display for FactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
#[serde(rename_all = "snake_case")]
pub enum TeamSize {
    #[default]
    Undefined,
    #[serde(rename = "small_5_to_9")]
    Small5To9,
    Large,
}

#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
#[serde(rename_all = "snake_case")]
pub enum TriState {
    Yes,
    No,
    #[default]
    Unknown,
}

impl From<TeamSize> for FactValue {
    fn from(t: TeamSize) -> Self {
        match t {
            TeamSize::Undefined => FactValue::Undefined,
            TeamSize::Small5To9 => FactValue::Small5To9,
            TeamSize::Large => FactValue::Large,
        }
    }
}

impl From<TriState> for FactValue {
    fn from(t: TriState) -> Self {
        match t {
            TriState::Yes => FactValue::Yes,
            TriState::No => FactValue::No,
            TriState::Unknown => FactValue::Unknown,
        }
    }
}

/// Project context. Omitted facts are `unknown`; team size defaults to `undefined`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ContextFacts {
    pub team_size: TeamSize,
    pub legacy_code_available: TriState,
    pub dfds_available: TriState,
    pub business_understanding: TriState,
    pub time_for_scenarios: TriState,
    pub project_scale_large: TriState,
}

impl ContextFacts {
    pub fn get(&self, fact: Fact) -> FactValue {
        match fact {
            Fact::TeamSize => self.team_size.into(),
            Fact::LegacyCodeAvailable => self.legacy_code_available.into(),
            Fact::DfdsAvailable => self.dfds_available.into(),
            Fact::BusinessUnderstanding => self.business_understanding.into(),
            Fact::TimeForScenarios => self.time_for_scenarios.into(),
            Fact::ProjectScaleLarge => self.project_scale_large.into(),
        }
    }

    /// Sets a fact, rejecting values outside its domain.
    pub fn set(&mut self, fact: Fact, value: FactValue) -> Result<(), String> {
        let tri = |v: FactValue| match v {
            FactValue::Yes => Ok(TriState::Yes),
            FactValue::No => Ok(TriState::No),
            FactValue::Unknown => Ok(TriState::Unknown),
            other => Err(format!(
                "value `{other}` is not valid for fact `{fact}` (expected yes, no or unknown)"
            )),
        };
        match fact {
            Fact::TeamSize => {
                self.team_size = match value {
                    FactValue::Undefined => TeamSize::Undefined,
                    FactValue::Small5To9 => TeamSize::Small5To9,
                    FactValue::Large => TeamSize::Large,
                    other => {
                        return Err(format!(
                            "value `{other}` is not valid for fact `team_size` (expected undefined, small_5_to_9 or large)"
                        ))
                    }
                }
            }
            Fact::LegacyCodeAvailable => self.legacy_code_available = tri(value)?,
            Fact::DfdsAvailable => self.dfds_available = tri(value)?,
            Fact::BusinessUnderstanding => self.business_understanding = tri(value)?,
            Fact::TimeForScenarios => self.time_for_scenarios = tri(value)?,
            Fact::ProjectScaleLarge => self.project_scale_large = tri(value)?,
        }
        Ok(())
    }

    pub fn with(mut self, fact: Fact, value: FactValue) -> Self {
        self.set(fact, value).expect("fact value outside domain");
        self
    }

    /// Every assignment in which no fact is `unknown`: 3·2⁵ = 96 contexts.
    pub fn all_known() -> Vec<ContextFacts> {
        Self::enumerate(|f| f.known_domain())
    }

    /// Every assignment over the full fact domain, `unknown` included: 3·3⁵ = 729.
    pub fn all() -> Vec<ContextFacts> {
        Self::enumerate(|f| f.domain())
    }

    fn enumerate(domain: impl Fn(Fact) -> &'static [FactValue]) -> Vec<ContextFacts> {
        let mut out = vec![ContextFacts::default()];
        for fact in Fact::ALL {
            let mut next = Vec::with_capacity(out.len() * domain(fact).len());
            for ctx in &out {
                for &v in domain(fact) {
                    next.push(ctx.with(fact, v));
                }
            }
            out = next;
        }
        out
    }
}

/// One atomic test of a guard: `fact == value`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause {
    pub fact: Fact,
    pub value: FactValue,
}

impl Clause {
    pub fn new(fact: Fact, value: FactValue) -> Self {
        Clause { fact, value }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.fact, self.value)
    }
}

/// A conjunction of clauses, kept sorted by fact with at most one clause per fact.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Conjunction(Vec<Clause>);

impl Conjunction {
    pub fn new(clauses: impl IntoIterator<Item = Clause>) -> Result<Self, KbError> {
        let mut seen = BTreeMap::new();
        for c in clauses {
            if !c.fact.known_domain().contains(&c.value) {
                return Err(KbError::InvalidValue {
                    context: format!("guard clause on `{}`", c.fact),
                    value: c.value.to_string(),
                });
            }
            if let Some(prev) = seen.insert(c.fact, c.value) {
                if prev != c.value {
                    return Err(KbError::InvalidValue {
                        context: format!("guard tests `{}` twice", c.fact),
                        value: c.value.to_string(),
                    });
                }
            }
        }
        Ok(Conjunction(
            seen.into_iter()
                .map(|(fact, value)| Clause { fact, value })
                .collect(),
        ))
    }

    pub fn single(fact: Fact, value: FactValue) -> Self {
        Conjunction::new([Clause::new(fact, value)]).expect("valid clause")
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Conjunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("true");
        }
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" & ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Condition attached to an edge, constraint or impact.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Guard {
    When(Conjunction),
    /// Default edge: taken only when every sibling guard is false.
    Otherwise,
}

impl fmt::Display for Guard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Guard::When(c) => c.fmt(f),
            Guard::Otherwise => f.write_str("otherwise"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Impact {
    pub qa: String,
    pub effect: Effect,
    pub condition: Option<Conjunction>,
    pub phrase: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Hard,
    Soft,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub id: String,
    pub description: String,
    pub guard: Conjunction,
    pub severity: Severity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternKind {
    Pattern,
    Strategy,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    pub id: String,
    pub name: String,
    pub kind: PatternKind,
    pub summary: String,
    pub impacts: Vec<Impact>,
    pub constraints: Vec<Constraint>,
    pub complements: Vec<String>,
    pub sources: Vec<String>,
}

impl Pattern {
    pub fn negative_impacts(&self) -> usize {
        self.impacts
            .iter()
            .filter(|i| i.effect == Effect::Negative)
            .count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeKind {
    Start,
    /// Exclusive gateway.
    Xor,
    /// Inclusive gateway.
    Or,
    /// Parallel gateway.
    And,
    Pattern(String),
    /// Terminal that yields no candidates.
    End,
}

impl NodeKind {
    pub fn is_gateway(&self) -> bool {
        matches!(self, NodeKind::Xor | NodeKind::Or | NodeKind::And)
    }

    pub fn tag(&self) -> &'static str {
        match self {
            NodeKind::Start => "start",
            NodeKind::Xor => "xor",
            NodeKind::Or => "or",
            NodeKind::And => "and",
            NodeKind::Pattern(_) => "pattern",
            NodeKind::End => "end",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub id: String,
    pub kind: NodeKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub from: String,
    pub to: String,
    pub guard: Option<Guard>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    pub id: String,
    pub title: String,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionModel {
    metadata: Metadata,
    qas: Vec<QualityAttribute>,
    patterns: Vec<Pattern>,
    nodes: Vec<Node>,
    edges: Vec<Edge>,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some('a'..='z'))
        && chars.all(|c| matches!(c, 'a'..='z' | '0'..='9' | '_'))
}

impl DecisionModel {
    /// Resolves references, symmetrizes complements and sorts everything
    /// into canonical order. Graph semantics are not checked here; see
    /// [`crate::knowledge::validate_model`].
    pub fn from_parts(
        metadata: Metadata,
        mut qas: Vec<QualityAttribute>,
        mut patterns: Vec<Pattern>,
        mut nodes: Vec<Node>,
        mut edges: Vec<Edge>,
    ) -> Result<Self, KbError> {
        qas.sort_by(|a, b| a.id.cmp(&b.id));
        check_ids("quality attribute", qas.iter().map(|q| q.id.as_str()))?;
        patterns.sort_by(|a, b| a.id.cmp(&b.id));
        check_ids("pattern", patterns.iter().map(|p| p.id.as_str()))?;
        nodes.sort_by(|a, b| a.id.cmp(&b.id));
        check_ids("node", nodes.iter().map(|n| n.id.as_str()))?;

        let qa_ids: BTreeSet<&str> = qas.iter().map(|q| q.id.as_str()).collect();
        let pattern_ids: BTreeSet<String> = patterns.iter().map(|p| p.id.clone()).collect();

        // Complements are collected first so they can be mirrored.
        let mut complement_pairs = BTreeSet::new();
        for p in &patterns {
            for c in &p.complements {
                if !pattern_ids.contains(c) {
                    return Err(KbError::UnresolvedRef {
                        from: format!("complements of pattern `{}`", p.id),
                        id: c.clone(),
                    });
                }
                if c == &p.id {
                    return Err(KbError::SelfComplement { id: p.id.clone() });
                }
                complement_pairs.insert((p.id.clone(), c.clone()));
                complement_pairs.insert((c.clone(), p.id.clone()));
            }
        }

        for p in &mut patterns {
            for i in &p.impacts {
                if !qa_ids.contains(i.qa.as_str()) {
                    return Err(KbError::UnresolvedRef {
                        from: format!("impact of pattern `{}`", p.id),
                        id: i.qa.clone(),
                    });
                }
            }
            p.impacts
                .sort_by(|a, b| (&a.qa, &a.condition).cmp(&(&b.qa, &b.condition)));
            for w in p.impacts.windows(2) {
                if w[0].qa == w[1].qa && w[0].condition == w[1].condition {
                    return Err(KbError::DuplicateId {
                        kind: "impact",
                        id: format!("{}/{}", p.id, w[0].qa),
                    });
                }
            }
            p.constraints.sort_by(|a, b| a.id.cmp(&b.id));
            check_ids("constraint", p.constraints.iter().map(|c| c.id.as_str()))?;
            p.complements = complement_pairs
                .range((p.id.clone(), String::new())..)
                .take_while(|(a, _)| a == &p.id)
                .map(|(_, b)| b.clone())
                .collect();
        }

        for n in &nodes {
            if let NodeKind::Pattern(pid) = &n.kind {
                if !pattern_ids.contains(pid) {
                    return Err(KbError::UnresolvedRef {
                        from: format!("node `{}`", n.id),
                        id: pid.clone(),
                    });
                }
            }
        }
        let node_ids: BTreeSet<&str> = nodes.iter().map(|n| n.id.as_str()).collect();
        for e in &edges {
            for end in [&e.from, &e.to] {
                if !node_ids.contains(end.as_str()) {
                    return Err(KbError::UnresolvedRef {
                        from: format!("edge {} -> {}", e.from, e.to),
                        id: end.clone(),
                    });
                }
            }
        }
        for e in &mut edges {
            if matches!(&e.guard, Some(Guard::When(c)) if c.is_empty()) {
                e.guard = None;
            }
        }
        edges.sort_by(|a, b| (&a.from, &a.to).cmp(&(&b.from, &b.to)));
        for w in edges.windows(2) {
            if w[0].from == w[1].from && w[0].to == w[1].to {
                return Err(KbError::DuplicateId {
                    kind: "edge",
                    id: format!("{} -> {}", w[0].from, w[0].to),
                });
            }
        }

        Ok(DecisionModel {
            metadata,
            qas,
            patterns,
            nodes,
            edges,
        })
    }

    /// A model holding only a start node.
    pub fn empty(metadata: Metadata) -> Self {
        DecisionModel::from_parts(
            metadata,
            vec![],
            vec![],
            vec![Node {
                id: "start".into(),
                kind: NodeKind::Start,
            }],
            vec![],
        )
        .expect("empty model is well-formed")
    }

    pub fn metadata(&self) -> &Metadata {
        &self.metadata
    }

    pub fn qas(&self) -> &[QualityAttribute] {
        &self.qas
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn qa(&self, id: &str) -> Option<&QualityAttribute> {
        self.qas
            .binary_search_by(|q| q.id.as_str().cmp(id))
            .ok()
            .map(|i| &self.qas[i])
    }

    pub fn pattern(&self, id: &str) -> Option<&Pattern> {
        self.patterns
            .binary_search_by(|p| p.id.as_str().cmp(id))
            .ok()
            .map(|i| &self.patterns[i])
    }

    pub fn node(&self, id: &str) -> Option<&Node> {
        self.node_index(id).map(|i| &self.nodes[i])
    }

    pub fn node_index(&self, id: &str) -> Option<usize> {
        self.nodes.binary_search_by(|n| n.id.as_str().cmp(id)).ok()
    }

    /// Outgoing edges of `node`, in canonical (target id) order.
    pub fn outgoing(&self, node: &str) -> &[Edge] {
        let lo = self.edges.partition_point(|e| e.from.as_str() < node);
        let hi = self.edges.partition_point(|e| e.from.as_str() <= node);
        &self.edges[lo..hi]
    }

    pub fn incoming<'a>(&'a self, node: &'a str) -> impl Iterator<Item = &'a Edge> + 'a {
        self.edges.iter().filter(move |e| e.to == node)
    }

    pub fn pattern_nodes<'a>(&'a self, pattern: &'a str) -> impl Iterator<Item = &'a Node> + 'a {
        self.nodes
            .iter()
            .filter(move |n| matches!(&n.kind, NodeKind::Pattern(p) if p == pattern))
    }
}

fn check_ids<'a>(kind: &'static str, sorted: impl Iterator<Item = &'a str>) -> Result<(), KbError> {
    let mut prev: Option<&str> = None;
    for id in sorted {
        if !is_identifier(id) {
            return Err(KbError::InvalidValue {
                context: format!("{kind} id"),
                value: id.to_string(),
            });
        }
        if prev == Some(id) {
            return Err(KbError::DuplicateId {
                kind,
                id: id.to_string(),
            });
        }
        prev = Some(id);
    }
    Ok(())
}
