//! Seeded generator of random, structurally valid decision models and
//! requirement sets.

#![allow(dead_code)]

use msa_decide_core::engine::Requirements;
use msa_decide_core::knowledge::{
    validate_model, Clause, Conjunction, Constraint, ContextFacts, DecisionModel, Edge, Effect,
    Fact, Guard, Impact, Metadata, Node, NodeKind, Pattern, PatternKind, Polarity,
    QualityAttribute, Severity,
};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn random_conjunction(rng: &mut ChaCha8Rng, max_clauses: usize) -> Conjunction {
    let mut facts = Fact::ALL.to_vec();
    facts.shuffle(rng);
    let n = rng.gen_range(1..=max_clauses);
    Conjunction::new(facts.into_iter().take(n).map(|f| {
        let v = *f.known_domain().choose(rng).unwrap();
        Clause::new(f, v)
    }))
    .unwrap()
}

pub fn random_context(rng: &mut ChaCha8Rng) -> ContextFacts {
    let mut ctx = ContextFacts::default();
    for f in Fact::ALL {
        // Bias toward known values so deep branches get exercised.
        let domain = if rng.gen_bool(0.75) {
            f.known_domain()
        } else {
            f.domain()
        };
        ctx.set(f, *domain.choose(rng).unwrap()).unwrap();
    }
    ctx
}

pub fn random_requirements(rng: &mut ChaCha8Rng, model: &DecisionModel) -> Requirements {
    let mut req = Requirements::new(random_context(rng));
    for qa in model.qas() {
        match rng.gen_range(0..5) {
            0 => {}
            1 => req = req.with_weight(&qa.id, 0.0),
            2 => req = req.with_weight(&qa.id, rng.gen_range(1..=5) as f64),
            _ => {
                req = req.with_weight(
                    &qa.id,
                    (rng.gen_range(0.0..10.0f64) * 1000.0).round() / 1000.0,
                )
            }
        }
    }
    req
}

/// A model that validates without errors. Nodes are laid out in a fixed
/// topological order and edges only point forward, so the graph is acyclic;
/// every non-start node gets a parent among earlier gateways, so every
/// pattern node is reachable.
pub fn random_model(rng: &mut ChaCha8Rng) -> DecisionModel {
    let n_qa = rng.gen_range(1..=6);
    let qas: Vec<QualityAttribute> = (0..n_qa)
        .map(|i| QualityAttribute {
            id: format!("q{i}"),
            name: format!("Q{i}"),
            polarity: if rng.gen_bool(0.7) {
                Polarity::Benefit
            } else {
                Polarity::Cost
            },
            description: String::new(),
        })
        .collect();

    let n_pat = rng.gen_range(0..=6);
    let mut patterns: Vec<Pattern> = (0..n_pat)
        .map(|i| {
            let mut qa_ids: Vec<usize> = (0..n_qa).collect();
            qa_ids.shuffle(rng);
            let k = rng.gen_range(0..=n_qa.min(4));
            let mut impacts: Vec<Impact> = qa_ids[..k]
                .iter()
                .map(|q| Impact {
                    qa: format!("q{q}"),
                    effect: if rng.gen_bool(0.6) {
                        Effect::Positive
                    } else {
                        Effect::Negative
                    },
                    condition: rng.gen_bool(0.25).then(|| random_conjunction(rng, 2)),
                    phrase: String::new(),
                })
                .collect();
            // Occasionally a second, conditioned impact on an already used QA.
            if k > 0 && rng.gen_bool(0.2) {
                impacts.push(Impact {
                    qa: format!("q{}", qa_ids[0]),
                    effect: if rng.gen_bool(0.5) {
                        Effect::Positive
                    } else {
                        Effect::Negative
                    },
                    condition: Some(random_conjunction(rng, 1)),
                    phrase: String::new(),
                });
                if impacts[0].condition == impacts.last().unwrap().condition {
                    impacts.pop();
                }
            }
            let constraints = (0..rng.gen_range(0..=2))
                .map(|c| Constraint {
                    id: format!("c{c}"),
                    description: String::new(),
                    guard: random_conjunction(rng, 2),
                    severity: if rng.gen_bool(0.5) {
                        Severity::Hard
                    } else {
                        Severity::Soft
                    },
                })
                .collect();
            Pattern {
                id: format!("p{i}"),
                name: format!("P{i}"),
                kind: if rng.gen_bool(0.5) {
                    PatternKind::Pattern
                } else {
                    PatternKind::Strategy
                },
                summary: String::new(),
                impacts,
                constraints,
                complements: vec![],
                sources: vec![],
            }
        })
        .collect();
    for (i, p) in patterns.iter_mut().enumerate() {
        for j in (i + 1)..n_pat {
            if rng.gen_bool(0.15) {
                p.complements.push(format!("p{j}"));
            }
        }
    }

    let n_gw = rng.gen_range(0..=4);
    let mut order: Vec<Node> = vec![Node {
        id: "start".into(),
        kind: NodeKind::Start,
    }];
    for i in 0..n_gw {
        let kind = match rng.gen_range(0..4) {
            0 => NodeKind::Or,
            1 => NodeKind::And,
            _ => NodeKind::Xor,
        };
        order.push(Node {
            id: format!("g{i}"),
            kind,
        });
    }
    let first_leaf = order.len();
    for i in 0..n_pat {
        order.push(Node {
            id: format!("n_p{i}"),
            kind: NodeKind::Pattern(format!("p{i}")),
        });
    }
    if rng.gen_bool(0.3) {
        order.push(Node {
            id: "end".into(),
            kind: NodeKind::End,
        });
    }
    // Leaves come after every gateway; shuffle them among themselves only.
    order[first_leaf..].shuffle(rng);

    let mut links: Vec<(usize, usize)> = Vec::new();
    for to in 1..order.len() {
        let parent = rng.gen_range(0..to.min(first_leaf));
        links.push((parent, to));
        for from in 0..to.min(first_leaf) {
            if from != parent && rng.gen_bool(0.15) {
                links.push((from, to));
            }
        }
    }

    let mut edges = Vec::new();
    for (from, node) in order.iter().enumerate().take(first_leaf) {
        let targets: Vec<usize> = links
            .iter()
            .filter(|(f, _)| *f == from)
            .map(|(_, t)| *t)
            .collect();
        let mut guards: Vec<Option<Guard>> = match node.kind {
            NodeKind::And => vec![None; targets.len()],
            NodeKind::Xor => xor_guards(rng, targets.len()),
            _ => {
                let mut g: Vec<Option<Guard>> = targets
                    .iter()
                    .map(|_| {
                        rng.gen_bool(0.6)
                            .then(|| Guard::When(random_conjunction(rng, 2)))
                    })
                    .collect();
                if !g.is_empty() && rng.gen_bool(0.2) {
                    g[0] = Some(Guard::Otherwise);
                }
                g
            }
        };
        guards.shuffle(rng);
        for (t, g) in targets.into_iter().zip(guards) {
            edges.push(Edge {
                from: node.id.clone(),
                to: order[t].id.clone(),
                guard: g,
            });
        }
    }

    let model = DecisionModel::from_parts(
        Metadata {
            id: "random".into(),
            title: "Random".into(),
            version: "0".into(),
        },
        qas,
        patterns,
        order,
        edges,
    )
    .expect("generated parts resolve");
    let report = validate_model(&model);
    assert!(
        report.ok,
        "generator produced an invalid model: {:?}",
        report.errors().collect::<Vec<_>>()
    );
    model
}

/// Either a pure choice gateway or mutually exclusive guards that split on
/// one fact (each refined by an optional extra clause), plus an optional
/// default edge.
fn xor_guards(rng: &mut ChaCha8Rng, n: usize) -> Vec<Option<Guard>> {
    if n == 0 {
        return vec![];
    }
    let team = Fact::TeamSize;
    let splitters: Vec<Fact> = Fact::ALL
        .into_iter()
        .filter(|f| f.known_domain().len() + 1 >= n)
        .collect();
    if splitters.is_empty() || rng.gen_bool(0.25) {
        return vec![None; n];
    }
    let fact = if n > 3 {
        team
    } else {
        *splitters.choose(rng).unwrap()
    };
    let mut values = fact.known_domain().to_vec();
    values.shuffle(rng);
    let with_default = n > values.len() || rng.gen_bool(0.3);
    let guarded = if with_default { n - 1 } else { n };
    let mut out: Vec<Option<Guard>> = values[..guarded]
        .iter()
        .map(|v| {
            let mut clauses = vec![Clause::new(fact, *v)];
            if rng.gen_bool(0.3) {
                let other = *Fact::ALL
                    .iter()
                    .filter(|f| **f != fact)
                    .collect::<Vec<_>>()
                    .choose(rng)
                    .unwrap();
                clauses.push(Clause::new(
                    *other,
                    *other.known_domain().choose(rng).unwrap(),
                ));
            }
            Some(Guard::When(Conjunction::new(clauses).unwrap()))
        })
        .collect();
    if with_default {
        out.push(Some(Guard::Otherwise));
    }
    out
}

/// Two patterns behind an exclusive gateway whose guards can both hold.
pub fn ambiguous_model() -> DecisionModel {
    let text = r#"{
      "metadata": {"id": "amb", "title": "amb", "version": "1"},
      "qas": [{"id": "q", "name": "Q", "polarity": "benefit", "description": ""}],
      "patterns": [
        {"id": "a", "name": "A", "kind": "pattern", "summary": "", "impacts": [{"qa": "q", "effect": "positive", "phrase": ""}]},
        {"id": "b", "name": "B", "kind": "pattern", "summary": "", "impacts": [{"qa": "q", "effect": "negative", "phrase": ""}]}
      ],
      "nodes": [
        {"id": "start", "kind": "start"},
        {"id": "x", "kind": "xor"},
        {"id": "na", "kind": "pattern", "pattern": "a"},
        {"id": "nb", "kind": "pattern", "pattern": "b"}
      ],
      "edges": [
        {"from": "start", "to": "x"},
        {"from": "x", "to": "na", "guard": {"legacy_code_available": "yes"}},
        {"from": "x", "to": "nb", "guard": {"dfds_available": "yes"}}
      ]
    }"#;
    msa_decide_core::load_model(text).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}
