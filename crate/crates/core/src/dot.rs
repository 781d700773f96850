//! Graphviz export of a decision model.
//!
//! Glyphs: start is a circle, gateways are diamonds labeled `X` (exclusive),
//! `O` (inclusive) and `+` (parallel), patterns are rounded boxes, terminals
//! are double circles, constraints are octagons tied to their pattern with a
//! dashed arrow, and complements are dashed double-headed edges. Node
//! statements are sorted by id and edges by `(from, to)`, so the output is
//! byte-stable.

use std::fmt::Write;

use crate::knowledge::{DecisionModel, Guard, NodeKind, Severity};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn constraint_node(pattern: &str, constraint: &str) -> String {
    format!("constraint:{pattern}:{constraint}")
}

pub fn export_dot(model: &DecisionModel) -> String {
    let mut nodes: Vec<(String, String)> = Vec::new();
    let mut edges: Vec<(String, String, String)> = Vec::new();

    for n in model.nodes() {
        let attrs = match &n.kind {
            NodeKind::Start => "shape=circle, label=\"\"".to_string(),
            NodeKind::End => "shape=doublecircle, label=\"\"".to_string(),
            NodeKind::Xor => "shape=diamond, label=\"X\"".to_string(),
            NodeKind::Or => "shape=diamond, label=\"O\"".to_string(),
            NodeKind::And => "shape=diamond, label=\"+\"".to_string(),
            NodeKind::Pattern(pid) => {
                let label = model.pattern(pid).map_or(pid.as_str(), |p| p.name.as_str());
                format!("shape=box, style=rounded, label={}", quote(label))
            }
        };
        nodes.push((n.id.clone(), attrs));
    }

    for e in model.edges() {
        let attrs = match &e.guard {
            None => String::new(),
            Some(Guard::Otherwise) => " [label=\"otherwise\"]".to_string(),
            Some(g @ Guard::When(_)) => format!(" [label={}]", quote(&g.to_string())),
        };
        edges.push((e.from.clone(), e.to.clone(), attrs));
    }

    for p in model.patterns() {
        let Some(pnode) = model.pattern_nodes(&p.id).next() else {
            continue;
        };
        for c in &p.constraints {
            let id = constraint_node(&p.id, &c.id);
            let style = match c.severity {
                Severity::Hard => "",
                Severity::Soft => ", style=dashed",
            };
            nodes.push((
                id.clone(),
                format!(
                    "shape=octagon{style}, label={}",
                    quote(&c.guard.to_string())
                ),
            ));
            edges.push((
                id,
                pnode.id.clone(),
                " [style=dashed, arrowhead=open]".to_string(),
            ));
        }
        for other in p.complements.iter().filter(|o| **o > p.id) {
            if let Some(onode) = model.pattern_nodes(other).next() {
                edges.push((
                    pnode.id.clone(),
                    onode.id.clone(),
                    " [style=dashed, dir=both, constraint=false, label=\"complements\"]"
                        .to_string(),
                ));
            }
        }
    }

    nodes.sort();
    edges.sort();

    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(&model.metadata().id)).unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    for (id, attrs) in &nodes {
        writeln!(out, "  {} [{attrs}];", quote(id)).unwrap();
    }
    for (from, to, attrs) in &edges {
        writeln!(out, "  {} -> {}{attrs};", quote(from), quote(to)).unwrap();
    }
    out.push_str("}\n");
    out
}
