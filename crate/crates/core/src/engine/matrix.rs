//! Pattern × quality-attribute trade-off grid.

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use super::report::to_canonical_json;
use crate::knowledge::{Conjunction, DecisionModel, Effect};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cell {
    None,
    Positive,
    Negative,
    Conditional {
        effect: Effect,
        guard: Conjunction,
    },
    /// Several impacts of one pattern on the same QA (different conditions).
    Multiple(Vec<Cell>),
}

impl Cell {
    /// CSV mark: `+`, `-`, `+?`/`-?` for conditional, empty for none,
    /// `;`-joined when several impacts share a cell.
    pub fn mark(&self) -> String {
        match self {
            Cell::None => String::new(),
            Cell::Positive => "+".into(),
            Cell::Negative => "-".into(),
            Cell::Conditional { effect, .. } => format!("{}?", effect.symbol()),
            Cell::Multiple(cells) => cells.iter().map(Cell::mark).collect::<Vec<_>>().join(";"),
        }
    }
}

struct GuardMap<'a>(&'a Conjunction);

impl Serialize for GuardMap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut clauses: Vec<_> = self.0.clauses().iter().collect();
        clauses.sort_by_key(|c| c.fact.as_str());
        let mut map = s.serialize_map(Some(clauses.len()))?;
        for c in clauses {
            map.serialize_entry(c.fact.as_str(), c.value.as_str())?;
        }
        map.end()
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::None => s.serialize_str("none"),
            Cell::Positive => s.serialize_str("positive"),
            Cell::Negative => s.serialize_str("negative"),
            Cell::Conditional { effect, guard } => {
                struct Inner<'a>(&'a Effect, &'a Conjunction);
                impl Serialize for Inner<'_> {
                    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                        let mut st = s.serialize_struct("Conditional", 2)?;
                        st.serialize_field("effect", self.0)?;
                        st.serialize_field("guard", &GuardMap(self.1))?;
                        st.end()
                    }
                }
                let mut map = s.serialize_map(Some(1))?;
                map.serialize_entry("conditional", &Inner(effect, guard))?;
                map.end()
            }
            Cell::Multiple(cells) => {
                let mut map = s.serialize_map(Some(1))?;
                map.serialize_entry("multiple", cells)?;
                map.end()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TradeoffMatrix {
    /// Pattern ids, sorted.
    pub rows: Vec<String>,
    /// QA ids, sorted.
    pub columns: Vec<String>,
    /// `cells[row][column]`.
    pub cells: Vec<Vec<Cell>>,
}

impl TradeoffMatrix {
    pub fn cell(&self, pattern: &str, qa: &str) -> Option<&Cell> {
        let r = self.rows.iter().position(|p| p == pattern)?;
        let c = self.columns.iter().position(|q| q == qa)?;
        Some(&self.cells[r][c])
    }

    pub fn to_json(&self) -> String {
        to_canonical_json(self)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("pattern");
        for c in &self.columns {
            out.push(',');
            out.push_str(c);
        }
        out.push('\n');
        for (row, cells) in self.rows.iter().zip(&self.cells) {
            out.push_str(row);
            for cell in cells {
                out.push(',');
                out.push_str(&cell.mark());
            }
            out.push('\n');
        }
        out
    }

    /// Fixed-width table followed by a legend of conditional cells.
    pub fn to_text(&self) -> String {
        let row_width = self
            .rows
            .iter()
            .map(String::len)
            .max()
            .unwrap_or(0)
            .max("pattern".len());
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(j, c)| {
                self.cells
                    .iter()
                    .map(|r| r[j].mark().len())
                    .max()
                    .unwrap_or(0)
                    .max(c.len())
            })
            .collect();
        let mut out = format!("{:<row_width$}", "pattern");
        for (c, w) in self.columns.iter().zip(&widths) {
            out.push_str(&format!("  {c:^w$}"));
        }
        let mut out = out.trim_end().to_string();
        out.push('\n');
        let mut legend = Vec::new();
        for (row, cells) in self.rows.iter().zip(&self.cells) {
            let mut line = format!("{row:<row_width$}");
            for ((cell, w), qa) in cells.iter().zip(&widths).zip(&self.columns) {
                line.push_str(&format!("  {:^w$}", cell.mark()));
                collect_conditions(cell, row, qa, &mut legend);
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        if !legend.is_empty() {
            out.push('\n');
            for l in legend {
                out.push_str(&l);
                out.push('\n');
            }
        }
        out
    }
}

fn collect_conditions(cell: &Cell, row: &str, qa: &str, legend: &mut Vec<String>) {
    match cell {
        Cell::Conditional { effect, guard } => {
            legend.push(format!(
                "{}? {row} / {qa}: only if {guard}",
                effect.symbol()
            ));
        }
        Cell::Multiple(cells) => cells
            .iter()
            .for_each(|c| collect_conditions(c, row, qa, legend)),
        _ => {}
    }
}

pub fn tradeoff_matrix(model: &DecisionModel) -> TradeoffMatrix {
    let rows: Vec<String> = model.patterns().iter().map(|p| p.id.clone()).collect();
    let columns: Vec<String> = model.qas().iter().map(|q| q.id.clone()).collect();
    let cells = model
        .patterns()
        .iter()
        .map(|p| {
            columns
                .iter()
                .map(|qa| {
                    let mut marks: Vec<Cell> = p
                        .impacts
                        .iter()
                        .filter(|i| &i.qa == qa)
                        .map(|i| match (&i.condition, i.effect) {
                            (None, Effect::Positive) => Cell::Positive,
                            (None, Effect::Negative) => Cell::Negative,
                            (Some(g), effect) => Cell::Conditional {
                                effect,
                                guard: g.clone(),
                            },
                        })
                        .collect();
                    match marks.len() {
                        0 => Cell::None,
                        1 => marks.pop().expect("one mark"),
                        _ => Cell::Multiple(marks),
                    }
                })
                .collect()
        })
        .collect();
    TradeoffMatrix {
        rows,
        columns,
        cells,
    }
}
