//! Three-valued guard evaluation.

use serde::Serialize;

use crate::knowledge::{Conjunction, ContextFacts, FactValue, Guard};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Truth {
    True,
    False,
    Unknown,
}

/// Any clause false gives false; otherwise any clause on an unknown fact
/// gives unknown; otherwise true. The empty conjunction is true.
pub fn eval_conjunction(guard: &Conjunction, context: &ContextFacts) -> Truth {
    let mut unknown = false;
    for clause in guard.clauses() {
        match context.get(clause.fact) {
            FactValue::Unknown => unknown = true,
            v if v == clause.value => {}
            _ => return Truth::False,
        }
    }
    if unknown {
        Truth::Unknown
    } else {
        Truth::True
    }
}

/// Evaluates a guard in isolation. `Otherwise` depends on its siblings, so
/// the caller passes whether every sibling guard at the same gateway was
/// false.
pub fn eval_guard(guard: &Guard, context: &ContextFacts, siblings_all_false: bool) -> Truth {
    match guard {
        Guard::When(c) => eval_conjunction(c, context),
        Guard::Otherwise if siblings_all_false => Truth::True,
        Guard::Otherwise => Truth::False,
    }
}
