use thiserror::Error;

/// Errors raised while loading or assembling a knowledge base.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KbError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("duplicate {kind} id `{id}`")]
    DuplicateId { kind: &'static str, id: String },

    #[error("{from} references unknown id `{id}`")]
    UnresolvedRef { from: String, id: String },

    #[error("unknown fact `{name}` in {context}")]
    UnknownFact { name: String, context: String },

    #[error("invalid value `{value}` for {context}")]
    InvalidValue { context: String, value: String },

    #[error("pattern `{id}` lists itself as a complement")]
    SelfComplement { id: String },
}

impl KbError {
    pub fn code(&self) -> &'static str {
        match self {
            KbError::Syntax { .. } | KbError::InvalidValue { .. } => "E_SYNTAX",
            KbError::DuplicateId { .. } => "E_DUP_ID",
            KbError::UnresolvedRef { .. } | KbError::SelfComplement { .. } => "E_UNRESOLVED_REF",
            KbError::UnknownFact { .. } => "E_UNKNOWN_FACT",
        }
    }
}

/// Errors raised while evaluating a model against requirements.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("exclusive gateway `{gateway}` has several true guards: {edges:?}")]
    AmbiguousExclusive { gateway: String, edges: Vec<String> },

    #[error("unknown pattern `{id}`")]
    UnresolvedRef { id: String },

    #[error("invalid requirements: {0}")]
    BadRequirements(String),
}

impl EngineError {
    pub fn code(&self) -> &'static str {
        match self {
            EngineError::AmbiguousExclusive { .. } => "E_AMBIGUOUS_EXCLUSIVE",
            EngineError::UnresolvedRef { .. } => "E_UNRESOLVED_REF",
            EngineError::BadRequirements(_) => "E_BAD_REQUIREMENTS",
        }
    }
}
