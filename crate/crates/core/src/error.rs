use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("rule head must contain at least one atom")]
    EmptyHead,

    #[error("DIMACS error at line {line}: {message}")]
    Dimacs { line: usize, message: String },

    #[error("instance too large for exhaustive enumeration: {atoms} atoms exceed the cap of {cap}")]
    CapExceeded { atoms: usize, cap: usize },

    #[error("instance too large for exhaustive SAT search: {vars} variables exceed the cap of {cap}")]
    SatCapExceeded { vars: usize, cap: usize },

    #[error("not a normal program: rule `{0}` has an ordered-disjunctive head")]
    NotNormal(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("ran out of fresh atom names for `{0}`")]
    FreshAtomsExhausted(String),

    #[error("constructed context failed verification: {0}")]
    ContextVerification(String),

    #[error("malformed clause: {0}")]
    MalformedClause(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
