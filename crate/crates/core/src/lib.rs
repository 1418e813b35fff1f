//! Four-valued semantics of logic programs with ordered disjunction:
//! models, answer sets, most-preferred answer sets, strong equivalence with
//! separating contexts, and the 3SAT hardness reduction.

pub mod cli;
pub mod dimacs;
mod engine;
pub mod equivalence;
pub mod error;
pub mod fuzz;
pub mod interpretation;
pub mod logic;
pub mod program;
pub mod reductions;
pub mod report;
pub mod semantics;
pub mod syntax;
pub mod truth;

pub use dimacs::{parse_dimacs, CnfFormula};
pub use equivalence::{
    build_witness_context, logically_equivalent, normal_strong_eq, strong_eq, verify_witness_context,
    ContextCase, EquivalenceVerdict, Mode, Separated, WitnessContext,
};
pub use error::{Error, Result};
pub use interpretation::Interpretation;
pub use logic::{eval_rule, is_model};
pub use program::{Atom, Program, Rule};
pub use reductions::{reduce_3sat, verify_reduction, ReductionOutput};
pub use semantics::{
    answer_sets, enumerate_models, gl_stable_models, most_preferred, AnswerSet, Limits, ModelSet,
    DEFAULT_CAP,
};
pub use syntax::{parse_program, serialize_program};
pub use truth::TruthValue;
