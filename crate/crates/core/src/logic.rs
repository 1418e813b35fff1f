//! Four-valued evaluation of rules and programs over [`Interpretation`]s.

use crate::interpretation::Interpretation;
use crate::program::{Program, Rule};
use crate::truth::TruthValue;

pub fn eval_not(v: TruthValue) -> TruthValue {
    v.negate()
}

pub fn eval_ordered(v1: TruthValue, v2: TruthValue) -> TruthValue {
    v1.ordered(v2)
}

/// Conjunction of the body literals; the empty body is `T`.
pub fn eval_body(rule: &Rule, interp: &Interpretation) -> TruthValue {
    let pos = rule.body_pos().iter().map(|a| interp.get(a));
    let neg = rule.body_neg().iter().map(|a| eval_not(interp.get(a)));
    pos.chain(neg).fold(TruthValue::T, TruthValue::and)
}

/// Left fold of `×` over the head atoms.
pub fn eval_head(rule: &Rule, interp: &Interpretation) -> TruthValue {
    let mut values = rule.head().iter().map(|a| interp.get(a));
    let first = values.next().expect("rule heads are nonempty");
    values.fold(first, eval_ordered)
}

/// `T` if the head value is at least the body value, `F` otherwise.
pub fn eval_rule(rule: &Rule, interp: &Interpretation) -> TruthValue {
    eval_head(rule, interp).implied_by(eval_body(rule, interp))
}

pub fn is_model(program: &Program, interp: &Interpretation) -> bool {
    program
        .rules()
        .iter()
        .all(|r| eval_rule(r, interp) == TruthValue::T)
}
