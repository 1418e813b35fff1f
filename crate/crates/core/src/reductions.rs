//! Reduction from 3SAT to non-equivalence of programs, with a brute-force SAT
//! oracle to check it end to end.
//!
//! For `φ = c1 ∧ ... ∧ cn` with `ci = Li1 ∨ Li2 ∨ Li3`:
//!
//! ```text
//! Q  = { sat_a <- L̃i1, L̃i2, L̃i3 : 1 ≤ i ≤ n }     (L̃ = v<k> or not v<k>)
//! P1 = Q ∪ { sat_a x sat_b. }
//! P2 = P1 ∪ { sat_a. }
//! ```
//!
//! `φ` is satisfiable exactly when `P1` and `P2` are not strongly equivalent.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::dimacs::CnfFormula;
use crate::equivalence::{strong_eq, Mode, Separated};
use crate::error::{Error, Result};
use crate::interpretation::Interpretation;
use crate::logic::is_model;
use crate::program::{Atom, Program, Rule};
use crate::semantics::Limits;
use crate::truth::TruthValue;

pub const SAT_VAR_CAP: u32 = 20;

pub const ATOM_A: &str = "sat_a";
pub const ATOM_B: &str = "sat_b";

pub fn var_atom(var: u32) -> Atom {
    Atom::new(format!("v{var}"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionOutput {
    pub p1: Program,
    pub p2: Program,
    pub a: Atom,
    pub b: Atom,
    /// CNF variable → atom, for every declared variable.
    pub var_map: BTreeMap<u32, Atom>,
}

pub fn reduce_3sat(phi: &CnfFormula) -> Result<ReductionOutput> {
    let a = Atom::new(ATOM_A);
    let b = Atom::new(ATOM_B);
    let var_map: BTreeMap<u32, Atom> = (1..=phi.num_vars()).map(|v| (v, var_atom(v))).collect();

    let mut q = Program::new();
    for clause in phi.clauses() {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for &lit in clause {
            let atom = var_map
                .get(&lit.unsigned_abs())
                .cloned()
                .ok_or_else(|| Error::MalformedClause(format!("literal {lit} out of range")))?;
            if lit > 0 {
                pos.push(atom);
            } else {
                neg.push(atom);
            }
        }
        q.push(Rule::new(vec![a.clone()], pos, neg)?);
    }

    let mut p1 = q;
    p1.push(Rule::new(vec![a.clone(), b.clone()], vec![], vec![])?);
    let mut p2 = p1.clone();
    p2.push(Rule::fact(a.clone()));
    Ok(ReductionOutput {
        p1,
        p2,
        a,
        b,
        var_map,
    })
}

/// First satisfying assignment in counting order, `assignment[v - 1]` for variable `v`.
pub fn brute_force_sat(phi: &CnfFormula) -> Result<Option<Vec<bool>>> {
    let n = phi.num_vars();
    if n > SAT_VAR_CAP {
        return Err(Error::SatCapExceeded {
            vars: n as usize,
            cap: SAT_VAR_CAP as usize,
        });
    }
    for bits in 0u32..(1u32 << n) {
        let assignment: Vec<bool> = (0..n).map(|i| bits & (1 << i) != 0).collect();
        if phi.is_satisfied_by(&assignment) {
            return Ok(Some(assignment));
        }
    }
    Ok(None)
}

/// Interpretation separating the programs built from a satisfying assignment:
/// `A ↦ F*`, `B ↦ T`, and each occurring variable `C ↦ F` if `J(C) = T`, `T` otherwise.
pub fn forward_witness(out: &ReductionOutput, phi: &CnfFormula, assignment: &[bool]) -> Interpretation {
    let mut interp = Interpretation::new()
        .with(out.a.clone(), TruthValue::FStar)
        .with(out.b.clone(), TruthValue::T);
    for var in phi.occurring_vars() {
        let value = if assignment[(var - 1) as usize] {
            TruthValue::F
        } else {
            TruthValue::T
        };
        interp.set(out.var_map[&var].clone(), value);
    }
    interp
}

/// `J(C) = T` iff `I(C) ≤ F*`, for every declared variable.
pub fn backward_assignment(out: &ReductionOutput, interp: &Interpretation) -> Vec<bool> {
    out.var_map
        .values()
        .map(|atom| interp.get(atom) <= TruthValue::FStar)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionCheck {
    pub satisfiable: bool,
    pub equivalent: bool,
    /// Satisfiable iff not equivalent.
    pub agrees: bool,
    /// `P1 ⊂ P2` and `P2 − P1 = {A.}`.
    pub shape_ok: bool,
    /// Satisfiable case: the forward witness is a model of `P1` and not of `P2`.
    pub forward_witness_ok: Option<bool>,
    /// Non-equivalent case: the backward map of the reported witness satisfies `φ`.
    pub extracted_assignment_ok: Option<bool>,
    pub passed: bool,
}

pub fn verify_reduction(phi: &CnfFormula, limits: &Limits) -> Result<ReductionCheck> {
    let out = reduce_3sat(phi)?;
    let sat = brute_force_sat(phi)?;
    let verdict = strong_eq(&out.p1, &out.p2, Mode::MostPreferred, limits)?;

    let shape_ok = out.p2.len() == out.p1.len() + 1
        && out.p1.rules().iter().all(|r| out.p2.contains_rule(r))
        && out.p2.contains_rule(&Rule::fact(out.a.clone()))
        && !out.p1.contains_rule(&Rule::fact(out.a.clone()));

    let forward_witness_ok = sat.as_ref().map(|j| {
        let i = forward_witness(&out, phi, j);
        is_model(&out.p1, &i) && !is_model(&out.p2, &i)
    });
    let extracted_assignment_ok = verdict.witness.as_ref().map(|w| {
        let j = backward_assignment(&out, w);
        verdict.separated == Some(Separated::FirstOnly)
            && is_model(&out.p1, w)
            && !is_model(&out.p2, w)
            && phi.is_satisfied_by(&j)
    });

    let agrees = sat.is_some() != verdict.equivalent;
    let passed = agrees
        && shape_ok
        && forward_witness_ok.unwrap_or(true)
        && extracted_assignment_ok.unwrap_or(true);
    Ok(ReductionCheck {
        satisfiable: sat.is_some(),
        equivalent: verdict.equivalent,
        agrees,
        shape_ok,
        forward_witness_ok,
        extracted_assignment_ok,
        passed,
    })
}
