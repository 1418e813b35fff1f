//! Models, answer sets, most-preferred answer sets, three-valued models and the
//! Gelfond–Lifschitz stable models of normal programs.
//!
//! Everything here is exhaustive over the atoms of the program and therefore
//! guarded by [`Limits`]. The membership tests [`is_answer_set`] and
//! [`is_most_preferred`] search only below (or beside) the candidate and are not
//! capped.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::engine::{
    self, exists_model_below, Domain, Search, ALL_VALUES, MAX_PACKED_ATOMS, SOLID_VALUES,
    THREE_VALUES, TWO_VALUES,
};
use crate::error::{Error, Result};
use crate::interpretation::Interpretation;
use crate::program::{Atom, Program};
use crate::truth::TruthValue;

pub const DEFAULT_CAP: usize = 12;

/// Upper bound on the number of atoms an exhaustive operation may range over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub cap: usize,
}

impl Default for Limits {
    fn default() -> Limits {
        Limits { cap: DEFAULT_CAP }
    }
}

impl Limits {
    pub fn with_cap(cap: usize) -> Limits {
        Limits { cap }
    }

    pub fn check(&self, atoms: usize) -> Result<()> {
        let cap = self.cap.min(MAX_PACKED_ATOMS);
        if atoms > cap {
            Err(Error::CapExceeded { atoms, cap })
        } else {
            Ok(())
        }
    }
}

/// A sorted list of interpretations over a fixed atom list, stored packed.
#[derive(Clone, Debug)]
pub struct ModelSet {
    domain: Domain,
    packed: Vec<u64>,
}

impl ModelSet {
    pub fn len(&self) -> usize {
        self.packed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.packed.is_empty()
    }

    pub fn atoms(&self) -> &[Atom] {
        self.domain.listed()
    }

    pub fn get(&self, index: usize) -> Option<Interpretation> {
        self.packed
            .get(index)
            .map(|p| self.domain.interpretation(&self.domain.unpack(*p)))
    }

    pub fn iter(&self) -> impl Iterator<Item = Interpretation> + '_ {
        self.packed
            .iter()
            .map(|p| self.domain.interpretation(&self.domain.unpack(*p)))
    }

    pub fn contains(&self, interp: &Interpretation) -> bool {
        let packed = engine::pack(&self.domain.codes_of(interp));
        self.packed.binary_search(&packed).is_ok()
    }
}

/// A solid `≼`-minimal model, together with its set of `F*` atoms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnswerSet {
    pub interpretation: Interpretation,
    pub fstar_set: BTreeSet<Atom>,
}

impl AnswerSet {
    pub(crate) fn new(interpretation: Interpretation) -> AnswerSet {
        let fstar_set = interpretation
            .entries()
            .filter(|(_, v)| *v == TruthValue::FStar)
            .map(|(a, _)| a.clone())
            .collect();
        AnswerSet {
            interpretation,
            fstar_set,
        }
    }
}

fn models_with(program: &Program, limits: &Limits, mask: u8) -> Result<ModelSet> {
    let domain = Domain::of(program);
    limits.check(domain.len())?;
    let rules = domain.compile(program);
    let packed = Search::uniform(domain.len(), mask)
        .satisfying(&rules)
        .collect_packed();
    Ok(ModelSet { domain, packed })
}

/// All models over the atoms of `program`, in packed order.
pub fn enumerate_models(program: &Program, limits: &Limits) -> Result<ModelSet> {
    models_with(program, limits, ALL_VALUES)
}

/// All models using only `F`, `T*` and `T`.
pub fn three_valued_models(program: &Program, limits: &Limits) -> Result<ModelSet> {
    models_with(program, limits, THREE_VALUES)
}

fn keep_minimal(program: &Program, set: ModelSet) -> Vec<Interpretation> {
    let rules = set.domain.compile(program);
    let keep: Vec<bool> = set
        .packed
        .par_iter()
        .map(|p| !exists_model_below(&rules, &set.domain.unpack(*p)))
        .collect();
    set.packed
        .iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(p, _)| set.domain.interpretation(&set.domain.unpack(*p)))
        .collect()
}

/// All `≼`-minimal models, solid or not.
pub fn minimal_models(program: &Program, limits: &Limits) -> Result<Vec<Interpretation>> {
    let all = enumerate_models(program, limits)?;
    Ok(keep_minimal(program, all))
}

/// Solid models with no model (of any kind) strictly below them.
pub fn answer_sets(program: &Program, limits: &Limits) -> Result<Vec<AnswerSet>> {
    let solid = models_with(program, limits, SOLID_VALUES)?;
    Ok(keep_minimal(program, solid)
        .into_iter()
        .map(AnswerSet::new)
        .collect())
}

/// Answer sets whose `F*` set has no strict subset among the others'.
pub fn most_preferred_of(answer_sets: &[AnswerSet]) -> Vec<AnswerSet> {
    answer_sets
        .iter()
        .filter(|m| {
            !answer_sets.iter().any(|n| {
                n.fstar_set.len() < m.fstar_set.len() && n.fstar_set.is_subset(&m.fstar_set)
            })
        })
        .cloned()
        .collect()
}

pub fn most_preferred(program: &Program, limits: &Limits) -> Result<Vec<AnswerSet>> {
    Ok(most_preferred_of(&answer_sets(program, limits)?))
}

/// Is `interp`, read over the atoms of `program`, an answer set of it?
pub fn is_answer_set(program: &Program, interp: &Interpretation) -> bool {
    let domain = Domain::of(program);
    let rules = domain.compile(program);
    let codes = domain.codes_of(interp);
    interp.is_solid_on(domain.atoms())
        && engine::all_hold(&rules, &codes)
        && !exists_model_below(&rules, &codes)
}

/// Is `interp` a most-preferred answer set of `program`? Only candidates whose
/// `F*` atoms are a subset of those of `interp` are searched.
pub fn is_most_preferred(program: &Program, interp: &Interpretation) -> bool {
    if !is_answer_set(program, interp) {
        return false;
    }
    let domain = Domain::of(program);
    let rules = domain.compile(program);
    let codes = domain.codes_of(interp);
    let fstar = TruthValue::FStar.code();
    let masks = codes
        .iter()
        .map(|c| if *c == fstar { SOLID_VALUES } else { TWO_VALUES })
        .collect();
    let better = Search::new(masks).satisfying(&rules).find(|n| {
        let strictly_fewer = n.iter().zip(&codes).any(|(a, b)| *b == fstar && *a != fstar);
        strictly_fewer && !exists_model_below(&rules, n)
    });
    better.is_none()
}

/// `{A ↦ T if A ∈ set else F}` over `domain`.
pub fn two_valued_embedding(set: &BTreeSet<Atom>, domain: &[Atom]) -> Interpretation {
    domain
        .iter()
        .map(|a| {
            let v = if set.contains(a) { TruthValue::T } else { TruthValue::F };
            (a.clone(), v)
        })
        .collect()
}

fn require_normal(program: &Program) -> Result<()> {
    match program.rules().iter().find(|r| !r.is_normal()) {
        Some(r) => Err(Error::NotNormal(r.to_string())),
        None => Ok(()),
    }
}

/// Least model of the reduct of `program` with respect to `candidate`.
fn reduct_least_model(program: &Program, candidate: &HashSet<&Atom>) -> HashSet<Atom> {
    let reduct: Vec<_> = program
        .rules()
        .iter()
        .filter(|r| r.body_neg().iter().all(|b| !candidate.contains(b)))
        .collect();
    let mut model: HashSet<Atom> = HashSet::new();
    loop {
        let mut changed = false;
        for rule in &reduct {
            let head = &rule.head()[0];
            if !model.contains(head) && rule.body_pos().iter().all(|a| model.contains(a)) {
                model.insert(head.clone());
                changed = true;
            }
        }
        if !changed {
            return model;
        }
    }
}

/// Is `set` a stable model of the normal program `program`?
pub fn is_stable_model(program: &Program, set: &BTreeSet<Atom>) -> Result<bool> {
    require_normal(program)?;
    let candidate: HashSet<&Atom> = set.iter().collect();
    let least = reduct_least_model(program, &candidate);
    Ok(least.len() == candidate.len() && least.iter().all(|a| candidate.contains(a)))
}

/// Classical stable models by reduct and least fixpoint, over all subsets of
/// the program's atoms. Ordered like the packed enumeration: atom 0 is the
/// most significant position.
pub fn gl_stable_models(program: &Program, limits: &Limits) -> Result<Vec<BTreeSet<Atom>>> {
    require_normal(program)?;
    let atoms = program.atoms();
    limits.check(atoms.len())?;
    let n = atoms.len();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let set: BTreeSet<Atom> = (0..n)
            .filter(|i| mask & (1 << (n - 1 - i)) != 0)
            .map(|i| atoms[i].clone())
            .collect();
        if is_stable_model(program, &set)? {
            out.push(set);
        }
    }
    Ok(out)
}
