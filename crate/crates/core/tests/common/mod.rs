//! Brute-force oracles written directly from the definitions, independent of
//! the search engine, plus proptest generators.

#![allow(dead_code)]

use lpod_lab::{is_model, Atom, Interpretation, Program, Rule, TruthValue};
use proptest::prelude::*;

/// Every interpretation over `atoms`, all `4^n` of them.
pub fn all_interpretations(atoms: &[Atom]) -> Vec<Interpretation> {
    let mut out = vec![Interpretation::new()];
    for a in atoms {
        out = out
            .into_iter()
            .flat_map(|i| TruthValue::ALL.map(|v| i.clone().with(a.clone(), v)))
            .collect();
    }
    out
}

pub fn oracle_models(p: &Program) -> Vec<Interpretation> {
    all_interpretations(p.atoms())
        .into_iter()
        .filter(|i| is_model(p, i))
        .collect()
}

/// Solid models with no model strictly below them.
pub fn oracle_answer_sets(p: &Program) -> Vec<Interpretation> {
    let models = oracle_models(p);
    let atoms = p.atoms();
    models
        .iter()
        .filter(|m| m.is_solid_on(atoms) && !models.iter().any(|n| n.precedes_on(m, atoms)))
        .cloned()
        .collect()
}

pub fn oracle_most_preferred(p: &Program) -> Vec<Interpretation> {
    let sets = oracle_answer_sets(p);
    let atoms = p.atoms();
    let fstar = |i: &Interpretation| -> std::collections::BTreeSet<Atom> {
        i.fstar_atoms_on(atoms).into_iter().collect()
    };
    sets.iter()
        .filter(|m| {
            let mine = fstar(m);
            !sets.iter().any(|n| {
                let theirs = fstar(n);
                theirs.is_subset(&mine) && theirs != mine
            })
        })
        .cloned()
        .collect()
}

/// Same four-valued models over the joint atoms.
pub fn oracle_logically_equivalent(p1: &Program, p2: &Program) -> bool {
    all_interpretations(&p1.joint_atoms(p2))
        .iter()
        .all(|i| is_model(p1, i) == is_model(p2, i))
}

pub fn same_set(a: &[Interpretation], b: &[Interpretation]) -> bool {
    a.len() == b.len() && a.iter().all(|x| b.contains(x)) && b.iter().all(|x| a.contains(x))
}

pub fn atom_pool(n: usize) -> Vec<Atom> {
    ["a", "b", "c", "d", "e", "f"][..n].iter().map(|s| Atom::new(*s)).collect()
}

fn distinct(pool: &[Atom], idx: Vec<usize>) -> Vec<Atom> {
    let mut out: Vec<Atom> = Vec::new();
    for i in idx {
        let a = pool[i % pool.len()].clone();
        if !out.contains(&a) {
            out.push(a);
        }
    }
    out
}

pub fn arb_rule(atoms: usize, max_head: usize) -> impl Strategy<Value = Rule> {
    let pool = atom_pool(atoms);
    (
        prop::collection::vec(0..atoms, 1..=max_head),
        prop::collection::vec((0..atoms, any::<bool>()), 0..=2),
    )
        .prop_map(move |(head, body)| {
            let head = distinct(&pool, head);
            let mut pos = Vec::new();
            let mut neg = Vec::new();
            let mut seen = Vec::new();
            for (i, negated) in body {
                let a = pool[i].clone();
                if seen.contains(&a) {
                    continue;
                }
                seen.push(a.clone());
                if negated {
                    neg.push(a);
                } else {
                    pos.push(a);
                }
            }
            Rule::new(head, pos, neg).unwrap()
        })
}

pub fn arb_program(atoms: usize, max_rules: usize, max_head: usize) -> impl Strategy<Value = Program> {
    prop::collection::vec(arb_rule(atoms, max_head), 0..=max_rules).prop_map(Program::from_rules)
}

pub fn arb_value() -> impl Strategy<Value = TruthValue> {
    prop::sample::select(TruthValue::ALL.to_vec())
}

pub fn arb_interpretation(atoms: usize) -> impl Strategy<Value = Interpretation> {
    prop::collection::vec(arb_value(), atoms).prop_map(move |vs| {
        atom_pool(atoms).into_iter().zip(vs).collect()
    })
}
