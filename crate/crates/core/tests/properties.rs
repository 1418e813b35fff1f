mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::*;
use lpod_lab::logic::eval_rule;
use lpod_lab::semantics::{self, Limits};
use lpod_lab::{
    build_witness_context, is_model, logically_equivalent, parse_dimacs, parse_program, reduce_3sat, strong_eq,
    verify_witness_context, Atom, CnfFormula, Interpretation, Mode, Program, Rule, TruthValue,
};
use proptest::prelude::*;

fn lim() -> Limits {
    Limits::default()
}

fn rename_program(p: &Program, map: &BTreeMap<Atom, Atom>) -> Program {
    let r = |xs: &[Atom]| xs.iter().map(|a| map[a].clone()).collect::<Vec<_>>();
    Program::from_rules(
        p.rules()
            .iter()
            .map(|rule| Rule::new(r(rule.head()), r(rule.body_pos()), r(rule.body_neg())).unwrap()),
    )
}

fn rename_interp(i: &Interpretation, atoms: &[Atom], map: &BTreeMap<Atom, Atom>) -> Interpretation {
    atoms.iter().map(|a| (map[a].clone(), i.get(a))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn parse_serialize_round_trip(p in arb_program(4, 6, 3)) {
        let text = p.to_string();
        let back = parse_program(&text).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn reordered_serialization_reparses_to_same_program(p in arb_program(4, 6, 3), seed in any::<u64>()) {
        let mut rules = p.rules().to_vec();
        let n = rules.len().max(1);
        rules.rotate_left((seed as usize) % n);
        let text: String = rules.iter().map(|r| format!("{r}\n")).collect();
        prop_assert_eq!(parse_program(&text).unwrap(), p);
    }

    #[test]
    fn rule_evaluation_is_local(rule in arb_rule(4, 3), i in arb_interpretation(4), v in arb_value()) {
        let outside = Atom::new("zz");
        let before = eval_rule(&rule, &i);
        prop_assert_eq!(before, eval_rule(&rule, &i.clone().with(outside, v)));
        prop_assert!(before == TruthValue::T || before == TruthValue::F);
    }

    #[test]
    fn union_models_are_common_models(p1 in arb_program(3, 4, 3), p2 in arb_program(3, 4, 3), i in arb_interpretation(3)) {
        prop_assert_eq!(is_model(&p1.union(&p2), &i), is_model(&p1, &i) && is_model(&p2, &i));
    }

    #[test]
    fn models_match_oracle(p in arb_program(3, 4, 3)) {
        let got: Vec<_> = semantics::enumerate_models(&p, &lim()).unwrap().iter().collect();
        prop_assert!(same_set(&got, &oracle_models(&p)));
    }

    #[test]
    fn answer_sets_match_oracle(p in arb_program(3, 4, 3)) {
        let sets = semantics::answer_sets(&p, &lim()).unwrap();
        let got: Vec<_> = sets.iter().map(|s| s.interpretation.clone()).collect();
        prop_assert!(same_set(&got, &oracle_answer_sets(&p)));
        let mp: Vec<_> = semantics::most_preferred(&p, &lim()).unwrap().into_iter().map(|s| s.interpretation).collect();
        prop_assert!(same_set(&mp, &oracle_most_preferred(&p)));
    }

    #[test]
    fn answer_sets_are_solid_models_and_preferred_are_answer_sets(p in arb_program(4, 5, 3)) {
        let sets = semantics::answer_sets(&p, &lim()).unwrap();
        for s in &sets {
            prop_assert!(is_model(&p, &s.interpretation));
            prop_assert!(s.interpretation.is_solid_on(p.atoms()));
            prop_assert!(semantics::is_answer_set(&p, &s.interpretation));
        }
        for m in semantics::most_preferred(&p, &lim()).unwrap() {
            prop_assert!(sets.contains(&m));
            prop_assert!(semantics::is_most_preferred(&p, &m.interpretation));
        }
    }

    #[test]
    fn models_ignore_rule_order(p in arb_program(4, 5, 3)) {
        let mut rules = p.rules().to_vec();
        rules.reverse();
        let q = Program::from_rules(rules);
        let a: Vec<_> = semantics::enumerate_models(&p, &lim()).unwrap().iter().collect();
        let b: Vec<_> = semantics::enumerate_models(&q, &lim()).unwrap().iter().collect();
        prop_assert!(same_set(&a, &b));
    }

    #[test]
    fn minimization_commutes_with_renaming(p in arb_program(4, 5, 3), perm in Just(atom_pool(4)).prop_shuffle()) {
        let pool = atom_pool(4);
        let map: BTreeMap<Atom, Atom> = pool.iter().cloned().zip(perm.iter().map(|a| Atom::new(format!("r_{a}")))).collect();
        let q = rename_program(&p, &map);
        let expected: Vec<_> = semantics::answer_sets(&p, &lim()).unwrap()
            .iter().map(|s| rename_interp(&s.interpretation, &pool, &map)).collect();
        let got: Vec<_> = semantics::answer_sets(&q, &lim()).unwrap().into_iter().map(|s| s.interpretation).collect();
        prop_assert!(same_set(&got, &expected));
    }

    #[test]
    fn logical_equivalence_matches_oracle(p1 in arb_program(3, 3, 3), p2 in arb_program(3, 3, 3)) {
        let verdict = logically_equivalent(&p1, &p2, &lim()).unwrap();
        prop_assert_eq!(verdict.equivalent, oracle_logically_equivalent(&p1, &p2));
        if let Some(w) = verdict.witness {
            prop_assert_ne!(is_model(&p1, &w), is_model(&p2, &w));
        }
    }

    #[test]
    fn strong_equivalence_is_an_equivalence_relation(
        p1 in arb_program(3, 3, 2), p2 in arb_program(3, 3, 2), p3 in arb_program(3, 3, 2)
    ) {
        let eq = |a: &Program, b: &Program| strong_eq(a, b, Mode::MostPreferred, &lim()).unwrap().equivalent;
        prop_assert!(eq(&p1, &p1));
        prop_assert_eq!(eq(&p1, &p2), eq(&p2, &p1));
        if eq(&p1, &p2) && eq(&p2, &p3) {
            prop_assert!(eq(&p1, &p3));
        }
        // Adding a rule of the other side twice over cannot distinguish.
        let doubled = p1.union(&p1);
        prop_assert!(eq(&p1, &doubled));
    }

    #[test]
    fn emitted_contexts_separate_by_oracle(p1 in arb_program(3, 3, 3), p2 in arb_program(3, 3, 3)) {
        let verdict = logically_equivalent(&p1, &p2, &lim()).unwrap();
        if let Some(w) = verdict.witness {
            let ctx = build_witness_context(&p1, &p2, &w).unwrap();
            prop_assert!(verify_witness_context(&p1, &p2, &ctx).passed());
            let (u1, u2) = (p1.union(&ctx.program), p2.union(&ctx.program));
            if u1.atoms().len().max(u2.atoms().len()) <= 7 {
                prop_assert!(!same_set(&oracle_most_preferred(&u1), &oracle_most_preferred(&u2)));
                prop_assert!(!same_set(&oracle_answer_sets(&u1), &oracle_answer_sets(&u2)));
            }
        }
    }

    #[test]
    fn mode_verdicts_coincide(p1 in arb_program(4, 4, 3), p2 in arb_program(4, 4, 3)) {
        let a = strong_eq(&p1, &p2, Mode::MostPreferred, &lim()).unwrap();
        let b = strong_eq(&p1, &p2, Mode::AllAnswerSets, &lim()).unwrap();
        prop_assert_eq!(a.equivalent, b.equivalent);
        prop_assert_eq!(a.witness, b.witness);
        prop_assert_eq!(a.context, b.context);
    }

    #[test]
    fn four_valued_equivalence_implies_three_valued_on_normal_programs(
        p1 in arb_program(4, 4, 1), p2 in arb_program(4, 4, 1)
    ) {
        let four = strong_eq(&p1, &p2, Mode::MostPreferred, &lim()).unwrap().equivalent;
        let three = lpod_lab::normal_strong_eq(&p1, &p2, &lim()).unwrap().equivalent;
        prop_assert!(!four || three);
    }

    #[test]
    fn normal_programs_answer_sets_are_stable_models(p in arb_program(4, 5, 1)) {
        let stable: Vec<_> = semantics::gl_stable_models(&p, &lim()).unwrap()
            .iter().map(|s| semantics::two_valued_embedding(s, p.atoms())).collect();
        let answer: Vec<_> = semantics::answer_sets(&p, &lim()).unwrap().into_iter().map(|s| s.interpretation).collect();
        prop_assert!(same_set(&stable, &answer));
    }

    #[test]
    fn reduction_shape(clauses in prop::collection::btree_set(prop::array::uniform3(prop_oneof![-5i32..=-1, 1i32..=5]), 1..8)) {
        let clauses: Vec<[i32; 3]> = clauses.into_iter().collect();
        let phi = CnfFormula::new(5, clauses.clone()).unwrap();
        let out = reduce_3sat(&phi).unwrap();
        prop_assert_eq!(out.p2.len(), out.p1.len() + 1);
        prop_assert!(out.p1.rules().iter().all(|r| out.p2.contains_rule(r)));
        prop_assert!(out.p1.len() <= clauses.len() + 1);
        prop_assert_eq!(parse_dimacs(&phi.to_string(), false).unwrap(), phi);
    }

    #[test]
    fn fstar_sets_record_fstar_atoms(p in arb_program(4, 5, 3)) {
        for s in semantics::answer_sets(&p, &lim()).unwrap() {
            let expected: BTreeSet<Atom> = s.interpretation.fstar_atoms_on(p.atoms()).into_iter().collect();
            prop_assert_eq!(&s.fstar_set, &expected);
        }
    }
}
