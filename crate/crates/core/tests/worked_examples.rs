mod common;

use common::*;
use lpod_lab::equivalence::{build_normal_context, verify_normal_context, ContextCase, Separated};
use lpod_lab::logic::{eval_ordered, eval_not, eval_rule};
use lpod_lab::reductions::{brute_force_sat, forward_witness, verify_reduction};
use lpod_lab::report::{emit_report, to_json, Format, Report};
use lpod_lab::semantics::{self, Limits};
use lpod_lab::TruthValue::{F, FStar, T, TStar};
use lpod_lab::{
    build_witness_context, is_model, logically_equivalent, normal_strong_eq, parse_dimacs, parse_program,
    reduce_3sat, strong_eq, verify_witness_context, CnfFormula, Interpretation, Mode, Program,
};

const MERCEDES: &str = "\
mercedes x bmw.
gas_mercedes x diesel_mercedes <- mercedes.
false <- gas_mercedes, not false.
";

fn p(s: &str) -> Program {
    parse_program(s).unwrap()
}

fn lim() -> Limits {
    Limits::default()
}

fn first_answer_set() -> Interpretation {
    Interpretation::new()
        .with("mercedes", T)
        .with("bmw", F)
        .with("gas_mercedes", FStar)
        .with("diesel_mercedes", T)
        .with("false", FStar)
}

fn second_answer_set() -> Interpretation {
    Interpretation::new()
        .with("mercedes", FStar)
        .with("bmw", T)
        .with("gas_mercedes", FStar)
        .with("diesel_mercedes", FStar)
        .with("false", FStar)
}

#[test]
fn connective_tables() {
    assert_eq!(eval_not(FStar), T);
    assert_eq!(eval_not(T), F);
    assert_eq!(eval_not(F), T);
    assert_eq!(eval_ordered(FStar, T), T);
    assert_eq!(eval_ordered(T, F), T);
    assert_eq!(eval_ordered(F, T), F);
}

#[test]
fn rule_values() {
    let r = |s: &str| p(s).rules()[0].clone();
    assert_eq!(eval_rule(&r("a x b."), &Interpretation::new().with("a", FStar).with("b", T)), T);
    assert_eq!(eval_rule(&r("a <- b."), &Interpretation::new().with("a", FStar).with("b", FStar)), T);
    let constraint = p(MERCEDES).rules()[2].clone();
    assert_eq!(eval_rule(&constraint, &first_answer_set()), T);
    assert!(is_model(&p(MERCEDES), &first_answer_set()));
    assert!(is_model(&Program::new(), &Interpretation::new().with("q", TStar)));
    assert!(!is_model(&p("a."), &Interpretation::new()));
}

#[test]
fn car_example_parses_to_three_rules_over_five_atoms() {
    let prog = p(MERCEDES);
    assert_eq!(prog.len(), 3);
    assert_eq!(prog.atoms().len(), 5);
    assert_eq!(p(&prog.to_string()), prog);
    assert!(parse_program("<- a.").is_err());
    assert_eq!(Program::new().to_string(), "");
}

#[test]
fn car_example_answer_sets() {
    let prog = p(MERCEDES);
    let sets: Vec<_> = semantics::answer_sets(&prog, &lim())
        .unwrap()
        .into_iter()
        .map(|s| s.interpretation)
        .collect();
    assert!(same_set(&sets, &[first_answer_set(), second_answer_set()]));
    let preferred = semantics::most_preferred(&prog, &lim()).unwrap();
    assert_eq!(preferred.len(), 1);
    assert_eq!(preferred[0].interpretation, first_answer_set());
}

#[test]
fn car_example_text_block_matches_listing() {
    let prog = p(MERCEDES);
    let sets = semantics::most_preferred(&prog, &lim()).unwrap();
    let text = emit_report(
        &Report::MostPreferred {
            atoms: prog.atoms().to_vec(),
            count: sets.len(),
            answer_sets: sets,
        },
        Format::Text,
    );
    assert!(
        text.contains("{(mercedes,T), (bmw,F), (gas_mercedes,F*), (diesel_mercedes,T), (false,F*)}"),
        "{text}"
    );
}

#[test]
fn small_model_listings() {
    let models: Vec<_> = semantics::enumerate_models(&p("a x b."), &lim()).unwrap().iter().collect();
    let mut expected: Vec<_> = [F, FStar, TStar, T]
        .into_iter()
        .map(|v| Interpretation::new().with("a", T).with("b", v))
        .collect();
    expected.push(Interpretation::new().with("a", FStar).with("b", T));
    assert!(same_set(&models, &expected));

    let sets: Vec<_> = semantics::answer_sets(&p("a x b."), &lim())
        .unwrap()
        .into_iter()
        .map(|s| s.interpretation)
        .collect();
    assert!(same_set(
        &sets,
        &[
            Interpretation::new().with("a", T).with("b", F),
            Interpretation::new().with("a", FStar).with("b", T)
        ]
    ));
    let mp = semantics::most_preferred(&p("a x b."), &lim()).unwrap();
    assert_eq!(mp.len(), 1);
    assert_eq!(mp[0].interpretation, Interpretation::new().with("a", T).with("b", F));
}

#[test]
fn three_valued_and_stable_examples() {
    let three: Vec<_> = semantics::three_valued_models(&p("a <- not a."), &lim()).unwrap().iter().collect();
    assert!(same_set(
        &three,
        &[Interpretation::new().with("a", TStar), Interpretation::new().with("a", T)]
    ));
    let stable = semantics::gl_stable_models(&p("a <- not b.\nb <- not a."), &lim()).unwrap();
    let names: Vec<Vec<&str>> = stable.iter().map(|s| s.iter().map(|a| a.name()).collect()).collect();
    assert!(names.contains(&vec!["a"]) && names.contains(&vec!["b"]) && names.len() == 2);
    assert!(semantics::gl_stable_models(&p("a <- not a."), &lim()).unwrap().is_empty());
    assert_eq!(semantics::gl_stable_models(&p("a."), &lim()).unwrap().len(), 1);
}

#[test]
fn ordered_fact_pairs_are_equivalent() {
    let pairs = [
        ("a x b.\na.", "a."),
        (
            "c x a x b.\na <- c.\nb <- c.\nc <- a, b.",
            "c x a x b.\nc x c x b x a.\na <- c.\nb <- c.\nc <- a, b.",
        ),
    ];
    for (a, b) in pairs {
        for mode in [Mode::MostPreferred, Mode::AllAnswerSets] {
            let v = strong_eq(&p(a), &p(b), mode, &lim()).unwrap();
            assert!(v.equivalent, "{a} vs {b}");
            assert!(v.witness.is_none() && v.context.is_none());
        }
        assert!(oracle_logically_equivalent(&p(a), &p(b)));
    }
}

#[test]
fn swapped_preference_pair_is_separated_by_the_listed_witness() {
    let first = p("c x a x b.\nc <- a, b.\nd <- c, not d.");
    let second = p("c x b x a.\nc <- a, b.\nd <- c, not d.");
    let v = strong_eq(&first, &second, Mode::MostPreferred, &lim()).unwrap();
    assert!(!v.equivalent);
    assert_eq!(v.separated, Some(Separated::FirstOnly));
    let listed = Interpretation::new().with("a", T).with("b", F).with("c", FStar).with("d", FStar);
    assert_eq!(v.witness.as_ref(), Some(&listed));
    assert!(is_model(&first, &listed) && !is_model(&second, &listed));

    let json = serde_json::to_string(&to_json(&Report::Equivalence {
        atoms: first.joint_atoms(&second),
        verdict: v.clone(),
    }))
    .unwrap();
    assert!(json.contains(r#"{"atom":"c","value":"F*"}"#) && json.contains(r#"{"atom":"d","value":"F*"}"#));

    let ctx = v.context.unwrap();
    let mp1 = semantics::most_preferred(&first.union(&ctx), &lim()).unwrap();
    let mp2 = semantics::most_preferred(&second.union(&ctx), &lim()).unwrap();
    assert_ne!(mp1, mp2);
}

#[test]
fn swapped_preference_scaffold() {
    let first = p("c x a x b.\nc <- a, b.\nd <- c, not d.");
    let second = p("c x b x a.\nc <- a, b.\nd <- c, not d.");
    let m = Interpretation::new().with("a", T).with("b", F).with("c", FStar).with("d", FStar);
    let ctx = build_witness_context(&first, &second, &m).unwrap();
    let names = |v: &[lpod_lab::Atom]| v.iter().map(|a| a.name().to_string()).collect::<Vec<_>>();
    assert_eq!(names(&ctx.scaffold.t_set), ["t__c", "t__d"]);
    assert_eq!(names(&ctx.scaffold.f_set), ["f__c", "f__d"]);
    let m_prime = m
        .clone()
        .with("t__c", T)
        .with("t__d", T)
        .with("f__c", FStar)
        .with("f__d", FStar);
    assert_eq!(ctx.scaffold.m_prime, m_prime);
    assert_eq!(ctx.case, ContextCase::Case1);
    assert!(verify_witness_context(&first, &second, &ctx).passed());
}

#[test]
fn pure_fact_context_without_starred_values() {
    let m = Interpretation::new().with("a", T).with("b", F);
    let ctx = build_witness_context(&p("a <- b."), &p("a <- b.\nb <- a."), &m).unwrap();
    assert_eq!(ctx.case, ContextCase::Case1);
    assert_eq!(ctx.program, p("a."));
}

#[test]
fn case_one_context_for_added_fact() {
    let p1 = p("a x b.");
    let p2 = p("a x b.\na.");
    let m = Interpretation::new().with("a", FStar).with("b", T);
    let ctx = build_witness_context(&p1, &p2, &m).unwrap();
    assert_eq!(ctx.case, ContextCase::Case1);
    assert_eq!(ctx.program, p("b.\nt__a.\na x t__a.\nf__a <- a, not f__a."));
    assert!(verify_witness_context(&p1, &p2, &ctx).passed());
}

#[test]
fn case_two_context_builds_the_doubleprime_shape() {
    // M has T* on a, which P1 allows and P2 forbids; M' lifts a to T and
    // models both programs.
    let p1 = p("b x a.");
    let p2 = p("b x a.\na <- not a.");
    let v = logically_equivalent(&p1, &p2, &lim()).unwrap();
    let w = v.witness.expect("a witness exists");
    let ctx = build_witness_context(&p1, &p2, &w).unwrap();
    let check = verify_witness_context(&p1, &p2, &ctx);
    assert!(check.passed(), "{check:?}");
    if ctx.case == ContextCase::Case2 {
        let mdp = ctx.scaffold.m_doubleprime.clone().unwrap();
        for (a, t, f) in &ctx.scaffold.fresh_for {
            assert_eq!(mdp.get(t), T);
            assert_eq!(mdp.get(f), FStar);
            assert_eq!(mdp.get(a), w.get(a));
        }
        assert!(ctx.scaffold.d.is_some());
    }
}

#[test]
fn normal_equivalence_examples() {
    let v = normal_strong_eq(&p("a."), &p("a <- not b."), &lim()).unwrap();
    assert!(!v.equivalent);
    let w = v.witness.unwrap();
    assert_ne!(is_model(&p("a."), &w), is_model(&p("a <- not b."), &w));
    assert!(w.entries().all(|(_, val)| val != FStar));
    let ctx = build_normal_context(&p("a."), &p("a <- not b."), &w).unwrap();
    assert!(verify_normal_context(&p("a."), &p("a <- not b."), &ctx).unwrap());

    assert!(normal_strong_eq(&p("a <- b."), &p("a <- b."), &lim()).unwrap().equivalent);
    let loop_pair = normal_strong_eq(&p("a <- b.\nb <- a."), &p("a <- b."), &lim()).unwrap();
    assert!(!loop_pair.equivalent);
    assert!(normal_strong_eq(&p("a x b."), &p("a."), &lim()).is_err());
}

#[test]
fn reduction_examples() {
    let phi = CnfFormula::new(3, vec![[1, -2, 3]]).unwrap();
    let out = reduce_3sat(&phi).unwrap();
    assert_eq!(out.p1, p("sat_a <- v1, v3, not v2.\nsat_a x sat_b."));
    assert!(out.p2.to_string().contains("sat_a.\n"));
    let j = brute_force_sat(&phi).unwrap().unwrap();
    let i = forward_witness(&out, &phi, &j);
    assert_eq!(i.get("sat_a"), FStar);
    assert_eq!(i.get("sat_b"), T);
    assert!(is_model(&out.p1, &i) && !is_model(&out.p2, &i));

    let contradiction = CnfFormula::new(1, vec![[1, 1, 1], [-1, -1, -1]]).unwrap();
    assert!(strong_eq(&reduce_3sat(&contradiction).unwrap().p1, &reduce_3sat(&contradiction).unwrap().p2, Mode::MostPreferred, &lim())
        .unwrap()
        .equivalent);
    assert_eq!(brute_force_sat(&CnfFormula::new(1, vec![[1, 1, 1]]).unwrap()).unwrap(), Some(vec![true]));
    assert_eq!(brute_force_sat(&contradiction).unwrap(), None);
}

#[test]
fn pigeonhole_style_instance_is_equivalent() {
    // Two pigeons, one hole (x1, x2 = pigeon i in the hole), plus a third
    // variable forced both ways.
    let phi = parse_dimacs("p cnf 3 4\n1 1 1 0\n2 2 2 0\n-1 -2 -2 0\n3 -3 -1 0\n", false).unwrap();
    let check = verify_reduction(&phi, &lim()).unwrap();
    assert!(!check.satisfiable && check.equivalent && check.passed, "{check:?}");
}

#[test]
fn dimacs_examples() {
    let padded = parse_dimacs("p cnf 2 1\n1 -2 0", true).unwrap();
    assert_eq!(padded.clauses(), &[[1, -2, -2]]);
    assert_eq!(parse_dimacs("p cnf 3 1\n1 2 3 0", false).unwrap().clauses(), &[[1, 2, 3]]);
    assert!(parse_dimacs("p cnf 1 1\n1 2 0", false).is_err());
}

#[test]
fn explicit_case_two_witness() {
    // {a:T*, b:T} models the empty program but not `a <- b`; lifting T* to T
    // gives a model of both, so the second case applies.
    let p1 = Program::new();
    let p2 = p("a <- b.");
    let m = Interpretation::new().with("a", TStar).with("b", T);
    let ctx = build_witness_context(&p1, &p2, &m).unwrap();
    assert_eq!(ctx.case, ContextCase::Case2);
    assert_eq!(ctx.program, p("b.\nd__0 <- not a."));
    assert_eq!(ctx.scaffold.m_prime, Interpretation::new().with("a", T).with("b", T));
    assert_eq!(ctx.scaffold.m_doubleprime, Some(m.clone()));
    let check = verify_witness_context(&p1, &p2, &ctx);
    assert!(check.passed(), "{check:?}");
    assert_eq!(check.m_doubleprime_below, Some(true));
}

#[test]
fn normal_pair_separated_only_by_ordered_contexts() {
    // `c <- a` already blocks `b <- a, not c` unless `a` and `c` sit at F*,
    // which only an ordered-disjunction context can force.
    let p1 = p("b <- a, not c.\nc <- a.");
    let p2 = p("c <- a.");
    assert!(normal_strong_eq(&p1, &p2, &lim()).unwrap().equivalent);
    let v = strong_eq(&p1, &p2, Mode::MostPreferred, &lim()).unwrap();
    assert!(!v.equivalent);
    assert_eq!(v.witness, Some(Interpretation::new().with("a", FStar).with("b", F).with("c", FStar)));
    assert!(v.context.unwrap().rules().iter().any(|r| r.head().len() > 1));
}
