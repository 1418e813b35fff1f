//! Text and JSON renderings of command results.
//!
//! Every JSON document is an object carrying `"schema": "lpod-lab/1"` and a
//! `"kind"` tag. Interpretations are lists of `{"atom", "value"}` records
//! sorted by atom; programs are embedded as program text.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::equivalence::{ContextCase, ContextCheck, EquivalenceVerdict, Separated, WitnessContext};
use crate::fuzz::CampaignReport;
use crate::interpretation::Interpretation;
use crate::program::{Atom, Program};
use crate::reductions::{ReductionCheck, ReductionOutput};
use crate::semantics::AnswerSet;

pub const SCHEMA: &str = "lpod-lab/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessContextReport {
    pub separated: Separated,
    pub case: ContextCase,
    #[serde(serialize_with = "as_text")]
    pub context: Program,
    pub t_set: Vec<Atom>,
    pub f_set: Vec<Atom>,
    pub d: Option<Atom>,
    pub m_prime: Interpretation,
    pub m_doubleprime: Option<Interpretation>,
    pub check: ContextCheck,
}

impl WitnessContextReport {
    pub fn new(ctx: &WitnessContext, check: ContextCheck) -> WitnessContextReport {
        WitnessContextReport {
            separated: ctx.separated(),
            case: ctx.case,
            context: ctx.program.clone(),
            t_set: ctx.scaffold.t_set.clone(),
            f_set: ctx.scaffold.f_set.clone(),
            d: ctx.scaffold.d.clone(),
            m_prime: ctx.scaffold.m_prime.restrict(&ctx.domain),
            m_doubleprime: ctx.scaffold.m_doubleprime.as_ref().map(|m| m.restrict(&ctx.domain)),
            check,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Report {
    Models {
        atoms: Vec<Atom>,
        three_valued: bool,
        count: usize,
        models: Vec<Interpretation>,
    },
    AnswerSets {
        atoms: Vec<Atom>,
        count: usize,
        answer_sets: Vec<AnswerSet>,
    },
    MostPreferred {
        atoms: Vec<Atom>,
        count: usize,
        answer_sets: Vec<AnswerSet>,
    },
    StableModels {
        atoms: Vec<Atom>,
        count: usize,
        stable_models: Vec<BTreeSet<Atom>>,
    },
    Equivalence {
        atoms: Vec<Atom>,
        #[serde(flatten)]
        verdict: EquivalenceVerdict,
    },
    WitnessContext {
        atoms: Vec<Atom>,
        #[serde(flatten)]
        report: WitnessContextReport,
    },
    Reduction {
        #[serde(serialize_with = "as_text")]
        p1: Program,
        #[serde(serialize_with = "as_text")]
        p2: Program,
        a: Atom,
        b: Atom,
        var_map: BTreeMap<u32, Atom>,
    },
    ReductionCheck {
        #[serde(flatten)]
        check: ReductionCheck,
    },
    Campaign {
        passed: bool,
        #[serde(flatten)]
        report: CampaignReport,
    },
}

impl Report {
    pub fn reduction(out: &ReductionOutput) -> Report {
        Report::Reduction {
            p1: out.p1.clone(),
            p2: out.p2.clone(),
            a: out.a.clone(),
            b: out.b.clone(),
            var_map: out.var_map.clone(),
        }
    }
}

fn as_text<S: serde::Serializer>(p: &Program, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema: &'static str,
    #[serde(flatten)]
    report: &'a Report,
}

pub fn to_json(report: &Report) -> serde_json::Value {
    serde_json::to_value(Envelope { schema: SCHEMA, report }).expect("reports serialize")
}

pub fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Structured => {
            let mut s = serde_json::to_string_pretty(&to_json(report)).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => render_text(report),
    }
}

/// `{(a,T), ...}` over `atoms` in order, then any other listed atom.
fn render(interp: &Interpretation, atoms: &[Atom]) -> String {
    let mut domain = atoms.to_vec();
    domain.extend(interp.entries().map(|(a, _)| a.clone()).filter(|a| !atoms.contains(a)));
    interp.display_over(&domain)
}

fn render_set(set: &BTreeSet<Atom>) -> String {
    let names: Vec<&str> = set.iter().map(|a| a.name()).collect();
    format!("{{{}}}", names.join(", "))
}

fn render_answer_sets(out: &mut String, label: &str, atoms: &[Atom], sets: &[AnswerSet]) {
    let _ = writeln!(out, "{label}: {}", sets.len());
    for s in sets {
        let _ = writeln!(out, "{}  F* = {}", render(&s.interpretation, atoms), render_set(&s.fstar_set));
    }
}

fn separated_text(s: Separated) -> &'static str {
    match s {
        Separated::FirstOnly => "model of the first program only",
        Separated::SecondOnly => "model of the second program only",
    }
}

fn render_text(report: &Report) -> String {
    let mut out = String::new();
    match report {
        Report::Models {
            atoms,
            three_valued,
            models,
            ..
        } => {
            let label = if *three_valued { "three-valued models" } else { "models" };
            let _ = writeln!(out, "{label}: {}", models.len());
            for m in models {
                let _ = writeln!(out, "{}", render(m, atoms));
            }
        }
        Report::AnswerSets { atoms, answer_sets, .. } => {
            render_answer_sets(&mut out, "answer sets", atoms, answer_sets)
        }
        Report::MostPreferred { atoms, answer_sets, .. } => {
            render_answer_sets(&mut out, "most-preferred answer sets", atoms, answer_sets)
        }
        Report::StableModels { stable_models, .. } => {
            let _ = writeln!(out, "stable models: {}", stable_models.len());
            for s in stable_models {
                let _ = writeln!(out, "{}", render_set(s));
            }
        }
        Report::Equivalence { atoms, verdict } => {
            let mode = verdict.mode.map(|m| format!(" ({m})")).unwrap_or_default();
            if verdict.equivalent {
                let _ = writeln!(out, "equivalent{mode}");
            } else {
                let _ = writeln!(out, "not equivalent{mode}");
                if let (Some(w), Some(s)) = (&verdict.witness, verdict.separated) {
                    let _ = writeln!(out, "witness: {} ({})", render(w, atoms), separated_text(s));
                }
                if let Some(ctx) = &verdict.context {
                    let case = match verdict.context_case {
                        Some(ContextCase::Case1) => " (case 1)",
                        Some(ContextCase::Case2) => " (case 2)",
                        None => "",
                    };
                    let _ = writeln!(out, "context{case}:");
                    out.push_str(&ctx.to_string());
                }
                if let Some(m) = &verdict.discriminating_interpretation {
                    let _ = writeln!(out, "discriminating interpretation: {}", render(m, atoms));
                }
            }
        }
        Report::WitnessContext { atoms, report } => {
            let _ = writeln!(out, "witness is a {}", separated_text(report.separated));
            let case = match report.case {
                ContextCase::Case1 => 1,
                ContextCase::Case2 => 2,
            };
            let _ = writeln!(out, "context (case {case}):");
            out.push_str(&report.context.to_string());
            let _ = writeln!(out, "M': {}", render(&report.m_prime, atoms));
            if let Some(m) = &report.m_doubleprime {
                let _ = writeln!(out, "M'': {}", render(m, atoms));
            }
            let verdict = if report.check.passed() { "verified" } else { "FAILED" };
            let _ = writeln!(out, "check: {verdict}");
        }
        Report::Reduction { p1, p2, .. } => {
            let _ = writeln!(out, "% P1");
            out.push_str(&p1.to_string());
            let _ = writeln!(out, "% P2");
            out.push_str(&p2.to_string());
        }
        Report::ReductionCheck { check } => {
            let _ = writeln!(out, "satisfiable: {}", check.satisfiable);
            let _ = writeln!(out, "equivalent: {}", check.equivalent);
            let _ = writeln!(out, "reduction {}", if check.passed { "verified" } else { "FAILED" });
        }
        Report::Campaign { passed, report } => {
            let _ = writeln!(out, "iterations: {}", report.iterations);
            let _ = writeln!(
                out,
                "pairs: {} equivalent, {} not equivalent ({} normal)",
                report.equivalent_pairs, report.non_equivalent_pairs, report.normal_pairs
            );
            let _ = writeln!(
                out,
                "contexts: {} sampled, {} constructed and verified",
                report.contexts_sampled, report.contexts_verified
            );
            let _ = writeln!(out, "stable model checks: {}", report.stable_model_checks);
            for v in &report.violations {
                let _ = writeln!(out, "violation {:?} at iteration {}: {}", v.property, v.iteration, v.detail);
                let _ = writeln!(out, "% P1\n{}% P2\n{}", v.p1, v.p2);
                if let Some(c) = &v.context {
                    let _ = writeln!(out, "% context\n{c}");
                }
            }
            for f in &report.findings {
                let _ = writeln!(out, "finding {:?} at iteration {}: {}", f.property, f.iteration, f.detail);
                let _ = writeln!(out, "% P1\n{}% P2\n{}", f.p1, f.p2);
            }
            let _ = writeln!(out, "campaign {}", if *passed { "passed" } else { "FAILED" });
        }
    }
    out
}
