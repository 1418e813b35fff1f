//! Randomized differential campaigns over small generated programs.
//!
//! Each iteration draws a pair of programs (and context programs) from an RNG
//! stream derived from `(seed, iteration)`, so a campaign is reproducible no
//! matter how iterations are scheduled across threads.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::equivalence::{normal_strong_eq, strong_eq, Mode, Separated};
use crate::error::{Error, Result};
use crate::interpretation::Interpretation;
use crate::logic::is_model;
use crate::program::{Atom, Program, Rule};
use crate::semantics::{self, Limits};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeneratorConfig {
    pub num_atoms: usize,
    pub num_rules: usize,
    pub max_head: usize,
    pub max_body: usize,
    pub neg_prob: f64,
    pub seed: u64,
    pub iterations: usize,
    pub contexts_per_pair: usize,
}

impl Default for GeneratorConfig {
    fn default() -> GeneratorConfig {
        GeneratorConfig {
            num_atoms: 4,
            num_rules: 4,
            max_head: 3,
            max_body: 2,
            neg_prob: 0.3,
            seed: 42,
            iterations: 1000,
            contexts_per_pair: 3,
        }
    }
}

impl GeneratorConfig {
    /// Atoms added by sampled contexts on top of the program alphabet.
    pub fn fresh_context_atoms(&self) -> usize {
        self.num_atoms / 2
    }

    pub fn validate(&self, limits: &Limits) -> Result<()> {
        if !(0.0..=1.0).contains(&self.neg_prob) {
            return Err(Error::Precondition(format!("neg_prob {} outside [0, 1]", self.neg_prob)));
        }
        if self.num_atoms == 0 || self.max_head == 0 {
            return Err(Error::Precondition("num_atoms and max_head must be positive".into()));
        }
        limits.check(self.num_atoms + self.fresh_context_atoms())
    }
}

/// Program atoms: `a`, `b`, ... (then `a26`, `a27`, ... past the alphabet).
pub fn program_alphabet(n: usize) -> Vec<Atom> {
    (0..n)
        .map(|i| {
            if i < 26 {
                Atom::new(((b'a' + i as u8) as char).to_string())
            } else {
                Atom::new(format!("a{i}"))
            }
        })
        .collect()
}

fn context_alphabet(cfg: &GeneratorConfig) -> Vec<Atom> {
    let shared = program_alphabet(cfg.num_atoms);
    let keep = cfg.num_atoms - cfg.fresh_context_atoms();
    let mut atoms: Vec<Atom> = shared.into_iter().take(keep).collect();
    atoms.extend((0..cfg.fresh_context_atoms()).map(|i| Atom::new(format!("q{i}"))));
    atoms
}

fn random_rule<R: Rng>(alphabet: &[Atom], max_head: usize, max_body: usize, neg_prob: f64, rng: &mut R) -> Rule {
    let head_len = rng.gen_range(1..=max_head.min(alphabet.len()));
    let head: Vec<Atom> = alphabet.choose_multiple(rng, head_len).cloned().collect();
    let body_len = rng.gen_range(0..=max_body.min(alphabet.len()));
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for atom in alphabet.choose_multiple(rng, body_len) {
        if rng.gen_bool(neg_prob) {
            neg.push(atom.clone());
        } else {
            pos.push(atom.clone());
        }
    }
    Rule::new(head, pos, neg).expect("head has at least one atom")
}

fn random_program_over<R: Rng>(alphabet: &[Atom], cfg: &GeneratorConfig, max_head: usize, rng: &mut R) -> Program {
    Program::from_rules(
        (0..cfg.num_rules).map(|_| random_rule(alphabet, max_head, cfg.max_body, cfg.neg_prob, rng)),
    )
}

/// `num_rules` random rules over the program alphabet (duplicates merge).
pub fn random_program<R: Rng>(cfg: &GeneratorConfig, rng: &mut R) -> Program {
    random_program_over(&program_alphabet(cfg.num_atoms), cfg, cfg.max_head, rng)
}

pub fn iteration_rng(seed: u64, iteration: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(iteration as u64);
    rng
}

/// Deliberately broken semantics, used to check that a campaign notices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mutant {
    /// Answer sets without the solidity requirement.
    DropSolidity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    /// Both four-valued modes return the same verdict.
    ModeCoincidence,
    /// Equivalent programs keep equal answer sets and most-preferred answer
    /// sets under a context.
    EquivalenceSoundness,
    /// A non-equivalent verdict carries a context that provably separates.
    ContextValidity,
    /// Answer sets of a normal program are its stable models.
    StableModelAgreement,
    /// The normal-program decider agrees with the four-valued one.
    NormalConsistency,
}

#[derive(Clone, Copy, Debug)]
struct Env {
    limits: Limits,
    mutant: Option<Mutant>,
}

impl Env {
    fn answer_sets(&self, p: &Program) -> Result<Vec<Interpretation>> {
        match self.mutant {
            Some(Mutant::DropSolidity) => semantics::minimal_models(p, &self.limits),
            None => Ok(semantics::answer_sets(p, &self.limits)?
                .into_iter()
                .map(|s| s.interpretation)
                .collect()),
        }
    }

    fn most_preferred(&self, p: &Program) -> Result<Vec<Interpretation>> {
        let sets: Vec<_> = self
            .answer_sets(p)?
            .into_iter()
            .map(semantics::AnswerSet::new)
            .collect();
        Ok(semantics::most_preferred_of(&sets)
            .into_iter()
            .map(|s| s.interpretation)
            .collect())
    }
}

fn same_set(a: &[Interpretation], b: &[Interpretation]) -> bool {
    a.len() == b.len() && a.iter().all(|x| b.contains(x)) && b.iter().all(|x| a.contains(x))
}

impl Property {
    /// `Ok(Some(detail))` when the property fails on the given instance.
    pub fn violated(
        self,
        p1: &Program,
        p2: &Program,
        ctx: Option<&Program>,
        limits: &Limits,
        mutant: Option<Mutant>,
    ) -> Result<Option<String>> {
        self.check(p1, p2, ctx, &Env { limits: *limits, mutant })
    }

    fn check(self, p1: &Program, p2: &Program, ctx: Option<&Program>, env: &Env) -> Result<Option<String>> {
        match self {
            Property::ModeCoincidence => {
                let mp = strong_eq(p1, p2, Mode::MostPreferred, &env.limits)?;
                let all = strong_eq(p1, p2, Mode::AllAnswerSets, &env.limits)?;
                Ok((mp.equivalent != all.equivalent || mp.witness != all.witness).then(|| {
                    format!("most_preferred: {}, all_answer_sets: {}", mp.equivalent, all.equivalent)
                }))
            }
            Property::EquivalenceSoundness => {
                let Some(ctx) = ctx else { return Ok(None) };
                if !strong_eq(p1, p2, Mode::MostPreferred, &env.limits)?.equivalent {
                    return Ok(None);
                }
                let (u1, u2) = (p1.union(ctx), p2.union(ctx));
                if !same_set(&env.answer_sets(&u1)?, &env.answer_sets(&u2)?) {
                    return Ok(Some("answer sets differ under context".into()));
                }
                if !same_set(&env.most_preferred(&u1)?, &env.most_preferred(&u2)?) {
                    return Ok(Some("most-preferred answer sets differ under context".into()));
                }
                Ok(None)
            }
            Property::ContextValidity => {
                let verdict = match strong_eq(p1, p2, Mode::MostPreferred, &env.limits) {
                    Err(Error::ContextVerification(msg)) => return Ok(Some(msg)),
                    other => other?,
                };
                if verdict.equivalent {
                    return Ok(None);
                }
                let witness = verdict.witness.as_ref().expect("non-equivalent verdicts carry a witness");
                let expected = match verdict.separated {
                    Some(Separated::FirstOnly) => (true, false),
                    _ => (false, true),
                };
                if (is_model(p1, witness), is_model(p2, witness)) != expected {
                    return Ok(Some(format!("witness {witness} does not separate as {:?}", verdict.separated)));
                }
                let context = verdict.context.as_ref().expect("non-equivalent verdicts carry a context");
                let fresh_ok = context
                    .atoms()
                    .iter()
                    .filter(|a| !p1.contains_atom(a.name()) && !p2.contains_atom(a.name()))
                    .all(|a| {
                        let n = a.name();
                        n.starts_with("t__") || n.starts_with("f__") || n.starts_with("d__")
                    });
                if !fresh_ok {
                    return Ok(Some("context introduces non-fresh foreign atoms".into()));
                }
                let (u1, u2) = (p1.union(context), p2.union(context));
                if u1.atoms().len().max(u2.atoms().len()) <= env.limits.cap {
                    if same_set(&env.most_preferred(&u1)?, &env.most_preferred(&u2)?) {
                        return Ok(Some("context leaves most-preferred answer sets equal".into()));
                    }
                    if same_set(&env.answer_sets(&u1)?, &env.answer_sets(&u2)?) {
                        return Ok(Some("context leaves answer sets equal".into()));
                    }
                }
                Ok(None)
            }
            Property::StableModelAgreement => {
                let program = match ctx {
                    Some(c) => p1.union(c),
                    None => p1.clone(),
                };
                if !program.is_normal() {
                    return Ok(None);
                }
                let stable: Vec<Interpretation> = semantics::gl_stable_models(&program, &env.limits)?
                    .iter()
                    .map(|s| semantics::two_valued_embedding(s, program.atoms()))
                    .collect();
                let answer = env.answer_sets(&program)?;
                Ok((!same_set(&stable, &answer)).then(|| {
                    format!("{} stable models vs {} answer sets", stable.len(), answer.len())
                }))
            }
            Property::NormalConsistency => {
                if !p1.is_normal() || !p2.is_normal() {
                    return Ok(None);
                }
                let four = strong_eq(p1, p2, Mode::MostPreferred, &env.limits)?.equivalent;
                let three = normal_strong_eq(p1, p2, &env.limits)?.equivalent;
                Ok((four != three).then(|| {
                    format!("four-valued equivalent: {four}, three-valued equivalent: {three}")
                }))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub property: Property,
    pub iteration: usize,
    pub seed: u64,
    pub detail: String,
    pub p1: String,
    pub p2: String,
    pub context: Option<String>,
    /// Rules or literals removed by shrinking.
    pub shrink_steps: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CampaignReport {
    pub config: Option<GeneratorConfig>,
    pub mutant: Option<Mutant>,
    pub iterations: usize,
    pub equivalent_pairs: usize,
    pub non_equivalent_pairs: usize,
    pub mode_agreements: usize,
    pub contexts_sampled: usize,
    pub contexts_verified: usize,
    pub normal_pairs: usize,
    pub stable_model_checks: usize,
    pub violations: Vec<Violation>,
    /// Disagreements between the normal-program and four-valued deciders.
    pub findings: Vec<Violation>,
}

impl CampaignReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Greedily removes rules, then body literals, from `p1`, `p2` and the
/// context while `property` keeps failing.
pub fn shrink(
    property: Property,
    mut p1: Program,
    mut p2: Program,
    mut ctx: Option<Program>,
    limits: &Limits,
    mutant: Option<Mutant>,
) -> (Program, Program, Option<Program>, usize) {
    let env = Env { limits: *limits, mutant };
    let fails = |a: &Program, b: &Program, c: Option<&Program>| {
        matches!(property.check(a, b, c, &env), Ok(Some(_)))
    };
    let mut steps = 0;
    loop {
        let mut progressed = false;
        for slot in 0..3 {
            let current = match slot {
                0 => p1.clone(),
                1 => p2.clone(),
                _ => match &ctx {
                    Some(c) => c.clone(),
                    None => continue,
                },
            };
            let mut candidates: Vec<Program> = (0..current.len()).map(|i| current.without_rule(i)).collect();
            for (i, rule) in current.rules().iter().enumerate() {
                for lit in 0..rule.body_len() {
                    if let Some(r) = rule.without_body_literal(lit) {
                        candidates.push(current.with_rule_replaced(i, r));
                    }
                }
            }
            for cand in candidates {
                let ok = match slot {
                    0 => fails(&cand, &p2, ctx.as_ref()),
                    1 => fails(&p1, &cand, ctx.as_ref()),
                    _ => fails(&p1, &p2, Some(&cand)),
                };
                if ok {
                    match slot {
                        0 => p1 = cand,
                        1 => p2 = cand,
                        _ => ctx = Some(cand),
                    }
                    steps += 1;
                    progressed = true;
                    break;
                }
            }
        }
        if !progressed {
            return (p1, p2, ctx, steps);
        }
    }
}

#[derive(Default)]
struct Outcome {
    equivalent: bool,
    modes_agree: bool,
    contexts_sampled: usize,
    context_verified: bool,
    normal: bool,
    stable_checks: usize,
    violations: Vec<(Property, String, Program, Program, Option<Program>)>,
    findings: Vec<(Property, String, Program, Program, Option<Program>)>,
}

fn draw_pair(cfg: &GeneratorConfig, rng: &mut ChaCha8Rng) -> (Program, Program, bool) {
    let normal = rng.gen_bool(0.25);
    let max_head = if normal { 1 } else { cfg.max_head };
    let alphabet = program_alphabet(cfg.num_atoms);
    let p1 = random_program_over(&alphabet, cfg, max_head, rng);
    let p2 = match rng.gen_range(0..4) {
        0 => {
            let mut rules = p1.rules().to_vec();
            rules.shuffle(rng);
            Program::from_rules(rules)
        }
        1 => {
            let mut p = p1.clone();
            p.push(random_rule(&alphabet, max_head, cfg.max_body, cfg.neg_prob, rng));
            p
        }
        2 if !p1.is_empty() => p1.without_rule(rng.gen_range(0..p1.len())),
        _ => random_program_over(&alphabet, cfg, max_head, rng),
    };
    (p1, p2, normal)
}

fn run_iteration(cfg: &GeneratorConfig, env: &Env, iteration: usize) -> Result<Outcome> {
    let mut rng = iteration_rng(cfg.seed, iteration);
    let (p1, p2, normal) = draw_pair(cfg, &mut rng);
    let ctx_alphabet = context_alphabet(cfg);
    let contexts: Vec<Program> = (0..cfg.contexts_per_pair)
        .map(|_| {
            let max_head = if normal { 1 } else { cfg.max_head };
            random_program_over(&ctx_alphabet, cfg, max_head, &mut rng)
        })
        .collect();

    let mut out = Outcome {
        normal,
        ..Outcome::default()
    };
    let record = |out: &mut Outcome, prop: Property, ctx: Option<&Program>| -> Result<()> {
        if let Some(detail) = prop.check(&p1, &p2, ctx, env)? {
            let entry = (prop, detail, p1.clone(), p2.clone(), ctx.cloned());
            if prop == Property::NormalConsistency {
                out.findings.push(entry);
            } else {
                out.violations.push(entry);
            }
        }
        Ok(())
    };

    let before = out.violations.len();
    record(&mut out, Property::ModeCoincidence, None)?;
    out.modes_agree = out.violations.len() == before;
    out.equivalent = strong_eq(&p1, &p2, Mode::MostPreferred, &env.limits)
        .map(|v| v.equivalent)
        .unwrap_or(false);

    if out.equivalent {
        for ctx in &contexts {
            record(&mut out, Property::EquivalenceSoundness, Some(ctx))?;
            out.contexts_sampled += 1;
        }
    } else {
        let before = out.violations.len();
        record(&mut out, Property::ContextValidity, None)?;
        out.context_verified = out.violations.len() == before;
    }

    if p1.is_normal() {
        record(&mut out, Property::StableModelAgreement, None)?;
        out.stable_checks += 1;
        for ctx in contexts.iter().filter(|c| c.is_normal()) {
            record(&mut out, Property::StableModelAgreement, Some(ctx))?;
            out.stable_checks += 1;
        }
    }
    if p1.is_normal() && p2.is_normal() {
        record(&mut out, Property::NormalConsistency, None)?;
    }
    Ok(out)
}

pub fn run_campaign(cfg: &GeneratorConfig, limits: &Limits) -> Result<CampaignReport> {
    run_campaign_with(cfg, limits, None)
}

/// [`run_campaign`] against optionally mutated semantics.
pub fn run_campaign_with(cfg: &GeneratorConfig, limits: &Limits, mutant: Option<Mutant>) -> Result<CampaignReport> {
    cfg.validate(limits)?;
    let env = Env {
        limits: *limits,
        mutant,
    };
    let outcomes: Vec<Outcome> = (0..cfg.iterations)
        .into_par_iter()
        .map(|i| run_iteration(cfg, &env, i))
        .collect::<Result<_>>()?;

    let mut report = CampaignReport {
        config: Some(cfg.clone()),
        mutant,
        iterations: cfg.iterations,
        ..CampaignReport::default()
    };
    let to_violation = |i: usize, (property, detail, p1, p2, ctx): (Property, String, Program, Program, Option<Program>)| {
        let (p1, p2, ctx, steps) = shrink(property, p1, p2, ctx, limits, mutant);
        Violation {
            property,
            iteration: i,
            seed: cfg.seed,
            detail,
            p1: p1.to_string(),
            p2: p2.to_string(),
            context: ctx.map(|c| c.to_string()),
            shrink_steps: steps,
        }
    };
    for (i, out) in outcomes.into_iter().enumerate() {
        if out.equivalent {
            report.equivalent_pairs += 1;
        } else {
            report.non_equivalent_pairs += 1;
        }
        report.mode_agreements += usize::from(out.modes_agree);
        report.contexts_sampled += out.contexts_sampled;
        report.contexts_verified += usize::from(out.context_verified);
        report.normal_pairs += usize::from(out.normal);
        report.stable_model_checks += out.stable_checks;
        for v in out.violations {
            report.violations.push(to_violation(i, v));
        }
        for f in out.findings {
            report.findings.push(to_violation(i, f));
        }
    }
    Ok(report)
}
