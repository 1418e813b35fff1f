//! Strong equivalence as four-valued logical equivalence.
//!
//! When two programs differ on some interpretation `M`, [`build_witness_context`]
//! turns `M` into a context program `P` and an interpretation `M′` such that
//! `M′` is a most-preferred answer set of exactly one of `P1 ∪ P`, `P2 ∪ P`.
//! Every emitted context is re-checked by direct computation before it is
//! returned from [`strong_eq`]; a failed check is an error, never a verdict.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::Serialize;

use crate::engine::{Domain, Search, ALL_VALUES, THREE_VALUES};
use crate::error::{Error, Result};
use crate::interpretation::Interpretation;
use crate::logic::is_model;
use crate::program::{Atom, Program, Rule};
use crate::semantics::{self, Limits};
use crate::truth::TruthValue::{F, FStar, T, TStar};

const FRESH_ATTEMPTS: usize = 10_000;

/// Which notion of strong equivalence a verdict was requested for. Both
/// four-valued modes are decided by the same logical-equivalence test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    MostPreferred,
    AllAnswerSets,
    /// Standard answer sets of normal programs, decided on three-valued models.
    Normal,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::MostPreferred => "most_preferred",
            Mode::AllAnswerSets => "all_answer_sets",
            Mode::Normal => "normal",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Separated {
    FirstOnly,
    SecondOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ContextCase {
    /// `M′` is not a model of the other program.
    Case1,
    /// `M′` is a model of both programs.
    Case2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceVerdict {
    pub equivalent: bool,
    pub mode: Option<Mode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Interpretation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub separated: Option<Separated>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "program_text")]
    pub context: Option<Program>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub context_case: Option<ContextCase>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discriminating_interpretation: Option<Interpretation>,
}

fn program_text<S: serde::Serializer>(p: &Option<Program>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match p {
        Some(p) => s.serialize_str(&p.to_string()),
        None => s.serialize_none(),
    }
}

impl EquivalenceVerdict {
    fn equivalent(mode: Option<Mode>) -> EquivalenceVerdict {
        EquivalenceVerdict {
            equivalent: true,
            mode,
            witness: None,
            separated: None,
            context: None,
            context_case: None,
            discriminating_interpretation: None,
        }
    }

    fn separated_by(mode: Option<Mode>, witness: Interpretation, separated: Separated) -> EquivalenceVerdict {
        EquivalenceVerdict {
            equivalent: false,
            witness: Some(witness),
            separated: Some(separated),
            ..EquivalenceVerdict::equivalent(mode)
        }
    }
}

/// The auxiliary atoms and interpretations of the witness construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessScaffold {
    /// `t_A` for every `A` with `M(A) = F*`.
    pub t_set: Vec<Atom>,
    /// `f_A` for every `A` with `M(A) = F*`.
    pub f_set: Vec<Atom>,
    /// Pairs `(A, t_A, f_A)`.
    pub fresh_for: Vec<(Atom, Atom, Atom)>,
    pub d: Option<Atom>,
    pub m_prime: Interpretation,
    pub m_doubleprime: Option<Interpretation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessContext {
    pub program: Program,
    pub case: ContextCase,
    pub scaffold: WitnessScaffold,
    /// The witness modelled the second program, so the construction ran with
    /// the arguments exchanged.
    pub swapped: bool,
    /// Atoms the construction ranges over: those of both programs, then fresh ones.
    pub domain: Vec<Atom>,
}

impl WitnessContext {
    pub fn separated(&self) -> Separated {
        if self.swapped {
            Separated::SecondOnly
        } else {
            Separated::FirstOnly
        }
    }
}

/// First interpretation, in packed order over `domain`, allowed by `mask`
/// that is a model of exactly one program.
fn first_disagreement(p1: &Program, p2: &Program, domain: &Domain, mask: u8) -> Option<(Interpretation, Separated)> {
    let r1 = domain.compile(p1);
    let r2 = domain.compile(p2);
    let mut best: Option<(Vec<u8>, Separated)> = None;
    let mut consider = |codes: Vec<u8>, sep: Separated| {
        if best.as_ref().map_or(true, |(b, _)| codes < *b) {
            best = Some((codes, sep));
        }
    };
    for rule in &r2 {
        let search = Search::uniform(domain.len(), mask).satisfying(&r1).violating(rule);
        if let Some(codes) = search.first() {
            consider(codes, Separated::FirstOnly);
        }
    }
    for rule in &r1 {
        let search = Search::uniform(domain.len(), mask).satisfying(&r2).violating(rule);
        if let Some(codes) = search.first() {
            consider(codes, Separated::SecondOnly);
        }
    }
    best.map(|(codes, sep)| (domain.interpretation(&codes), sep))
}

/// Same four-valued models? The witness is the first interpretation over the
/// joint atoms that is a model of one program only.
pub fn logically_equivalent(p1: &Program, p2: &Program, limits: &Limits) -> Result<EquivalenceVerdict> {
    let domain = Domain::new(p1.joint_atoms(p2));
    limits.check(domain.len())?;
    Ok(match first_disagreement(p1, p2, &domain, ALL_VALUES) {
        None => EquivalenceVerdict::equivalent(None),
        Some((witness, sep)) => EquivalenceVerdict::separated_by(None, witness, sep),
    })
}

/// Picks names not in `taken` (and records them there).
struct FreshNames<'a> {
    taken: &'a mut HashSet<Atom>,
}

impl FreshNames<'_> {
    /// `base`, or `base_0`, `base_1`, ... when taken.
    fn named(&mut self, base: &str) -> Result<Atom> {
        let candidates =
            std::iter::once(base.to_string()).chain((0..FRESH_ATTEMPTS).map(|i| format!("{base}_{i}")));
        for name in candidates {
            let atom = Atom::new(&name);
            if self.taken.insert(atom.clone()) {
                return Ok(atom);
            }
        }
        Err(Error::FreshAtomsExhausted(base.to_string()))
    }

    fn d_atom(&mut self) -> Result<Atom> {
        for i in 0..FRESH_ATTEMPTS {
            let atom = Atom::new(format!("d__{i}"));
            if self.taken.insert(atom.clone()) {
                return Ok(atom);
            }
        }
        Err(Error::FreshAtomsExhausted("d__".into()))
    }
}

fn orient<'a>(p1: &'a Program, p2: &'a Program, m: &Interpretation) -> Result<(&'a Program, &'a Program, bool)> {
    let joint = p1.joint_atoms(p2);
    let joint_set: HashSet<&Atom> = joint.iter().collect();
    if let Some(stray) = m.support().find(|a| !joint_set.contains(a)) {
        return Err(Error::Precondition(format!(
            "witness assigns {} to `{stray}`, which occurs in neither program",
            m.get(stray)
        )));
    }
    match (is_model(p1, m), is_model(p2, m)) {
        (true, false) => Ok((p1, p2, false)),
        (false, true) => Ok((p2, p1, true)),
        (true, true) => Err(Error::Precondition("witness is a model of both programs".into())),
        (false, false) => Err(Error::Precondition("witness is a model of neither program".into())),
    }
}

/// Builds `M′` and the context program separating the most-preferred answer
/// sets (and the answer sets) of `P1 ∪ P` and `P2 ∪ P`.
///
/// `m` must be a model of exactly one of the programs and `F` outside their
/// atoms. When it models `p2` the construction runs on the swapped pair.
pub fn build_witness_context(p1: &Program, p2: &Program, m: &Interpretation) -> Result<WitnessContext> {
    let (_, second, swapped) = orient(p1, p2, m)?;
    let joint = p1.joint_atoms(p2);
    let mut taken: HashSet<Atom> = joint.iter().cloned().collect();
    let mut fresh = FreshNames { taken: &mut taken };

    let mut fresh_for = Vec::new();
    for a in joint.iter().filter(|a| m.get(a) == FStar) {
        let t = fresh.named(&format!("t__{a}"))?;
        let f = fresh.named(&format!("f__{a}"))?;
        fresh_for.push((a.clone(), t, f));
    }
    let t_set: Vec<Atom> = fresh_for.iter().map(|(_, t, _)| t.clone()).collect();
    let f_set: Vec<Atom> = fresh_for.iter().map(|(_, _, f)| f.clone()).collect();

    let mut m_prime = Interpretation::new();
    for a in &joint {
        let v = match m.get(a) {
            TStar => T,
            v => v,
        };
        m_prime.set(a.clone(), v);
    }
    for (_, t, f) in &fresh_for {
        m_prime.set(t.clone(), T);
        m_prime.set(f.clone(), FStar);
    }

    let mut domain = joint.clone();
    for (_, t, f) in &fresh_for {
        domain.push(t.clone());
        domain.push(f.clone());
    }

    let preference_rules = |program: &mut Program| {
        for (a, t, _) in &fresh_for {
            program.push(Rule::new(vec![a.clone(), t.clone()], vec![], vec![]).expect("nonempty head"));
        }
        for (a, _, f) in &fresh_for {
            program.push(Rule::new(vec![f.clone()], vec![a.clone()], vec![f.clone()]).expect("nonempty head"));
        }
    };

    let mut program = Program::new();
    let case;
    let mut d = None;
    let mut m_doubleprime = None;
    if !is_model(second, &m_prime) {
        case = ContextCase::Case1;
        for a in domain.iter().filter(|a| m_prime.get(a) == T) {
            program.push(Rule::fact(a.clone()));
        }
        preference_rules(&mut program);
    } else {
        case = ContextCase::Case2;
        let d_atom = fresh.d_atom()?;
        for a in joint.iter().filter(|a| m.get(a) == T) {
            program.push(Rule::fact(a.clone()));
        }
        preference_rules(&mut program);
        let tstar: Vec<&Atom> = joint.iter().filter(|a| m.get(a) == TStar).collect();
        for a in &tstar {
            for b in &tstar {
                if a != b {
                    program.push(Rule::new(vec![(*b).clone()], vec![(*a).clone()], vec![]).expect("nonempty head"));
                }
            }
        }
        for a in &tstar {
            program.push(Rule::new(vec![d_atom.clone()], vec![], vec![(*a).clone()]).expect("nonempty head"));
        }
        let mut mdp = Interpretation::new();
        for a in &joint {
            mdp.set(a.clone(), m.get(a));
        }
        for (_, t, f) in &fresh_for {
            mdp.set(t.clone(), T);
            mdp.set(f.clone(), FStar);
        }
        m_prime.set(d_atom.clone(), F);
        mdp.set(d_atom.clone(), F);
        domain.push(d_atom.clone());
        m_doubleprime = Some(mdp);
        d = Some(d_atom);
    }

    Ok(WitnessContext {
        program,
        case,
        scaffold: WitnessScaffold {
            t_set,
            f_set,
            fresh_for,
            d,
            m_prime,
            m_doubleprime,
        },
        swapped,
        domain,
    })
}

/// Outcome of re-checking a constructed context by direct computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContextCheck {
    /// `M′` is a model of the union on the side it is claimed for.
    pub m_prime_is_model: bool,
    /// `M′` is an answer set of that union.
    pub m_prime_is_answer_set: bool,
    /// `M′` is a most-preferred answer set of that union.
    pub m_prime_is_most_preferred: bool,
    /// Case 1: `M′` is no model of the other union. Case 2: `M′` is no answer
    /// set (hence not most-preferred) of the other union.
    pub rejected_by_other_side: bool,
    /// Case 2 only: `M″ ≺ M′` and `M″` is a model of the other union.
    pub m_doubleprime_below: Option<bool>,
    /// Every model of the two auxiliary rule groups leaves no `F*` atom of `M′` at `F`.
    pub property_p1: bool,
}

impl ContextCheck {
    pub fn passed(&self) -> bool {
        self.m_prime_is_model
            && self.m_prime_is_answer_set
            && self.m_prime_is_most_preferred
            && self.rejected_by_other_side
            && self.m_doubleprime_below.unwrap_or(true)
            && self.property_p1
    }
}

fn auxiliary_groups(ctx: &WitnessContext) -> Program {
    let mut aux = Program::new();
    for (a, t, _) in &ctx.scaffold.fresh_for {
        aux.push(Rule::new(vec![a.clone(), t.clone()], vec![], vec![]).expect("nonempty head"));
    }
    for (a, _, f) in &ctx.scaffold.fresh_for {
        aux.push(Rule::new(vec![f.clone()], vec![a.clone()], vec![f.clone()]).expect("nonempty head"));
    }
    aux
}

/// Property (P1): no model of the auxiliary groups maps an `F*` atom of `M′` to `F`.
fn check_property_p1(ctx: &WitnessContext) -> bool {
    let aux = auxiliary_groups(ctx);
    let domain = Domain::of(&aux);
    let rules = domain.compile(&aux);
    domain.atoms().iter().enumerate().all(|(i, a)| {
        if ctx.scaffold.m_prime.get(a) != FStar {
            return true;
        }
        let mut masks = vec![ALL_VALUES; domain.len()];
        masks[i] = 1 << F.code();
        Search::new(masks).satisfying(&rules).first().is_none()
    })
}

/// Re-checks the claims made for a context against the oriented pair
/// (`first` modelled by the witness, `second` not).
pub fn verify_witness_context(p1: &Program, p2: &Program, ctx: &WitnessContext) -> ContextCheck {
    let (first, second) = if ctx.swapped { (p2, p1) } else { (p1, p2) };
    let m_prime = &ctx.scaffold.m_prime;
    let u_first = first.union(&ctx.program);
    let u_second = second.union(&ctx.program);
    let (target, other) = match ctx.case {
        ContextCase::Case1 => (&u_first, &u_second),
        ContextCase::Case2 => (&u_second, &u_first),
    };
    let rejected_by_other_side = match ctx.case {
        ContextCase::Case1 => !is_model(other, m_prime),
        ContextCase::Case2 => !semantics::is_answer_set(other, m_prime),
    };
    let m_doubleprime_below = ctx.scaffold.m_doubleprime.as_ref().map(|mdp| {
        let dom = other.atoms();
        mdp.precedes_on(m_prime, dom) && is_model(other, mdp)
    });
    ContextCheck {
        m_prime_is_model: is_model(target, m_prime),
        m_prime_is_answer_set: semantics::is_answer_set(target, m_prime),
        m_prime_is_most_preferred: semantics::is_most_preferred(target, m_prime),
        rejected_by_other_side,
        m_doubleprime_below,
        property_p1: check_property_p1(ctx),
    }
}

/// Strong equivalence under most-preferred answer sets or under all answer
/// sets; both reduce to logical equivalence. A non-equivalent verdict carries
/// a verified separating context.
pub fn strong_eq(p1: &Program, p2: &Program, mode: Mode, limits: &Limits) -> Result<EquivalenceVerdict> {
    if mode == Mode::Normal {
        return normal_strong_eq(p1, p2, limits);
    }
    let mut verdict = logically_equivalent(p1, p2, limits)?;
    verdict.mode = Some(mode);
    let Some(witness) = verdict.witness.clone() else {
        return Ok(verdict);
    };
    let ctx = build_witness_context(p1, p2, &witness)?;
    let check = verify_witness_context(p1, p2, &ctx);
    if !check.passed() {
        return Err(Error::ContextVerification(format!("{check:?} for context\n{}", ctx.program)));
    }
    verdict.context = Some(ctx.program);
    verdict.context_case = Some(ctx.case);
    verdict.discriminating_interpretation = Some(ctx.scaffold.m_prime.restrict(&ctx.domain));
    Ok(verdict)
}

fn require_normal(p: &Program) -> Result<()> {
    match p.rules().iter().find(|r| !r.is_normal()) {
        Some(r) => Err(Error::NotNormal(r.to_string())),
        None => Ok(()),
    }
}

/// Context for normal programs from a three-valued witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalContext {
    pub program: Program,
    pub case: ContextCase,
    pub swapped: bool,
    pub d: Option<Atom>,
    /// Two-valued collapse of the witness: `T` where it is at least `T*`.
    pub m_prime: Interpretation,
    pub domain: Vec<Atom>,
}

pub fn build_normal_context(p1: &Program, p2: &Program, m: &Interpretation) -> Result<NormalContext> {
    require_normal(p1)?;
    require_normal(p2)?;
    let (_, second, swapped) = orient(p1, p2, m)?;
    let joint = p1.joint_atoms(p2);
    if !m.is_three_valued_on(&joint) {
        return Err(Error::Precondition("witness must be three-valued".into()));
    }
    let mut m_prime = Interpretation::new();
    for a in &joint {
        m_prime.set(a.clone(), if m.get(a) >= TStar { T } else { F });
    }
    let mut domain = joint.clone();
    let mut program = Program::new();
    let mut d = None;
    let case = if !is_model(second, &m_prime) {
        for a in joint.iter().filter(|a| m_prime.get(a) == T) {
            program.push(Rule::fact(a.clone()));
        }
        ContextCase::Case1
    } else {
        let mut taken: HashSet<Atom> = joint.iter().cloned().collect();
        let d_atom = FreshNames { taken: &mut taken }.d_atom()?;
        for a in joint.iter().filter(|a| m.get(a) == T) {
            program.push(Rule::fact(a.clone()));
        }
        let tstar: Vec<&Atom> = joint.iter().filter(|a| m.get(a) == TStar).collect();
        for a in &tstar {
            for b in &tstar {
                if a != b {
                    program.push(Rule::new(vec![(*b).clone()], vec![(*a).clone()], vec![]).expect("nonempty head"));
                }
            }
        }
        for a in &tstar {
            program.push(Rule::new(vec![d_atom.clone()], vec![], vec![(*a).clone()]).expect("nonempty head"));
        }
        m_prime.set(d_atom.clone(), F);
        domain.push(d_atom.clone());
        d = Some(d_atom);
        ContextCase::Case2
    };
    Ok(NormalContext {
        program,
        case,
        swapped,
        d,
        m_prime,
        domain,
    })
}

/// Checks that `M′` is a stable model of the claimed union and not of the other.
pub fn verify_normal_context(p1: &Program, p2: &Program, ctx: &NormalContext) -> Result<bool> {
    let (first, second) = if ctx.swapped { (p2, p1) } else { (p1, p2) };
    let truth: BTreeSet<Atom> = ctx.m_prime.support().cloned().collect();
    let u_first = first.union(&ctx.program);
    let u_second = second.union(&ctx.program);
    Ok(match ctx.case {
        ContextCase::Case1 => {
            semantics::is_stable_model(&u_first, &truth)? && !is_model(&u_second, &ctx.m_prime)
        }
        ContextCase::Case2 => {
            semantics::is_stable_model(&u_second, &truth)? && !semantics::is_stable_model(&u_first, &truth)?
        }
    })
}

/// Strong equivalence of normal programs under the standard answer sets:
/// same three-valued models over the joint atoms.
pub fn normal_strong_eq(p1: &Program, p2: &Program, limits: &Limits) -> Result<EquivalenceVerdict> {
    require_normal(p1)?;
    require_normal(p2)?;
    let domain = Domain::new(p1.joint_atoms(p2));
    limits.check(domain.len())?;
    let Some((witness, sep)) = first_disagreement(p1, p2, &domain, THREE_VALUES) else {
        return Ok(EquivalenceVerdict::equivalent(Some(Mode::Normal)));
    };
    let ctx = build_normal_context(p1, p2, &witness)?;
    if !verify_normal_context(p1, p2, &ctx)? {
        return Err(Error::ContextVerification(format!(
            "normal-program context does not separate stable models:\n{}",
            ctx.program
        )));
    }
    let mut verdict = EquivalenceVerdict::separated_by(Some(Mode::Normal), witness, sep);
    verdict.context = Some(ctx.program);
    verdict.context_case = Some(ctx.case);
    verdict.discriminating_interpretation = Some(ctx.m_prime.restrict(&ctx.domain));
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_program;

    fn p(src: &str) -> Program {
        parse_program(src).unwrap()
    }

    #[test]
    fn reflexive() {
        let prog = p("a x b <- not c.\nc <- a.");
        let v = strong_eq(&prog, &prog, Mode::MostPreferred, &Limits::default()).unwrap();
        assert!(v.equivalent);
        assert!(v.witness.is_none() && v.context.is_none());
    }

    #[test]
    fn pure_fact_context_when_no_starred_values() {
        // M = {a:T, b:F} models `a.` but not `b <- a.`
        let p1 = p("a.");
        let p2 = p("a.\nb <- a.");
        let m = Interpretation::new().with("a", T).with("b", F);
        let ctx = build_witness_context(&p1, &p2, &m).unwrap();
        assert_eq!(ctx.case, ContextCase::Case1);
        assert_eq!(ctx.program, p("a."));
        assert!(ctx.scaffold.t_set.is_empty() && ctx.scaffold.f_set.is_empty());
        assert!(verify_witness_context(&p1, &p2, &ctx).passed());
    }

    #[test]
    fn precondition_errors() {
        let p1 = p("a.");
        let both = Interpretation::new().with("a", T);
        assert!(matches!(build_witness_context(&p1, &p1, &both), Err(Error::Precondition(_))));
        let stray = Interpretation::new().with("a", T).with("zz", T);
        assert!(matches!(build_witness_context(&p1, &p("b."), &stray), Err(Error::Precondition(_))));
    }

    #[test]
    fn swapped_orientation() {
        let p1 = p("a x b.\na.");
        let p2 = p("a x b.");
        let m = Interpretation::new().with("a", FStar).with("b", T);
        let ctx = build_witness_context(&p1, &p2, &m).unwrap();
        assert!(ctx.swapped);
        assert_eq!(ctx.separated(), Separated::SecondOnly);
        assert!(verify_witness_context(&p1, &p2, &ctx).passed());
    }

    #[test]
    fn fresh_names_avoid_collisions() {
        let p1 = p("a x b.\nt__a <- b.");
        let p2 = p("a x b.\na.\nt__a <- b.");
        let m = Interpretation::new().with("a", FStar).with("b", T).with("t__a", T);
        let ctx = build_witness_context(&p1, &p2, &m).unwrap();
        assert_eq!(ctx.scaffold.t_set, vec![Atom::new("t__a_0")]);
        assert!(verify_witness_context(&p1, &p2, &ctx).passed());
    }

    #[test]
    fn normal_requires_normal_input() {
        let err = normal_strong_eq(&p("a x b."), &p("a."), &Limits::default()).unwrap_err();
        assert!(matches!(err, Error::NotNormal(_)));
    }
}
