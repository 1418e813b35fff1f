//! Compiled programs and the backtracking enumerator shared by every
//! exhaustive operation.
//!
//! Values are kept as 2-bit codes (`F=0, F*=1, T*=2, T=3`) so the truth order
//! is the unsigned order. A domain numbers the atoms of its list in reverse,
//! so a full assignment (at most 32 atoms) packs into a `u64` with the last
//! listed atom most significant and the first listed atom varying fastest.
//! Enumeration visits assignments in increasing packed order.

use std::collections::HashMap;
use std::ops::ControlFlow;

use rayon::prelude::*;

use crate::interpretation::Interpretation;
use crate::program::{Atom, Program, Rule};
use crate::truth::TruthValue;

pub(crate) const MAX_PACKED_ATOMS: usize = 32;

pub(crate) const ALL_VALUES: u8 = 0b1111;
pub(crate) const SOLID_VALUES: u8 = 0b1011;
pub(crate) const THREE_VALUES: u8 = 0b1101;
pub(crate) const TWO_VALUES: u8 = 0b1001;

const FSTAR: u8 = TruthValue::FStar as u8;
const T: u8 = TruthValue::T as u8;

/// A fixed atom numbering: index 0 is the last atom of the given list.
#[derive(Clone, Debug)]
pub(crate) struct Domain {
    listed: Vec<Atom>,
    atoms: Vec<Atom>,
    index: HashMap<Atom, usize>,
}

impl Domain {
    pub(crate) fn new(listed: Vec<Atom>) -> Domain {
        let atoms: Vec<Atom> = listed.iter().rev().cloned().collect();
        let index = atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i))
            .collect();
        Domain { listed, atoms, index }
    }

    pub(crate) fn of(program: &Program) -> Domain {
        Domain::new(program.atoms().to_vec())
    }

    pub(crate) fn len(&self) -> usize {
        self.atoms.len()
    }

    /// Atoms by index.
    pub(crate) fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// Atoms in the order the domain was built from.
    pub(crate) fn listed(&self) -> &[Atom] {
        &self.listed
    }

    pub(crate) fn codes_of(&self, interp: &Interpretation) -> Vec<u8> {
        self.atoms.iter().map(|a| interp.get(a).code()).collect()
    }

    pub(crate) fn interpretation(&self, codes: &[u8]) -> Interpretation {
        self.atoms
            .iter()
            .zip(codes)
            .map(|(a, c)| (a.clone(), TruthValue::from_code(*c)))
            .collect()
    }

    pub(crate) fn unpack(&self, packed: u64) -> Vec<u8> {
        let n = self.len();
        (0..n)
            .map(|i| ((packed >> (2 * (n - 1 - i))) & 0b11) as u8)
            .collect()
    }

    pub(crate) fn compile(&self, program: &Program) -> Vec<CompiledRule> {
        program.rules().iter().map(|r| CompiledRule::new(r, self)).collect()
    }
}

pub(crate) fn pack(codes: &[u8]) -> u64 {
    codes.iter().fold(0u64, |acc, c| (acc << 2) | u64::from(*c))
}

#[derive(Clone, Debug)]
pub(crate) struct CompiledRule {
    head: Vec<u32>,
    pos: Vec<u32>,
    neg: Vec<u32>,
    last: usize,
}

impl CompiledRule {
    pub(crate) fn new(rule: &Rule, domain: &Domain) -> CompiledRule {
        let idx = |a: &Atom| -> u32 {
            *domain
                .index
                .get(a)
                .unwrap_or_else(|| panic!("atom `{a}` missing from domain")) as u32
        };
        let head: Vec<u32> = rule.head().iter().map(idx).collect();
        let pos: Vec<u32> = rule.body_pos().iter().map(idx).collect();
        let neg: Vec<u32> = rule.body_neg().iter().map(idx).collect();
        let last = head.iter().chain(&pos).chain(&neg).copied().max().unwrap_or(0) as usize;
        CompiledRule {
            head,
            pos,
            neg,
            last,
        }
    }

    #[inline]
    pub(crate) fn holds(&self, v: &[u8]) -> bool {
        let mut body = T;
        for &p in &self.pos {
            body = body.min(v[p as usize]);
        }
        for &n in &self.neg {
            if v[n as usize] > FSTAR {
                body = 0;
            }
        }
        if body == 0 {
            return true;
        }
        let mut head = v[self.head[0] as usize];
        for &h in &self.head[1..] {
            if head != FSTAR {
                break;
            }
            head = v[h as usize];
        }
        head >= body
    }
}

pub(crate) fn all_hold(rules: &[CompiledRule], v: &[u8]) -> bool {
    rules.iter().all(|r| r.holds(v))
}

/// Depth-first enumeration of assignments restricted per atom by a value mask
/// and constrained by rules that must hold (or must fail). Each constraint is
/// tested as soon as its highest-numbered atom is assigned.
pub(crate) struct Search {
    masks: Vec<u8>,
    checks: Vec<Vec<(CompiledRule, bool)>>,
}

impl Search {
    pub(crate) fn new(masks: Vec<u8>) -> Search {
        let checks = vec![Vec::new(); masks.len()];
        Search { masks, checks }
    }

    pub(crate) fn uniform(n: usize, mask: u8) -> Search {
        Search::new(vec![mask; n])
    }

    pub(crate) fn satisfying(mut self, rules: &[CompiledRule]) -> Search {
        for r in rules {
            self.checks[r.last].push((r.clone(), true));
        }
        self
    }

    pub(crate) fn violating(mut self, rule: &CompiledRule) -> Search {
        self.checks[rule.last].push((rule.clone(), false));
        self
    }

    fn len(&self) -> usize {
        self.masks.len()
    }

    fn dfs<B>(
        &self,
        depth: usize,
        stop: usize,
        codes: &mut [u8],
        visit: &mut impl FnMut(&[u8]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        if depth == stop {
            return visit(codes);
        }
        let mask = self.masks[depth];
        for value in 0..4u8 {
            if mask & (1 << value) == 0 {
                continue;
            }
            codes[depth] = value;
            if self.checks[depth].iter().all(|(r, want)| r.holds(codes) == *want) {
                self.dfs(depth + 1, stop, codes, visit)?;
            }
        }
        ControlFlow::Continue(())
    }

    /// Visits every accepted assignment in increasing packed order until the
    /// visitor breaks.
    pub(crate) fn for_each<B>(&self, mut visit: impl FnMut(&[u8]) -> ControlFlow<B>) -> Option<B> {
        let mut codes = vec![0u8; self.len()];
        match self.dfs(0, self.len(), &mut codes, &mut visit) {
            ControlFlow::Break(b) => Some(b),
            ControlFlow::Continue(()) => None,
        }
    }

    pub(crate) fn first(&self) -> Option<Vec<u8>> {
        self.for_each(|c| ControlFlow::Break(c.to_vec()))
    }

    /// First accepted assignment for which `pred` holds.
    pub(crate) fn find(&self, mut pred: impl FnMut(&[u8]) -> bool) -> Option<Vec<u8>> {
        self.for_each(|c| {
            if pred(c) {
                ControlFlow::Break(c.to_vec())
            } else {
                ControlFlow::Continue(())
            }
        })
    }

    /// All accepted assignments (packed, sorted), partitioned over the rayon
    /// pool by a prefix of the atom order.
    pub(crate) fn collect_packed(&self) -> Vec<u64> {
        assert!(self.len() <= MAX_PACKED_ATOMS, "packed enumeration holds at most 32 atoms");
        let n = self.len();
        let split = if n >= 8 { 3 } else { 0 };
        let mut prefixes: Vec<Vec<u8>> = Vec::new();
        let mut codes = vec![0u8; n];
        let _ = self.dfs::<()>(0, split, &mut codes, &mut |c| {
            prefixes.push(c.to_vec());
            ControlFlow::Continue(())
        });
        let parts: Vec<Vec<u64>> = prefixes
            .into_par_iter()
            .map(|mut codes| {
                let mut out = Vec::new();
                let _ = self.dfs::<()>(split, n, &mut codes, &mut |c| {
                    out.push(pack(c));
                    ControlFlow::Continue(())
                });
                out
            })
            .collect();
        parts.concat()
    }
}

/// Is there a model of `rules` strictly `≺`-below `codes`?
pub(crate) fn exists_model_below(rules: &[CompiledRule], codes: &[u8]) -> bool {
    let masks = codes
        .iter()
        .map(|c| crate::truth::DOWN_SET[*c as usize])
        .collect();
    Search::new(masks)
        .satisfying(rules)
        .find(|n| n != codes)
        .is_some()
}
