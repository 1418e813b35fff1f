//! Atoms, rules and programs.

use std::borrow::Borrow;
use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::Error;

/// A propositional atom, identified by its name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(Arc<str>);

impl Atom {
    /// Creates an atom. The name must be nonempty; syntax restrictions of the
    /// text format are enforced by the parser, not here.
    pub fn new(name: impl AsRef<str>) -> Atom {
        let name = name.as_ref();
        assert!(!name.is_empty(), "atom names are nonempty");
        Atom(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Atom {
    fn from(s: &str) -> Atom {
        Atom::new(s)
    }
}

impl Borrow<str> for Atom {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl AsRef<str> for Atom {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for Atom {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

/// `C1 × ... × Cn ← A1, ..., Am, not B1, ..., not Bk` with `n ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    head: Vec<Atom>,
    body_pos: Vec<Atom>,
    body_neg: Vec<Atom>,
}

impl Rule {
    pub fn new(head: Vec<Atom>, body_pos: Vec<Atom>, body_neg: Vec<Atom>) -> Result<Rule, Error> {
        if head.is_empty() {
            return Err(Error::EmptyHead);
        }
        Ok(Rule {
            head,
            body_pos,
            body_neg,
        })
    }

    /// A fact `a ←`.
    pub fn fact(atom: Atom) -> Rule {
        Rule {
            head: vec![atom],
            body_pos: Vec::new(),
            body_neg: Vec::new(),
        }
    }

    pub fn head(&self) -> &[Atom] {
        &self.head
    }

    pub fn body_pos(&self) -> &[Atom] {
        &self.body_pos
    }

    pub fn body_neg(&self) -> &[Atom] {
        &self.body_neg
    }

    pub fn is_normal(&self) -> bool {
        self.head.len() == 1
    }

    /// Head atoms, then positive body, then negative body.
    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.head
            .iter()
            .chain(self.body_pos.iter())
            .chain(self.body_neg.iter())
    }

    pub(crate) fn without_body_literal(&self, index: usize) -> Option<Rule> {
        let mut rule = self.clone();
        if index < rule.body_pos.len() {
            rule.body_pos.remove(index);
        } else if index < rule.body_pos.len() + rule.body_neg.len() {
            rule.body_neg.remove(index - rule.body_pos.len());
        } else {
            return None;
        }
        Some(rule)
    }

    pub(crate) fn body_len(&self) -> usize {
        self.body_pos.len() + self.body_neg.len()
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, atom) in self.head.iter().enumerate() {
            if i > 0 {
                f.write_str(" x ")?;
            }
            write!(f, "{atom}")?;
        }
        if self.body_len() > 0 {
            f.write_str(" <- ")?;
            let literals = self
                .body_pos
                .iter()
                .map(|a| a.to_string())
                .chain(self.body_neg.iter().map(|a| format!("not {a}")));
            for (i, literal) in literals.enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                f.write_str(&literal)?;
            }
        }
        f.write_str(".")
    }
}

/// A finite set of rules. Insertion order is kept for printing; equality is
/// set equality of the rules.
#[derive(Clone, Debug, Default)]
pub struct Program {
    rules: Vec<Rule>,
    atoms: Vec<Atom>,
    seen_rules: HashSet<Rule>,
    seen_atoms: HashSet<Atom>,
}

impl Program {
    pub fn new() -> Program {
        Program::default()
    }

    pub fn from_rules(rules: impl IntoIterator<Item = Rule>) -> Program {
        let mut program = Program::new();
        for rule in rules {
            program.push(rule);
        }
        program
    }

    /// Adds a rule; returns `false` if it was already present.
    pub fn push(&mut self, rule: Rule) -> bool {
        if self.seen_rules.contains(&rule) {
            return false;
        }
        for atom in rule.atoms() {
            if self.seen_atoms.insert(atom.clone()) {
                self.atoms.push(atom.clone());
            }
        }
        self.seen_rules.insert(rule.clone());
        self.rules.push(rule);
        true
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// Atoms occurring in the program, in order of first occurrence.
    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn contains_atom(&self, atom: &str) -> bool {
        self.seen_atoms.contains(atom)
    }

    pub fn contains_rule(&self, rule: &Rule) -> bool {
        self.seen_rules.contains(rule)
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn is_normal(&self) -> bool {
        self.rules.iter().all(Rule::is_normal)
    }

    /// `self ∪ other`, keeping the rules of `self` first.
    pub fn union(&self, other: &Program) -> Program {
        let mut out = self.clone();
        for rule in &other.rules {
            out.push(rule.clone());
        }
        out
    }

    /// Atoms of `self` followed by the atoms of `other` not already listed.
    pub fn joint_atoms(&self, other: &Program) -> Vec<Atom> {
        let mut atoms = self.atoms.clone();
        atoms.extend(
            other
                .atoms
                .iter()
                .filter(|a| !self.seen_atoms.contains(*a))
                .cloned(),
        );
        atoms
    }

    pub(crate) fn without_rule(&self, index: usize) -> Program {
        Program::from_rules(
            self.rules
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != index)
                .map(|(_, r)| r.clone()),
        )
    }

    pub(crate) fn with_rule_replaced(&self, index: usize, rule: Rule) -> Program {
        Program::from_rules(
            self.rules
                .iter()
                .enumerate()
                .map(|(i, r)| if i == index { rule.clone() } else { r.clone() }),
        )
    }
}

impl PartialEq for Program {
    fn eq(&self, other: &Program) -> bool {
        self.rules.len() == other.rules.len()
            && self.rules.iter().all(|r| other.seen_rules.contains(r))
    }
}

impl Eq for Program {}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for rule in &self.rules {
            writeln!(f, "{rule}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atoms(names: &[&str]) -> Vec<Atom> {
        names.iter().map(|n| Atom::new(n)).collect()
    }

    #[test]
    fn empty_head_is_rejected() {
        assert!(matches!(
            Rule::new(vec![], atoms(&["a"]), vec![]),
            Err(Error::EmptyHead)
        ));
    }

    #[test]
    fn atoms_follow_first_occurrence() {
        let p = Program::from_rules([
            Rule::new(atoms(&["a", "b"]), atoms(&["c"]), atoms(&["d"])).unwrap(),
            Rule::new(atoms(&["d"]), atoms(&["a"]), vec![]).unwrap(),
        ]);
        assert_eq!(p.atoms(), &atoms(&["a", "b", "c", "d"])[..]);
    }

    #[test]
    fn union_removes_duplicates() {
        let r1 = Rule::fact(Atom::new("a"));
        let r2 = Rule::new(atoms(&["a", "b"]), vec![], vec![]).unwrap();
        let p1 = Program::from_rules([r1.clone(), r2.clone()]);
        let p2 = Program::from_rules([r2, r1]);
        let u = p1.union(&p2);
        assert_eq!(u.len(), 2);
        assert_eq!(u, p2);
    }

    #[test]
    fn rule_display() {
        let r = Rule::new(atoms(&["a", "b"]), atoms(&["c"]), atoms(&["d"])).unwrap();
        assert_eq!(r.to_string(), "a x b <- c, not d.");
        assert_eq!(Rule::fact(Atom::new("a")).to_string(), "a.");
    }
}
