//! Interpretations: finite maps from atoms to truth values, `F` elsewhere.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::program::Atom;
use crate::truth::TruthValue;

/// A total function from atoms to truth values, stored as a finite map with
/// every unlisted atom evaluating to `F`.
///
/// Equality is equality of the total functions: an explicit `a: F` entry is
/// indistinguishable from a missing one.
#[derive(Clone, Default)]
pub struct Interpretation {
    values: BTreeMap<Atom, TruthValue>,
}

impl Interpretation {
    pub const DEFAULT: TruthValue = TruthValue::F;

    pub fn new() -> Interpretation {
        Interpretation::default()
    }

    pub fn get<Q: AsRef<str> + ?Sized>(&self, atom: &Q) -> TruthValue {
        self.values.get(atom.as_ref()).copied().unwrap_or(Self::DEFAULT)
    }

    pub fn set(&mut self, atom: Atom, value: TruthValue) {
        self.values.insert(atom, value);
    }

    pub fn with(mut self, atom: impl Into<Atom>, value: TruthValue) -> Interpretation {
        self.set(atom.into(), value);
        self
    }

    /// Explicitly listed entries, sorted by atom name.
    pub fn entries(&self) -> impl Iterator<Item = (&Atom, TruthValue)> {
        self.values.iter().map(|(a, v)| (a, *v))
    }

    /// Atoms listed explicitly with a value other than `F`.
    pub fn support(&self) -> impl Iterator<Item = &Atom> {
        self.values
            .iter()
            .filter(|(_, v)| **v != TruthValue::F)
            .map(|(a, _)| a)
    }

    /// Restriction to `domain`, listing every atom of it explicitly.
    pub fn restrict(&self, domain: &[Atom]) -> Interpretation {
        Interpretation {
            values: domain.iter().map(|a| (a.clone(), self.get(a))).collect(),
        }
    }

    /// Pointwise `≼` over `domain`.
    pub fn precedes_eq_on(&self, other: &Interpretation, domain: &[Atom]) -> bool {
        domain.iter().all(|a| self.get(a).precedes_eq(other.get(a)))
    }

    /// Pointwise `≺` over `domain`: `≼` and different somewhere in it.
    pub fn precedes_on(&self, other: &Interpretation, domain: &[Atom]) -> bool {
        self.precedes_eq_on(other, domain) && domain.iter().any(|a| self.get(a) != other.get(a))
    }

    /// No atom of `domain` is `T*`.
    pub fn is_solid_on(&self, domain: &[Atom]) -> bool {
        domain.iter().all(|a| self.get(a) != TruthValue::TStar)
    }

    /// No atom of `domain` is `F*`.
    pub fn is_three_valued_on(&self, domain: &[Atom]) -> bool {
        domain.iter().all(|a| self.get(a) != TruthValue::FStar)
    }

    /// Atoms of `domain` mapped to `F*`, in domain order.
    pub fn fstar_atoms_on(&self, domain: &[Atom]) -> Vec<Atom> {
        domain
            .iter()
            .filter(|a| self.get(a) == TruthValue::FStar)
            .cloned()
            .collect()
    }

    /// Renders `{(a,T), (b,F*)}` listing the atoms of `domain` in the given order.
    pub fn display_over(&self, domain: &[Atom]) -> String {
        let parts: Vec<String> = domain
            .iter()
            .map(|a| format!("({a},{})", self.get(a)))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

impl PartialEq for Interpretation {
    fn eq(&self, other: &Interpretation) -> bool {
        self.values
            .keys()
            .chain(other.values.keys())
            .all(|a| self.get(a) == other.get(a))
    }
}

impl Eq for Interpretation {}

impl fmt::Debug for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.values.iter().map(|(a, v)| (a, v.symbol()))).finish()
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let domain: Vec<Atom> = self.values.keys().cloned().collect();
        f.write_str(&self.display_over(&domain))
    }
}

impl<A: Into<Atom>> FromIterator<(A, TruthValue)> for Interpretation {
    fn from_iter<I: IntoIterator<Item = (A, TruthValue)>>(iter: I) -> Interpretation {
        Interpretation {
            values: iter.into_iter().map(|(a, v)| (a.into(), v)).collect(),
        }
    }
}

/// Serialized as a list of `{"atom": .., "value": ..}` records sorted by atom.
impl Serialize for Interpretation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        #[derive(Serialize)]
        struct Entry<'a> {
            atom: &'a Atom,
            value: TruthValue,
        }
        let entries: Vec<_> = self.entries().collect();
        let mut seq = serializer.serialize_seq(Some(entries.len()))?;
        for (atom, value) in entries {
            seq.serialize_element(&Entry { atom, value })?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::truth::TruthValue::*;

    #[test]
    fn default_is_false() {
        let i = Interpretation::new().with("a", T);
        assert_eq!(i.get("a"), T);
        assert_eq!(i.get("zzz"), F);
        assert_eq!(i, Interpretation::new().with("a", T).with("b", F));
    }

    #[test]
    fn pointwise_orders() {
        let dom = vec![Atom::new("a"), Atom::new("b")];
        let low = Interpretation::new().with("a", F).with("b", TStar);
        let high = Interpretation::new().with("a", FStar).with("b", T);
        assert!(low.precedes_on(&high, &dom));
        assert!(!high.precedes_eq_on(&low, &dom));
        assert!(!low.precedes_on(&low, &dom));
        let other = Interpretation::new().with("a", TStar).with("b", T);
        assert!(!high.precedes_eq_on(&other, &dom) && !other.precedes_eq_on(&high, &dom));
    }

    #[test]
    fn solid_and_three_valued() {
        let dom = vec![Atom::new("a"), Atom::new("b")];
        let i = Interpretation::new().with("a", FStar).with("b", T);
        assert!(i.is_solid_on(&dom));
        assert!(!i.is_three_valued_on(&dom));
        assert_eq!(i.fstar_atoms_on(&dom), vec![Atom::new("a")]);
        assert_eq!(i.display_over(&dom), "{(a,F*), (b,T)}");
    }
}
