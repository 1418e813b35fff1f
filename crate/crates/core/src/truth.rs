//! The four truth values `F < F* < T* < T` and the two orders defined on them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A value of the four-valued logic.
///
/// The discriminants are chosen so that the derived `Ord` is the total truth
/// order `F < F* < T* < T`; the information-style partial order `≺` used for
/// minimisation is exposed separately through [`TruthValue::precedes`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum TruthValue {
    F = 0,
    FStar = 1,
    TStar = 2,
    T = 3,
}

/// For every value `v` (indexed by code), the bit set of values `w` with `w ≼ v`.
pub(crate) const DOWN_SET: [u8; 4] = [0b0001, 0b0011, 0b0101, 0b1101];

impl TruthValue {
    pub const ALL: [TruthValue; 4] = [
        TruthValue::F,
        TruthValue::FStar,
        TruthValue::TStar,
        TruthValue::T,
    ];

    #[inline]
    pub fn code(self) -> u8 {
        self as u8
    }

    /// Inverse of [`TruthValue::code`]; only the two low bits are read.
    #[inline]
    pub fn from_code(code: u8) -> TruthValue {
        match code & 0b11 {
            0 => TruthValue::F,
            1 => TruthValue::FStar,
            2 => TruthValue::TStar,
            _ => TruthValue::T,
        }
    }

    /// Strict partial order `≺`: `F ≺ F*`, `F ≺ T*`, `F ≺ T` and `T* ≺ T`.
    pub fn precedes(self, other: TruthValue) -> bool {
        self != other && self.precedes_eq(other)
    }

    /// `≼`, the reflexive closure of [`TruthValue::precedes`].
    pub fn precedes_eq(self, other: TruthValue) -> bool {
        DOWN_SET[other.code() as usize] & (1 << self.code()) != 0
    }

    /// Negation: `T` when the operand is at most `F*`, otherwise `F`.
    pub fn negate(self) -> TruthValue {
        if self <= TruthValue::FStar {
            TruthValue::T
        } else {
            TruthValue::F
        }
    }

    /// Ordered disjunction `self × rhs`.
    pub fn ordered(self, rhs: TruthValue) -> TruthValue {
        if self == TruthValue::FStar {
            rhs
        } else {
            self
        }
    }

    pub fn and(self, rhs: TruthValue) -> TruthValue {
        self.min(rhs)
    }

    pub fn or(self, rhs: TruthValue) -> TruthValue {
        self.max(rhs)
    }

    /// Implication `self ← body`, which only ever takes the values `T` or `F`.
    pub fn implied_by(self, body: TruthValue) -> TruthValue {
        if self >= body {
            TruthValue::T
        } else {
            TruthValue::F
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            TruthValue::F => "F",
            TruthValue::FStar => "F*",
            TruthValue::TStar => "T*",
            TruthValue::T => "T",
        }
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown truth value `{0}` (expected one of F, F*, T*, T)")]
pub struct ParseTruthValueError(pub String);

impl FromStr for TruthValue {
    type Err = ParseTruthValueError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "F" => Ok(TruthValue::F),
            "F*" => Ok(TruthValue::FStar),
            "T*" => Ok(TruthValue::TStar),
            "T" => Ok(TruthValue::T),
            other => Err(ParseTruthValueError(other.to_string())),
        }
    }
}

impl Serialize for TruthValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.symbol())
    }
}

impl<'de> Deserialize<'de> for TruthValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::TruthValue::{self, *};

    #[test]
    fn negation_table() {
        assert_eq!(FStar.negate(), T);
        assert_eq!(T.negate(), F);
        assert_eq!(F.negate(), T);
        assert_eq!(TStar.negate(), F);
    }

    #[test]
    fn ordered_disjunction_table() {
        assert_eq!(FStar.ordered(T), T);
        assert_eq!(T.ordered(F), T);
        assert_eq!(F.ordered(T), F);
        assert_eq!(TStar.ordered(F), TStar);
    }

    #[test]
    fn precedes_pairs() {
        let expected = [(F, FStar), (F, TStar), (F, T), (TStar, T)];
        for a in TruthValue::ALL {
            for b in TruthValue::ALL {
                assert_eq!(a.precedes(b), expected.contains(&(a, b)), "{a} ≺ {b}");
            }
        }
        assert!(!FStar.precedes_eq(TStar));
        assert!(!FStar.precedes_eq(T));
    }

    #[test]
    fn symbols_round_trip() {
        for v in TruthValue::ALL {
            assert_eq!(v.symbol().parse::<TruthValue>().unwrap(), v);
            assert_eq!(TruthValue::from_code(v.code()), v);
        }
        assert!("Fstar".parse::<TruthValue>().is_err());
    }
}
