//! Built-in examples: trivectors, exterior ideals and commutative ideals,
//! each with the published values it should reproduce.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentations::poly::Kind;
use crate::presentations::presentation::{ExtQuotientPresentation, QuadraticPresentation};
use crate::presentations::trivector::Trivector;
use crate::duality;
use crate::presentations::poly::indexed_names;

const SOURCES: &[&str] = &[
    include_str!("../../catalog/caseIII.entry"),
    include_str!("../../catalog/caseIV.entry"),
    include_str!("../../catalog/caseV.entry"),
    include_str!("../../catalog/caseXII.entry"),
    include_str!("../../catalog/case63.entry"),
    include_str!("../../catalog/case77.entry"),
    include_str!("../../catalog/case79.entry"),
    include_str!("../../catalog/case81.entry"),
    include_str!("../../catalog/case83.entry"),
    include_str!("../../catalog/case85.entry"),
    include_str!("../../catalog/R12.entry"),
    include_str!("../../catalog/R15.entry"),
    include_str!("../../catalog/R20.entry"),
    include_str!("../../catalog/R21.entry"),
    include_str!("../../catalog/R22.entry"),
    include_str!("../../catalog/R33.entry"),
    include_str!("../../catalog/I29.entry"),
    include_str!("../../catalog/I54.entry"),
    include_str!("../../catalog/I55.entry"),
    include_str!("../../catalog/I56.entry"),
    include_str!("../../catalog/I57.entry"),
    include_str!("../../catalog/I71.entry"),
    include_str!("../../catalog/I78.entry"),
    include_str!("../../catalog/I81.entry"),
    include_str!("../../catalog/skewI78.entry"),
];

const UNVERIFIED: &str = include_str!("../../catalog/unverified.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryKind {
    Trivector,
    ExteriorIdeal,
    CommutativeIdeal,
}

impl fmt::Display for EntryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntryKind::Trivector => "trivector",
            EntryKind::ExteriorIdeal => "exterior-ideal",
            EntryKind::CommutativeIdeal => "commutative-ideal",
        })
    }
}

/// A published value and where it comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expectation {
    pub key: String,
    pub value: String,
    pub citation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub kind: EntryKind,
    pub payload: String,
    pub vars: Vec<String>,
    /// Characteristic the published values were computed in (0 unless noted).
    pub characteristic: u64,
    pub expected: Vec<Expectation>,
}

impl CatalogEntry {
    fn parse(src: &str) -> Result<Self> {
        let mut name = None;
        let mut kind = None;
        let mut payload = None;
        let mut vars = Vec::new();
        let mut characteristic = 0;
        let mut description = String::new();
        let mut expected = Vec::new();
        for line in src.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(c) = line.strip_prefix('#') {
                if description.is_empty() {
                    description = c.trim().to_string();
                }
                continue;
            }
            if let Some(rest) = line.strip_prefix("expect ") {
                let (kv, cite) = rest
                    .split_once(" @ ")
                    .ok_or_else(|| Error::Parse(format!("expectation without citation: `{line}`")))?;
                let (k, v) = kv
                    .split_once('=')
                    .ok_or_else(|| Error::Parse(format!("bad expectation `{line}`")))?;
                expected.push(Expectation {
                    key: k.trim().into(),
                    value: v.trim().into(),
                    citation: cite.trim().into(),
                });
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad catalog line `{line}`")))?;
            let v = v.trim();
            match k.trim() {
                "name" => name = Some(v.to_string()),
                "kind" => {
                    kind = Some(match v {
                        "trivector" => EntryKind::Trivector,
                        "exterior-ideal" => EntryKind::ExteriorIdeal,
                        "commutative-ideal" => EntryKind::CommutativeIdeal,
                        other => return Err(Error::Parse(format!("unknown entry kind `{other}`"))),
                    })
                }
                "payload" => payload = Some(v.to_string()),
                "vars" => vars = v.split_whitespace().map(String::from).collect(),
                "char" => {
                    characteristic = v.parse().map_err(|_| Error::Parse(format!("bad characteristic `{v}`")))?
                }
                other => return Err(Error::Parse(format!("unknown catalog key `{other}`"))),
            }
        }
        let missing = |what: &str| Error::Parse(format!("catalog entry without {what}"));
        Ok(Self {
            name: name.ok_or_else(|| missing("name"))?,
            description,
            kind: kind.ok_or_else(|| missing("kind"))?,
            payload: payload.ok_or_else(|| missing("payload"))?,
            vars,
            characteristic,
            expected,
        })
    }

    /// Parses the `key = value` entry format used by the built-in catalog.
    pub fn from_text(src: &str) -> Result<Self> {
        Self::parse(src)
    }

    pub fn expect(&self, key: &str) -> Option<&Expectation> {
        self.expected.iter().find(|e| e.key == key)
    }

    /// Whitespace-separated integers of an expectation.
    pub fn expect_ints(&self, key: &str) -> Option<Vec<i64>> {
        self.expect(key).map(|e| parse_ints(&e.value))
    }

    pub fn trivector(&self) -> Result<Trivector> {
        match self.kind {
            EntryKind::Trivector => Trivector::parse(&self.payload, None),
            _ => Err(Error::Precondition(format!("{} is not a trivector entry", self.name))),
        }
    }

    /// The presented algebra: the Gorenstein algebra for trivectors, the
    /// quotient ring for ideals.
    pub fn presentation(&self) -> Result<ExtQuotientPresentation> {
        match self.kind {
            EntryKind::Trivector => duality::gorenstein_presentation(&self.trivector()?),
            EntryKind::ExteriorIdeal => ExtQuotientPresentation::parse(Kind::Exterior, self.names(), &self.payload),
            EntryKind::CommutativeIdeal => {
                ExtQuotientPresentation::parse(Kind::Commutative, self.names(), &self.payload)
            }
        }
    }

    /// Quadratic part of [`CatalogEntry::presentation`].
    pub fn quadratic_presentation(&self) -> Result<ExtQuotientPresentation> {
        Ok(self.presentation()?.quadratic_part())
    }

    /// Koszul dual presentation. For trivectors this is the skew-derivative
    /// recipe; for ideals the annihilator of the relation space.
    pub fn dual(&self) -> Result<QuadraticPresentation> {
        match self.kind {
            EntryKind::Trivector => duality::koszul_dual_from_trivector(&self.trivector()?),
            _ => duality::quadratic_dual_of_quotient(&self.quadratic_presentation()?),
        }
    }

    fn names(&self) -> Vec<String> {
        if self.vars.is_empty() {
            indexed_names("x", 0)
        } else {
            self.vars.clone()
        }
    }

    /// Number of generators.
    pub fn rank(&self) -> Result<usize> {
        match self.kind {
            EntryKind::Trivector => Ok(self.trivector()?.rank()),
            _ => Ok(self.vars.len()),
        }
    }
}

pub(crate) fn parse_ints(s: &str) -> Vec<i64> {
    s.split_whitespace().filter_map(|t| t.parse().ok()).collect()
}

/// Names of all entries in catalog order.
pub fn names() -> Vec<String> {
    all().into_iter().map(|e| e.name).collect()
}

pub fn all() -> Vec<CatalogEntry> {
    SOURCES
        .iter()
        .map(|s| CatalogEntry::parse(s).expect("built-in catalog entries parse"))
        .collect()
}

/// Looks up an entry by name (case-insensitive).
pub fn catalog(name: &str) -> Result<CatalogEntry> {
    all()
        .into_iter()
        .find(|e| e.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::UnknownEntry {
            name: name.into(),
            available: names().join(", "),
        })
}

/// Published verdicts that cannot be checked because the forms are not
/// available, as `(label, statement)` pairs.
pub fn unverified() -> Vec<(String, String)> {
    UNVERIFIED
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .filter_map(|l| l.split_once(" = "))
        .map(|(a, b)| (a.trim().to_string(), b.trim().to_string()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::presentations::algebra::algebra_from_presentation;

    #[test]
    fn every_entry_parses_and_cites() {
        let all = all();
        assert_eq!(all.len(), 25);
        for e in &all {
            assert!(!e.expected.is_empty(), "{}", e.name);
            assert!(e.expected.iter().all(|x| !x.citation.is_empty()));
            e.presentation().unwrap();
        }
    }

    #[test]
    fn unknown_entry_lists_names() {
        match catalog("case99") {
            Err(Error::UnknownEntry { available, .. }) => assert!(available.contains("R33")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn r20_entry() {
        let e = catalog("R20").unwrap();
        assert_eq!(e.kind, EntryKind::ExteriorIdeal);
        let a = algebra_from_presentation(&Rationals, &e.presentation().unwrap()).unwrap();
        assert_eq!(a.dims(), vec![1, 5, 7]);
    }

    #[test]
    fn i78_entry() {
        let e = catalog("I78").unwrap();
        assert_eq!(e.kind, EntryKind::CommutativeIdeal);
        assert_eq!(e.expect("dual_series").unwrap().value, "1 / 1 -4 2");
        assert_eq!(e.presentation().unwrap().relations().len(), 8);
    }

    #[test]
    fn case83_entry() {
        let t = catalog("case83").unwrap().trivector().unwrap();
        let expect = Trivector::parse(
            "e1^e2^e9 + e1^e3^e5 + e1^e4^e6 + e2^e3^e7 + e2^e4^e8 + e3^e4^e9",
            None,
        )
        .unwrap();
        assert_eq!(t, expect);
    }

    #[test]
    fn catalog_trivectors_roundtrip() {
        for e in all().into_iter().filter(|e| e.kind == EntryKind::Trivector) {
            let t = e.trivector().unwrap();
            assert_eq!(Trivector::parse(&t.to_string(), None).unwrap(), t, "{}", e.name);
        }
    }

    #[test]
    fn unverified_list() {
        assert_eq!(unverified().len(), 3);
    }
}
