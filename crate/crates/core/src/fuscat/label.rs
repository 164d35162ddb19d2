use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    #[serde(rename = "L")]
    Simple,
    #[serde(rename = "P")]
    Proj,
}

impl Kind {
    pub fn letter(self) -> char {
        match self {
            Kind::Simple => 'L',
            Kind::Proj => 'P',
        }
    }
}

/// `L_{r,s}` or `P_{r,s}` with `r >= 1`, `1 <= s <= p`. `P_{r,p}` is stored
/// as `L_{r,p}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuleLabel {
    pub kind: Kind,
    pub r: u32,
    pub s: u32,
    pub p: u32,
}

impl ModuleLabel {
    pub fn new(kind: Kind, p: u32, r: u32, s: u32) -> Result<Self> {
        if p < 2 {
            return Err(Error::Domain(format!("p must be at least 2, got {p}")));
        }
        if r < 1 || s < 1 || s > p {
            return Err(Error::Domain(format!(
                "{}:{r},{s} needs r >= 1 and 1 <= s <= p = {p}",
                kind.letter()
            )));
        }
        let kind = if s == p { Kind::Simple } else { kind };
        Ok(ModuleLabel { kind, r, s, p })
    }

    pub fn simple(p: u32, r: u32, s: u32) -> Result<Self> {
        ModuleLabel::new(Kind::Simple, p, r, s)
    }

    pub fn proj(p: u32, r: u32, s: u32) -> Result<Self> {
        ModuleLabel::new(Kind::Proj, p, r, s)
    }

    /// Infallible constructor for indices already known to be in range.
    pub(crate) fn mk(kind: Kind, p: u32, r: i64, s: i64) -> Self {
        ModuleLabel::new(kind, p, r as u32, s as u32).expect("label in range")
    }

    pub fn is_simple(&self) -> bool {
        self.kind == Kind::Simple
    }

    /// Projective in the category: every `P_{r,s}` and every `L_{r,p}`.
    pub fn is_projective(&self) -> bool {
        self.kind == Kind::Proj || self.s == self.p
    }

    /// Parses `L:r,s` or `P:r,s`.
    pub fn parse(text: &str, p: u32) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed label {text:?}; expected L:r,s or P:r,s"));
        let (k, rest) = text.trim().split_once(':').ok_or_else(bad)?;
        let kind = match k {
            "L" => Kind::Simple,
            "P" => Kind::Proj,
            _ => return Err(bad()),
        };
        let (r, s) = rest.split_once(',').ok_or_else(bad)?;
        let r = r.trim().parse().map_err(|_| bad())?;
        let s = s.trim().parse().map_err(|_| bad())?;
        ModuleLabel::new(kind, p, r, s)
    }
}

impl fmt::Display for ModuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{},{}", self.kind.letter(), self.r, self.s)
    }
}

impl fmt::Debug for ModuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Direct sum of labels with positive multiplicities, all at one `p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Decomp {
    p: u32,
    entries: BTreeMap<ModuleLabel, u64>,
}

impl Decomp {
    pub fn new(p: u32) -> Self {
        Decomp {
            p,
            entries: BTreeMap::new(),
        }
    }

    pub fn single(a: ModuleLabel) -> Self {
        let mut d = Decomp::new(a.p);
        d.add(a, 1);
        d
    }

    pub fn from_pairs(p: u32, pairs: impl IntoIterator<Item = (ModuleLabel, u64)>) -> Self {
        let mut d = Decomp::new(p);
        for (a, m) in pairs {
            d.add(a, m);
        }
        d
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn add(&mut self, a: ModuleLabel, mult: u64) {
        assert_eq!(
            a.p, self.p,
            "label {a} has p = {}, decomposition has {}",
            a.p, self.p
        );
        if mult > 0 {
            *self.entries.entry(a).or_default() += mult;
        }
    }

    pub fn add_all(&mut self, other: &Decomp, times: u64) {
        for (a, m) in other.iter() {
            self.add(a, m * times);
        }
    }

    pub fn get(&self, a: &ModuleLabel) -> u64 {
        self.entries.get(a).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (ModuleLabel, u64)> + '_ {
        self.entries.iter().map(|(a, m)| (*a, *m))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Sum of multiplicities.
    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("decomposition serializes")
    }
}

impl fmt::Display for Decomp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(a, m)| {
                if m == 1 {
                    a.to_string()
                } else {
                    format!("{m}*{a}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Decomp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Decomp(p={}; {self})", self.p)
    }
}

#[derive(Serialize, Deserialize)]
struct Summand {
    kind: Kind,
    r: u32,
    s: u32,
    mult: u64,
}

#[derive(Serialize, Deserialize)]
struct DecompJson {
    p: u32,
    summands: Vec<Summand>,
}

impl Serialize for Decomp {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DecompJson {
            p: self.p,
            summands: self
                .iter()
                .map(|(a, mult)| Summand {
                    kind: a.kind,
                    r: a.r,
                    s: a.s,
                    mult,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Decomp {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = DecompJson::deserialize(d)?;
        let mut out = Decomp::new(j.p);
        for m in j.summands {
            let a = ModuleLabel::new(m.kind, j.p, m.r, m.s).map_err(serde::de::Error::custom)?;
            out.add(a, m.mult);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_and_parsing() {
        let a = ModuleLabel::proj(3, 2, 3).unwrap();
        assert_eq!(a, ModuleLabel::simple(3, 2, 3).unwrap());
        assert!(a.is_projective());
        assert_eq!(ModuleLabel::parse("P:5,1", 2).unwrap().to_string(), "P:5,1");
        assert_eq!(ModuleLabel::parse("P:1,2", 2).unwrap().to_string(), "L:1,2");
        for bad in ["Q:1,1", "L:0,1", "L:1,4", "L1,1", "L:1;1", "L:x,1"] {
            assert!(ModuleLabel::parse(bad, 3).is_err(), "{bad}");
        }
    }

    #[test]
    fn json_layout() {
        let p = 3;
        let d = Decomp::from_pairs(
            p,
            [
                (ModuleLabel::simple(p, 1, 3).unwrap(), 1),
                (ModuleLabel::proj(p, 1, 1).unwrap(), 2),
                (ModuleLabel::simple(p, 1, 1).unwrap(), 1),
            ],
        );
        assert_eq!(
            d.to_json(),
            r#"{"p":3,"summands":[{"kind":"L","r":1,"s":1,"mult":1},{"kind":"L","r":1,"s":3,"mult":1},{"kind":"P","r":1,"s":1,"mult":2}]}"#
        );
        assert_eq!(serde_json::from_str::<Decomp>(&d.to_json()).unwrap(), d);
        assert_eq!(d.to_string(), "L:1,1 + L:1,3 + 2*P:1,1");
        assert_eq!(d.total(), 4);
    }
}
