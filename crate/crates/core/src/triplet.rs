//! Modules of the triplet algebra `W(p)`: the simples `W_{r,s}`, their
//! projective covers `R_{r,s}` (`r = 1, 2`), induction from the Virasoro
//! category, fusion rules and restriction back to Virasoro modules.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuscat::{composition_factors, tensor, Decomp, Kind, LoewyData, ModuleLabel};
use crate::oracle::{all_labels, sl2_fusion};
use crate::report::{CheckSummary, Failure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TKind {
    W,
    R,
}

/// `W_{r,s}` or `R_{r,s}` with `r ∈ {1, 2}`, `1 <= s <= p`; `R_{r,p}` is
/// stored as `W_{r,p}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TripletLabel {
    pub kind: TKind,
    pub r: u32,
    pub s: u32,
    pub p: u32,
}

impl TripletLabel {
    pub fn new(kind: TKind, p: u32, r: u32, s: u32) -> Result<Self> {
        if p < 2 || !(1..=2).contains(&r) || s < 1 || s > p {
            return Err(Error::Domain(format!(
                "{kind:?}:{r},{s} needs r in {{1,2}} and 1 <= s <= p = {p}"
            )));
        }
        let kind = if s == p { TKind::W } else { kind };
        Ok(TripletLabel { kind, r, s, p })
    }

    pub fn w(p: u32, r: u32, s: u32) -> Result<Self> {
        TripletLabel::new(TKind::W, p, r, s)
    }

    pub fn proj(p: u32, r: u32, s: u32) -> Result<Self> {
        TripletLabel::new(TKind::R, p, r, s)
    }

    fn mk(kind: TKind, p: u32, r: u32, s: u32) -> Self {
        TripletLabel::new(kind, p, r, s).expect("label in range")
    }

    pub fn parse(text: &str, p: u32) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed label {text:?}; expected W:r,s or R:r,s"));
        let (k, rest) = text.trim().split_once(':').ok_or_else(bad)?;
        let kind = match k {
            "W" => TKind::W,
            "R" => TKind::R,
            _ => return Err(bad()),
        };
        let (r, s) = rest.split_once(',').ok_or_else(bad)?;
        let r = r.trim().parse().map_err(|_| bad())?;
        let s = s.trim().parse().map_err(|_| bad())?;
        TripletLabel::new(kind, p, r, s)
    }

    /// The Virasoro module with the smallest `r` inducing to a multiple of
    /// this label.
    pub fn preimage(&self) -> ModuleLabel {
        let kind = match self.kind {
            TKind::W => Kind::Simple,
            TKind::R => Kind::Proj,
        };
        ModuleLabel::new(kind, self.p, self.r, self.s).expect("label in range")
    }
}

impl fmt::Display for TripletLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}:{},{}", self.kind, self.r, self.s)
    }
}

impl fmt::Debug for TripletLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct TripletDecomp {
    p: u32,
    entries: BTreeMap<TripletLabel, u64>,
}

impl TripletDecomp {
    pub fn new(p: u32) -> Self {
        TripletDecomp {
            p,
            entries: BTreeMap::new(),
        }
    }

    pub fn single(a: TripletLabel) -> Self {
        let mut d = TripletDecomp::new(a.p);
        d.add(a, 1);
        d
    }

    pub fn from_pairs(p: u32, pairs: impl IntoIterator<Item = (TripletLabel, u64)>) -> Self {
        let mut d = TripletDecomp::new(p);
        for (a, m) in pairs {
            d.add(a, m);
        }
        d
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn add(&mut self, a: TripletLabel, m: u64) {
        assert_eq!(a.p, self.p);
        if m > 0 {
            *self.entries.entry(a).or_default() += m;
        }
    }

    pub fn add_all(&mut self, other: &TripletDecomp, times: u64) {
        for (a, m) in other.iter() {
            self.add(a, m * times);
        }
    }

    pub fn get(&self, a: &TripletLabel) -> u64 {
        self.entries.get(a).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (TripletLabel, u64)> + '_ {
        self.entries.iter().map(|(a, m)| (*a, *m))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Divides every multiplicity by `d`, failing if one is not divisible.
    pub fn divide(&self, d: u64) -> Result<TripletDecomp> {
        let mut out = TripletDecomp::new(self.p);
        for (a, m) in self.iter() {
            if m % d != 0 {
                return Err(Error::NonDivisible {
                    label: a.to_string(),
                    mult: m,
                    divisor: d,
                });
            }
            out.add(a, m / d);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("decomposition serializes")
    }
}

impl fmt::Display for TripletDecomp {
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

impl fmt::Debug for TripletDecomp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TripletDecomp(p={}; {self})", self.p)
    }
}

#[derive(Serialize, Deserialize)]
struct Summand {
    kind: TKind,
    r: u32,
    s: u32,
    mult: u64,
}

#[derive(Serialize, Deserialize)]
struct DecompJson {
    p: u32,
    summands: Vec<Summand>,
}

impl Serialize for TripletDecomp {
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

impl<'de> Deserialize<'de> for TripletDecomp {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = DecompJson::deserialize(d)?;
        let mut out = TripletDecomp::new(j.p);
        for m in j.summands {
            let a = TripletLabel::new(m.kind, j.p, m.r, m.s).map_err(serde::de::Error::custom)?;
            out.add(a, m.mult);
        }
        Ok(out)
    }
}

/// `1` for odd `r`, `2` for even `r`.
pub fn r_bar(r: u32) -> u32 {
    2 - (r % 2)
}

/// Induction: `L_{r,s} -> r W_{r̄,s}`, `P_{r,s} -> r R_{r̄,s}`.
pub fn induce(a: &ModuleLabel) -> TripletDecomp {
    let kind = match a.kind {
        Kind::Simple => TKind::W,
        Kind::Proj => TKind::R,
    };
    TripletDecomp::from_pairs(
        a.p,
        [(TripletLabel::mk(kind, a.p, r_bar(a.r), a.s), a.r as u64)],
    )
}

pub fn induce_decomp(d: &Decomp) -> TripletDecomp {
    let mut out = TripletDecomp::new(d.p());
    for (a, m) in d.iter() {
        out.add_all(&induce(&a), m);
    }
    out
}

/// Where a triplet product came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Source {
    /// A tabulated fusion rule.
    Tabulated,
    /// Induced from a Virasoro product and divided by the preimage
    /// multiplicities.
    Transported,
}

/// `induce(a0 ⊠ b0) / (a0.r * b0.r)`: the product of the triplet modules
/// that `a0` and `b0` induce to.
pub fn transport(a0: &ModuleLabel, b0: &ModuleLabel) -> Result<TripletDecomp> {
    let prod = tensor(a0, b0)?;
    induce_decomp(&prod).divide(a0.r as u64 * b0.r as u64)
}

fn tabulated(a: &TripletLabel, b: &TripletLabel) -> Option<TripletDecomp> {
    let p = a.p;
    let one = |k, r, s| Some(TripletDecomp::single(TripletLabel::mk(k, p, r, s)));
    if (a.kind, a.r, a.s) == (TKind::W, 2, 1) {
        return one(b.kind, 3 - b.r, b.s);
    }
    if (a.kind, a.r, a.s) != (TKind::W, 1, 2) {
        return None;
    }
    let (r, s) = (b.r, b.s);
    let pairs = |items: &[(TKind, u32, u32, u64)]| {
        Some(TripletDecomp::from_pairs(
            p,
            items
                .iter()
                .map(|&(k, r, s, m)| (TripletLabel::mk(k, p, r, s), m)),
        ))
    };
    use TKind::{R, W};
    match b.kind {
        W if s == 1 => one(W, r, 2),
        W if s < p => pairs(&[(W, r, s - 1, 1), (W, r, s + 1, 1)]),
        W => None,
        R if p == 2 => pairs(&[(R, r, 2, 2), (R, 3 - r, 2, 2)]),
        R if s == 1 => pairs(&[(R, r, 2, 1), (R, 3 - r, p, 2)]),
        R if s <= p - 2 => pairs(&[(R, r, s - 1, 1), (R, r, s + 1, 1)]),
        R => pairs(&[(R, r, p - 2, 1), (R, r, p, 2)]),
    }
}

/// Triplet fusion product together with its provenance.
pub fn triplet_tensor_sourced(
    a: &TripletLabel,
    b: &TripletLabel,
) -> Result<(TripletDecomp, Source)> {
    if a.p != b.p {
        return Err(Error::MismatchedP(a.p, b.p));
    }
    for (x, y) in [(a, b), (b, a)] {
        if let Some(d) = tabulated(x, y) {
            return Ok((d, Source::Tabulated));
        }
    }
    Ok((
        transport(&a.preimage(), &b.preimage())?,
        Source::Transported,
    ))
}

pub fn triplet_tensor(a: &TripletLabel, b: &TripletLabel) -> Result<TripletDecomp> {
    triplet_tensor_sourced(a, b).map(|(d, _)| d)
}

pub fn triplet_tensor_decomp(a: &TripletDecomp, b: &TripletDecomp) -> Result<TripletDecomp> {
    let mut out = TripletDecomp::new(a.p());
    for (x, m) in a.iter() {
        for (y, n) in b.iter() {
            out.add_all(&triplet_tensor(&x, &y)?, m * n);
        }
    }
    Ok(out)
}

/// Virasoro decomposition `W_{r,s} = ⊕ (2n + r) L_{2n+r,s}` (and the same
/// with `P` for `R_{r,s}`), for `n <= cutoff`.
pub fn restrict(a: &TripletLabel, cutoff: u32) -> Vec<(ModuleLabel, u64)> {
    let kind = match a.kind {
        TKind::W => Kind::Simple,
        TKind::R => Kind::Proj,
    };
    (0..=cutoff)
        .map(|n| {
            let k = 2 * n + a.r;
            (
                ModuleLabel::new(kind, a.p, k, a.s).expect("label in range"),
                k as u64,
            )
        })
        .collect()
}

pub fn triplet_composition_factors(a: &TripletLabel) -> TripletDecomp {
    match a.kind {
        TKind::W => TripletDecomp::single(*a),
        TKind::R => TripletDecomp::from_pairs(
            a.p,
            [
                (TripletLabel::mk(TKind::W, a.p, a.r, a.s), 2),
                (TripletLabel::mk(TKind::W, a.p, 3 - a.r, a.p - a.s), 2),
            ],
        ),
    }
}

/// Socle, middle and head layers; `R_{r,s}` has `2 W_{3-r,p-s}` in the
/// middle.
pub fn triplet_loewy(a: &TripletLabel) -> LoewyData {
    let top = TripletLabel::mk(TKind::W, a.p, a.r, a.s).to_string();
    match a.kind {
        TKind::W => LoewyData {
            socle: vec![top.clone()],
            middle: vec![],
            head: vec![top],
        },
        TKind::R => {
            let mid = TripletLabel::mk(TKind::W, a.p, 3 - a.r, a.p - a.s).to_string();
            LoewyData {
                socle: vec![top.clone()],
                middle: vec![mid.clone(), mid],
                head: vec![top],
            }
        }
    }
}

/// Compares the restriction of the composition factors of `a` with the
/// composition factors of its restriction, on `L_{k,*}` with
/// `k <= 2 cutoff + r - 1` (higher `k` are cut off differently on the two
/// sides).
pub fn check_restriction_factors(a: &TripletLabel, cutoff: u32) -> Option<Failure> {
    let p = a.p;
    let mut left = Decomp::new(p);
    for (w, m) in triplet_composition_factors(a).iter() {
        for (l, k) in restrict(&w, cutoff + 1) {
            left.add(l, m * k);
        }
    }
    let mut right = Decomp::new(p);
    for (x, k) in restrict(a, cutoff) {
        right.add_all(&composition_factors(&x), k);
    }
    let bound = 2 * cutoff + a.r - 1;
    let trim = |d: &Decomp| Decomp::from_pairs(p, d.iter().filter(|(l, _)| l.r <= bound));
    let (left, right) = (trim(&left), trim(&right));
    (left != right).then(|| Failure {
        witness: vec![a.to_string()],
        detail: format!("{left} vs {right}"),
    })
}

/// Multiplicity of `L_{2m+r̄,s}` in `⊕_n (2n+1) (L_{2n+1,1} ⊠ L_{r,s})`,
/// summed directly over Clebsch-Gordan ranges, against `r (2m + r̄)`.
pub fn multiplicity_identity_check(p: u32, r: u32, s: u32, m_max: u32) -> CheckSummary {
    let rb = r_bar(r);
    let outcomes = (0..=m_max).map(|m| {
        let target = 2 * m + rb;
        let got: u64 = (0..=m + r + 1)
            .map(|n| {
                let hits = sl2_fusion(2 * n + 1, r)
                    .iter()
                    .filter(|&&k| k == target)
                    .count();
                (2 * n + 1) as u64 * hits as u64
            })
            .sum();
        let want = (r * target) as u64;
        (got != want).then(|| Failure {
            witness: vec![format!("r={r}"), format!("s={s}"), format!("m={m}")],
            detail: format!("multiplicity {got}, expected {want}"),
        })
    });
    CheckSummary::collect("multiplicity_identity", p, outcomes)
}

/// `induce(a ⊠ b) = induce(a) ⊠ induce(b)` for Virasoro labels with
/// `r <= cutoff`.
pub fn check_monoidal(p: u32, cutoff: u32) -> CheckSummary {
    let labels = all_labels(p, cutoff);
    let pairs: Vec<_> = labels
        .iter()
        .flat_map(|a| labels.iter().map(move |b| (*a, *b)))
        .collect();
    let outcomes: Vec<_> = pairs
        .par_iter()
        .map(|(a, b)| {
            let left = tensor(a, b).map(|d| induce_decomp(&d));
            let right = triplet_tensor_decomp(&induce(a), &induce(b));
            match (&left, &right) {
                (Ok(x), Ok(y)) if x == y => None,
                _ => Some(Failure {
                    witness: vec![a.to_string(), b.to_string()],
                    detail: format!("{left:?} vs {right:?}"),
                }),
            }
        })
        .collect();
    CheckSummary::collect("monoidal", p, outcomes)
}

pub fn all_triplet_labels(p: u32) -> Vec<TripletLabel> {
    let mut out = Vec::new();
    for r in 1..=2 {
        for s in 1..=p {
            out.push(TripletLabel::mk(TKind::W, p, r, s));
            if s < p {
                out.push(TripletLabel::mk(TKind::R, p, r, s));
            }
        }
    }
    out
}
