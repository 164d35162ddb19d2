//! Independent recomputation of every fusion product from the generator
//! tables alone: `L_{r,s} = L_{r,1} ⊠ L_{1,s}`, `P_{r,s} = L_{r,1} ⊠ P_{1,s}`,
//! the recursion `L_{1,s+1} ⊠ X = L_{1,2} ⊠ (L_{1,s} ⊠ X) - L_{1,s-1} ⊠ X`,
//! and splitting `P_{1,s} ⊠ Y` along its composition series when `Y` is
//! projective. Also the two sl2-type reference rings and the sweep that
//! compares everything with the closed forms.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fuscat::{
    cat_dim, decomp_dim, decomp_factors, tensor, tensor_decomp, Decomp, Kind, ModuleLabel,
};
use crate::report::{CheckSummary, Failure, Report};

/// Formal integer combination of labels; negative entries are allowed only
/// while a recursion is in flight.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct VirtualDecomp {
    entries: BTreeMap<ModuleLabel, i64>,
}

impl VirtualDecomp {
    pub fn single(a: ModuleLabel) -> Self {
        let mut v = VirtualDecomp::default();
        v.add(a, 1);
        v
    }

    pub fn add(&mut self, a: ModuleLabel, m: i64) {
        let e = self.entries.entry(a).or_default();
        *e += m;
        if *e == 0 {
            self.entries.remove(&a);
        }
    }

    pub fn add_scaled(&mut self, other: &VirtualDecomp, k: i64) {
        for (a, m) in &other.entries {
            self.add(*a, m * k);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (ModuleLabel, i64)> + '_ {
        self.entries.iter().map(|(a, m)| (*a, *m))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.values().all(|&m| m > 0)
    }

    pub fn into_decomp(self, p: u32, context: &str) -> Result<Decomp> {
        if let Some((a, m)) = self.entries.iter().find(|(_, &m)| m < 0) {
            return Err(Error::NegativeMultiplicity {
                label: a.to_string(),
                mult: *m,
                context: context.to_string(),
            });
        }
        Ok(Decomp::from_pairs(
            p,
            self.entries.into_iter().map(|(a, m)| (a, m as u64)),
        ))
    }
}

impl From<&Decomp> for VirtualDecomp {
    fn from(d: &Decomp) -> Self {
        let mut v = VirtualDecomp::default();
        for (a, m) in d.iter() {
            v.add(a, m as i64);
        }
        v
    }
}

impl fmt::Debug for VirtualDecomp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(a, m)| format!("{m}*{a}")).collect();
        write!(f, "[{}]", parts.join(" + "))
    }
}

/// Base products with `a = L_{r',1}` or `a = L_{1,2}`, as tabulated.
pub fn generator_tensor(a: &ModuleLabel, b: &ModuleLabel) -> Result<Decomp> {
    if a.p != b.p {
        return Err(Error::MismatchedP(a.p, b.p));
    }
    let p = a.p;
    let pi = p as i64;
    let (r, s) = (b.r as i64, b.s as i64);
    let mut out = Decomp::new(p);
    let mut put = |kind, k: i64, l: i64, m: u64| out.add(ModuleLabel::mk(kind, p, k, l), m);
    if a.kind == Kind::Simple && a.s == 1 {
        let r2 = a.r as i64;
        for k in ((r - r2).abs() + 1..=r + r2 - 1).step_by(2) {
            put(b.kind, k, s, 1);
        }
        return Ok(out);
    }
    if !(a.kind == Kind::Simple && a.r == 1 && a.s == 2) {
        return Err(Error::NonGenerator(a.to_string()));
    }
    use Kind::{Proj, Simple};
    match b.kind {
        Simple if s == 1 => put(Simple, r, 2, 1),
        Simple if s < pi => {
            put(Simple, r, s - 1, 1);
            put(Simple, r, s + 1, 1);
        }
        Simple => put(Proj, r, pi - 1, 1),
        Proj if p == 2 => {
            // b = P_{r,1}
            if r > 1 {
                put(Proj, r - 1, 2, 1);
            }
            put(Proj, r, 2, 2);
            put(Proj, r + 1, 2, 1);
        }
        Proj if s == 1 => {
            put(Proj, r, 2, 1);
            if r > 1 {
                put(Proj, r - 1, pi, 1);
            }
            put(Proj, r + 1, pi, 1);
        }
        Proj if s <= pi - 2 => {
            put(Proj, r, s - 1, 1);
            put(Proj, r, s + 1, 1);
        }
        Proj => {
            put(Proj, r, pi - 2, 1);
            put(Proj, r, pi, 2);
        }
    }
    Ok(out)
}

/// Memo tables for one run of the recursion. Build one per worker thread.
pub struct Oracle {
    p: u32,
    l1s: HashMap<(u32, ModuleLabel), VirtualDecomp>,
}

impl Oracle {
    pub fn new(p: u32) -> Self {
        Oracle {
            p,
            l1s: HashMap::new(),
        }
    }

    fn label(&self, kind: Kind, r: i64, s: i64) -> ModuleLabel {
        ModuleLabel::mk(kind, self.p, r, s)
    }

    fn gen(&self, a: &ModuleLabel, x: &VirtualDecomp) -> VirtualDecomp {
        let mut out = VirtualDecomp::default();
        for (b, m) in x.iter() {
            let d = generator_tensor(a, &b).expect("generator product");
            out.add_scaled(&VirtualDecomp::from(&d), m);
        }
        out
    }

    /// `L_{1,s} ⊠ x`
    fn l1s(&mut self, s: u32, x: &ModuleLabel) -> VirtualDecomp {
        if s == 1 {
            return VirtualDecomp::single(*x);
        }
        if let Some(v) = self.l1s.get(&(s, *x)) {
            return v.clone();
        }
        let l12 = self.label(Kind::Simple, 1, 2);
        let v = if s == 2 {
            self.gen(&l12, &VirtualDecomp::single(*x))
        } else {
            let prev = self.l1s(s - 1, x);
            let mut v = self.gen(&l12, &prev);
            v.add_scaled(&self.l1s(s - 2, x), -1);
            v
        };
        self.l1s.insert((s, *x), v.clone());
        v
    }

    fn product(&mut self, a: &ModuleLabel, b: &ModuleLabel) -> VirtualDecomp {
        let lr1 = self.label(Kind::Simple, a.r as i64, 1);
        match a.kind {
            Kind::Simple => {
                let inner = self.l1s(a.s, b);
                self.gen(&lr1, &inner)
            }
            Kind::Proj if !b.is_projective() => self.product(b, a),
            Kind::Proj => {
                // P_{1,s} ⊠ b = 2 (L_{1,s} ⊠ b) + L_{2,p-s} ⊠ b, b projective
                let s = a.s as i64;
                let mut inner = self.l1s(a.s, b);
                inner.add_scaled(&inner.clone(), 1);
                let l2 = self.label(Kind::Simple, 2, 1);
                let tail = self.l1s((self.p as i64 - s) as u32, b);
                inner.add_scaled(&self.gen(&l2, &tail), 1);
                self.gen(&lr1, &inner)
            }
        }
    }

    pub fn tensor(&mut self, a: &ModuleLabel, b: &ModuleLabel) -> Result<Decomp> {
        if a.p != b.p || a.p != self.p {
            return Err(Error::MismatchedP(a.p, b.p));
        }
        let v = self.product(a, b);
        v.into_decomp(self.p, &format!("{a} x {b}"))
    }
}

/// `a ⊠ b` through the generator recursion only.
pub fn recursive_tensor(a: &ModuleLabel, b: &ModuleLabel) -> Result<Decomp> {
    Oracle::new(a.p).tensor(a, b)
}

/// Clebsch-Gordan range `|r - r'| + 1, ..., r + r' - 1` in steps of 2.
pub fn sl2_fusion(r: u32, r2: u32) -> Vec<u32> {
    (r.abs_diff(r2) + 1..r + r2).step_by(2).collect()
}

/// Truncated range `|s - s'| + 1, ..., min(s + s' - 1, 2p - 1 - s - s')`.
pub fn verlinde_sl2(p: u32, s: u32, s2: u32) -> Result<Vec<u32>> {
    if s < 1 || s2 < 1 || s >= p || s2 >= p {
        return Err(Error::Domain(format!(
            "verlinde_sl2 needs 1 <= s, s' <= p - 1; got s={s}, s'={s2}, p={p}"
        )));
    }
    let top = (s + s2 - 1).min(2 * p - 1 - s - s2);
    Ok((s.abs_diff(s2) + 1..=top).step_by(2).collect())
}

/// Every label with `r <= r_max`, both kinds, after normalization.
pub fn all_labels(p: u32, r_max: u32) -> Vec<ModuleLabel> {
    let mut out = Vec::new();
    for r in 1..=r_max {
        for s in 1..=p {
            out.push(ModuleLabel::simple(p, r, s).expect("in range"));
            if s < p {
                out.push(ModuleLabel::proj(p, r, s).expect("in range"));
            }
        }
    }
    out.sort();
    out
}

fn pairs(labels: &[ModuleLabel]) -> Vec<(ModuleLabel, ModuleLabel)> {
    labels
        .iter()
        .flat_map(|a| labels.iter().map(move |b| (*a, *b)))
        .collect()
}

fn fail(witness: &[&ModuleLabel], detail: String) -> Option<Failure> {
    Some(Failure {
        witness: witness.iter().map(|a| a.to_string()).collect(),
        detail,
    })
}

pub fn check_commutativity(p: u32, r_max: u32) -> CheckSummary {
    let outcomes: Vec<_> = pairs(&all_labels(p, r_max))
        .par_iter()
        .map(|(a, b)| {
            let (x, y) = (tensor(a, b), tensor(b, a));
            (x != y)
                .then(|| fail(&[a, b], format!("{x:?} vs {y:?}")))
                .flatten()
        })
        .collect();
    CheckSummary::collect("commutativity", p, outcomes)
}

pub fn check_unit(p: u32, r_max: u32) -> CheckSummary {
    let one = ModuleLabel::simple(p, 1, 1).expect("unit");
    let outcomes: Vec<_> = all_labels(p, r_max)
        .iter()
        .map(|a| {
            let got = tensor(&one, a);
            (got != Ok(Decomp::single(*a)))
                .then(|| fail(&[a], format!("{got:?}")))
                .flatten()
        })
        .collect();
    CheckSummary::collect("unit", p, outcomes)
}

pub fn check_associativity(p: u32, r_max: u32) -> CheckSummary {
    let labels = all_labels(p, r_max);
    let outcomes: Vec<_> = pairs(&labels)
        .par_iter()
        .flat_map_iter(|(a, b)| {
            let ab = tensor(a, b).expect("same p");
            labels
                .iter()
                .map(move |c| {
                    let left = tensor_decomp(&ab, &Decomp::single(*c)).expect("same p");
                    let bc = tensor(b, c).expect("same p");
                    let right = tensor_decomp(&Decomp::single(*a), &bc).expect("same p");
                    (left != right)
                        .then(|| fail(&[a, b, c], format!("{left} vs {right}")))
                        .flatten()
                })
                .collect::<Vec<_>>()
        })
        .collect();
    CheckSummary::collect("associativity", p, outcomes)
}

pub fn check_oracle(p: u32, r_max: u32) -> CheckSummary {
    let outcomes: Vec<_> = pairs(&all_labels(p, r_max))
        .par_iter()
        .map_init(
            || Oracle::new(p),
            |oracle, (a, b)| {
                let closed = tensor(a, b);
                let rec = oracle.tensor(a, b);
                match (&closed, &rec) {
                    (Ok(x), Ok(y)) if x == y => None,
                    _ => fail(
                        &[a, b],
                        format!("closed form {closed:?}, recursion {rec:?}"),
                    ),
                }
            },
        )
        .collect();
    CheckSummary::collect("oracle", p, outcomes)
}

pub fn check_dimensions(p: u32, r_max: u32) -> CheckSummary {
    let outcomes: Vec<_> = pairs(&all_labels(p, r_max))
        .par_iter()
        .map(|(a, b)| {
            let lhs = decomp_dim(&tensor(a, b).expect("same p"));
            let rhs = &cat_dim(a) * &cat_dim(b);
            (lhs != rhs)
                .then(|| fail(&[a, b], format!("{lhs} vs {rhs}")))
                .flatten()
        })
        .collect();
    CheckSummary::collect("dimension", p, outcomes)
}

/// Composition factors of `a ⊠ b` against the sum of the recursive
/// products of the factors of `a` and `b`.
pub fn check_grothendieck(p: u32, r_max: u32) -> CheckSummary {
    let outcomes: Vec<_> = pairs(&all_labels(p, r_max))
        .par_iter()
        .map_init(
            || Oracle::new(p),
            |oracle, (a, b)| {
                let lhs = decomp_factors(&tensor(a, b).expect("same p"));
                let mut rhs = Decomp::new(p);
                for (x, m) in crate::fuscat::composition_factors(a).iter() {
                    for (y, n) in crate::fuscat::composition_factors(b).iter() {
                        match oracle.tensor(&x, &y) {
                            Ok(d) => rhs.add_all(&decomp_factors(&d), m * n),
                            Err(e) => return fail(&[a, b], e.to_string()),
                        }
                    }
                }
                (lhs != rhs)
                    .then(|| fail(&[a, b], format!("{lhs} vs {rhs}")))
                    .flatten()
            },
        )
        .collect();
    CheckSummary::collect("grothendieck", p, outcomes)
}

/// The full sweep over labels with `r <= r_max`.
pub fn check_ring_axioms(p: u32, r_max: u32) -> Report {
    let mut rep = Report::default();
    rep.push(check_commutativity(p, r_max));
    rep.push(check_unit(p, r_max));
    rep.push(check_associativity(p, r_max));
    rep.push(check_oracle(p, r_max));
    rep.push(check_dimensions(p, r_max));
    rep.push(check_grothendieck(p, r_max));
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(p: u32, r: u32, s: u32) -> ModuleLabel {
        ModuleLabel::simple(p, r, s).unwrap()
    }

    fn pr(p: u32, r: u32, s: u32) -> ModuleLabel {
        ModuleLabel::proj(p, r, s).unwrap()
    }

    #[test]
    fn generator_examples() {
        for p in 2..6 {
            assert_eq!(
                generator_tensor(&l(p, 2, 1), &l(p, 2, 1)).unwrap(),
                Decomp::from_pairs(p, [(l(p, 1, 1), 1), (l(p, 3, 1), 1)])
            );
            for r in 1..5 {
                assert_eq!(
                    generator_tensor(&l(p, 1, 2), &l(p, r, 1)).unwrap(),
                    Decomp::single(l(p, r, 2))
                );
            }
        }
        for p in 3..7 {
            for r in 1..4 {
                assert_eq!(
                    generator_tensor(&l(p, 1, 2), &pr(p, r, p - 1)).unwrap(),
                    Decomp::from_pairs(p, [(pr(p, r, p - 2), 1), (l(p, r, p), 2)])
                );
            }
        }
        assert_eq!(
            generator_tensor(&l(2, 1, 2), &pr(2, 1, 1)).unwrap(),
            Decomp::from_pairs(2, [(l(2, 1, 2), 2), (l(2, 2, 2), 1)])
        );
        assert!(matches!(
            generator_tensor(&l(3, 2, 2), &l(3, 1, 1)),
            Err(Error::NonGenerator(_))
        ));
    }

    #[test]
    fn recursion_examples() {
        assert_eq!(
            recursive_tensor(&l(3, 1, 3), &l(3, 1, 3)).unwrap(),
            Decomp::from_pairs(3, [(pr(3, 1, 1), 1), (l(3, 1, 3), 1)])
        );
        for a in all_labels(3, 3) {
            assert_eq!(
                recursive_tensor(&l(3, 1, 1), &a).unwrap(),
                Decomp::single(a)
            );
        }
    }

    #[test]
    fn negative_survivor_is_an_error() {
        let mut v = VirtualDecomp::single(l(3, 1, 1));
        v.add(l(3, 2, 1), -1);
        assert!(!v.is_nonnegative());
        assert!(matches!(
            v.into_decomp(3, "test"),
            Err(Error::NegativeMultiplicity { mult: -1, .. })
        ));
    }

    #[test]
    fn reference_rings() {
        assert_eq!(sl2_fusion(1, 4), vec![4]);
        assert_eq!(sl2_fusion(2, 2), vec![1, 3]);
        assert_eq!(sl2_fusion(3, 4), vec![2, 4, 6]);
        assert_eq!(verlinde_sl2(3, 2, 2).unwrap(), vec![1]);
        assert_eq!(verlinde_sl2(5, 3, 1).unwrap(), vec![3]);
        assert_eq!(verlinde_sl2(5, 3, 3).unwrap(), vec![1, 3]);
        assert!(verlinde_sl2(3, 3, 1).is_err());
    }

    fn ring_assoc(n: u32, prod: impl Fn(u32, u32) -> Vec<u32>) {
        let ext = |xs: &[u32], c: u32| {
            let mut v: Vec<u32> = xs.iter().flat_map(|&x| prod(x, c)).collect();
            v.sort();
            v
        };
        for a in 1..=n {
            for b in 1..=n {
                for c in 1..=n {
                    let left = ext(&prod(a, b), c);
                    let mut right: Vec<u32> = prod(b, c).iter().flat_map(|&x| prod(a, x)).collect();
                    right.sort();
                    assert_eq!(left, right, "({a},{b},{c})");
                }
            }
        }
    }

    #[test]
    fn reference_rings_associative() {
        ring_assoc(6, sl2_fusion);
        for p in 2..=6 {
            ring_assoc(p - 1, |a, b| verlinde_sl2(p, a, b).unwrap());
        }
    }

    #[test]
    fn small_sweeps() {
        for p in [2, 3] {
            let rep = check_ring_axioms(p, 3);
            assert!(rep.is_ok(), "{}", rep.to_json_lines());
            assert_eq!(Report::from_json_lines(&rep.to_json_lines()).unwrap(), rep);
        }
    }
}
