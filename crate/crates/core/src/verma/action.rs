use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;

use serde::{Deserialize, Serialize};

use super::partition::Partition;
use crate::error::{Error, Result};
use crate::scalars::Rat;

/// Central charge data `c = 13 - 6t - 6/t`, with `t = p` unless built by
/// [`CentralData::with_t`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralData {
    pub p: u32,
    pub t: Rat,
    pub c: Rat,
}

impl CentralData {
    pub fn new(p: u32) -> Result<Self> {
        if p < 2 {
            return Err(Error::Domain(format!("p must be at least 2, got {p}")));
        }
        Ok(CentralData::with_t(p, Rat::int(p as i64)))
    }

    /// Central data for an arbitrary nonzero rational `t`; `p` is kept only
    /// as a label.
    pub fn with_t(p: u32, t: Rat) -> Self {
        let c = central_charge(&t);
        CentralData { p, t, c }
    }

    pub fn is_consistent(&self) -> bool {
        central_charge(&self.t) == self.c
    }

    /// `h_{r,s}`
    pub fn h(&self, r: i64, s: i64) -> Rat {
        h_weight(self, r, s)
    }
}

fn central_charge(t: &Rat) -> Rat {
    Rat::int(13) - Rat::int(6) * t - Rat::int(6) / t
}

/// `h_{r,s} = ((t r - s)^2 - (t - 1)^2) / (4t)`
pub fn h_weight(cd: &CentralData, r: i64, s: i64) -> Rat {
    let t = &cd.t;
    let a = t * &Rat::int(r) - Rat::int(s);
    let b = t - &Rat::one();
    (&a * &a - &b * &b) / (Rat::int(4) * t)
}

pub(crate) type Terms = BTreeMap<Partition, Rat>;

pub(crate) fn add_scaled(dst: &mut Terms, src: &Terms, k: &Rat) {
    if k.is_zero() {
        return;
    }
    for (mu, c) in src {
        let e = dst.entry(mu.clone()).or_default();
        *e += &(c * k);
        if e.is_zero() {
            dst.remove(mu);
        }
    }
}

/// A Verma module `V(c, h)` with a memo table for the action of `L_n` on
/// PBW monomials. Not shareable across threads; build one per worker.
pub struct VermaModule {
    c: Rat,
    h: Rat,
    cache: RefCell<HashMap<(i64, Partition), Rc<Terms>>>,
}

impl VermaModule {
    pub fn new(cd: &CentralData, h: Rat) -> Self {
        VermaModule {
            c: cd.c.clone(),
            h,
            cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn h(&self) -> &Rat {
        &self.h
    }

    /// `L_n` applied to the monomial indexed by `lam`.
    pub(crate) fn act_basis(&self, n: i64, lam: &Partition) -> Rc<Terms> {
        if let Some(t) = self.cache.borrow().get(&(n, lam.clone())) {
            return t.clone();
        }
        let out = Rc::new(self.compute(n, lam));
        self.cache
            .borrow_mut()
            .insert((n, lam.clone()), out.clone());
        out
    }

    fn compute(&self, n: i64, lam: &Partition) -> Terms {
        let mut out = Terms::new();
        if n == 0 {
            let k = &self.h + &Rat::int(lam.level() as i64);
            if !k.is_zero() {
                out.insert(lam.clone(), k);
            }
            return out;
        }
        let Some(a) = lam.last() else {
            if n < 0 {
                out.insert(Partition::empty().with_pushed((-n) as u32), Rat::one());
            }
            return out;
        };
        let rest = lam.without_last();
        let ai = a as i64;
        if n < 0 {
            let m = -n;
            if m <= ai {
                out.insert(lam.with_pushed(m as u32), Rat::one());
                return out;
            }
            // L(-m) L(-a) = L(-a) L(-m) + (a - m) L(-m-a)
            for (mu, c) in self.act_basis(n, &rest).iter() {
                add_scaled(&mut out, &self.act_basis(-ai, mu), c);
            }
            add_scaled(&mut out, &self.act_basis(n - ai, &rest), &Rat::int(ai - m));
            return out;
        }
        // L(n) L(-a) = L(-a) L(n) + (n + a) L(n-a) + delta (n^3 - n)/12 c
        for (mu, c) in self.act_basis(n, &rest).iter() {
            add_scaled(&mut out, &self.act_basis(-ai, mu), c);
        }
        add_scaled(&mut out, &self.act_basis(n - ai, &rest), &Rat::int(n + ai));
        if n == ai {
            let k = Rat::new(n * n * n - n, 12) * &self.c;
            let mut single = Terms::new();
            single.insert(rest, Rat::one());
            add_scaled(&mut out, &single, &k);
        }
        out
    }

    pub(crate) fn act_terms(&self, n: i64, v: &Terms) -> Terms {
        let mut out = Terms::new();
        for (lam, c) in v {
            add_scaled(&mut out, &self.act_basis(n, lam), c);
        }
        out
    }

    pub fn act(&self, n: i64, v: &VermaElement) -> VermaElement {
        VermaElement {
            h: self.h.clone(),
            terms: self.act_terms(n, &v.terms),
        }
    }
}

/// `L_n v` for a single vector; builds a fresh [`VermaModule`].
pub fn act_l(cd: &CentralData, n: i64, v: &VermaElement) -> VermaElement {
    VermaModule::new(cd, v.h.clone()).act(n, v)
}

/// Vector of the Verma module of lowest weight `h`.
#[derive(Clone, PartialEq, Eq)]
pub struct VermaElement {
    pub h: Rat,
    terms: Terms,
}

impl VermaElement {
    pub fn zero(h: Rat) -> Self {
        VermaElement {
            h,
            terms: Terms::new(),
        }
    }

    /// The lowest-weight vector `v`.
    pub fn vacuum(h: Rat) -> Self {
        VermaElement::monomial(h, Partition::empty(), Rat::one())
    }

    pub fn monomial(h: Rat, lam: Partition, c: Rat) -> Self {
        let mut terms = Terms::new();
        if !c.is_zero() {
            terms.insert(lam, c);
        }
        VermaElement { h, terms }
    }

    pub fn from_terms(h: Rat, terms: impl IntoIterator<Item = (Partition, Rat)>) -> Self {
        let mut out = VermaElement::zero(h);
        for (lam, c) in terms {
            out.add_term(lam, c);
        }
        out
    }

    pub fn add_term(&mut self, lam: Partition, c: Rat) {
        let e = self.terms.entry(lam.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&lam);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, lam: &Partition) -> Rat {
        self.terms.get(lam).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Rat)> {
        self.terms.iter()
    }

    /// The common level of all terms, `None` if zero or of mixed grade.
    pub fn level(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Partition::level);
        let first = it.next()?;
        it.all(|l| l == first).then_some(first)
    }

    pub fn scale(&self, k: &Rat) -> VermaElement {
        VermaElement::from_terms(
            self.h.clone(),
            self.terms.iter().map(|(l, c)| (l.clone(), c * k)),
        )
    }

    pub fn add(&self, other: &VermaElement) -> VermaElement {
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(l.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &VermaElement) -> VermaElement {
        self.add(&other.scale(&Rat::int(-1)))
    }
}

impl fmt::Display for VermaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (lam, c)) in self.terms.iter().enumerate() {
            let sign = match (i == 0, c.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let ops: String = lam.modes().map(|m| format!("L(-{m})")).collect();
            write!(f, "{sign}{} * {ops}|h>", c.abs())?;
        }
        Ok(())
    }
}

impl fmt::Debug for VermaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VermaElement(h={}; {})", self.h, self)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    partition: Partition,
    coeff: Rat,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    h: Rat,
    terms: Vec<TermJson>,
}

impl Serialize for VermaElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementJson {
            h: self.h.clone(),
            terms: self
                .terms
                .iter()
                .map(|(l, c)| TermJson {
                    partition: l.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for VermaElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let e = ElementJson::deserialize(d)?;
        Ok(VermaElement::from_terms(
            e.h,
            e.terms.into_iter().map(|t| (t.partition, t.coeff)),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verma::partitions;
    use proptest::prelude::*;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn weights() {
        let cd2 = CentralData::new(2).unwrap();
        assert_eq!(cd2.h(1, 1), Rat::zero());
        assert_eq!(cd2.h(1, 2), Rat::new(-1, 8));
        assert_eq!(cd2.c, Rat::int(-2));
        for p in 2..12 {
            let cd = CentralData::new(p).unwrap();
            assert_eq!(cd.h(2, 1), Rat::new(3 * p as i64 - 2, 4));
            assert!(cd.is_consistent());
        }
    }

    #[test]
    fn small_brackets() {
        let cd = CentralData::new(3).unwrap();
        let h = Rat::new(2, 7);
        let m = VermaModule::new(&cd, h.clone());
        let v1 = VermaElement::monomial(h.clone(), part(&[1]), Rat::one());
        let got = m.act(1, &v1);
        assert_eq!(
            got,
            VermaElement::vacuum(h.clone()).scale(&(Rat::int(2) * &h))
        );
        let v2 = VermaElement::monomial(h.clone(), part(&[2]), Rat::one());
        let k = Rat::int(4) * &h + &cd.c / &Rat::int(2);
        assert_eq!(m.act(2, &v2), VermaElement::vacuum(h.clone()).scale(&k));
        let v = VermaElement::monomial(h.clone(), part(&[2, 1]), Rat::int(5));
        assert_eq!(m.act(0, &v), v.scale(&(&h + &Rat::int(3))));
    }

    #[test]
    fn reordering() {
        // L(-2) L(-1) v = L(-1) L(-2) v - L(-3) v
        let cd = CentralData::new(2).unwrap();
        let h = Rat::zero();
        let m = VermaModule::new(&cd, h.clone());
        let got = m.act(
            -2,
            &VermaElement::monomial(h.clone(), part(&[1]), Rat::one()),
        );
        let want =
            VermaElement::from_terms(h, [(part(&[2, 1]), Rat::one()), (part(&[3]), Rat::int(-1))]);
        assert_eq!(got, want);
    }

    #[test]
    fn display_and_json() {
        let h = Rat::new(-1, 8);
        let v = VermaElement::from_terms(
            h,
            [(part(&[1, 1]), Rat::one()), (part(&[2]), Rat::new(-1, 2))],
        );
        assert_eq!(v.to_string(), "1 * L(-1)L(-1)|h> - 1/2 * L(-2)|h>");
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(
            json,
            r#"{"h":"-1/8","terms":[{"partition":[1,1],"coeff":"1/1"},{"partition":[2],"coeff":"-1/2"}]}"#
        );
        assert_eq!(serde_json::from_str::<VermaElement>(&json).unwrap(), v);
    }

    fn random_vector(h: &Rat, level: u32, seed: &[i64]) -> VermaElement {
        let basis = partitions(level);
        VermaElement::from_terms(
            h.clone(),
            basis
                .into_iter()
                .zip(seed.iter().cycle())
                .map(|(l, &c)| (l, Rat::int(c))),
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn weight_symmetries(p in 2u32..9, r in -8i64..8, s in -8i64..8) {
            let cd = CentralData::new(p).unwrap();
            prop_assert_eq!(cd.h(r, s + p as i64), cd.h(r - 1, s));
            prop_assert_eq!(cd.h(r, s), cd.h(-r, -s));
        }

        #[test]
        fn jacobi(
            p in 2u32..5,
            hn in -6i64..6, hd in 1i64..5,
            level in 0u32..=6,
            m in -3i64..=3, n in -3i64..=3,
            seed in prop::collection::vec(-3i64..4, 1..6),
        ) {
            let cd = CentralData::new(p).unwrap();
            let h = Rat::new(hn, hd);
            let module = VermaModule::new(&cd, h.clone());
            let w = random_vector(&h, level, &seed);
            let lhs = module.act(m, &module.act(n, &w)).sub(&module.act(n, &module.act(m, &w)));
            let mut rhs = module.act(m + n, &w).scale(&Rat::int(m - n));
            if m + n == 0 {
                rhs = rhs.add(&w.scale(&(Rat::new(m * m * m - m, 12) * &cd.c)));
            }
            prop_assert_eq!(lhs, rhs);
        }
    }
}
