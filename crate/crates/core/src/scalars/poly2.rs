use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::poly1::{monomial_name, write_term};
use super::{Poly1, Rat};

/// Bivariate polynomial in `x`, `y` over the rationals, stored sparsely as
/// `(i, j) -> coefficient of x^i y^j` with no zero entries.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), Rat>,
}

/// One monomial in the JSON form of a [`Poly2`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Monomial2 {
    pub x: u32,
    pub y: u32,
    pub coeff: Rat,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn constant(c: Rat) -> Self {
        Poly2::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rat, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        Poly2 { terms }
    }

    pub fn x() -> Self {
        Poly2::monomial(Rat::one(), 1, 0)
    }

    pub fn y() -> Self {
        Poly2::monomial(Rat::one(), 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rat {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.terms.iter()
    }

    /// Degree in `x`, `None` for zero.
    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    fn add_term(&mut self, key: (u32, u32), c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly2 {
        let mut out = Poly2::zero();
        for (&k, v) in &self.terms {
            out.add_term(k, v * c);
        }
        out
    }

    /// Substitute `y = h`, leaving a polynomial in `x`.
    pub fn eval_y(&self, h: &Rat) -> Poly1 {
        let mut out = Poly1::zero();
        for (&(i, j), c) in &self.terms {
            out = &out + &Poly1::monomial(c * h.pow(j), i as usize);
        }
        out
    }

    /// Monomials in graded lexicographic order with `x > y`, highest first.
    pub fn sorted_terms(&self) -> Vec<((u32, u32), Rat)> {
        let mut v: Vec<_> = self.terms.iter().map(|(k, c)| (*k, c.clone())).collect();
        v.sort_by(|a, b| grlex(b.0, a.0));
        v
    }

    pub fn to_monomials(&self) -> Vec<Monomial2> {
        self.sorted_terms()
            .into_iter()
            .map(|((x, y), coeff)| Monomial2 { x, y, coeff })
            .collect()
    }

    pub fn from_monomials(ms: &[Monomial2]) -> Self {
        let mut out = Poly2::zero();
        for m in ms {
            out.add_term((m.x, m.y), m.coeff.clone());
        }
        out
    }
}

fn grlex(a: (u32, u32), b: (u32, u32)) -> Ordering {
    (a.0 + a.1).cmp(&(b.0 + b.1)).then(a.0.cmp(&b.0))
}

impl Serialize for Poly2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_monomials().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly2 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let ms = Vec::<Monomial2>::deserialize(d)?;
        Ok(Poly2::from_monomials(&ms))
    }
}

impl From<Rat> for Poly2 {
    fn from(c: Rat) -> Self {
        Poly2::constant(c)
    }
}

impl Add<&Poly2> for &Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (&k, v) in &rhs.terms {
            out.add_term(k, v.clone());
        }
        out
    }
}

impl Sub<&Poly2> for &Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (&k, v) in &rhs.terms {
            out.add_term(k, -v);
        }
        out
    }
}

impl Mul<&Poly2> for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &rhs.terms {
                out.add_term((i + k, j + l), a * b);
            }
        }
        out
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        self.scale(&Rat::int(-1))
    }
}

impl Add<Poly2> for Poly2 {
    type Output = Poly2;
    fn add(self, rhs: Poly2) -> Poly2 {
        &self + &rhs
    }
}

impl Sub<Poly2> for Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: Poly2) -> Poly2 {
        &self - &rhs
    }
}

impl Mul<Poly2> for Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: Poly2) -> Poly2 {
        &self * &rhs
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, ((i, j), c)) in self.sorted_terms().iter().enumerate() {
            let mono = [
                monomial_name("x", *i as usize),
                monomial_name("y", *j as usize),
            ]
            .into_iter()
            .filter(|s| !s.is_empty())
            .collect::<Vec<_>>()
            .join("*");
            write_term(f, c, &mono, n == 0)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly2({self})")
    }
}
