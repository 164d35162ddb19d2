use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::Rat;
use crate::error::{Error, Result};

/// Univariate polynomial with rational coefficients, lowest degree first.
///
/// The coefficient vector never has a trailing zero; the zero polynomial is
/// the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<Rat>", into = "Vec<Rat>")]
pub struct Poly1 {
    coeffs: Vec<Rat>,
}

impl Poly1 {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        Poly1 { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly1::new(coeffs.iter().map(|&c| Rat::int(c)).collect())
    }

    pub fn zero() -> Self {
        Poly1 { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Poly1::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly1::from_ints(&[0, 1])
    }

    /// `x - root`
    pub fn linear(root: &Rat) -> Self {
        Poly1::new(vec![-root, Rat::one()])
    }

    /// `c * x^k`
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.push(c);
        Poly1::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rat) -> Poly1 {
        Poly1::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64())
    }

    pub fn pow(&self, e: u32) -> Poly1 {
        (0..e).fold(Poly1::constant(Rat::one()), |acc, _| &acc * self)
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly1) -> Result<(Poly1, Poly1)> {
        let dl = d.leading().ok_or(Error::DivisionByZero)?;
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly1::zero(), self.clone()));
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / dl;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &(&c * dc);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly1::new(quot), Poly1::new(rem)))
    }

    /// Largest `m` with `(x - root)^m | self`, together with the quotient
    /// `self / (x - root)^m`. The zero polynomial reports multiplicity 0.
    pub fn exact_divide_check(&self, root: &Rat) -> (usize, Poly1) {
        let mut m = 0;
        let mut cur = self.clone();
        if cur.is_zero() {
            return (0, cur);
        }
        loop {
            let (q, r) = synthetic_division(&cur, root);
            if !r.is_zero() {
                return (m, cur);
            }
            m += 1;
            cur = q;
        }
    }

    pub fn derivative(&self) -> Poly1 {
        Poly1::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rat::int(k as i64))
                .collect(),
        )
    }
}

/// Divide by `x - root`, returning quotient and the remainder `f(root)`.
fn synthetic_division(f: &Poly1, root: &Rat) -> (Poly1, Rat) {
    let n = f.coeffs.len();
    if n == 0 {
        return (Poly1::zero(), Rat::zero());
    }
    let mut q = vec![Rat::zero(); n - 1];
    let mut carry = Rat::zero();
    for k in (0..n).rev() {
        let v = &f.coeffs[k] + &(&carry * root);
        if k == 0 {
            return (Poly1::new(q), v);
        }
        q[k - 1] = v.clone();
        carry = v;
    }
    unreachable!()
}

impl TryFrom<Vec<Rat>> for Poly1 {
    type Error = Error;
    fn try_from(v: Vec<Rat>) -> Result<Self> {
        Ok(Poly1::new(v))
    }
}

impl From<Poly1> for Vec<Rat> {
    fn from(p: Poly1) -> Self {
        p.coeffs
    }
}

impl Add<&Poly1> for &Poly1 {
    type Output = Poly1;
    fn add(self, rhs: &Poly1) -> Poly1 {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly1::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub<&Poly1> for &Poly1 {
    type Output = Poly1;
    fn sub(self, rhs: &Poly1) -> Poly1 {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly1::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul<&Poly1> for &Poly1 {
    type Output = Poly1;
    fn mul(self, rhs: &Poly1) -> Poly1 {
        if self.is_zero() || rhs.is_zero() {
            return Poly1::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly1::new(out)
    }
}

impl Neg for &Poly1 {
    type Output = Poly1;
    fn neg(self) -> Poly1 {
        Poly1::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Poly1> for Poly1 {
            type Output = Poly1;
            fn $method(self, rhs: Poly1) -> Poly1 {
                (&self).$method(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl fmt::Display for Poly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            write_term(f, c, &monomial_name("x", k), first)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly1({self})")
    }
}

pub(crate) fn monomial_name(var: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    }
}

/// Writes `c*mono` as a signed term of a sum.
pub(crate) fn write_term(
    f: &mut fmt::Formatter<'_>,
    c: &Rat,
    mono: &str,
    first: bool,
) -> fmt::Result {
    let neg = c.is_negative();
    let abs = c.abs();
    match (first, neg) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    if mono.is_empty() {
        write!(f, "{abs}")
    } else if abs.is_one() {
        write!(f, "{mono}")
    } else {
        write!(f, "{abs}*{mono}")
    }
}
