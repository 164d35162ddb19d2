use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;

use super::{Poly1, Rat};

/// The `n`-th cyclotomic polynomial, obtained by dividing `x^n - 1` by
/// `Φ_d` for every proper divisor `d` of `n`.
pub fn cyclotomic_poly(n: u32) -> Poly1 {
    assert!(n >= 1, "cyclotomic_poly needs n >= 1");
    let mut f = &Poly1::monomial(Rat::one(), n as usize) - &Poly1::constant(Rat::one());
    for d in (1..n).filter(|d| n % d == 0) {
        let (q, r) = f
            .div_rem(&cyclotomic_poly(d))
            .expect("cyclotomic polynomials are monic");
        debug_assert!(r.is_zero());
        f = q;
    }
    f
}

fn modulus(p: u32) -> Arc<Poly1> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Poly1>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    guard
        .entry(p)
        .or_insert_with(|| Arc::new(cyclotomic_poly(2 * p)))
        .clone()
}

/// Element of `Z[ζ]`, `ζ = e^{iπ/p}` a primitive `2p`-th root of unity,
/// stored as a rational polynomial in `ζ` reduced modulo `Φ_{2p}`.
#[derive(Clone)]
pub struct CycScalar {
    p: u32,
    poly: Poly1,
    modulus: Arc<Poly1>,
}

impl CycScalar {
    pub fn from_poly(p: u32, poly: &Poly1) -> Self {
        assert!(p >= 2, "CycScalar needs p >= 2");
        let modulus = modulus(p);
        let (_, r) = poly.div_rem(&modulus).expect("nonzero modulus");
        CycScalar {
            p,
            poly: r,
            modulus,
        }
    }

    pub fn from_rat(p: u32, c: Rat) -> Self {
        CycScalar::from_poly(p, &Poly1::constant(c))
    }

    pub fn int(p: u32, n: i64) -> Self {
        CycScalar::from_rat(p, Rat::int(n))
    }

    pub fn zero(p: u32) -> Self {
        CycScalar::int(p, 0)
    }

    pub fn one(p: u32) -> Self {
        CycScalar::int(p, 1)
    }

    /// `q^k` for any integer `k`, using `q^{2p} = 1`.
    pub fn q_pow(p: u32, k: i64) -> Self {
        let e = k.rem_euclid(2 * p as i64) as usize;
        CycScalar::from_poly(p, &Poly1::monomial(Rat::one(), e))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Reduced coefficients, lowest power of `q` first.
    pub fn coeffs(&self) -> &[Rat] {
        self.poly.coeffs()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        CycScalar {
            p: self.p,
            poly: self.poly.scale(c),
            modulus: self.modulus.clone(),
        }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&Rat::int(n))
    }

    /// Image under the embedding `q ↦ e^{iπ/p}`.
    pub fn to_complex(&self) -> Complex64 {
        let theta = std::f64::consts::PI / self.p as f64;
        self.poly
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| Complex64::from_polar(c.to_f64(), theta * k as f64))
            .sum()
    }

    fn check_p(&self, other: &CycScalar) {
        assert_eq!(self.p, other.p, "CycScalar arithmetic across different p");
    }
}

/// Quantum integer `[s]_q = q^{s-1} + q^{s-3} + ... + q^{1-s}` with
/// `q = e^{iπ/p}`; extended to `s <= 0` by `[-s] = -[s]`.
pub fn qint(s: i64, p: u32) -> CycScalar {
    if s == 0 {
        return CycScalar::zero(p);
    }
    if s < 0 {
        return -qint(-s, p);
    }
    let mut poly = Poly1::zero();
    for j in 0..s {
        let e = (s - 1 - 2 * j).rem_euclid(2 * p as i64) as usize;
        poly = &poly + &Poly1::monomial(Rat::one(), e);
    }
    CycScalar::from_poly(p, &poly)
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.poly == other.poly
    }
}

impl Eq for CycScalar {}

impl Add<&CycScalar> for &CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: &CycScalar) -> CycScalar {
        self.check_p(rhs);
        CycScalar {
            p: self.p,
            poly: &self.poly + &rhs.poly,
            modulus: self.modulus.clone(),
        }
    }
}

impl Sub<&CycScalar> for &CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: &CycScalar) -> CycScalar {
        self.check_p(rhs);
        CycScalar {
            p: self.p,
            poly: &self.poly - &rhs.poly,
            modulus: self.modulus.clone(),
        }
    }
}

impl Mul<&CycScalar> for &CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: &CycScalar) -> CycScalar {
        self.check_p(rhs);
        let prod = &self.poly * &rhs.poly;
        let (_, r) = prod.div_rem(&self.modulus).expect("nonzero modulus");
        CycScalar {
            p: self.p,
            poly: r,
            modulus: self.modulus.clone(),
        }
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar {
            p: self.p,
            poly: -&self.poly,
            modulus: self.modulus.clone(),
        }
    }
}

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        -&self
    }
}

impl Add for CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: CycScalar) -> CycScalar {
        &self + &rhs
    }
}

impl Sub for CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: CycScalar) -> CycScalar {
        &self - &rhs
    }
}

impl Mul for CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: CycScalar) -> CycScalar {
        &self * &rhs
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.poly.to_string().replace('x', "q");
        write!(f, "{s}")
    }
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycScalar(p={}, {})", self.p, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic_poly(1), Poly1::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic_poly(4), Poly1::from_ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(6), Poly1::from_ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(12), Poly1::from_ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn qint_examples() {
        for p in 2..8 {
            assert_eq!(qint(1, p), CycScalar::one(p));
            assert!(qint(p as i64, p).is_zero());
        }
        let two = qint(2, 3);
        assert_eq!(&(&two * &two) - &qint(3, 3), qint(1, 3));
    }

    #[test]
    fn qint_symmetries() {
        for p in 2u32..9 {
            let pi = p as i64;
            for s in 1..pi {
                assert_eq!(qint(pi + s, p), -qint(s, p), "p={p} s={s}");
                assert_eq!(qint(pi - s, p), qint(s, p), "p={p} s={s}");
            }
        }
    }

    #[test]
    fn embedding_matches_sine_ratio() {
        for p in 2u32..=8 {
            for s in 1..=p {
                let z = qint(s as i64, p).to_complex();
                let t = std::f64::consts::PI / p as f64;
                let expected = (s as f64 * t).sin() / t.sin();
                assert!((z.re - expected).abs() < 1e-12 && z.im.abs() < 1e-12);
            }
        }
    }

    fn coeffs() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-4i64..4, 0..12)
    }

    proptest! {
        #[test]
        fn commutative_ring(p in 2u32..7, a in coeffs(), b in coeffs(), c in coeffs()) {
            let [a, b, c] = [a, b, c].map(|v| CycScalar::from_poly(p, &Poly1::from_ints(&v)));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &CycScalar::one(p), a.clone());
            prop_assert!((&a - &a).is_zero());
            let za = (&a * &b).to_complex();
            let zb = a.to_complex() * b.to_complex();
            prop_assert!((za - zb).norm() < 1e-9);
        }
    }
}
