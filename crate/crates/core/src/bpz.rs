//! Numerical evaluation of the rigidity invariant of `L_{1,2}`: the BPZ
//! equation for four-point functions of `v_{1,2}`, its hypergeometric
//! solutions, and the connection to series at `x = 0`.
//!
//! Only real `x ∈ (0, 1)` is ever evaluated; logarithms use the principal
//! branch.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;
use statrs::function::gamma::{digamma, gamma};

use crate::error::{Error, Result};
use crate::fuscat::{cat_dim, ModuleLabel};
use crate::verma::CentralData;

const SERIES_TOL: f64 = 1e-15;

/// Value with first and second derivative in one variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub v: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Jet {
    pub fn constant(v: f64) -> Self {
        Jet {
            v,
            d1: 0.0,
            d2: 0.0,
        }
    }

    pub fn var(x: f64) -> Self {
        Jet {
            v: x,
            d1: 1.0,
            d2: 0.0,
        }
    }

    pub fn scale(self, k: f64) -> Self {
        Jet {
            v: k * self.v,
            d1: k * self.d1,
            d2: k * self.d2,
        }
    }

    /// `self^a` for `self.v > 0`.
    pub fn powf(self, a: f64) -> Self {
        let f = self.v.powf(a);
        let f1 = a * self.v.powf(a - 1.0);
        let f2 = a * (a - 1.0) * self.v.powf(a - 2.0);
        Jet {
            v: f,
            d1: f1 * self.d1,
            d2: f2 * self.d1 * self.d1 + f1 * self.d2,
        }
    }

    pub fn ln(self) -> Self {
        Jet {
            v: self.v.ln(),
            d1: self.d1 / self.v,
            d2: self.d2 / self.v - self.d1 * self.d1 / (self.v * self.v),
        }
    }

    pub fn recip(self) -> Self {
        self.powf(-1.0)
    }

    fn size(&self) -> f64 {
        self.v.abs().max(self.d1.abs()).max(self.d2.abs())
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet {
            v: self.v + o.v,
            d1: self.d1 + o.d1,
            d2: self.d2 + o.d2,
        }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        self + (-o)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        Jet {
            v: self.v * o.v,
            d1: self.d1 * o.v + self.v * o.d1,
            d2: self.d2 * o.v + 2.0 * self.d1 * o.d1 + self.v * o.d2,
        }
    }
}

fn check_params(c: f64) -> Result<()> {
    if c <= 0.0 && c == c.round() {
        return Err(Error::Domain(format!("2F1 has a pole at c = {c}")));
    }
    Ok(())
}

/// Gauss series `2F1(a, b; c; z)` on a jet, summed until the terms drop
/// below `1e-15` relative to the sum, or `nterms` terms.
pub fn hyp2f1_jet(a: f64, b: f64, c: f64, z: Jet, nterms: usize) -> Result<Jet> {
    check_params(c)?;
    if z.v.abs() >= 1.0 {
        return Err(Error::Domain(format!(
            "2F1 series needs |x| < 1, got {}",
            z.v
        )));
    }
    let mut sum = Jet::constant(1.0);
    let mut coef = 1.0;
    let mut zn = Jet::constant(1.0);
    for n in 0..nterms {
        let nf = n as f64;
        coef *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0));
        zn = zn * z;
        let term = zn.scale(coef);
        sum = sum + term;
        if term.size() <= SERIES_TOL * sum.size().max(1.0) {
            break;
        }
    }
    Ok(sum)
}

pub fn hyp2f1(a: f64, b: f64, c: f64, x: f64, nterms: usize) -> Result<f64> {
    hyp2f1_jet(a, b, c, Jet::constant(x), nterms).map(|j| j.v)
}

/// Left side of the BPZ equation
/// `x(1-x)φ'' + (1-2x)φ'/p - h_{1,2} φ / (p x (1-x))` at `x`.
pub fn ode_residual(p: u32, phi: impl Fn(Jet) -> Jet, x: f64) -> f64 {
    let pf = p as f64;
    let h = h12(p);
    let f = phi(Jet::var(x));
    let q = x * (1.0 - x);
    q * f.d2 + (1.0 - 2.0 * x) * f.d1 / pf - h * f.v / (pf * q)
}

/// Left side of `x(1-x)f'' + (2/p)(1-2x)f' + (1/p)(1-3/p)f`.
pub fn hypergeometric_residual(p: u32, f: impl Fn(Jet) -> Jet, x: f64) -> f64 {
    let pf = p as f64;
    let g = f(Jet::var(x));
    x * (1.0 - x) * g.d2 + 2.0 / pf * (1.0 - 2.0 * x) * g.d1 + (1.0 - 3.0 / pf) / pf * g.v
}

fn h12(p: u32) -> f64 {
    CentralData::new(p).expect("p >= 2").h(1, 2).to_f64()
}

const NTERMS: usize = 5000;

/// The solution of the BPZ equation normalized at `x = 1`, on
/// `1/2 < x < 1`.
pub fn psi(p: u32, x: Jet) -> Jet {
    let pf = p as f64;
    let one = Jet::constant(1.0);
    let y = one - x;
    let pref = (x * y).powf(1.0 / (2.0 * pf));
    let f = if p == 2 {
        hyp2f1_jet(0.5, 0.5, 1.0, y, NTERMS)
    } else {
        let z = -(y * x.recip());
        hyp2f1_jet(1.0 / pf, 1.0 - 1.0 / pf, 2.0 - 2.0 / pf, z, NTERMS)
            .map(|h| x.powf(-1.0 / pf) * y.powf(1.0 - 2.0 / pf) * h)
    };
    pref * f.expect("parameters are admissible")
}

/// `x^α Σ (coeffs[n] + log_coeffs[n] log x) x^n`, truncated.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FSeries {
    pub exponent: f64,
    pub coeffs: Vec<f64>,
    pub log_coeffs: Option<Vec<f64>>,
}

impl FSeries {
    /// Coefficients of `2F1(a, b; c; x)` up to `x^{order-1}`.
    pub fn gauss(a: f64, b: f64, c: f64, order: usize) -> Result<Self> {
        check_params(c)?;
        let mut coeffs = Vec::with_capacity(order);
        let mut t = 1.0;
        for n in 0..order {
            coeffs.push(t);
            let nf = n as f64;
            t *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0));
        }
        Ok(FSeries {
            exponent: 0.0,
            coeffs,
            log_coeffs: None,
        })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn shift(mut self, by: f64) -> Self {
        self.exponent += by;
        self
    }

    pub fn scale(mut self, k: f64) -> Self {
        self.coeffs.iter_mut().for_each(|c| *c *= k);
        if let Some(l) = &mut self.log_coeffs {
            l.iter_mut().for_each(|c| *c *= k);
        }
        self
    }

    /// Product with the binomial series of `(1-x)^β`.
    pub fn times_binomial(self, beta: f64) -> Self {
        let n = self.order();
        let mut bin = Vec::with_capacity(n);
        let mut t = 1.0;
        for k in 0..n {
            bin.push(t);
            t *= -(beta - k as f64) / (k as f64 + 1.0);
        }
        let conv = |v: &[f64]| -> Vec<f64> {
            (0..n)
                .map(|i| (0..=i).map(|j| v[j] * bin[i - j]).sum())
                .collect()
        };
        FSeries {
            exponent: self.exponent,
            coeffs: conv(&self.coeffs),
            log_coeffs: self.log_coeffs.as_deref().map(conv),
        }
    }

    /// `(k x d/dx - 1)` applied termwise.
    pub fn euler(&self, k: f64) -> Self {
        let n = self.order();
        let logs = self.log_coeffs.clone().unwrap_or_else(|| vec![0.0; n]);
        let w = |i: usize| k * (self.exponent + i as f64) - 1.0;
        FSeries {
            exponent: self.exponent,
            coeffs: (0..n)
                .map(|i| w(i) * self.coeffs[i] + k * logs[i])
                .collect(),
            log_coeffs: self
                .log_coeffs
                .as_ref()
                .map(|l| (0..n).map(|i| w(i) * l[i]).collect()),
        }
    }

    /// Coefficient of `x^e (log x)^0`; zero if `e` is not on this series'
    /// exponent lattice.
    pub fn coefficient(&self, e: f64) -> f64 {
        let d = e - self.exponent;
        let n = d.round();
        if (d - n).abs() > 1e-12 || n < 0.0 || n as usize >= self.order() {
            return 0.0;
        }
        self.coeffs[n as usize]
    }

    pub fn eval(&self, x: f64) -> f64 {
        let lx = x.ln();
        let mut s = 0.0;
        let mut xn = x.powf(self.exponent);
        for i in 0..self.order() {
            let l = self.log_coeffs.as_ref().map_or(0.0, |l| l[i]);
            s += (self.coeffs[i] + l * lx) * xn;
            xn *= x;
        }
        s
    }
}

const ORDER: usize = 400;

/// Expansion of the normalized BPZ solution around `x = 0`, one series
/// per exponent class.
pub fn psi_expansion(p: u32) -> Result<Vec<FSeries>> {
    if p < 2 {
        return Err(Error::Domain(format!("p must be >= 2, got {p}")));
    }
    let pf = p as f64;
    let q = 1.0 / (2.0 * pf);
    if p == 2 {
        let norm = -1.0 / (gamma(0.5) * gamma(0.5));
        let base = FSeries::gauss(0.5, 0.5, 1.0, ORDER)?;
        let cn: Vec<f64> = (0..ORDER)
            .map(|n| 2.0 * digamma(n as f64 + 0.5) - 2.0 * digamma(n as f64 + 1.0))
            .collect();
        let s = FSeries {
            exponent: 0.0,
            coeffs: base
                .coeffs
                .iter()
                .zip(&cn)
                .map(|(c, k)| norm * c * k)
                .collect(),
            log_coeffs: Some(base.coeffs.iter().map(|c| norm * c).collect()),
        };
        return Ok(vec![s.times_binomial(q).shift(q)]);
    }
    let a_coef = gamma(1.0 - 2.0 / pf) * gamma(2.0 - 2.0 / pf)
        / (gamma(1.0 - 1.0 / pf) * gamma(2.0 - 3.0 / pf));
    let c_coef = connection_constant(p);
    let first = FSeries::gauss(1.0 / pf, 3.0 / pf - 1.0, 2.0 / pf, ORDER)?
        .times_binomial(q)
        .scale(a_coef)
        .shift(q);
    let second = FSeries::gauss(1.0 / pf, 1.0 - 1.0 / pf, 2.0 - 2.0 / pf, ORDER)?
        .times_binomial(q)
        .scale(c_coef)
        .shift(q + 1.0 - 2.0 / pf);
    Ok(vec![first, second])
}

/// `Γ(2/p-1)Γ(2-2/p) / (Γ(1/p)Γ(1-1/p))`.
pub fn connection_constant(p: u32) -> f64 {
    let pf = p as f64;
    gamma(2.0 / pf - 1.0) * gamma(2.0 - 2.0 / pf) / (gamma(1.0 / pf) * gamma(1.0 - 1.0 / pf))
}

/// `|ψ(x) - expansion(x)|` at a point of `1/2 < x < 1`.
pub fn connection_gap(p: u32, x: f64) -> Result<f64> {
    let direct = psi(p, Jet::constant(x)).v;
    let series: f64 = psi_expansion(p)?.iter().map(|s| s.eval(x)).sum();
    Ok((direct - series).abs())
}

pub fn closed_form_invariant(p: u32) -> f64 {
    if p == 2 {
        -4.0 / PI
    } else {
        let pf = p as f64;
        -(pf - 2.0) / (PI / pf).cos()
    }
}

/// Coefficient of `x^{-2h_{1,2}} (log x)^0` in `(2p x d/dx - 1) ψ`.
pub fn series_invariant(p: u32) -> Result<f64> {
    let e = -2.0 * h12(p);
    let k = 2.0 * p as f64;
    Ok(psi_expansion(p)?
        .iter()
        .map(|s| s.euler(k).coefficient(e))
        .sum())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RigidityRoutes {
    pub p: u32,
    pub closed_form: f64,
    pub series: f64,
    pub difference: f64,
    pub connection_gap: f64,
}

pub const ROUTE_TOL: f64 = 1e-8;
const SAMPLES: [f64; 3] = [0.6, 0.7, 0.8];

pub fn rigidity_routes(p: u32) -> Result<RigidityRoutes> {
    let series = series_invariant(p)?;
    let closed_form = closed_form_invariant(p);
    let gap = SAMPLES
        .iter()
        .map(|&x| connection_gap(p, x))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok(RigidityRoutes {
        p,
        closed_form,
        series,
        difference: (series - closed_form).abs(),
        connection_gap: gap,
    })
}

/// `<v_{1,2}, R(v_{1,2})>`, from the series route, after checking it
/// against the closed form and the expansion against `ψ`.
pub fn rigidity_invariant(p: u32) -> Result<f64> {
    let r = rigidity_routes(p)?;
    let worst = r.difference.max(r.connection_gap);
    if worst > ROUTE_TOL {
        return Err(Error::RouteMismatch {
            a: r.series,
            b: r.closed_form,
            tol: ROUTE_TOL,
        });
    }
    Ok(r.series)
}

pub const TRACE_TOL: f64 = 1e-10;

/// `e ∘ i` after normalizing `i` by the rigidity invariant:
/// `(1 + 4p h_{1,2}) / (-invariant)`, compared with the categorical
/// dimension of `L_{1,2}`.
pub fn left_trace_check(p: u32) -> Result<f64> {
    let inv = rigidity_invariant(p)?;
    let trace = -(1.0 + 4.0 * p as f64 * h12(p)) / inv;
    let dim = cat_dim(&ModuleLabel::simple(p, 1, 2)?).to_complex();
    if (dim.re - trace).abs() > TRACE_TOL || dim.im.abs() > TRACE_TOL {
        return Err(Error::RouteMismatch {
            a: trace,
            b: dim.re,
            tol: TRACE_TOL,
        });
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gauss_series() {
        assert_eq!(hyp2f1(0.3, 0.7, 1.4, 0.0, 200).unwrap(), 1.0);
        let x = 0.3;
        let got = hyp2f1(0.4, 1.3, 1.3, x, 200).unwrap();
        assert!((got - (1.0f64 - x).powf(-0.4)).abs() < 1e-13);
        // log(1+x) = x 2F1(1,1;2;-x)
        let got = 0.5 * hyp2f1(1.0, 1.0, 2.0, -0.5, 200).unwrap();
        assert!((got - 1.5f64.ln()).abs() < 1e-13);
        assert!(hyp2f1(1.0, 1.0, -2.0, 0.1, 200).is_err());
        assert!(hyp2f1(1.0, 1.0, 2.0, 1.0, 200).is_err());
    }

    /// `F(a,b;c;1)` by summing at `c + 60`, where the series converges
    /// fast, and stepping back with the contiguous relation
    /// `F(c) = F(c+1) (c-a)(c-b) / (c(c-a-b))`.
    fn gauss_at_one(a: f64, b: f64, c: f64) -> f64 {
        let k = 60;
        let top = c + k as f64;
        let mut s = 0.0;
        let mut t = 1.0;
        for n in 0..10_000 {
            s += t;
            let nf = n as f64;
            t *= (a + nf) * (b + nf) / ((top + nf) * (nf + 1.0));
            if t.abs() < 1e-18 {
                break;
            }
        }
        (0..k).fold(s, |acc, j| {
            let cj = c + j as f64;
            acc * (cj - a) * (cj - b) / (cj * (cj - a - b))
        })
    }

    fn gauss_closed(a: f64, b: f64, c: f64) -> f64 {
        gamma(c) * gamma(c - a - b) / (gamma(c - a) * gamma(c - b))
    }

    #[test]
    fn gauss_sum_at_one() {
        let (a, b, c) = (0.2, 0.3, 1.7);
        assert!((gauss_at_one(a, b, c) - gauss_closed(a, b, c)).abs() < 1e-10);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10))]
        #[test]
        fn gauss_sum_random(a in 0.05f64..0.9, b in 0.05f64..0.9, extra in 0.3f64..2.5) {
            let c = a + b + extra;
            prop_assert!((gauss_at_one(a, b, c) - gauss_closed(a, b, c)).abs() < 1e-10);
        }
    }

    #[test]
    fn jets() {
        let x = Jet::var(0.7);
        let f = x.powf(2.5) * (Jet::constant(1.0) - x).ln();
        let (v, l) = (0.7f64, 0.3f64.ln());
        let d1 = 2.5 * v.powf(1.5) * l - v.powf(2.5) / 0.3;
        let d2 = 3.75 * v.sqrt() * l - 5.0 * v.powf(1.5) / 0.3 - v.powf(2.5) / 0.09;
        assert!((f.v - v.powf(2.5) * l).abs() < 1e-14);
        assert!((f.d1 - d1).abs() < 1e-13);
        assert!((f.d2 - d2).abs() < 1e-12);
    }

    #[test]
    fn bpz_solutions() {
        assert_eq!(ode_residual(3, |_| Jet::constant(0.0), 0.6), 0.0);
        assert!(ode_residual(3, |x| psi(3, x), 0.6).abs() < 1e-8);
        for p in 2..7 {
            for i in 0..20 {
                let x = 0.55 + 0.4 * (i as f64 + 0.5) / 20.0;
                let r = ode_residual(p, |x| psi(p, x), x);
                assert!(r.abs() < 1e-8, "p={p} x={x} r={r}");
            }
        }
    }

    #[test]
    fn substitution() {
        for p in 3..7 {
            let pf = p as f64;
            let f2 = |x: Jet| {
                let y = Jet::constant(1.0) - x;
                let z = -(y * x.recip());
                x.powf(-1.0 / pf)
                    * y.powf(1.0 - 2.0 / pf)
                    * hyp2f1_jet(1.0 / pf, 1.0 - 1.0 / pf, 2.0 - 2.0 / pf, z, NTERMS).unwrap()
            };
            for x in [0.56, 0.65, 0.75, 0.85, 0.94] {
                assert!(hypergeometric_residual(p, f2, x).abs() < 1e-8);
                let q = 1.0 / (2.0 * pf);
                let lifted = |x: Jet| (x * (Jet::constant(1.0) - x)).powf(q) * f2(x);
                assert!(ode_residual(p, lifted, x).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn invariants() {
        assert!((rigidity_invariant(3).unwrap() + 2.0).abs() < 1e-8);
        assert!((rigidity_invariant(2).unwrap() + 4.0 / PI).abs() < 1e-8);
        assert!((rigidity_invariant(4).unwrap() + 8f64.sqrt()).abs() < 1e-8);
        for p in 2..9 {
            let r = rigidity_routes(p).unwrap();
            assert!(r.difference < 1e-8, "{r:?}");
            assert!(r.connection_gap < 1e-8, "{r:?}");
        }
    }

    #[test]
    fn connection_constant_reflection() {
        for p in 3..9 {
            let pf = p as f64;
            let want = -(PI / pf).sin() / (2.0 * PI / pf).sin();
            assert!((connection_constant(p) - want).abs() < 1e-12);
        }
    }

    #[test]
    fn left_trace() {
        assert!(left_trace_check(2).unwrap().abs() < 1e-10);
        assert!((left_trace_check(3).unwrap() + 1.0).abs() < 1e-10);
        assert!((left_trace_check(6).unwrap() + 3f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn qint_embedding() {
        for p in 2..9u32 {
            for s in 1..=p {
                let z = crate::scalars::qint(s as i64, p).to_complex();
                let pf = p as f64;
                let want = (PI * s as f64 / pf).sin() / (PI / pf).sin();
                assert!((z.re - want).abs() < 1e-12 && z.im.abs() < 1e-12);
            }
        }
    }
}
