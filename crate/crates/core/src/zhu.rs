//! Bimodules for the Zhu algebra. A singular vector of `V_{r,s}` reduces to
//! a polynomial `f(x, y)` with `A(L_{r,s}) = C[x, y] / (f)`; substituting
//! `y = h` for a module `L_{r',s'}` gives the lowest conformal weights of
//! the fusion product.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::{Poly1, Poly2, Rat};
use crate::verma::{singular_vectors, CentralData, VermaElement};

/// `f(x, y)` for the bimodule generated by `v_{r,s}` of weight `hw`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BimodPoly {
    pub generator: (i64, i64),
    pub f: Poly2,
    pub hw: Rat,
}

impl BimodPoly {
    /// Reduces the singular vector of `V_{r,s}` at level `rs`.
    pub fn for_generator(cd: &CentralData, r: i64, s: i64) -> Result<Self> {
        if r < 1 || s < 1 {
            return Err(Error::Domain(format!(
                "generator ({r},{s}) needs r, s >= 1"
            )));
        }
        let hw = cd.h(r, s);
        let sv = singular_vectors(cd, &hw, (r * s) as u32)?;
        let [v] = sv.as_slice() else {
            return Err(Error::Domain(format!(
                "expected one singular vector for ({r},{s}), found {}",
                sv.len()
            )));
        };
        Ok(BimodPoly {
            generator: (r, s),
            f: reduce_singular(v, &hw)?,
            hw,
        })
    }
}

fn lin(cx: i64, cy: i64, c: Rat) -> Poly2 {
    &(&Poly2::x().scale(&Rat::int(cx)) + &Poly2::y().scale(&Rat::int(cy))) + &Poly2::constant(c)
}

/// Image of `[L(-n) w]` as a multiple of `[w]`, where `w` has weight `wt`.
fn mode_factor(n: u32, wt: &Rat) -> Poly2 {
    let a = lin(1, -1, -wt); // x - y - wt
    let b = lin(-1, 2, wt.clone()); // 2y - x + wt
    match n {
        1 => a,
        2 => b,
        _ => {
            let n = n as i64;
            let sign = if n % 2 == 0 { 1 } else { -1 };
            (&b.scale(&Rat::int(n - 1)) + &a.scale(&Rat::int(n - 2))).scale(&Rat::int(sign))
        }
    }
}

/// Rewrites a vector of `V(c, hw)` into `C[x, y]`, innermost operator first.
pub fn reduce_singular(sv: &VermaElement, hw: &Rat) -> Result<Poly2> {
    let mut out = Poly2::zero();
    for (lam, c) in sv.terms() {
        let mut g = Poly2::constant(c.clone());
        let mut wt = hw.clone();
        for &n in lam.parts() {
            g = &mode_factor(n, &wt) * &g;
            wt += Rat::int(n as i64);
        }
        out = &out + &g;
    }
    Ok(out)
}

/// [`reduce_singular`] on raw `(mode, ...)` words; rejects nonnegative modes.
///
/// `word` lists operator modes left to right, e.g. `[-1, -2]` for
/// `L(-1) L(-2) v`.
pub fn reduce_word(word: &[i64], coeff: &Rat, hw: &Rat) -> Result<Poly2> {
    if let Some(&m) = word.iter().find(|&&m| m >= 0) {
        return Err(Error::PositiveMode(m));
    }
    let mut g = Poly2::constant(coeff.clone());
    let mut wt = hw.clone();
    for &m in word.iter().rev() {
        let n = (-m) as u32;
        g = &mode_factor(n, &wt) * &g;
        wt += Rat::int(n as i64);
    }
    Ok(g)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spectrum {
    /// Distinct roots in increasing order, with multiplicities.
    pub roots: Vec<(Rat, usize)>,
    /// Generator label and target label.
    pub source: ((i64, i64), (i64, i64)),
}

impl Spectrum {
    pub fn multiplicity(&self, h: &Rat) -> usize {
        self.roots
            .iter()
            .find(|(x, _)| x == h)
            .map_or(0, |(_, m)| *m)
    }

    pub fn degree(&self) -> usize {
        self.roots.iter().map(|(_, m)| m).sum()
    }
}

/// Lowest `L_0` eigenvalues of the generator's product with `L_{r,s}`,
/// factored over the weights `h_{r',s'}` near `(r, s)`.
pub fn top_level_spectrum(bp: &BimodPoly, cd: &CentralData, r: i64, s: i64) -> Result<Spectrum> {
    let p = cd.p as i64;
    if r < 1 || s < 1 || s > p {
        return Err(Error::Domain(format!(
            "target ({r},{s}) needs r >= 1 and 1 <= s <= p"
        )));
    }
    let g = bp.f.eval_y(&cd.h(r, s));
    let deg = bp.f.deg_x().unwrap_or(0) as i64;
    let candidates: BTreeSet<Rat> = (r - deg..=r + deg)
        .flat_map(|a| (s - deg..=s + deg).map(move |b| (a, b)))
        .map(|(a, b)| cd.h(a, b))
        .collect();
    let mut rest = g;
    let mut roots = Vec::new();
    for h in candidates {
        let (m, q) = rest.exact_divide_check(&h);
        if m > 0 {
            roots.push((h, m));
            rest = q;
        }
    }
    if rest.degree() != Some(0) {
        return Err(Error::UnfactoredRemainder(rest.to_string()));
    }
    Ok(Spectrum {
        roots,
        source: (bp.generator, (r, s)),
    })
}

/// Whether `L_0` has a double eigenvalue at the top of `L_{1,2} ⊠ L_{r,s}`,
/// i.e. `h_{r,s-1} = h_{r,s+1}`.
pub fn logarithmic_flag(cd: &CentralData, r: i64, s: i64) -> Result<bool> {
    if r < 1 || s < 1 || s > cd.p as i64 {
        return Err(Error::Domain(format!(
            "({r},{s}) needs r >= 1 and 1 <= s <= p"
        )));
    }
    Ok(cd.h(r, s - 1) == cd.h(r, s + 1))
}

/// `(x - a)(x - b)...` with the given roots, as a check helper.
pub fn from_roots(roots: &[(Rat, usize)]) -> Poly1 {
    roots
        .iter()
        .fold(Poly1::constant(Rat::one()), |acc, (h, m)| {
            &acc * &Poly1::linear(h).pow(*m as u32)
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verma::Partition;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn xy(h: &Rat) -> Poly2 {
        lin(1, -1, -h)
    }

    #[test]
    fn level_two_polynomials() {
        for p in 2..=10 {
            let cd = CentralData::new(p).unwrap();
            let t = &cd.t;
            let ti = t.recip().unwrap();

            let h = cd.h(1, 2);
            let want = &(&xy(&(&h + &Rat::one() - &ti)) * &xy(&h)) - &Poly2::y().scale(&ti);
            assert_eq!(BimodPoly::for_generator(&cd, 1, 2).unwrap().f, want);

            let h = cd.h(2, 1);
            let want = &(&xy(&(&h + &Rat::one() - t)) * &xy(&h)) - &Poly2::y().scale(t);
            assert_eq!(BimodPoly::for_generator(&cd, 2, 1).unwrap().f, want);
        }
    }

    #[test]
    fn level_three_polynomial() {
        for p in 2..=10 {
            let cd = CentralData::new(p).unwrap();
            let pi = p as i64;
            let u = xy(&Rat::zero());
            let want = &u
                * &(&(&xy(&Rat::int(2 * pi - 1)) * &xy(&Rat::one()))
                    - &Poly2::y().scale(&Rat::int(4 * pi)));
            let bp = BimodPoly::for_generator(&cd, 3, 1).unwrap();
            assert_eq!(bp.f, want, "p={p}");
            assert_eq!(bp.f.deg_x(), Some(3));
        }
    }

    #[test]
    fn words_and_errors() {
        let h = Rat::new(1, 3);
        let sv = VermaElement::from_terms(h.clone(), [(part(&[2, 1]), Rat::int(3))]);
        let a = reduce_singular(&sv, &h).unwrap();
        let b = reduce_word(&[-1, -2], &Rat::int(3), &h).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            reduce_word(&[-1, 2], &Rat::one(), &h),
            Err(Error::PositiveMode(2))
        );
        assert_eq!(
            reduce_word(&[0], &Rat::one(), &h),
            Err(Error::PositiveMode(0))
        );
    }

    #[test]
    fn spectra() {
        for p in 2..=5u32 {
            let cd = CentralData::new(p).unwrap();
            let f12 = BimodPoly::for_generator(&cd, 1, 2).unwrap();
            let f21 = BimodPoly::for_generator(&cd, 2, 1).unwrap();
            for r in 1..=4 {
                for s in 1..=p as i64 {
                    let sp = top_level_spectrum(&f12, &cd, r, s).unwrap();
                    let want = &Poly1::linear(&cd.h(r, s - 1)) * &Poly1::linear(&cd.h(r, s + 1));
                    assert_eq!(from_roots(&sp.roots), want);
                    let sp = top_level_spectrum(&f21, &cd, r, s).unwrap();
                    let want = &Poly1::linear(&cd.h(r - 1, s)) * &Poly1::linear(&cd.h(r + 1, s));
                    assert_eq!(from_roots(&sp.roots), want);
                }
            }
            let f31 = BimodPoly::for_generator(&cd, 3, 1).unwrap();
            let sp = top_level_spectrum(&f31, &cd, 1, p as i64).unwrap();
            assert_eq!(sp.multiplicity(&cd.h(1, p as i64)), 1);
            assert_eq!(sp.multiplicity(&cd.h(3, p as i64)), 2);
            assert_eq!(sp.degree(), 3);
        }
    }

    #[test]
    fn unexplained_factor() {
        let cd = CentralData::new(3).unwrap();
        let bp = BimodPoly {
            generator: (1, 2),
            f: &(&Poly2::x() * &Poly2::x()) - &Poly2::constant(Rat::new(1, 1000)),
            hw: cd.h(1, 2),
        };
        assert!(matches!(
            top_level_spectrum(&bp, &cd, 1, 1),
            Err(Error::UnfactoredRemainder(_))
        ));
    }

    #[test]
    fn log_flags() {
        let cd3 = CentralData::new(3).unwrap();
        assert!(logarithmic_flag(&cd3, 1, 3).unwrap());
        assert!(!logarithmic_flag(&cd3, 1, 2).unwrap());
        let cd5 = CentralData::new(5).unwrap();
        assert!(!logarithmic_flag(&cd5, 2, 5).unwrap());
        assert!(logarithmic_flag(&cd5, 0, 5).is_err());
    }

    #[test]
    fn json_shape() {
        let cd = CentralData::new(2).unwrap();
        let bp = BimodPoly::for_generator(&cd, 1, 2).unwrap();
        let v: serde_json::Value = serde_json::to_value(&bp).unwrap();
        assert_eq!(v["generator"], serde_json::json!([1, 2]));
        assert!(v["f"].as_array().unwrap().len() > 1);
        let back: BimodPoly = serde_json::from_value(v).unwrap();
        assert_eq!(back, bp);
    }
}
