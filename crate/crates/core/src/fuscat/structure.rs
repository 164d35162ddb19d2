use serde::{Deserialize, Serialize};

use super::label::{Decomp, Kind, ModuleLabel};
use crate::error::{Error, Result};
use crate::scalars::{qint, CycScalar, Rat};
use crate::verma::CentralData;

/// Categorical dimension in `Z[q]`, `q = e^{iπ/p}`.
pub fn cat_dim(a: &ModuleLabel) -> CycScalar {
    match a.kind {
        Kind::Simple => {
            let (p, r, s) = (a.p as i64, a.r as i64, a.s as i64);
            let e = (p + 1) * (r + 1) + s + 1;
            let sign = if e % 2 == 0 { 1 } else { -1 };
            qint(s, a.p).scale_int(sign * r)
        }
        Kind::Proj => decomp_dim(&composition_factors(a)),
    }
}

pub fn decomp_dim(d: &Decomp) -> CycScalar {
    d.iter().fold(CycScalar::zero(d.p()), |acc, (a, m)| {
        &acc + &cat_dim(&a).scale_int(m as i64)
    })
}

/// Simple subquotients with multiplicity.
pub fn composition_factors(a: &ModuleLabel) -> Decomp {
    let (p, r, s) = (a.p, a.r as i64, a.s as i64);
    let pi = p as i64;
    let mut out = Decomp::new(p);
    match a.kind {
        Kind::Simple => out.add(*a, 1),
        Kind::Proj => {
            out.add(ModuleLabel::mk(Kind::Simple, p, r, s), 2);
            if r > 1 {
                out.add(ModuleLabel::mk(Kind::Simple, p, r - 1, pi - s), 1);
            }
            out.add(ModuleLabel::mk(Kind::Simple, p, r + 1, pi - s), 1);
        }
    }
    out
}

/// Composition factors of every summand, with multiplicity.
pub fn decomp_factors(d: &Decomp) -> Decomp {
    let mut out = Decomp::new(d.p());
    for (a, m) in d.iter() {
        out.add_all(&composition_factors(&a), m);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoewyData {
    pub socle: Vec<String>,
    pub middle: Vec<String>,
    pub head: Vec<String>,
}

/// Socle, middle and head layers.
pub fn loewy(a: &ModuleLabel) -> LoewyData {
    let simple = |r: i64, s: i64| ModuleLabel::mk(Kind::Simple, a.p, r, s).to_string();
    let (r, s, p) = (a.r as i64, a.s as i64, a.p as i64);
    match a.kind {
        Kind::Simple => LoewyData {
            socle: vec![a.to_string()],
            middle: vec![],
            head: vec![a.to_string()],
        },
        Kind::Proj => {
            let middle = if r == 1 {
                vec![simple(2, p - s)]
            } else {
                vec![simple(r - 1, p - s), simple(r + 1, p - s)]
            };
            LoewyData {
                socle: vec![simple(r, s)],
                middle,
                head: vec![simple(r, s)],
            }
        }
    }
}

/// Drops the negligible summands: all projectives, including `L_{r,p}`.
pub fn semisimplify(d: &Decomp) -> Decomp {
    Decomp::from_pairs(d.p(), d.iter().filter(|(a, _)| !a.is_projective()))
}

/// Product in the semisimplification, for simples with `s, s' <= p - 1`.
pub fn ss_tensor(a: &ModuleLabel, b: &ModuleLabel) -> Result<Decomp> {
    if a.p != b.p {
        return Err(Error::MismatchedP(a.p, b.p));
    }
    for x in [a, b] {
        if x.is_projective() {
            return Err(Error::Domain(format!(
                "{x} is negligible; the semisimplified product needs simples with s <= p - 1"
            )));
        }
    }
    let p = a.p as i64;
    let (r, s, r2, s2) = (a.r as i64, a.s as i64, b.r as i64, b.s as i64);
    let mut out = Decomp::new(a.p);
    for k in ((r - r2).abs() + 1..=r + r2 - 1).step_by(2) {
        let top = (s + s2 - 1).min(2 * p - 1 - s - s2);
        for l in ((s - s2).abs() + 1..=top).step_by(2) {
            out.add(ModuleLabel::mk(Kind::Simple, a.p, k, l), 1);
        }
    }
    Ok(out)
}

/// `h_{r+2(n-k+1),s} - h_{r,s} - h_{2n+1,1}`, which must be an integer.
pub fn monodromy_exponent_check(p: u32, r: i64, s: i64, n: i64, k: i64) -> Result<i64> {
    let pi = p as i64;
    if r < 1 || s < 1 || s > pi || n < 0 || k < 1 || k > r.min(2 * n + 1) {
        return Err(Error::Domain(format!(
            "monodromy check needs r >= 1, 1 <= s <= p, n >= 0, 1 <= k <= min(r, 2n+1); got r={r} s={s} n={n} k={k}"
        )));
    }
    let cd = CentralData::new(p)?;
    let e: Rat = cd.h(r + 2 * (n - k + 1), s) - cd.h(r, s) - cd.h(2 * n + 1, 1);
    e.to_i64().ok_or_else(|| Error::NotInteger(e.to_string()))
}
