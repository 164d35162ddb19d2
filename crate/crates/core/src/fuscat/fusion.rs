use super::label::{Decomp, Kind, ModuleLabel};
use crate::error::{Error, Result};

/// `lo, lo+1, ..., hi` restricted to `(x + offset) % 2 == residue`; empty
/// when `lo > hi`.
fn terms(lo: i64, hi: i64, offset: i64, residue: i64) -> impl Iterator<Item = i64> {
    (lo..=hi).filter(move |x| (x + offset).rem_euclid(2) == residue)
}

struct Acc {
    p: u32,
    out: Decomp,
}

impl Acc {
    fn put(&mut self, kind: Kind, k: i64, l: i64, mult: u64) {
        self.out.add(ModuleLabel::mk(kind, self.p, k, l), mult);
    }
}

fn simple_simple(acc: &mut Acc, r: i64, s: i64, r2: i64, s2: i64) {
    let p = acc.p as i64;
    for k in terms((r - r2).abs() + 1, r + r2 - 1, r + r2, 1) {
        for l in terms(
            (s - s2).abs() + 1,
            (s + s2 - 1).min(2 * p - 1 - s - s2),
            s + s2,
            1,
        ) {
            acc.put(Kind::Simple, k, l, 1);
        }
        for l in terms(2 * p + 1 - s - s2, p, s + s2, 1) {
            acc.put(Kind::Proj, k, l, 1);
        }
    }
}

/// `L_{r,s} ⊠ P_{r2,s2}`, `s2 <= p - 1`.
fn simple_proj(acc: &mut Acc, r: i64, s: i64, r2: i64, s2: i64) {
    let p = acc.p as i64;
    let dr = (r - r2).abs();
    for k in terms(dr + 1, r + r2 - 1, r + r2, 1) {
        for l in terms((s - s2).abs() + 1, (s + s2 - 1).min(p), s + s2, 1) {
            acc.put(Kind::Proj, k, l, 1);
        }
        for l in terms(2 * p + 1 - s - s2, p, s + s2, 1) {
            acc.put(Kind::Proj, k, l, 1);
        }
    }
    for l in terms(p - s + s2 + 1, p, p + s + s2, 1) {
        for k in terms(dr.max(1), r + r2 - 2, r + r2, 0) {
            acc.put(Kind::Proj, k, l, 1);
        }
        for k in terms(dr + 2, r + r2, r + r2, 0) {
            acc.put(Kind::Proj, k, l, 1);
        }
    }
}

/// `P_{r,s} ⊠ P_{r2,s2}`, `s, s2 <= p - 1`.
fn proj_proj(acc: &mut Acc, r: i64, s: i64, r2: i64, s2: i64) {
    let p = acc.p as i64;
    let dr = (r - r2).abs();
    let rr = r + r2;
    for k in terms(dr + 1, rr - 1, rr, 1) {
        for l in terms((s - s2).abs() + 1, (s + s2 - 1).min(p), s + s2, 1) {
            acc.put(Kind::Proj, k, l, 2);
        }
        for l in terms(2 * p + 1 - s - s2, p, s + s2, 1) {
            acc.put(Kind::Proj, k, l, 2);
        }
    }
    for l in terms(s + s2 + 1, p, s + s2, 1) {
        let blocks = [
            ((dr - 1).max(1), rr - 3),
            ((dr + 1).max(2), rr - 1),
            (dr + 1, rr - 1),
            (dr + 3, rr + 1),
        ];
        for (lo, hi) in blocks {
            for k in terms(lo, hi, rr, 1) {
                acc.put(Kind::Proj, k, l, 1);
            }
        }
    }
    let l_blocks = [((p - s - s2).abs() + 1, p), (p - (s - s2).abs() + 1, p)];
    for (klo, khi) in [(dr.max(1), rr - 2), (dr + 2, rr)] {
        for k in terms(klo, khi, rr, 0) {
            for (lo, hi) in l_blocks {
                for l in terms(lo, hi, p + s + s2, 1) {
                    acc.put(Kind::Proj, k, l, 1);
                }
            }
        }
    }
}

/// Closed-form fusion product of two indecomposables.
pub fn tensor(a: &ModuleLabel, b: &ModuleLabel) -> Result<Decomp> {
    if a.p != b.p {
        return Err(Error::MismatchedP(a.p, b.p));
    }
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    let mut acc = Acc {
        p: a.p,
        out: Decomp::new(a.p),
    };
    let (r, s, r2, s2) = (a.r as i64, a.s as i64, b.r as i64, b.s as i64);
    match (a.kind, b.kind) {
        (Kind::Simple, Kind::Simple) => simple_simple(&mut acc, r, s, r2, s2),
        (Kind::Simple, Kind::Proj) => simple_proj(&mut acc, r, s, r2, s2),
        (Kind::Proj, Kind::Proj) => proj_proj(&mut acc, r, s, r2, s2),
        (Kind::Proj, Kind::Simple) => unreachable!("arguments are sorted"),
    }
    Ok(acc.out)
}

/// Bilinear extension of [`tensor`].
pub fn tensor_decomp(a: &Decomp, b: &Decomp) -> Result<Decomp> {
    if a.p() != b.p() {
        return Err(Error::MismatchedP(a.p(), b.p()));
    }
    let mut out = Decomp::new(a.p());
    for (x, m) in a.iter() {
        for (y, n) in b.iter() {
            out.add_all(&tensor(&x, &y)?, m * n);
        }
    }
    Ok(out)
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

    fn d(p: u32, items: &[(ModuleLabel, u64)]) -> Decomp {
        Decomp::from_pairs(p, items.iter().copied())
    }

    #[test]
    fn unit() {
        for p in 2..6 {
            for r in 1..5 {
                for s in 1..=p {
                    for a in [l(p, r, s), pr(p, r, s)] {
                        assert_eq!(tensor(&l(p, 1, 1), &a).unwrap(), Decomp::single(a));
                    }
                }
            }
        }
    }

    #[test]
    fn small_products() {
        assert_eq!(
            tensor(&l(3, 1, 2), &l(3, 1, 2)).unwrap(),
            d(3, &[(l(3, 1, 1), 1), (l(3, 1, 3), 1)])
        );
        assert_eq!(
            tensor(&l(2, 1, 2), &l(2, 1, 2)).unwrap(),
            d(2, &[(pr(2, 1, 1), 1)])
        );
        assert_eq!(
            tensor(&l(3, 2, 2), &l(3, 2, 2)).unwrap(),
            d(
                3,
                &[
                    (l(3, 1, 1), 1),
                    (l(3, 1, 3), 1),
                    (l(3, 3, 1), 1),
                    (l(3, 3, 3), 1)
                ]
            )
        );
        for p in 3..7 {
            assert_eq!(
                tensor(&l(p, 1, 2), &pr(p, 1, 1)).unwrap(),
                d(p, &[(pr(p, 1, 2), 1), (l(p, 2, p), 1)])
            );
        }
        assert_eq!(
            tensor(&pr(2, 1, 1), &pr(2, 1, 1)).unwrap(),
            d(2, &[(pr(2, 1, 1), 2), (pr(2, 2, 1), 1)])
        );
        assert_eq!(
            tensor(&l(3, 1, 3), &pr(3, 1, 1)).unwrap(),
            d(3, &[(l(3, 1, 3), 2), (pr(3, 2, 2), 1)])
        );
    }

    #[test]
    fn mismatched_p() {
        assert_eq!(
            tensor(&l(2, 1, 1), &l(3, 1, 1)),
            Err(Error::MismatchedP(2, 3))
        );
    }
}
