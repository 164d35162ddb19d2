use std::collections::HashMap;

use super::action::{CentralData, Terms, VermaElement, VermaModule};
use super::partition::{partitions, Partition};
use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::scalars::Rat;

struct Level {
    index: HashMap<Partition, usize>,
    gram: RatMatrix,
}

/// Gram matrices of the contravariant form at levels `0..=level`.
///
/// `<L(-a) X, Y> = <X, L(a) Y>` peels the leftmost operator of the row
/// monomial, so each level reuses the matrix one step down.
fn gram_levels(module: &VermaModule, level: u32) -> Vec<Level> {
    let mut out: Vec<Level> = Vec::with_capacity(level as usize + 1);
    for n in 0..=level {
        let basis = partitions(n);
        let index: HashMap<Partition, usize> = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let dim = basis.len();
        let mut gram = RatMatrix::zeros(dim, dim);
        if n == 0 {
            gram.set(0, 0, Rat::one());
        }
        for (i, lam) in basis.iter().enumerate().filter(|_| n > 0) {
            let a = lam.last().expect("nonempty at positive level");
            let rest = lam.without_last();
            let lower = &out[(n - a) as usize];
            let ri = lower.index[&rest];
            for (j, mu) in basis.iter().enumerate() {
                let img = module.act_basis(a as i64, mu);
                let entry: Rat = img
                    .iter()
                    .map(|(nu, c)| c * lower.gram.get(ri, lower.index[nu]))
                    .sum();
                gram.set(i, j, entry);
            }
        }
        out.push(Level { index, gram });
    }
    out
}

/// Gram matrix of `V(c, h)` at `level`, rows and columns indexed by
/// [`partitions`]`(level)`.
pub fn gram_matrix(cd: &CentralData, h: &Rat, level: u32) -> RatMatrix {
    let module = VermaModule::new(cd, h.clone());
    gram_levels(&module, level)
        .pop()
        .expect("level 0 always present")
        .gram
}

pub fn gram_det(cd: &CentralData, h: &Rat, level: u32) -> Rat {
    gram_matrix(cd, h, level).det()
}

/// Kernel of the Gram matrix, as vectors of the Verma module.
pub fn gram_kernel(cd: &CentralData, h: &Rat, level: u32) -> Vec<VermaElement> {
    let g = gram_matrix(cd, h, level);
    let basis = partitions(level);
    g.kernel()
        .into_iter()
        .map(|v| normalize(to_element(h, &basis, v), level))
        .collect()
}

fn to_element(h: &Rat, basis: &[Partition], v: Vec<Rat>) -> VermaElement {
    VermaElement::from_terms(h.clone(), basis.iter().cloned().zip(v))
}

/// Scale so that `L(-1)^level` has coefficient 1, or failing that the
/// first nonzero monomial in enumeration order.
pub fn normalize(v: VermaElement, level: u32) -> VermaElement {
    let ones = v.coeff(&Partition::ones(level));
    let lead = if !ones.is_zero() {
        ones
    } else {
        match partitions(level)
            .iter()
            .map(|l| v.coeff(l))
            .find(|c| !c.is_zero())
        {
            Some(c) => c,
            None => return v,
        }
    };
    v.scale(&lead.recip().expect("nonzero leading coefficient"))
}

/// Basis of the singular vectors of `V(c, h)` at `level`: vectors killed by
/// `L(1)` and `L(2)`.
pub fn singular_vectors(cd: &CentralData, h: &Rat, level: u32) -> Result<Vec<VermaElement>> {
    if level == 0 {
        return Err(Error::Domain("singular vectors need level >= 1".into()));
    }
    let module = VermaModule::new(cd, h.clone());
    let basis = partitions(level);
    let mut rows = Vec::new();
    for k in [1u32, 2] {
        if k > level {
            continue;
        }
        let target = partitions(level - k);
        let index: HashMap<&Partition, usize> =
            target.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut block = vec![vec![Rat::zero(); basis.len()]; target.len()];
        for (j, mu) in basis.iter().enumerate() {
            let img: std::rc::Rc<Terms> = module.act_basis(k as i64, mu);
            for (nu, c) in img.iter() {
                block[index[nu]][j] = c.clone();
            }
        }
        rows.extend(block);
    }
    let m = RatMatrix::from_rows(rows);
    Ok(m.kernel()
        .into_iter()
        .map(|v| normalize(to_element(h, &basis, v), level))
        .collect())
}

/// Submodule chain of the Verma module `V_{r,s}` as `(r', s')` labels,
/// starting with `(r, s)` itself and truncated to `depth` entries.
pub fn embedding_chain(p: u32, r: i64, s: i64, depth: usize) -> Result<Vec<(i64, i64)>> {
    let pi = p as i64;
    if p < 2 || r < 1 || s < 1 || s > pi {
        return Err(Error::Domain(format!(
            "embedding chain needs r >= 1 and 1 <= s <= p; got p={p}, r={r}, s={s}"
        )));
    }
    let out = (0..depth as i64)
        .map(|i| {
            if s == pi {
                (r + 2 * i, pi)
            } else if i % 2 == 0 {
                (r + i, s)
            } else {
                (r + i, pi - s)
            }
        })
        .collect();
    Ok(out)
}
