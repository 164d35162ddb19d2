use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer partition with parts in weakly decreasing order.
///
/// The partition `(λ1 ≥ ... ≥ λk)` indexes the PBW monomial
/// `L(-λk) ... L(-λ1) v`: modes ascend from left to right, so the smallest
/// part is the leftmost operator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Domain(format!(
                "partition {parts:?} has a zero part"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!(
                "partition {parts:?} is not decreasing"
            )));
        }
        Ok(Partition(parts))
    }

    /// Sorts the parts; zero parts are dropped.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// `(1, 1, ..., 1)`, the index of `L(-1)^n v`.
    pub fn ones(n: u32) -> Self {
        Partition(vec![1; n as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn level(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The smallest part, i.e. the mode of the leftmost operator.
    pub(crate) fn last(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub(crate) fn without_last(&self) -> Partition {
        Partition(self.0[..self.0.len().saturating_sub(1)].to_vec())
    }

    pub(crate) fn with_pushed(&self, m: u32) -> Partition {
        debug_assert!(self.last().is_none_or(|a| m <= a));
        let mut v = self.0.clone();
        v.push(m);
        Partition(v)
    }

    /// Operator modes in left-to-right order.
    pub fn modes(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().rev().copied()
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// All partitions of `n`, in lexicographically decreasing order:
/// `(n), (n-1, 1), ..., (1, ..., 1)`.
pub fn partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill(n, n, &mut cur, &mut out);
    out
}

fn fill(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if n == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    for first in (1..=n.min(max)).rev() {
        cur.push(first);
        fill(n - first, first, cur, out);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_order() {
        let ps: Vec<Vec<u32>> = partitions(4).into_iter().map(Vec::from).collect();
        assert_eq!(
            ps,
            vec![
                vec![4],
                vec![3, 1],
                vec![2, 2],
                vec![2, 1, 1],
                vec![1, 1, 1, 1]
            ]
        );
        assert_eq!(partitions(0), vec![Partition::empty()]);
    }

    #[test]
    fn counts() {
        let expected = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (n, &c) in expected.iter().enumerate() {
            assert_eq!(partitions(n as u32).len(), c);
        }
    }

    #[test]
    fn validation() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(Partition::from_unsorted(vec![1, 3, 2]).parts(), &[3, 2, 1]);
        let p: Partition = serde_json::from_str("[2,1]").unwrap();
        assert_eq!(p.modes().collect::<Vec<_>>(), vec![1, 2]);
        assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
    }
}
