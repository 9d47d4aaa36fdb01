use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::distribution::PhotonDistribution;
use crate::error::{Error, Result};

/// Integer partition in canonical form: positive parts, nonincreasing.
///
/// Equivalent to a Young diagram whose `i`-th row has `parts[i]` boxes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Sorts, drops zeros and rejects the empty partition.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        parts.retain(|&p| p > 0);
        if parts.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self(parts))
    }

    pub(crate) fn from_sorted(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.iter().all(|&p| p > 0));
        Self(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of boxes `N`.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn alpha(&self) -> usize {
        self.0.len()
    }

    /// `(N)`, the single-row diagram.
    pub fn row(n: usize) -> Self {
        Self(vec![n])
    }

    /// `(1, …, 1)`, the single-column diagram.
    pub fn column(n: usize) -> Self {
        Self(vec![1; n])
    }

    /// True when every prefix sum of `self` is at least that of `other`.
    pub fn dominates(&self, other: &Partition) -> bool {
        let len = self.0.len().max(other.0.len());
        let (mut a, mut b) = (0usize, 0usize);
        for k in 0..len {
            a += self.0.get(k).copied().unwrap_or(0);
            b += other.0.get(k).copied().unwrap_or(0);
            if a < b {
                return false;
            }
        }
        true
    }

    /// Parts joined by `+`, e.g. `3+2+1`.
    pub fn plus_joined(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        parts.join("+")
    }

    /// As a distribution padded with zeros to `modes` modes.
    pub fn to_distribution(&self, modes: usize) -> PhotonDistribution {
        let mut v = self.0.clone();
        v.resize(modes.max(v.len()), 0);
        PhotonDistribution::new(v)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl TryFrom<&PhotonDistribution> for Partition {
    type Error = Error;

    fn try_from(d: &PhotonDistribution) -> Result<Self> {
        canonicalize(d)
    }
}

/// Nonzero occupations sorted nonincreasing.
pub fn canonicalize(d: &PhotonDistribution) -> Result<Partition> {
    Partition::new(d.occupations().to_vec())
}

/// Outcome of comparing two partitions of the same `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MajorizationRelation {
    EqualUpToPermutation,
    /// The left argument is majorized by the right (`a ≺ b`).
    LeftMajorized,
    /// The right argument is majorized by the left (`b ≺ a`).
    RightMajorized,
    Incomparable,
}

impl MajorizationRelation {
    pub fn reversed(self) -> Self {
        match self {
            Self::LeftMajorized => Self::RightMajorized,
            Self::RightMajorized => Self::LeftMajorized,
            other => other,
        }
    }

    /// `a ⪯ b`: majorized by or equal to.
    pub fn left_weakly_majorized(self) -> bool {
        matches!(self, Self::LeftMajorized | Self::EqualUpToPermutation)
    }

    pub fn as_partial_ordering(self) -> Option<Ordering> {
        match self {
            Self::EqualUpToPermutation => Some(Ordering::Equal),
            Self::LeftMajorized => Some(Ordering::Less),
            Self::RightMajorized => Some(Ordering::Greater),
            Self::Incomparable => None,
        }
    }
}

/// Prefix-sum (dominance) comparison.
pub fn compare(a: &Partition, b: &Partition) -> Result<MajorizationRelation> {
    let (na, nb) = (a.total(), b.total());
    if na != nb {
        return Err(Error::WeightMismatch { left: na, right: nb });
    }
    Ok(match (b.dominates(a), a.dominates(b)) {
        (true, true) => MajorizationRelation::EqualUpToPermutation,
        (true, false) => MajorizationRelation::LeftMajorized,
        (false, true) => MajorizationRelation::RightMajorized,
        (false, false) => MajorizationRelation::Incomparable,
    })
}

/// Canonicalizes both distributions, then compares.
pub fn compare_distributions(
    a: &PhotonDistribution,
    b: &PhotonDistribution,
) -> Result<MajorizationRelation> {
    compare(&canonicalize(a)?, &canonicalize(b)?)
}

/// All partitions of `n`, in reverse lexicographic order from `(n)` down to
/// `(1, …, 1)`.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn fill(rest: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition::from_sorted(cur.clone()));
            return;
        }
        for p in (1..=rest.min(cap)).rev() {
            cur.push(p);
            fill(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        fill(n, n, &mut Vec::new(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use MajorizationRelation::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn canonical_form() {
        let d = PhotonDistribution::from(&[0, 2, 0, 1][..]);
        assert_eq!(canonicalize(&d).unwrap().parts(), &[2, 1]);
        assert_eq!(p(&[1; 6]).parts(), &[1; 6]);
        assert_eq!(p(&[6, 0, 0, 0]).parts(), &[6]);
        assert_eq!(
            canonicalize(&PhotonDistribution::from(&[0, 0][..])),
            Err(Error::EmptyDistribution)
        );
    }

    #[test]
    fn comparisons() {
        assert_eq!(compare(&p(&[1, 1]), &p(&[2])).unwrap(), LeftMajorized);
        assert_eq!(compare(&p(&[3, 2, 2]), &p(&[5, 1, 1])).unwrap(), LeftMajorized);
        assert_eq!(compare(&p(&[2, 2, 2]), &p(&[3, 1, 1, 1])).unwrap(), Incomparable);
        assert_eq!(compare(&p(&[2]), &p(&[1, 1])).unwrap(), RightMajorized);
        assert_eq!(compare(&p(&[2, 1]), &p(&[1, 2])).unwrap(), EqualUpToPermutation);
        assert!(matches!(
            compare(&p(&[2]), &p(&[1, 1, 1])),
            Err(Error::WeightMismatch { .. })
        ));
    }

    #[test]
    fn padding_and_permutation_do_not_matter() {
        let a = PhotonDistribution::from(&[0, 1, 3, 0, 2][..]);
        let b = PhotonDistribution::from(&[4, 1, 1][..]);
        assert_eq!(compare_distributions(&a, &b).unwrap(), LeftMajorized);
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=12).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
        assert_eq!(partitions(6).first().unwrap(), &Partition::row(6));
        assert_eq!(partitions(6).last().unwrap(), &Partition::column(6));
    }
}
