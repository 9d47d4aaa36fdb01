//! Photon distribution vectors and the repeated-row/column submatrix.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// Occupation numbers `(n_1, …, n_M)` of `M` optical modes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PhotonDistribution(Vec<usize>);

impl PhotonDistribution {
    pub fn new(occupations: Vec<usize>) -> Self {
        Self(occupations)
    }

    /// `(1, …, 1)` with `n` modes.
    pub fn unbunched(n: usize) -> Self {
        Self(vec![1; n])
    }

    /// All photons in mode 0, padded to `modes` modes.
    pub fn bunched(photons: usize, modes: usize) -> Self {
        let mut v = vec![0; modes.max(1)];
        v[0] = photons;
        Self(v)
    }

    pub fn occupations(&self) -> &[usize] {
        &self.0
    }

    pub fn modes(&self) -> usize {
        self.0.len()
    }

    /// Total photon number `N`.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Indices of occupied modes.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &n)| n > 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// Number of occupied modes.
    pub fn alpha(&self) -> usize {
        self.0.iter().filter(|&&n| n > 0).count()
    }

    /// True when no mode holds more than one photon.
    pub fn is_unbunched(&self) -> bool {
        self.0.iter().all(|&n| n <= 1)
    }

    /// `∏ (n_i + 1)`, saturating at `u64::MAX`.
    pub fn radix_product(&self) -> u64 {
        self.0
            .iter()
            .fold(1u64, |acc, &n| acc.saturating_mul(n as u64 + 1))
    }

    /// `∏ n_i!` as a float.
    pub fn factorial_product(&self) -> f64 {
        self.0.iter().map(|&n| factorial_f64(n)).product()
    }

    pub(crate) fn require_photons(&self) -> Result<usize> {
        match self.total() {
            0 => Err(Error::EmptyDistribution),
            n => Ok(n),
        }
    }
}

impl FromStr for PhotonDistribution {
    type Err = String;

    /// Parses a comma-separated list such as `"2,1,0"`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err("empty distribution".into());
        }
        trimmed
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<usize>()
                    .map_err(|e| format!("invalid occupation {part:?}: {e}"))
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Self)
    }
}

impl fmt::Display for PhotonDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|n| n.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl From<Vec<usize>> for PhotonDistribution {
    fn from(v: Vec<usize>) -> Self {
        Self(v)
    }
}

impl From<&[usize]> for PhotonDistribution {
    fn from(v: &[usize]) -> Self {
        Self(v.to_vec())
    }
}

pub(crate) fn factorial_f64(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Checks `U` is `M×M`, both distributions have `M` modes and equal photon
/// number `N ≥ 1`. Returns `N`.
pub(crate) fn check_scattering(
    u: &ComplexMatrix,
    n: &PhotonDistribution,
    m: &PhotonDistribution,
) -> Result<usize> {
    if n.modes() != u.dim() || m.modes() != u.dim() {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {0}x{0} but distributions have {1} and {2} modes",
            u.dim(),
            n.modes(),
            m.modes()
        )));
    }
    let (nt, mt) = (n.total(), m.total());
    if nt != mt {
        return Err(Error::WeightMismatch { left: nt, right: mt });
    }
    n.require_photons()
}

/// Builds `[U]_{n,m}`: row `i` of `U` repeated `n_i` times and column `j`
/// repeated `m_j` times, giving an `N×N` matrix.
pub fn expand_submatrix(
    u: &ComplexMatrix,
    n: &PhotonDistribution,
    m: &PhotonDistribution,
) -> Result<ComplexMatrix> {
    check_scattering(u, n, m).map_err(|e| match e {
        Error::WeightMismatch { left, right } => Error::DimensionMismatch(format!(
            "photon numbers differ: {left} vs {right}"
        )),
        other => other,
    })?;
    let rows = repeat_indices(n);
    let cols = repeat_indices(m);
    ComplexMatrix::from_fn(rows.len(), |a, b| u.get(rows[a], cols[b]))
}

/// Mode index owning each photon, e.g. `(2,0,1) → [0,0,2]`.
pub fn repeat_indices(d: &PhotonDistribution) -> Vec<usize> {
    d.occupations()
        .iter()
        .enumerate()
        .flat_map(|(i, &k)| std::iter::repeat_n(i, k))
        .collect()
}

/// Number of ways to place `photons` photons in `modes` modes,
/// `C(photons + modes − 1, photons)`, saturating.
pub fn composition_count(photons: usize, modes: usize) -> u64 {
    if modes == 0 {
        return u64::from(photons == 0);
    }
    let mut acc: u128 = 1;
    for k in 1..=photons as u128 {
        acc = acc * (modes as u128 - 1 + k) / k;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Every distribution of `photons` photons over `modes` modes, in
/// reverse-lexicographic order starting from `(photons, 0, …, 0)`.
pub fn compositions(photons: usize, modes: usize) -> Vec<PhotonDistribution> {
    fn fill(rest: usize, slot: usize, cur: &mut Vec<usize>, out: &mut Vec<PhotonDistribution>) {
        if slot + 1 == cur.len() {
            cur[slot] = rest;
            out.push(PhotonDistribution(cur.clone()));
            return;
        }
        for k in (0..=rest).rev() {
            cur[slot] = k;
            fill(rest - k, slot + 1, cur, out);
        }
    }
    let mut out = Vec::new();
    if modes == 0 {
        return out;
    }
    fill(photons, 0, &mut vec![0; modes], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::random_unitary;

    fn d(v: &[usize]) -> PhotonDistribution {
        PhotonDistribution::from(v)
    }

    #[test]
    fn parses_comma_lists() {
        assert_eq!("2,1,0".parse::<PhotonDistribution>().unwrap(), d(&[2, 1, 0]));
        assert!("2,-1".parse::<PhotonDistribution>().is_err());
        assert!("".parse::<PhotonDistribution>().is_err());
    }

    #[test]
    fn expand_identity_case() {
        let u = random_unitary(2, 1);
        let e = expand_submatrix(&u, &d(&[1, 1]), &d(&[1, 1])).unwrap();
        assert_eq!(e, u);
    }

    #[test]
    fn expand_repeated_rows() {
        let u = random_unitary(2, 1);
        let e = expand_submatrix(&u, &d(&[2, 0]), &d(&[1, 1])).unwrap();
        assert_eq!(e.row(0), &[u.get(0, 0), u.get(0, 1)]);
        assert_eq!(e.row(1), &[u.get(0, 0), u.get(0, 1)]);
        let e = expand_submatrix(&u, &d(&[2, 0]), &d(&[2, 0])).unwrap();
        assert!(e.entries().iter().all(|&z| z == u.get(0, 0)));
    }

    #[test]
    fn expand_rejects_bad_shapes() {
        let u = random_unitary(3, 1);
        assert!(matches!(
            expand_submatrix(&u, &d(&[1, 1]), &d(&[1, 1])),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            expand_submatrix(&u, &d(&[1, 1, 0]), &d(&[1, 1, 1])),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn swapping_distributions_transposes() {
        let u = random_unitary(3, 4);
        let n = d(&[2, 0, 1]);
        let m = d(&[0, 1, 2]);
        let a = expand_submatrix(&u, &n, &m).unwrap();
        let b = expand_submatrix(&u.transpose(), &m, &n).unwrap();
        assert_eq!(a.transpose(), b);
    }

    #[test]
    fn composition_enumeration_matches_count() {
        for photons in 0..5 {
            for modes in 1..5 {
                let all = compositions(photons, modes);
                assert_eq!(all.len() as u64, composition_count(photons, modes));
                assert!(all.iter().all(|c| c.total() == photons));
            }
        }
    }
}
