use num_complex::Complex64;

use super::generalized::{kan_sum, roots_sum};
use super::{per_glynn_with, per_naive, per_ryser_with, Algorithm, Options, PermanentResult, EXP_MAX_DIM, MAX_TERMS};
use crate::distribution::{
    check_scattering, composition_count, compositions, expand_submatrix, PhotonDistribution,
};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// Unitarity defect above which amplitude and probability operations warn.
pub const UNITARITY_WARN: f64 = 1e-8;

/// Largest output space enumerated by [`output_distribution`].
pub const MAX_OUTPUT_STATES: u64 = 100_000;

/// Transition amplitude `⟨m|Û|n⟩ = per([U]_{n,m}) / √(∏ n_i! m_i!)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Amplitude {
    pub value: Complex64,
    pub permanent: PermanentResult,
    /// `√(∏ n_i! m_i!)`
    pub normalization: f64,
}

impl Amplitude {
    pub fn probability(&self) -> f64 {
        self.value.norm_sqr()
    }
}

/// Which distribution drives the outer sum of the generalized formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// Sum over the modes of `n` (the rows of `[U]_{n,m}`).
    Input,
    /// Sum over the modes of `m`, evaluating `per([Uᵀ]_{m,n})`.
    Output,
}

/// Picks the orientation with the shorter outer sum, `min(∏(n_i+1), ∏(m_j+1))`.
pub fn cheaper_orientation(n: &PhotonDistribution, m: &PhotonDistribution) -> Orientation {
    if m.radix_product() < n.radix_product() {
        Orientation::Output
    } else {
        Orientation::Input
    }
}

fn generalized_guard(photons: usize, terms: u64) -> Result<()> {
    if photons > EXP_MAX_DIM {
        return Err(Error::SizeLimit(format!(
            "photon number limited to {EXP_MAX_DIM}, got {photons}"
        )));
    }
    if terms > MAX_TERMS {
        return Err(Error::SizeLimit(format!(
            "outer sum of {terms} terms exceeds {MAX_TERMS}"
        )));
    }
    Ok(())
}

/// `per([U]_{n,m})` with the chosen algorithm.
///
/// The generalized formulas run in the orientation with the shorter outer
/// sum (`repeated_cols` in whichever orientation has unbunched columns);
/// the `2^N` and naive algorithms act on the expanded matrix.
pub fn scattering_permanent(
    u: &ComplexMatrix,
    n: &PhotonDistribution,
    m: &PhotonDistribution,
    algo: Algorithm,
    opts: &Options,
) -> Result<PermanentResult> {
    let photons = check_scattering(u, n, m)?;
    let oriented = |summed_is_input: bool| {
        if summed_is_input {
            (u.clone(), n, m)
        } else {
            (u.transpose(), m, n)
        }
    };
    match algo {
        Algorithm::Naive => per_naive(&expand_submatrix(u, n, m)?),
        Algorithm::Ryser => per_ryser_with(&expand_submatrix(u, n, m)?, opts),
        Algorithm::Glynn => per_glynn_with(&expand_submatrix(u, n, m)?, opts),
        Algorithm::RepeatedCols => {
            // one side must be free of repeats; the other is summed over
            let summed_is_input = if m.is_unbunched() {
                true
            } else if n.is_unbunched() {
                false
            } else {
                return Err(Error::UnsupportedAlgo(format!(
                    "{algo} needs an unbunched input or output, got {n} -> {m}"
                )));
            };
            let (w, summed, powered) = oriented(summed_is_input);
            generalized_guard(photons, summed.radix_product())?;
            let (value, term_count) = roots_sum(&w, summed, powered, opts);
            Ok(PermanentResult {
                value,
                algorithm: algo,
                term_count,
            })
        }
        Algorithm::RootsOfUnity | Algorithm::KanSeries => {
            let (w, summed, powered) =
                oriented(cheaper_orientation(n, m) == Orientation::Input);
            generalized_guard(photons, summed.radix_product())?;
            let (value, term_count) = if algo == Algorithm::RootsOfUnity {
                roots_sum(&w, summed, powered, opts)
            } else {
                kan_sum(&w, summed, powered, opts)
            };
            Ok(PermanentResult {
                value,
                algorithm: algo,
                term_count,
            })
        }
    }
}

fn warn_if_not_unitary(u: &ComplexMatrix) {
    let defect = u.unitarity_defect();
    if defect > UNITARITY_WARN {
        log::warn!("matrix is not unitary (defect {defect:.3e}); amplitudes are not normalized");
    }
}

/// Scattering amplitude from `|n⟩` to `|m⟩` through the network `U`.
///
/// The generalized algorithms run in whichever orientation has the shorter
/// outer sum, using `per([U]_{n,m}) = per([Uᵀ]_{m,n})`.
pub fn amplitude(
    u: &ComplexMatrix,
    n: &PhotonDistribution,
    m: &PhotonDistribution,
    algo: Algorithm,
) -> Result<Amplitude> {
    amplitude_with(u, n, m, algo, &Options::default())
}

/// [`amplitude`] with explicit evaluation options.
pub fn amplitude_with(
    u: &ComplexMatrix,
    n: &PhotonDistribution,
    m: &PhotonDistribution,
    algo: Algorithm,
    opts: &Options,
) -> Result<Amplitude> {
    warn_if_not_unitary(u);
    amplitude_unchecked(u, n, m, algo, opts)
}

fn amplitude_unchecked(
    u: &ComplexMatrix,
    n: &PhotonDistribution,
    m: &PhotonDistribution,
    algo: Algorithm,
    opts: &Options,
) -> Result<Amplitude> {
    let permanent = scattering_permanent(u, n, m, algo, opts)?;
    let normalization = (n.factorial_product() * m.factorial_product()).sqrt();
    Ok(Amplitude {
        value: permanent.value / normalization,
        permanent,
        normalization,
    })
}

/// Every output distribution with its probability `|⟨m|Û|n⟩|²`.
pub fn output_distribution(
    u: &ComplexMatrix,
    n: &PhotonDistribution,
) -> Result<Vec<(PhotonDistribution, f64)>> {
    output_distribution_with(u, n, &Options::default())
}

/// [`output_distribution`] with explicit evaluation options.
pub fn output_distribution_with(
    u: &ComplexMatrix,
    n: &PhotonDistribution,
    opts: &Options,
) -> Result<Vec<(PhotonDistribution, f64)>> {
    let photons = n.require_photons()?;
    if n.modes() != u.dim() {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {0}x{0} but input has {1} modes",
            u.dim(),
            n.modes()
        )));
    }
    let states = composition_count(photons, u.dim());
    if states > MAX_OUTPUT_STATES {
        return Err(Error::SizeLimit(format!(
            "{states} output states exceed {MAX_OUTPUT_STATES}"
        )));
    }
    warn_if_not_unitary(u);
    compositions(photons, u.dim())
        .into_iter()
        .map(|m| {
            let amp = amplitude_unchecked(u, n, &m, Algorithm::RootsOfUnity, opts)?;
            Ok((m, amp.probability()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::random_unitary;

    fn d(v: &[usize]) -> PhotonDistribution {
        PhotonDistribution::from(v)
    }

    #[test]
    fn identity_network() {
        let id = ComplexMatrix::identity(3);
        let n = d(&[2, 0, 1]);
        for algo in Algorithm::ALL {
            if algo == Algorithm::RepeatedCols {
                continue;
            }
            let same = amplitude(&id, &n, &n, algo).unwrap();
            assert!((same.value - 1.0).norm() < 1e-12, "{algo}");
            let other = amplitude(&id, &n, &d(&[1, 1, 1]), algo).unwrap();
            assert!(other.value.norm() < 1e-12, "{algo}");
        }
    }

    #[test]
    fn two_photon_terms() {
        let u = random_unitary(2, 17);
        let ones = d(&[1, 1]);
        let perm = u.get(0, 0) * u.get(1, 1) + u.get(0, 1) * u.get(1, 0);
        let bunched = u.get(0, 0) * u.get(1, 0) * std::f64::consts::SQRT_2;
        for algo in Algorithm::ALL {
            let a = amplitude(&u, &ones, &ones, algo).unwrap();
            assert!((a.value - perm).norm() < 1e-12, "{algo}");
            let b = amplitude(&u, &ones, &d(&[2, 0]), algo).unwrap();
            assert!((b.value - bunched).norm() < 1e-12, "{algo}");
            assert!((b.value * b.normalization - b.permanent.value).norm() < 1e-12);
        }
    }

    #[test]
    fn repeated_cols_needs_an_unbunched_side() {
        let u = random_unitary(3, 2);
        assert!(matches!(
            amplitude(&u, &d(&[2, 1, 0]), &d(&[0, 2, 1]), Algorithm::RepeatedCols),
            Err(Error::UnsupportedAlgo(_))
        ));
    }

    #[test]
    fn cheaper_orientation_drives_term_count() {
        let u = random_unitary(4, 5);
        let n = d(&[1, 1, 1, 1]);
        let m = d(&[4, 0, 0, 0]);
        let a = amplitude(&u, &n, &m, Algorithm::RootsOfUnity).unwrap();
        assert_eq!(a.permanent.term_count, 5);
        let b = amplitude(&u, &m, &n, Algorithm::KanSeries).unwrap();
        assert_eq!(b.permanent.term_count, 5);
    }

    #[test]
    fn hong_ou_mandel() {
        let dist = output_distribution(&ComplexMatrix::hadamard(), &d(&[1, 1])).unwrap();
        let p = |v: &[usize]| dist.iter().find(|(m, _)| m.occupations() == v).unwrap().1;
        assert!((p(&[2, 0]) - 0.5).abs() < 1e-12);
        assert!((p(&[0, 2]) - 0.5).abs() < 1e-12);
        assert!(p(&[1, 1]) < 1e-12);
    }

    #[test]
    fn identity_output_is_deterministic() {
        let n = d(&[2, 1]);
        let dist = output_distribution(&ComplexMatrix::identity(2), &n).unwrap();
        for (m, p) in &dist {
            let expected = if *m == n { 1.0 } else { 0.0 };
            assert!((p - expected).abs() < 1e-12, "{m}");
        }
        assert!(matches!(
            output_distribution(&ComplexMatrix::identity(3), &n),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn random_unitary_output_sums_to_one() {
        let u = random_unitary(3, 2);
        let dist = output_distribution(&u, &d(&[1, 1, 1])).unwrap();
        let total: f64 = dist.iter().map(|(_, p)| p).sum();
        assert!((total - 1.0).abs() < 1e-9);
        assert!(dist.iter().all(|(_, p)| *p >= 0.0));
    }
}
