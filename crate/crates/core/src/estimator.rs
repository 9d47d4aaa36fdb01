//! Randomized additive-error permanent estimation and its error bounds.
//!
//! Both estimators average the terms of an exact exponential-sum formula
//! over uniformly random points of its domain: Glynn's sign vectors for a
//! plain matrix, and the scaled roots-of-unity grid for `[U]_{n,m}`. For a
//! contraction every term is bounded, so the sample mean concentrates at
//! rate `1/√samples` around the permanent.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::distribution::{check_scattering, PhotonDistribution};
use crate::error::{Error, Result};
use crate::majorization::{canonicalize, entropy_gap, log2_v};
use crate::matrix::ComplexMatrix;
use crate::permanent::{GlynnKernel, GrayKernel, RootsKernel, MAX_TERMS};
use crate::summation::CompensatedSum;

/// Largest photon number accepted by the estimators.
pub const ESTIMATOR_MAX_DIM: usize = 64;

/// Samples per independently seeded chunk.
const CHUNK: u64 = 4096;

/// Samples-per-precision constant: `samples = ⌈C / ε²⌉`.
const SAMPLES_PER_INV_EPS2: f64 = 10.0;

/// How the estimator visits the domain of the averaged formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sampling {
    /// Independent uniform draws.
    Random { samples: u64 },
    /// Every point exactly once; reproduces the exact formula.
    Exhaustive,
}

/// Estimator output.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateResult {
    /// Estimated permanent, on the original (unscaled) matrix.
    pub estimate: Complex64,
    pub samples: u64,
    pub seed: u64,
    /// Additive precision reached by `samples` draws, `√(C / samples)`.
    pub epsilon: f64,
    /// Additive error bound on the normalized scale (`≤ epsilon`).
    pub bound: f64,
    /// `√(∏ n_i! m_i!)`; 1 for a plain matrix.
    pub normalization: f64,
    /// `‖A‖^N`, the factor undone after estimating on `A / ‖A‖`.
    pub scale: f64,
}

impl EstimateResult {
    /// Estimate divided by the Fock normalization.
    pub fn amplitude(&self) -> Complex64 {
        self.estimate / self.normalization
    }

    /// `bound` carried back to the permanent's scale.
    pub fn permanent_bound(&self) -> f64 {
        self.bound * self.scale * self.normalization
    }
}

/// `⌈C / ε²⌉` samples for additive precision `ε`.
pub fn samples_for_epsilon(eps: f64) -> Result<u64> {
    check_epsilon(eps)?;
    Ok((SAMPLES_PER_INV_EPS2 / (eps * eps)).ceil() as u64)
}

/// Precision reached with `samples` draws; inverse of [`samples_for_epsilon`].
pub fn epsilon_for_samples(samples: u64) -> f64 {
    (SAMPLES_PER_INV_EPS2 / samples as f64).sqrt()
}

fn check_epsilon(eps: f64) -> Result<()> {
    if eps.is_finite() && eps > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("epsilon must be positive, got {eps}")))
    }
}

fn check_photons(photons: usize) -> Result<()> {
    if photons > ESTIMATOR_MAX_DIM {
        return Err(Error::SizeLimit(format!(
            "estimators accept at most {ESTIMATOR_MAX_DIM} photons, got {photons}"
        )));
    }
    Ok(())
}

/// Scales `a` to unit operator norm. Returns the scaled matrix and `‖a‖^N`.
fn contract(a: &ComplexMatrix, photons: usize) -> (ComplexMatrix, f64) {
    let norm = a.spectral_norm();
    if norm > 0.0 && norm.is_finite() {
        (a.scaled(1.0 / norm), norm.powi(photons as i32))
    } else {
        (a.clone(), 1.0)
    }
}

fn draw(rng: &mut ChaCha8Rng, radices: &[usize], word: &mut [usize]) {
    for (digit, &radix) in word.iter_mut().zip(radices) {
        *digit = rng.random_range(0..radix);
    }
}

fn random_chunk<K: GrayKernel>(kernel: &K, seed: u64, chunk: u64, len: u64) -> CompensatedSum {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    let radices = kernel.radices();
    let mut word = vec![0; radices.len()];
    let mut acc = CompensatedSum::new();
    for _ in 0..len {
        draw(&mut rng, radices, &mut word);
        acc.add(kernel.fresh_term(&word));
    }
    acc
}

/// Mean of `kernel` terms. Returns the mean and the number of terms.
///
/// Random draws are grouped into fixed-size chunks, each with its own
/// stream of the seeded generator, and reduced in chunk order; the result
/// does not depend on `threads`.
fn mean_term<K: GrayKernel>(
    kernel: &K,
    sampling: Sampling,
    seed: u64,
    threads: usize,
) -> Result<(Complex64, u64)> {
    match sampling {
        Sampling::Exhaustive => {
            let radices = kernel.radices();
            let total = crate::gray::word_count(radices)
                .filter(|&t| t <= MAX_TERMS)
                .ok_or_else(|| {
                    Error::SizeLimit(format!("exhaustive estimation limited to {MAX_TERMS} terms"))
                })?;
            // plain odometer: independent of the Gray-code update path
            let mut word = vec![0; radices.len()];
            let mut acc = CompensatedSum::new();
            for _ in 0..total {
                acc.add(kernel.fresh_term(&word));
                for (digit, &radix) in word.iter_mut().zip(radices) {
                    *digit += 1;
                    if *digit < radix {
                        break;
                    }
                    *digit = 0;
                }
            }
            Ok((acc.value() / total as f64, total))
        }
        Sampling::Random { samples } => {
            if samples == 0 {
                return Err(Error::InvalidParameter("samples must be at least 1".into()));
            }
            let chunks = samples.div_ceil(CHUNK);
            let len = |c: u64| CHUNK.min(samples - c * CHUNK);
            let workers = (threads.max(1) as u64).min(chunks);
            let mut partials: Vec<(u64, CompensatedSum)> = if workers == 1 {
                (0..chunks).map(|c| (c, random_chunk(kernel, seed, c, len(c)))).collect()
            } else {
                std::thread::scope(|scope| {
                    let handles: Vec<_> = (0..workers)
                        .map(|w| {
                            scope.spawn(move || {
                                (w..chunks)
                                    .step_by(workers as usize)
                                    .map(|c| (c, random_chunk(kernel, seed, c, len(c))))
                                    .collect::<Vec<_>>()
                            })
                        })
                        .collect();
                    handles
                        .into_iter()
                        .flat_map(|h| h.join().expect("estimator worker panicked"))
                        .collect()
                })
            };
            partials.sort_unstable_by_key(|(c, _)| *c);
            let mut acc = CompensatedSum::new();
            for (_, p) in &partials {
                acc.merge(p);
            }
            Ok((acc.value() / samples as f64, samples))
        }
    }
}

/// Glynn-term estimate of `per(a)` from `samples` random sign vectors.
pub fn gurvits_estimate(a: &ComplexMatrix, samples: u64, seed: u64) -> Result<EstimateResult> {
    gurvits_estimate_with(a, Sampling::Random { samples }, seed, 1)
}

/// [`gurvits_estimate`] with an explicit sampling mode and worker count.
pub fn gurvits_estimate_with(
    a: &ComplexMatrix,
    sampling: Sampling,
    seed: u64,
    threads: usize,
) -> Result<EstimateResult> {
    let photons = a.dim();
    check_photons(photons)?;
    let (scaled, scale) = contract(a, photons);
    let (mean, samples) = mean_term(&GlynnKernel::new(&scaled), sampling, seed, threads)?;
    let epsilon = epsilon_for_samples(samples);
    Ok(EstimateResult {
        estimate: mean * scale,
        samples,
        seed,
        epsilon,
        bound: epsilon,
        normalization: 1.0,
        scale,
    })
}

/// Estimate of `per([U]_{n,m})` by averaging roots-of-unity terms.
///
/// The random point ranges over the modes of whichever distribution has
/// the smaller `v`; every term is then bounded by `min(v_n/v_m, v_m/v_n)`
/// on the amplitude scale.
pub fn generalized_estimate(
    u: &ComplexMatrix,
    n: &PhotonDistribution,
    m: &PhotonDistribution,
    samples: u64,
    seed: u64,
) -> Result<EstimateResult> {
    generalized_estimate_with(u, n, m, Sampling::Random { samples }, seed, 1)
}

/// [`generalized_estimate`] with an explicit sampling mode and worker count.
pub fn generalized_estimate_with(
    u: &ComplexMatrix,
    n: &PhotonDistribution,
    m: &PhotonDistribution,
    sampling: Sampling,
    seed: u64,
    threads: usize,
) -> Result<EstimateResult> {
    let photons = check_scattering(u, n, m)?;
    check_photons(photons)?;
    let (scaled, scale) = contract(u, photons);
    let kernel = if log2_v(n.occupations()) <= log2_v(m.occupations()) {
        RootsKernel::new(&scaled, n, m)
    } else {
        RootsKernel::new(&scaled.transpose(), m, n)
    };
    let (mean, samples) = mean_term(&kernel, sampling, seed, threads)?;
    let epsilon = epsilon_for_samples(samples);
    Ok(EstimateResult {
        estimate: mean * kernel.weight() * scale,
        samples,
        seed,
        epsilon,
        bound: error_bound(n, m, epsilon)?,
        normalization: (n.factorial_product() * m.factorial_product()).sqrt(),
        scale,
    })
}

fn check_pair(n: &PhotonDistribution, m: &PhotonDistribution) -> Result<bool> {
    let (a, b) = (canonicalize(n)?, canonicalize(m)?);
    if a.total() != b.total() {
        return Err(Error::WeightMismatch {
            left: a.total(),
            right: b.total(),
        });
    }
    Ok(a == b)
}

/// `ε · min(v_n/v_m, v_m/v_n)` with `v = ∏ √(n_i!/n_i^{n_i})`.
pub fn error_bound(n: &PhotonDistribution, m: &PhotonDistribution, eps: f64) -> Result<f64> {
    check_epsilon(eps)?;
    if check_pair(n, m)? {
        return Ok(eps);
    }
    let gap = log2_v(n.occupations()) - log2_v(m.occupations());
    Ok(eps * (-gap.abs()).exp2())
}

/// [`error_bound`] written through the entropy gap `ΔS = S_B − N·H`:
/// `ε · 2^{−|ΔS(n) − ΔS(m)|/2}`.
pub fn error_bound_entropy(
    n: &PhotonDistribution,
    m: &PhotonDistribution,
    eps: f64,
) -> Result<f64> {
    check_epsilon(eps)?;
    if check_pair(n, m)? {
        return Ok(eps);
    }
    let gap = entropy_gap(n.occupations()) - entropy_gap(m.occupations());
    Ok(eps * (-gap.abs() / 2.0).exp2())
}

/// Large-occupation approximation `ε · ∏ (m_i/n_i)^{1/4}` of [`error_bound`],
/// oriented so the result is at most `ε`.
///
/// Occupied modes are paired in sorted order; the product does not depend
/// on the pairing. Only accurate when every occupation is large (tens of
/// photons); for small occupations it can differ noticeably.
pub fn error_bound_stirling(
    n: &PhotonDistribution,
    m: &PhotonDistribution,
    eps: f64,
) -> Result<f64> {
    check_epsilon(eps)?;
    check_pair(n, m)?;
    let (a, b) = (canonicalize(n)?, canonicalize(m)?);
    if a.alpha() != b.alpha() {
        return Err(Error::SupportMismatch(a.alpha(), b.alpha()));
    }
    let log_ratio: f64 = a
        .parts()
        .iter()
        .zip(b.parts())
        .map(|(&x, &y)| (y as f64 / x as f64).log2())
        .sum();
    Ok(eps * (-log_ratio.abs() / 4.0).exp2())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::random_unitary;
    use crate::permanent::{per_glynn, per_naive, per_roots_of_unity};

    fn d(v: &[usize]) -> PhotonDistribution {
        PhotonDistribution::from(v)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    #[test]
    fn exhaustive_glynn_is_exact() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]).unwrap();
        let est = gurvits_estimate_with(&a, Sampling::Exhaustive, 0, 1).unwrap();
        assert!((est.estimate - Complex64::new(10.0, 0.0)).norm() < 1e-12);
        assert_eq!(est.samples, 4);
        for seed in 0..5 {
            let u = random_unitary(5, seed);
            let est = gurvits_estimate_with(&u, Sampling::Exhaustive, 0, 1).unwrap();
            assert!(rel(est.estimate, per_glynn(&u).unwrap().value) < 1e-10);
        }
    }

    #[test]
    fn exhaustive_generalized_is_exact() {
        let u = random_unitary(3, 9);
        for (n, m) in [
            (d(&[1, 1, 0]), d(&[1, 1, 0])),
            (d(&[2, 1, 0]), d(&[0, 1, 2])),
            (d(&[3, 0, 0]), d(&[1, 1, 1])),
            (d(&[1, 1, 1]), d(&[3, 0, 0])),
        ] {
            let est = generalized_estimate_with(&u, &n, &m, Sampling::Exhaustive, 0, 1).unwrap();
            let exact = per_roots_of_unity(&u, &n, &m).unwrap().value;
            assert!(rel(est.estimate, exact) < 1e-10, "{n} {m}");
        }
    }

    #[test]
    fn deterministic_and_thread_independent() {
        let u = random_unitary(4, 1);
        let one = gurvits_estimate_with(&u, Sampling::Random { samples: 20_000 }, 42, 1).unwrap();
        let four = gurvits_estimate_with(&u, Sampling::Random { samples: 20_000 }, 42, 4).unwrap();
        assert_eq!(one, four);
        let other = gurvits_estimate(&u, 20_000, 43).unwrap();
        assert_ne!(one.estimate, other.estimate);
        let n = d(&[2, 1, 1, 0]);
        let g1 = generalized_estimate_with(&u, &n, &n, Sampling::Random { samples: 9000 }, 5, 1);
        let g3 = generalized_estimate_with(&u, &n, &n, Sampling::Random { samples: 9000 }, 5, 3);
        assert_eq!(g1.unwrap(), g3.unwrap());
    }

    #[test]
    fn all_ones_converges() {
        let a = ComplexMatrix::ones(4);
        let est = gurvits_estimate(&a, 100_000, 1).unwrap();
        assert!((est.estimate - Complex64::new(24.0, 0.0)).norm() <= est.permanent_bound());
        let single = gurvits_estimate(&a, 1, 7).unwrap();
        assert!(single.estimate.re.is_finite());
    }

    #[test]
    fn generalized_sampling_converges() {
        let u = random_unitary(3, 4);
        let (n, m) = (d(&[2, 1, 0]), d(&[1, 1, 1]));
        let est = generalized_estimate(&u, &n, &m, 40_000, 3).unwrap();
        let exact = per_naive(&crate::expand_submatrix(&u, &n, &m).unwrap()).unwrap().value;
        assert!((est.estimate - exact).norm() <= est.permanent_bound());
    }

    #[test]
    fn bound_point_values() {
        let ones4 = d(&[1, 1, 1, 1]);
        let b = error_bound(&ones4, &d(&[4, 0, 0, 0]), 1.0).unwrap();
        assert!((b - 0.30619).abs() < 1e-5);
        let b = error_bound(&d(&[1, 1]), &d(&[2, 0]), 1.0).unwrap();
        assert!((b - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        let b = error_bound(&d(&[1; 8]), &d(&[8, 0, 0, 0, 0, 0, 0, 0]), 1.0).unwrap();
        assert!((b - 0.0490230).abs() < 1e-7);
        assert_eq!(error_bound(&d(&[3, 1]), &d(&[1, 3]), 0.25).unwrap(), 0.25);
        let e = error_bound_entropy(&d(&[1; 6]), &d(&[6, 0, 0, 0, 0, 0]), 0.5).unwrap();
        assert!((e - 0.062113).abs() < 1e-6);
        assert!(matches!(
            error_bound(&d(&[2]), &d(&[1, 2]), 1.0),
            Err(Error::WeightMismatch { .. })
        ));
        assert!(matches!(
            error_bound(&d(&[2]), &d(&[2]), 0.0),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn stirling_form() {
        let s = error_bound_stirling(&d(&[64, 64]), &d(&[96, 32]), 1.0).unwrap();
        assert!((s - 0.9306).abs() < 1e-4);
        let exact = error_bound(&d(&[64, 64]), &d(&[96, 32]), 1.0).unwrap();
        assert!((s - exact).abs() / exact < 0.1);
        // small occupations: approximation still within a few percent here
        let s = error_bound_stirling(&d(&[2, 2]), &d(&[3, 1]), 1.0).unwrap();
        let exact = error_bound(&d(&[2, 2]), &d(&[3, 1]), 1.0).unwrap();
        assert!((s - 0.9306).abs() < 1e-4);
        assert!((exact - 0.9428).abs() < 1e-4);
        assert!(error_bound_stirling(&d(&[2, 2]), &d(&[3, 1, 0]), 1.0).is_ok());
        assert!(matches!(
            error_bound_stirling(&d(&[2, 2]), &d(&[2, 1, 1]), 1.0),
            Err(Error::SupportMismatch(2, 3))
        ));
    }

    #[test]
    fn samples_epsilon_round_trip() {
        assert_eq!(samples_for_epsilon(0.2).unwrap(), 250);
        assert_eq!(samples_for_epsilon(0.1).unwrap(), 1000);
        assert!((epsilon_for_samples(250) - 0.2).abs() < 1e-12);
    }

    #[test]
    fn size_limits() {
        assert!(matches!(
            gurvits_estimate(&ComplexMatrix::identity(65), 1, 0),
            Err(Error::SizeLimit(_))
        ));
        assert!(matches!(
            gurvits_estimate(&ComplexMatrix::identity(2), 0, 0),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            gurvits_estimate_with(&ComplexMatrix::identity(31), Sampling::Exhaustive, 0, 1),
            Err(Error::SizeLimit(_))
        ));
    }
}
