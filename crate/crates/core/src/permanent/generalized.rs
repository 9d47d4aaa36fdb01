//! Permanents of matrices with repeated rows and columns.
//!
//! For `A = [U]_{n,m}` (row `i` of `U` repeated `n_i` times, column `j`
//! repeated `m_j` times) both formulas here sum over one variable per
//! occupied mode of `n` instead of one per photon, so the outer sum has
//! `∏(n_i + 1)` terms rather than `2^N`.
//!
//! Roots-of-unity form: with `z_i = √n_i · ω_i^a`, `ω_i = e^{2πi/(n_i+1)}`,
//!
//! ```text
//! per(A) = ∏_i n_i!/n_i^{n_i} · E_z[ ∏_i z̄_i^{n_i} ∏_j (Σ_i U_ij z_i)^{m_j} ]
//! ```
//!
//! where the expectation is uniform over `∏ (n_i + 1)` points. Only the
//! coefficient of `∏ z_i^{n_i}` survives the average; it equals
//! `per(A) / ∏ n_i!`.
//!
//! Binomial (series) form, from expanding Glynn's sign sum photon by photon:
//!
//! ```text
//! per(A) = 2^{−N} Σ_{v_i=0..n_i} (−1)^{Σv} ∏ C(n_i, v_i) ∏_j (Σ_i (n_i − 2v_i) U_ij)^{m_j}
//! ```

use std::f64::consts::TAU;

use num_complex::Complex64;

use super::{gray_sum, pow_by_mult, Algorithm, GrayKernel, Options, PermanentResult, EXP_MAX_DIM, MAX_TERMS};
use crate::distribution::{check_scattering, factorial_f64, PhotonDistribution};
use crate::error::{Error, Result};
use crate::gray::Step;
use crate::matrix::ComplexMatrix;

/// Validates shapes and the size guards. Returns `N`.
fn check_generalized(
    u: &ComplexMatrix,
    n: &PhotonDistribution,
    m: &PhotonDistribution,
) -> Result<usize> {
    let photons = check_scattering(u, n, m)?;
    if photons > EXP_MAX_DIM {
        return Err(Error::SizeLimit(format!(
            "photon number limited to {EXP_MAX_DIM}, got {photons}"
        )));
    }
    let terms = n.radix_product();
    if terms > MAX_TERMS {
        return Err(Error::SizeLimit(format!(
            "outer sum of {terms} terms exceeds {MAX_TERMS}"
        )));
    }
    Ok(photons)
}

/// Occupied-mode restriction of `U`: rows follow the summed side, columns
/// the powered side.
struct Restriction {
    sub: Vec<Vec<Complex64>>,
    occupations: Vec<usize>,
    powers: Vec<usize>,
    radices: Vec<usize>,
}

impl Restriction {
    fn new(u: &ComplexMatrix, summed: &PhotonDistribution, powered: &PhotonDistribution) -> Self {
        let rows = summed.support();
        let cols = powered.support();
        Self {
            sub: rows
                .iter()
                .map(|&i| cols.iter().map(|&j| u.get(i, j)).collect())
                .collect(),
            occupations: rows.iter().map(|&i| summed.occupations()[i]).collect(),
            powers: cols.iter().map(|&j| powered.occupations()[j]).collect(),
            radices: rows.iter().map(|&i| summed.occupations()[i] + 1).collect(),
        }
    }

    fn powered_product(&self, forms: &[Complex64]) -> Complex64 {
        forms
            .iter()
            .zip(&self.powers)
            .map(|(&y, &p)| pow_by_mult(y, p))
            .product()
    }
}

pub(crate) struct RootsKernel {
    r: Restriction,
    points: Vec<Vec<Complex64>>,
    phases: Vec<Vec<Complex64>>,
    weight: f64,
}

impl RootsKernel {
    pub(crate) fn new(u: &ComplexMatrix, summed: &PhotonDistribution, powered: &PhotonDistribution) -> Self {
        let r = Restriction::new(u, summed, powered);
        let mut points = Vec::with_capacity(r.occupations.len());
        let mut phases = Vec::with_capacity(r.occupations.len());
        let mut weight = 1.0;
        for &n in &r.occupations {
            let radix = n + 1;
            let roots: Vec<Complex64> = (0..radix)
                .map(|a| Complex64::from_polar(1.0, TAU * a as f64 / radix as f64))
                .collect();
            let scale = (n as f64).sqrt();
            points.push(roots.iter().map(|w| w * scale).collect());
            // conj(√n ω^a)^n = n^{n/2} ω^{a}, since ω^{-n} = ω
            phases.push(roots);
            weight *= factorial_f64(n) / (n as f64).powf(n as f64 / 2.0);
        }
        Self { r, points, phases, weight }
    }

    /// `∏ n_i! / n_i^{n_i/2}`: multiplies the mean of the raw terms to give
    /// the permanent.
    pub(crate) fn weight(&self) -> f64 {
        self.weight
    }
}

impl GrayKernel for RootsKernel {
    type State = Vec<Complex64>;

    fn radices(&self) -> &[usize] {
        &self.r.radices
    }

    fn init(&self, word: &[usize]) -> Vec<Complex64> {
        let cols = self.r.powers.len();
        (0..cols)
            .map(|c| {
                word.iter()
                    .enumerate()
                    .map(|(row, &a)| self.r.sub[row][c] * self.points[row][a])
                    .sum()
            })
            .collect()
    }

    fn update(&self, forms: &mut Vec<Complex64>, step: Step) {
        let row = step.digit;
        let delta = self.points[row][step.to] - self.points[row][step.from];
        for (y, &entry) in forms.iter_mut().zip(&self.r.sub[row]) {
            *y += entry * delta;
        }
    }

    fn term(&self, forms: &Vec<Complex64>, word: &[usize]) -> Complex64 {
        let phase: Complex64 = word
            .iter()
            .enumerate()
            .map(|(row, &a)| self.phases[row][a])
            .product();
        phase * self.r.powered_product(forms)
    }
}

pub(crate) struct KanKernel {
    r: Restriction,
    binomials: Vec<Vec<f64>>,
}

fn binomial_row(n: usize) -> Vec<u64> {
    let mut row = vec![1u64; n + 1];
    for k in 1..=n {
        row[k] = row[k - 1] * (n - k + 1) as u64 / k as u64;
    }
    row
}

impl KanKernel {
    pub(crate) fn new(u: &ComplexMatrix, summed: &PhotonDistribution, powered: &PhotonDistribution) -> Self {
        let r = Restriction::new(u, summed, powered);
        let binomials = r
            .occupations
            .iter()
            .map(|&n| binomial_row(n).into_iter().map(|c| c as f64).collect())
            .collect();
        Self { r, binomials }
    }

    #[inline]
    fn coefficient(&self, row: usize, v: usize) -> f64 {
        self.r.occupations[row] as f64 - 2.0 * v as f64
    }
}

pub(crate) struct KanState {
    forms: Vec<Complex64>,
    flips: usize,
}

impl GrayKernel for KanKernel {
    type State = KanState;

    fn radices(&self) -> &[usize] {
        &self.r.radices
    }

    fn init(&self, word: &[usize]) -> KanState {
        let cols = self.r.powers.len();
        let forms = (0..cols)
            .map(|c| {
                word.iter()
                    .enumerate()
                    .map(|(row, &v)| self.r.sub[row][c] * self.coefficient(row, v))
                    .sum()
            })
            .collect();
        KanState {
            forms,
            flips: word.iter().sum(),
        }
    }

    fn update(&self, s: &mut KanState, step: Step) {
        let row = step.digit;
        let delta = self.coefficient(row, step.to) - self.coefficient(row, step.from);
        for (y, &entry) in s.forms.iter_mut().zip(&self.r.sub[row]) {
            *y += entry * delta;
        }
        s.flips = s.flips + step.to - step.from;
    }

    fn term(&self, s: &KanState, word: &[usize]) -> Complex64 {
        let binom: f64 = word
            .iter()
            .enumerate()
            .map(|(row, &v)| self.binomials[row][v])
            .product();
        let value = self.r.powered_product(&s.forms) * binom;
        if s.flips.is_multiple_of(2) {
            value
        } else {
            -value
        }
    }
}

/// Roots-of-unity sum with `summed` on the rows of `u`; returns
/// `per([u]_{summed, powered})` and the term count.
pub(crate) fn roots_sum(
    u: &ComplexMatrix,
    summed: &PhotonDistribution,
    powered: &PhotonDistribution,
    options: &Options,
) -> (Complex64, u64) {
    let kernel = RootsKernel::new(u, summed, powered);
    let (raw, terms) = gray_sum(&kernel, options);
    (raw * (kernel.weight() / terms as f64), terms)
}

pub(crate) fn kan_sum(
    u: &ComplexMatrix,
    summed: &PhotonDistribution,
    powered: &PhotonDistribution,
    options: &Options,
) -> (Complex64, u64) {
    let kernel = KanKernel::new(u, summed, powered);
    let (raw, terms) = gray_sum(&kernel, options);
    let photons = summed.total() as i32;
    (raw * 2f64.powi(-photons), terms)
}

/// `per([U]_{n,m})` by the roots-of-unity sum over the occupied modes of
/// `n`; the outer sum has exactly `∏(n_i + 1)` terms.
pub fn per_roots_of_unity(
    u: &ComplexMatrix,
    n: &PhotonDistribution,
    m: &PhotonDistribution,
) -> Result<PermanentResult> {
    per_roots_of_unity_with(u, n, m, &Options::default())
}

pub fn per_roots_of_unity_with(
    u: &ComplexMatrix,
    n: &PhotonDistribution,
    m: &PhotonDistribution,
    options: &Options,
) -> Result<PermanentResult> {
    check_generalized(u, n, m)?;
    let (value, term_count) = roots_sum(u, n, m, options);
    Ok(PermanentResult {
        value,
        algorithm: Algorithm::RootsOfUnity,
        term_count,
    })
}

/// Permanent of the `M×M` matrix obtained from `U` by repeating column `j`
/// `n_j` times (keeping every row once), so `Σ n_j` must equal `M`.
pub fn per_repeated_cols(u: &ComplexMatrix, n: &PhotonDistribution) -> Result<PermanentResult> {
    per_repeated_cols_with(u, n, &Options::default())
}

pub fn per_repeated_cols_with(
    u: &ComplexMatrix,
    n: &PhotonDistribution,
    options: &Options,
) -> Result<PermanentResult> {
    let rows = PhotonDistribution::unbunched(u.dim());
    if n.modes() != u.dim() || n.total() != u.dim() {
        return Err(Error::DimensionMismatch(format!(
            "column repetition {n} must have {0} modes summing to {0}",
            u.dim()
        )));
    }
    let ut = u.transpose();
    check_generalized(&ut, n, &rows)?;
    let (value, term_count) = roots_sum(&ut, n, &rows, options);
    Ok(PermanentResult {
        value,
        algorithm: Algorithm::RepeatedCols,
        term_count,
    })
}

/// `per([U]_{n,m})` by the binomial series over `v_i ∈ {0, …, n_i}`.
pub fn per_kan_series(
    u: &ComplexMatrix,
    n: &PhotonDistribution,
    m: &PhotonDistribution,
) -> Result<PermanentResult> {
    per_kan_series_with(u, n, m, &Options::default())
}

pub fn per_kan_series_with(
    u: &ComplexMatrix,
    n: &PhotonDistribution,
    m: &PhotonDistribution,
    options: &Options,
) -> Result<PermanentResult> {
    check_generalized(u, n, m)?;
    let (value, term_count) = kan_sum(u, n, m, options);
    Ok(PermanentResult {
        value,
        algorithm: Algorithm::KanSeries,
        term_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distribution::expand_submatrix;
    use crate::matrix::random_unitary;
    use crate::permanent::{per_glynn, per_naive};

    fn d(v: &[usize]) -> PhotonDistribution {
        PhotonDistribution::from(v)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    #[test]
    fn binomial_rows_are_exact() {
        assert_eq!(binomial_row(4), vec![1, 4, 6, 4, 1]);
        assert_eq!(binomial_row(30)[15], 155_117_520);
    }

    #[test]
    fn unbunched_reduces_to_glynn() {
        let u = random_unitary(4, 2);
        let ones = d(&[1, 1, 1, 1]);
        let glynn = per_glynn(&u).unwrap().value;
        let cols = per_repeated_cols(&u, &ones).unwrap();
        let roots = per_roots_of_unity(&u, &ones, &ones).unwrap();
        let kan = per_kan_series(&u, &ones, &ones).unwrap();
        assert!(rel(cols.value, glynn) < 1e-12);
        assert!(rel(roots.value, glynn) < 1e-12);
        assert!(rel(kan.value, glynn) < 1e-12);
        assert_eq!(roots.term_count, 16);
        assert_eq!(kan.term_count, 16);
    }

    #[test]
    fn repeated_column_two_by_two() {
        let u = random_unitary(2, 8);
        let r = per_repeated_cols(&u, &d(&[2, 0])).unwrap();
        let expected = u.get(0, 0) * u.get(1, 0) * 2.0;
        assert!(rel(r.value, expected) < 1e-12);
        assert_eq!(r.term_count, 3);
    }

    #[test]
    fn repeated_columns_match_oracle() {
        let u = random_unitary(3, 5);
        let n = d(&[2, 1, 0]);
        let oracle = per_naive(&expand_submatrix(&u, &d(&[1, 1, 1]), &n).unwrap()).unwrap();
        let r = per_repeated_cols(&u, &n).unwrap();
        assert!(rel(r.value, oracle.value) < 1e-9);
    }

    #[test]
    fn bunched_output_two_by_two() {
        let u = random_unitary(2, 13);
        // rows (1,1), column 0 twice: [[U11, U11], [U21, U21]]
        let r = per_roots_of_unity(&u, &d(&[1, 1]), &d(&[2, 0])).unwrap();
        assert!(rel(r.value, u.get(0, 0) * u.get(1, 0) * 2.0) < 1e-12);
        // row 0 twice: [[U11, U12], [U11, U12]]
        let k = per_kan_series(&u, &d(&[2, 0]), &d(&[1, 1])).unwrap();
        assert!(rel(k.value, u.get(0, 0) * u.get(0, 1) * 2.0) < 1e-12);
    }

    #[test]
    fn generalized_forms_match_oracle() {
        let u = random_unitary(4, 9);
        let n = d(&[2, 1, 1, 0]);
        for m in [d(&[1, 1, 1, 1]), d(&[2, 2, 0, 0])] {
            let oracle = per_naive(&expand_submatrix(&u, &n, &m).unwrap()).unwrap().value;
            let roots = per_roots_of_unity(&u, &n, &m).unwrap();
            let kan = per_kan_series(&u, &n, &m).unwrap();
            assert!(rel(roots.value, oracle) < 1e-9, "roots {m}");
            assert!(rel(kan.value, roots.value) < 1e-9, "kan {m}");
            assert_eq!(roots.term_count, 12);
        }
    }

    #[test]
    fn rejects_weight_mismatch() {
        let u = random_unitary(3, 1);
        assert!(matches!(
            per_roots_of_unity(&u, &d(&[1, 1, 0]), &d(&[1, 1, 1])),
            Err(Error::WeightMismatch { .. })
        ));
        assert!(matches!(
            per_repeated_cols(&u, &d(&[1, 1, 0])),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn chunked_generalized_sum_matches_serial() {
        let u = random_unitary(5, 30);
        let n = d(&[3, 2, 0, 1, 1]);
        let m = d(&[1, 2, 2, 1, 1]);
        let serial = per_roots_of_unity(&u, &n, &m).unwrap().value;
        let kan = per_kan_series(&u, &n, &m).unwrap().value;
        for threads in [2, 5] {
            let opts = Options { threads };
            assert!(rel(per_roots_of_unity_with(&u, &n, &m, &opts).unwrap().value, serial) < 1e-12);
            assert!(rel(per_kan_series_with(&u, &n, &m, &opts).unwrap().value, kan) < 1e-12);
        }
    }
}
