use num_complex::Complex64;

use super::{gray_sum, Algorithm, GrayKernel, Options, PermanentResult, EXP_MAX_DIM};
use crate::error::{Error, Result};
use crate::gray::Step;
use crate::matrix::ComplexMatrix;

fn check_dim(a: &ComplexMatrix) -> Result<usize> {
    let n = a.dim();
    if n > EXP_MAX_DIM {
        return Err(Error::SizeLimit(format!(
            "2^N algorithms limited to N <= {EXP_MAX_DIM}, got {n}"
        )));
    }
    Ok(n)
}

/// Inclusion–exclusion over column subsets; word digit `k` = 1 when column
/// `k` is in the subset.
struct RyserKernel<'a> {
    a: &'a ComplexMatrix,
    radices: Vec<usize>,
}

struct RyserState {
    row_sums: Vec<Complex64>,
    size: usize,
}

impl GrayKernel for RyserKernel<'_> {
    type State = RyserState;

    fn radices(&self) -> &[usize] {
        &self.radices
    }

    fn init(&self, word: &[usize]) -> RyserState {
        let n = self.a.dim();
        let row_sums = (0..n)
            .map(|i| (0..n).filter(|&k| word[k] == 1).map(|k| self.a.get(i, k)).sum())
            .collect();
        RyserState {
            row_sums,
            size: word.iter().sum(),
        }
    }

    fn update(&self, s: &mut RyserState, step: Step) {
        let k = step.digit;
        if step.to == 1 {
            for (i, r) in s.row_sums.iter_mut().enumerate() {
                *r += self.a.get(i, k);
            }
            s.size += 1;
        } else {
            for (i, r) in s.row_sums.iter_mut().enumerate() {
                *r -= self.a.get(i, k);
            }
            s.size -= 1;
        }
    }

    fn term(&self, s: &RyserState, _word: &[usize]) -> Complex64 {
        let prod: Complex64 = s.row_sums.iter().product();
        if (self.a.dim() - s.size).is_multiple_of(2) {
            prod
        } else {
            -prod
        }
    }
}

/// Ryser's inclusion–exclusion formula,
/// `per(A) = (−1)^N Σ_S (−1)^{|S|} ∏_i Σ_{k∈S} A_ik`,
/// with subsets visited in Gray-code order so each step costs `O(N)`.
pub fn per_ryser(a: &ComplexMatrix) -> Result<PermanentResult> {
    per_ryser_with(a, &Options::default())
}

pub fn per_ryser_with(a: &ComplexMatrix, options: &Options) -> Result<PermanentResult> {
    let n = check_dim(a)?;
    let kernel = RyserKernel {
        a,
        radices: vec![2; n],
    };
    let (value, term_count) = gray_sum(&kernel, options);
    Ok(PermanentResult {
        value,
        algorithm: Algorithm::Ryser,
        term_count,
    })
}

/// Glynn's sign-vector formula. Word digit `k` = 1 means `x_k = −1`.
pub(crate) struct GlynnKernel<'a> {
    a: &'a ComplexMatrix,
    radices: Vec<usize>,
}

impl<'a> GlynnKernel<'a> {
    pub(crate) fn new(a: &'a ComplexMatrix) -> Self {
        Self {
            a,
            radices: vec![2; a.dim()],
        }
    }
}

pub(crate) struct GlynnState {
    forms: Vec<Complex64>,
    negatives: usize,
}

#[inline]
fn sign_of(digit: usize) -> f64 {
    if digit == 0 {
        1.0
    } else {
        -1.0
    }
}

impl GrayKernel for GlynnKernel<'_> {
    type State = GlynnState;

    fn radices(&self) -> &[usize] {
        &self.radices
    }

    fn init(&self, word: &[usize]) -> GlynnState {
        let n = self.a.dim();
        let forms = (0..n)
            .map(|j| (0..n).map(|k| self.a.get(j, k) * sign_of(word[k])).sum())
            .collect();
        GlynnState {
            forms,
            negatives: word.iter().sum(),
        }
    }

    fn update(&self, s: &mut GlynnState, step: Step) {
        let k = step.digit;
        let delta = sign_of(step.to) - sign_of(step.from);
        for (j, y) in s.forms.iter_mut().enumerate() {
            *y += self.a.get(j, k) * delta;
        }
        if step.to == 1 {
            s.negatives += 1;
        } else {
            s.negatives -= 1;
        }
    }

    fn term(&self, s: &GlynnState, _word: &[usize]) -> Complex64 {
        let prod: Complex64 = s.forms.iter().product();
        if s.negatives.is_multiple_of(2) {
            prod
        } else {
            -prod
        }
    }
}

/// Glynn's formula, `per(A) = 2^{−N} Σ_{x∈{±1}^N} (∏ x_k) ∏_j Σ_k A_jk x_k`,
/// over all `2^N` sign vectors in Gray-code order.
pub fn per_glynn(a: &ComplexMatrix) -> Result<PermanentResult> {
    per_glynn_with(a, &Options::default())
}

pub fn per_glynn_with(a: &ComplexMatrix, options: &Options) -> Result<PermanentResult> {
    check_dim(a)?;
    let (raw, term_count) = gray_sum(&GlynnKernel::new(a), options);
    Ok(PermanentResult {
        value: raw / (term_count as f64),
        algorithm: Algorithm::Glynn,
        term_count,
    })
}
