use num_complex::Complex64;

use super::{Algorithm, PermanentResult, NAIVE_MAX_DIM};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::summation::CompensatedSum;

/// Permanent by direct summation over all `N!` permutations (Heap's order).
///
/// This is the reference every faster algorithm is checked against, so it
/// deliberately shares no code with them.
pub fn per_naive(a: &ComplexMatrix) -> Result<PermanentResult> {
    let n = a.dim();
    if n > NAIVE_MAX_DIM {
        return Err(Error::SizeLimit(format!(
            "naive permanent limited to {NAIVE_MAX_DIM}x{NAIVE_MAX_DIM}, got {n}x{n}"
        )));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut counters = vec![0usize; n];
    let mut acc = CompensatedSum::new();
    let mut terms = 0u64;
    let product = |p: &[usize]| -> Complex64 { p.iter().enumerate().map(|(i, &j)| a.get(i, j)).product() };

    acc.add(product(&perm));
    terms += 1;
    let mut i = 1;
    while i < n {
        if counters[i] < i {
            let swap_with = if i % 2 == 0 { 0 } else { counters[i] };
            perm.swap(swap_with, i);
            acc.add(product(&perm));
            terms += 1;
            counters[i] += 1;
            i = 1;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }

    Ok(PermanentResult {
        value: acc.value(),
        algorithm: Algorithm::Naive,
        term_count: terms,
    })
}
