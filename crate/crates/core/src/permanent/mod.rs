//! Exact matrix permanents and the scattering amplitudes built on them.
//!
//! All exponential-sum algorithms share one driver: the outer sum runs over
//! the words of a (mixed-radix) Gray code, so each step changes a single
//! summation variable and the row/column linear forms are updated in place
//! instead of being recomputed.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::gray::{word_count, GrayWalker, Step};
use crate::summation::CompensatedSum;

mod amplitude;
mod generalized;
mod naive;
mod ryser;

pub use amplitude::{
    amplitude, amplitude_with, cheaper_orientation, output_distribution, output_distribution_with,
    scattering_permanent, Amplitude, Orientation, MAX_OUTPUT_STATES, UNITARITY_WARN,
};
pub use generalized::{
    per_kan_series, per_kan_series_with, per_repeated_cols, per_repeated_cols_with,
    per_roots_of_unity, per_roots_of_unity_with,
};
pub use naive::per_naive;
pub use ryser::{per_glynn, per_glynn_with, per_ryser, per_ryser_with};

pub(crate) use generalized::RootsKernel;
pub(crate) use ryser::GlynnKernel;

/// Largest matrix accepted by the permutation-enumeration oracle.
pub const NAIVE_MAX_DIM: usize = 10;
/// Largest matrix accepted by the `2^N` algorithms.
pub const EXP_MAX_DIM: usize = 30;
/// Largest outer-sum length `∏(n_i + 1)` accepted by the generalized formulas.
pub const MAX_TERMS: u64 = 1 << 30;

/// Which formula produced a permanent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Naive,
    Ryser,
    Glynn,
    RepeatedCols,
    RootsOfUnity,
    KanSeries,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Naive,
        Algorithm::Ryser,
        Algorithm::Glynn,
        Algorithm::RepeatedCols,
        Algorithm::RootsOfUnity,
        Algorithm::KanSeries,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Naive => "naive",
            Algorithm::Ryser => "ryser",
            Algorithm::Glynn => "glynn",
            Algorithm::RepeatedCols => "repeated_cols",
            Algorithm::RootsOfUnity => "roots_of_unity",
            Algorithm::KanSeries => "kan_series",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == key)
            .ok_or_else(|| {
                let names: Vec<_> = Algorithm::ALL.iter().map(|a| a.name()).collect();
                format!("unknown algorithm {s:?}; expected one of {}", names.join(", "))
            })
    }
}

/// A permanent together with the formula used and its outer-sum length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PermanentResult {
    pub value: Complex64,
    pub algorithm: Algorithm,
    pub term_count: u64,
}

/// Evaluation options for the exponential sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    /// Number of contiguous chunks the outer sum is split into, each run on
    /// its own thread. Results are reduced in chunk order, so a fixed value
    /// gives bit-identical output from run to run.
    pub threads: usize,
}

impl Default for Options {
    fn default() -> Self {
        Self { threads: 1 }
    }
}

/// One exponential sum evaluated along a Gray code.
pub(crate) trait GrayKernel: Sync {
    type State: Send;

    fn radices(&self) -> &[usize];
    fn init(&self, word: &[usize]) -> Self::State;
    fn update(&self, state: &mut Self::State, step: Step);
    fn term(&self, state: &Self::State, word: &[usize]) -> Complex64;

    /// Term evaluated from scratch, without incremental state.
    fn fresh_term(&self, word: &[usize]) -> Complex64 {
        self.term(&self.init(word), word)
    }
}

fn sum_range<K: GrayKernel>(kernel: &K, start: u64, end: u64) -> CompensatedSum {
    let mut acc = CompensatedSum::new();
    if start >= end {
        return acc;
    }
    let mut walker = GrayWalker::at(kernel.radices(), start);
    let mut state = kernel.init(walker.word());
    loop {
        acc.add(kernel.term(&state, walker.word()));
        if walker.rank() + 1 >= end {
            break;
        }
        let step = walker.advance().expect("rank below total");
        kernel.update(&mut state, step);
    }
    acc
}

/// Sums every term of `kernel`. Returns the raw sum and the term count.
pub(crate) fn gray_sum<K: GrayKernel>(kernel: &K, options: &Options) -> (Complex64, u64) {
    let total = word_count(kernel.radices()).expect("term count checked by caller");
    let chunks = (options.threads.max(1) as u64).min(total).max(1);
    let bounds: Vec<u64> = (0..=chunks).map(|c| total / chunks * c + (total % chunks).min(c)).collect();
    let partials: Vec<CompensatedSum> = if chunks == 1 {
        vec![sum_range(kernel, 0, total)]
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = bounds
                .windows(2)
                .map(|w| {
                    let (start, end) = (w[0], w[1]);
                    scope.spawn(move || sum_range(kernel, start, end))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("permanent worker panicked"))
                .collect()
        })
    };
    let mut acc = CompensatedSum::new();
    for p in &partials {
        acc.merge(p);
    }
    (acc.value(), total)
}

/// `z^e` by repeated multiplication.
#[inline]
pub(crate) fn pow_by_mult(z: Complex64, e: usize) -> Complex64 {
    let mut out = Complex64::new(1.0, 0.0);
    for _ in 0..e {
        out *= z;
    }
    out
}
