//! Reflected mixed-radix Gray code.
//!
//! Consecutive words differ in exactly one digit, by ±1. A walker can be
//! started at any rank, which lets the outer sums of the permanent formulas
//! be split into contiguous chunks that are evaluated independently.

/// A single-digit change between two consecutive Gray words.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub digit: usize,
    pub from: usize,
    pub to: usize,
}

/// Walks the reflected Gray code over `radices[0] × … × radices[k−1]`,
/// digit 0 varying fastest.
#[derive(Debug, Clone)]
pub struct GrayWalker {
    radices: Vec<usize>,
    counter: Vec<usize>,
    word: Vec<usize>,
    forward: Vec<bool>,
    rank: u64,
    total: u64,
}

/// `∏ radices`, or `None` on overflow.
pub fn word_count(radices: &[usize]) -> Option<u64> {
    radices
        .iter()
        .try_fold(1u64, |acc, &r| acc.checked_mul(r as u64))
}

impl GrayWalker {
    /// Positions the walker at `rank`. Every radix must be at least 1.
    pub fn at(radices: &[usize], rank: u64) -> Self {
        assert!(radices.iter().all(|&r| r >= 1), "radix must be positive");
        let total = word_count(radices).expect("word count fits in u64");
        assert!(rank <= total, "rank {rank} out of range {total}");
        let mut counter = Vec::with_capacity(radices.len());
        let mut word = Vec::with_capacity(radices.len());
        let mut forward = Vec::with_capacity(radices.len());
        let mut rest = rank % total.max(1);
        for &r in radices {
            let digit = (rest % r as u64) as usize;
            rest /= r as u64;
            // Direction of a digit flips every time the higher part advances.
            let fwd = rest.is_multiple_of(2);
            counter.push(digit);
            word.push(if fwd { digit } else { r - 1 - digit });
            forward.push(fwd);
        }
        Self {
            radices: radices.to_vec(),
            counter,
            word,
            forward,
            rank,
            total,
        }
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn rank(&self) -> u64 {
        self.rank
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Advances to the next word and reports the digit that changed, or
    /// `None` when the current word is the last one.
    pub fn advance(&mut self) -> Option<Step> {
        if self.rank + 1 >= self.total {
            return None;
        }
        let mut i = 0;
        while self.counter[i] + 1 == self.radices[i] {
            self.counter[i] = 0;
            self.forward[i] = !self.forward[i];
            i += 1;
        }
        self.counter[i] += 1;
        let from = self.word[i];
        let to = if self.forward[i] { from + 1 } else { from - 1 };
        self.word[i] = to;
        self.rank += 1;
        Some(Step { digit: i, from, to })
    }
}
