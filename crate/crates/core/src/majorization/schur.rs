use num_bigint::BigUint;
use serde_json::json;

use super::partition::{canonicalize, Partition};
use crate::distribution::PhotonDistribution;
use crate::error::Result;

/// `log2(n!)` by direct summation; exact zero for `n ≤ 1`.
pub fn log2_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).log2()).sum()
}

/// `log2 v` with `v = ∏ √(n_i! / n_i^{n_i})`.
pub fn log2_v(parts: &[usize]) -> f64 {
    parts
        .iter()
        .filter(|&&p| p > 1)
        .map(|&p| 0.5 * (log2_factorial(p) - p as f64 * (p as f64).log2()))
        .sum()
}

/// Shannon entropy in bits of the occupation fractions `n_i / N`.
pub fn shannon_entropy(parts: &[usize]) -> f64 {
    let total: usize = parts.iter().sum();
    let total = total as f64;
    let signed: f64 = parts
        .iter()
        .filter(|&&p| p > 0)
        .map(|&p| {
            let q = p as f64 / total;
            q * q.log2()
        })
        .sum();
    // subtraction rather than negation keeps a single mode at +0
    0.0 - signed
}

/// `log2` of the multinomial `N! / ∏ n_i!`.
pub fn boltzmann_entropy(parts: &[usize]) -> f64 {
    let total: usize = parts.iter().sum();
    log2_factorial(total) - parts.iter().map(|&p| log2_factorial(p)).sum::<f64>()
}

/// `S_B − N·H`, which equals `2 log2 (v_(N) / v_n)` up to rounding.
pub fn entropy_gap(parts: &[usize]) -> f64 {
    let total: usize = parts.iter().sum();
    boltzmann_entropy(parts) - total as f64 * shannon_entropy(parts)
}

/// Elementary symmetric polynomials `X_0, …, X_α` of the parts.
pub fn elementary_symmetric(parts: &[usize]) -> Vec<BigUint> {
    // coefficients of ∏ (1 + n_i t)
    let mut coeffs = vec![BigUint::from(1u32)];
    for &p in parts {
        coeffs.push(BigUint::from(0u32));
        for k in (1..coeffs.len()).rev() {
            let (lower, upper) = coeffs.split_at_mut(k);
            upper[0] += &lower[k - 1] * p;
        }
    }
    coeffs
}

fn big_factorial(n: usize) -> BigUint {
    (2..=n).fold(BigUint::from(1u32), |acc, k| acc * k)
}

/// `N! / ∏ n_i!`, the number of distinct orderings of the photons.
pub fn multinomial(parts: &[usize]) -> BigUint {
    let total: usize = parts.iter().sum();
    parts
        .iter()
        .fold(big_factorial(total), |acc, &p| acc / big_factorial(p))
}

/// Schur-concave and Schur-convex statistics of a distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct SchurReport {
    pub partition: Partition,
    /// Elementary symmetric polynomials `X_0 = 1, …, X_α = ∏ n_i`.
    pub x: Vec<BigUint>,
    pub alpha: usize,
    /// Multinomial coefficient `N! / ∏ n_i!`.
    pub q: BigUint,
    pub v: f64,
    /// Shannon entropy of `n / N` in bits.
    pub h: f64,
    /// Boltzmann entropy `log2 Q`.
    pub s_b: f64,
    pub delta_s: f64,
}

impl SchurReport {
    pub fn of_partition(partition: &Partition) -> Self {
        let parts = partition.parts();
        Self {
            partition: partition.clone(),
            x: elementary_symmetric(parts),
            alpha: partition.alpha(),
            q: multinomial(parts),
            v: log2_v(parts).exp2(),
            h: shannon_entropy(parts),
            s_b: boltzmann_entropy(parts),
            delta_s: entropy_gap(parts),
        }
    }

    /// Sum of all `X_k`, i.e. `∏ (n_i + 1)`.
    pub fn x_total(&self) -> BigUint {
        self.x.iter().sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "partition": self.partition,
            "X": self.x.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "alpha": self.alpha,
            "Q": self.q.to_string(),
            "v": self.v,
            "H": self.h,
            "S_B": self.s_b,
            "delta_S": self.delta_s,
        })
    }
}

/// Statistics of the canonical form of `d`.
pub fn schur_report(d: &PhotonDistribution) -> Result<SchurReport> {
    Ok(SchurReport::of_partition(&canonicalize(d)?))
}
