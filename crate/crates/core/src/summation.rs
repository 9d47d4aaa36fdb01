//! Compensated summation for long alternating complex sums.

use num_complex::Complex64;

/// Neumaier compensated accumulator over complex values, applied to the real
/// and imaginary parts independently.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    re: (f64, f64),
    im: (f64, f64),
}

#[inline]
fn neumaier_add(acc: &mut (f64, f64), v: f64) {
    let (sum, c) = acc;
    let t = *sum + v;
    if sum.abs() >= v.abs() {
        *c += (*sum - t) + v;
    } else {
        *c += (v - t) + *sum;
    }
    *sum = t;
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        neumaier_add(&mut self.re, z.re);
        neumaier_add(&mut self.im, z.im);
    }

    /// Folds another accumulator in, keeping both compensation terms.
    pub fn merge(&mut self, other: &CompensatedSum) {
        neumaier_add(&mut self.re, other.re.0);
        neumaier_add(&mut self.re, other.re.1);
        neumaier_add(&mut self.im, other.im.0);
        neumaier_add(&mut self.im, other.im.1);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.0 + self.re.1, self.im.0 + self.im.1)
    }
}

impl FromIterator<Complex64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut acc = Self::new();
        for z in iter {
            acc.add(z);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_small_terms_lost_by_naive_sum() {
        let terms = [1e16, 1.0, -1e16, 1.0];
        let naive: f64 = terms.iter().sum();
        let acc: CompensatedSum = terms.iter().map(|&x| Complex64::new(x, -x)).collect();
        assert_ne!(naive, 2.0);
        assert_eq!(acc.value(), Complex64::new(2.0, -2.0));
    }

    #[test]
    fn merge_matches_single_pass() {
        let xs: Vec<Complex64> = (0..1000)
            .map(|k| Complex64::new((k as f64).sin() * 1e8, (k as f64).cos()))
            .collect();
        let whole: CompensatedSum = xs.iter().copied().collect();
        let mut left: CompensatedSum = xs[..400].iter().copied().collect();
        let right: CompensatedSum = xs[400..].iter().copied().collect();
        left.merge(&right);
        assert!((whole.value() - left.value()).norm() <= 1e-12 * whole.value().norm());
    }
}
