//! Structural runtime model of the exact and randomized algorithms.
//!
//! `T_min(n, m) = min(∏(n_i+1), ∏(m_j+1)) · α_n · α_m` counts outer-sum terms
//! times the work per term with unit constant. It is not a wall-clock
//! prediction; it orders inputs by cost.

use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::Serialize;

use crate::distribution::PhotonDistribution;
use crate::error::{Error, Result};
use crate::majorization::{
    canonicalize, compare, elementary_symmetric, multinomial, Partition,
};
use crate::permanent::Orientation;

/// `T_min` and the quantities it is built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuntimeEstimate {
    pub t_min: BigUint,
    /// Which distribution supplied the smaller outer-sum length.
    pub orientation: Orientation,
    pub prod_n: BigUint,
    pub prod_m: BigUint,
    pub alpha_n: usize,
    pub alpha_m: usize,
}

impl RuntimeEstimate {
    fn assemble(prod_n: BigUint, prod_m: BigUint, alpha_n: usize, alpha_m: usize) -> Self {
        let (orientation, outer) = if prod_m < prod_n {
            (Orientation::Output, &prod_m)
        } else {
            (Orientation::Input, &prod_n)
        };
        Self {
            t_min: outer * alpha_n * alpha_m,
            orientation,
            prod_n,
            prod_m,
            alpha_n,
            alpha_m,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "t_min": self.t_min.to_string(),
            "orientation": match self.orientation {
                Orientation::Input => "n",
                Orientation::Output => "m",
            },
            "prod_n": self.prod_n.to_string(),
            "prod_m": self.prod_m.to_string(),
            "alpha_n": self.alpha_n,
            "alpha_m": self.alpha_m,
        })
    }
}

fn canonical_pair(n: &PhotonDistribution, m: &PhotonDistribution) -> Result<(Partition, Partition)> {
    let (a, b) = (canonicalize(n)?, canonicalize(m)?);
    if a.total() != b.total() {
        return Err(Error::WeightMismatch {
            left: a.total(),
            right: b.total(),
        });
    }
    Ok((a, b))
}

fn radix_product(p: &Partition) -> BigUint {
    p.parts()
        .iter()
        .fold(BigUint::from(1u32), |acc, &x| acc * (x + 1))
}

/// `min(∏(n_i+1), ∏(m_j+1)) · α_n · α_m`.
pub fn runtime_exact(n: &PhotonDistribution, m: &PhotonDistribution) -> Result<RuntimeEstimate> {
    let (a, b) = canonical_pair(n, m)?;
    Ok(RuntimeEstimate::assemble(
        radix_product(&a),
        radix_product(&b),
        a.alpha(),
        b.alpha(),
    ))
}

/// Same quantity with each product written as `Σ_k X_k`, the sum of the
/// elementary symmetric polynomials of the occupations.
pub fn runtime_symmetric_form(
    n: &PhotonDistribution,
    m: &PhotonDistribution,
) -> Result<RuntimeEstimate> {
    let (a, b) = canonical_pair(n, m)?;
    let total = |p: &Partition| elementary_symmetric(p.parts()).iter().sum::<BigUint>();
    Ok(RuntimeEstimate::assemble(total(&a), total(&b), a.alpha(), b.alpha()))
}

/// How `T_min(n1, m1)` relates to `T_min(n2, m2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RuntimeRelation {
    Equal,
    /// `T_min(n1, m1) ≥ T_min(n2, m2)`.
    LeftGE,
    /// `T_min(n2, m2) ≥ T_min(n1, m1)`.
    RightGE,
    NotDetermined,
}

/// `a ⪯ b` for partitions of equal weight.
fn weakly_below(a: &Partition, b: &Partition) -> bool {
    b.dominates(a)
}

fn chain(ps: &[&Partition]) -> bool {
    ps.windows(2).all(|w| weakly_below(w[0], w[1]))
}

/// Table patterns under which the first pair is at least as costly.
fn left_dominant(n1: &Partition, m1: &Partition, n2: &Partition, m2: &Partition) -> bool {
    chain(&[n1, m1, n2, m2]) || chain(&[n1, n2, m1, m2])
}

/// Classifies two `(n, m)` pairs, each ordered so that `n ⪯ m`, by the
/// majorization patterns that fix the order of their `T_min`.
///
/// Patterns that fix a relation are checked against direct evaluation;
/// a disagreement is reported as [`Error::TableContradiction`].
pub fn runtime_compare(
    n1: &PhotonDistribution,
    m1: &PhotonDistribution,
    n2: &PhotonDistribution,
    m2: &PhotonDistribution,
) -> Result<RuntimeRelation> {
    let (a1, b1) = canonical_pair(n1, m1)?;
    let (a2, b2) = canonical_pair(n2, m2)?;
    if a1.total() != a2.total() {
        return Err(Error::WeightMismatch {
            left: a1.total(),
            right: a2.total(),
        });
    }
    for (a, b) in [(&a1, &b1), (&a2, &b2)] {
        if !compare(a, b)?.left_weakly_majorized() {
            return Err(Error::NotComparablePair(a.to_string(), b.to_string()));
        }
    }

    let relation = if a1 == a2 && b1 == b2 {
        RuntimeRelation::Equal
    } else if left_dominant(&a1, &b1, &a2, &b2) {
        RuntimeRelation::LeftGE
    } else if left_dominant(&a2, &b2, &a1, &b1) {
        RuntimeRelation::RightGE
    } else {
        RuntimeRelation::NotDetermined
    };

    let t1 = runtime_exact(n1, m1)?.t_min;
    let t2 = runtime_exact(n2, m2)?.t_min;
    let claim = match relation {
        RuntimeRelation::Equal if t1 != t2 => Some("T1 = T2"),
        RuntimeRelation::LeftGE if t1 < t2 => Some("T1 >= T2"),
        RuntimeRelation::RightGE if t2 < t1 => Some("T2 >= T1"),
        _ => None,
    };
    if let Some(claim) = claim {
        return Err(Error::TableContradiction {
            claim,
            left: t1.to_string(),
            right: t2.to_string(),
        });
    }
    Ok(relation)
}

/// Sample-count-times-work of the randomized estimators at precision `ε`:
/// `N²/ε²` when both sides are unbunched, `N·α/ε²` when one is, and
/// `α_n·α_m/ε²` otherwise.
pub fn runtime_approx(n: &PhotonDistribution, m: &PhotonDistribution, eps: f64) -> Result<f64> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::InvalidParameter(format!("epsilon must be positive, got {eps}")));
    }
    let (a, b) = canonical_pair(n, m)?;
    let photons = a.total() as f64;
    let column = Partition::column(a.total());
    let work = match (a == column, b == column) {
        (true, true) => photons * photons,
        (true, false) => photons * b.alpha() as f64,
        (false, true) => photons * a.alpha() as f64,
        (false, false) => (a.alpha() * b.alpha()) as f64,
    };
    Ok(work / (eps * eps))
}

/// One point of the six-photon runtime/multinomial comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Figure4Row {
    pub index: usize,
    pub partition: Partition,
    pub q: BigUint,
    pub t_min_over_6: BigUint,
}

/// Chain of partitions of 6 from `(6)` down to `(1^6)`.
const FIGURE4_CHAIN: [&[usize]; 9] = [
    &[6],
    &[5, 1],
    &[4, 2],
    &[4, 1, 1],
    &[3, 2, 1],
    &[3, 1, 1, 1],
    &[2, 2, 1, 1],
    &[2, 1, 1, 1, 1],
    &[1, 1, 1, 1, 1, 1],
];

/// `Q(m)` and `T_min(1^6, m)/6` along a fixed chain of partitions of 6; both
/// increase as `m` becomes more spread out.
pub fn figure4_data() -> Vec<Figure4Row> {
    let n = PhotonDistribution::unbunched(6);
    FIGURE4_CHAIN
        .iter()
        .enumerate()
        .map(|(i, parts)| {
            let partition = Partition::new(parts.to_vec()).expect("nonempty");
            let m = partition.to_distribution(6);
            let t = runtime_exact(&n, &m).expect("equal weights").t_min;
            Figure4Row {
                index: i + 1,
                q: multinomial(partition.parts()),
                t_min_over_6: t / 6u32,
                partition,
            }
        })
        .collect()
}

/// CSV with header `index,partition,Q,Tmin_over_6`.
pub fn figure4_csv(rows: &[Figure4Row]) -> String {
    let mut out = String::from("index,partition,Q,Tmin_over_6\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            r.index,
            r.partition.plus_joined(),
            r.q,
            r.t_min_over_6
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::majorization::partitions;

    fn d(v: &[usize]) -> PhotonDistribution {
        PhotonDistribution::from(v)
    }

    fn t(n: &[usize], m: &[usize]) -> u64 {
        runtime_exact(&d(n), &d(m)).unwrap().t_min.try_into().unwrap()
    }

    #[test]
    fn point_values() {
        assert_eq!(t(&[1; 6], &[1; 6]), 2304);
        assert_eq!(t(&[1; 6], &[6, 0, 0, 0, 0, 0]), 42);
        assert_eq!(t(&[2, 0], &[2, 0]), 3);
        assert_eq!(t(&[1; 4], &[1; 4]), 256);
        for n in 2..=8 {
            assert_eq!(t(&vec![1; n], &vec![1; n]), (1u64 << n) * (n * n) as u64);
        }
        let r = runtime_exact(&d(&[1, 1, 1]), &d(&[3, 0, 0])).unwrap();
        assert_eq!(r.orientation, Orientation::Output);
        assert!(matches!(
            runtime_exact(&d(&[2]), &d(&[1, 2])),
            Err(Error::WeightMismatch { .. })
        ));
    }

    #[test]
    fn symmetric_form_identity() {
        for n in 1..=10 {
            let ps = partitions(n);
            for a in &ps {
                for b in &ps {
                    let (x, y) = (a.to_distribution(n), b.to_distribution(n));
                    assert_eq!(
                        runtime_exact(&x, &y).unwrap(),
                        runtime_symmetric_form(&x, &y).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn table_examples() {
        use RuntimeRelation::*;
        let rel = |a: &[usize], b: &[usize], c: &[usize], e: &[usize]| {
            runtime_compare(&d(a), &d(b), &d(c), &d(e))
        };
        assert_eq!(rel(&[1, 2, 0], &[3, 0, 0], &[2, 1], &[3, 0]).unwrap(), Equal);
        assert_eq!(rel(&[1, 1, 1, 1], &[2, 1, 1], &[2, 2], &[3, 1]).unwrap(), LeftGE);
        assert_eq!(rel(&[2, 2], &[3, 1], &[1, 1, 1, 1], &[2, 1, 1]).unwrap(), RightGE);
        // n1 ⪯ n2 ⪯ m2 ⪯ m1
        assert_eq!(rel(&[1, 1, 1, 1], &[4], &[2, 1, 1], &[3, 1]).unwrap(), NotDetermined);
        assert!(matches!(
            rel(&[4], &[1, 1, 1, 1], &[2, 2], &[3, 1]),
            Err(Error::NotComparablePair(..))
        ));
    }

    #[test]
    fn approximate_rows() {
        assert_eq!(runtime_approx(&d(&[1; 4]), &d(&[1; 4]), 0.5).unwrap(), 64.0);
        assert_eq!(runtime_approx(&d(&[1; 4]), &d(&[2, 2, 0, 0]), 1.0).unwrap(), 8.0);
        assert_eq!(runtime_approx(&d(&[2, 2]), &d(&[3, 1]), 1.0).unwrap(), 4.0);
    }

    #[test]
    fn figure4() {
        let rows = figure4_data();
        let q: Vec<u64> = rows.iter().map(|r| r.q.clone().try_into().unwrap()).collect();
        let t: Vec<u64> = rows
            .iter()
            .map(|r| r.t_min_over_6.clone().try_into().unwrap())
            .collect();
        assert_eq!(q, vec![1, 6, 15, 30, 60, 120, 180, 360, 720]);
        assert_eq!(t, vec![7, 24, 30, 60, 72, 128, 144, 240, 384]);
        let csv = figure4_csv(&rows);
        assert!(csv.starts_with("index,partition,Q,Tmin_over_6\n1,6,1,7\n2,5+1,6,24\n"));
        assert_eq!(csv.lines().count(), 10);
    }
}
