mod common;

use bosonperm::complexity::runtime_exact;
use bosonperm::estimator::{error_bound, error_bound_entropy};
use bosonperm::majorization::{compare, compare_distributions, majorization_difference, Partition};
use bosonperm::permanent::{per_glynn, per_kan_series, per_naive, per_roots_of_unity, per_ryser};
use bosonperm::{expand_submatrix, random_unitary, Complex64, ComplexMatrix, PhotonDistribution};
use proptest::prelude::*;

fn entry() -> impl Strategy<Value = Complex64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn square(max_dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    (1..=max_dim).prop_flat_map(|dim| {
        prop::collection::vec(entry(), dim * dim)
            .prop_map(move |data| ComplexMatrix::new(dim, data).unwrap())
    })
}

/// Two occupation vectors on `modes` modes with the same photon number.
fn scattering_pair(modes: usize, max_photons: usize) -> impl Strategy<Value = (PhotonDistribution, PhotonDistribution)> {
    (1..=max_photons).prop_flat_map(move |photons| {
        let place = prop::collection::vec(0..modes, photons);
        (place.clone(), place).prop_map(move |(a, b)| {
            let fill = |slots: Vec<usize>| {
                let mut occ = vec![0; modes];
                for s in slots {
                    occ[s] += 1;
                }
                PhotonDistribution::new(occ)
            };
            (fill(a), fill(b))
        })
    })
}

fn partition_pair(max_photons: usize) -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
    (1..=max_photons).prop_flat_map(|photons| {
        let spread = prop::collection::vec(0..photons, photons);
        (spread.clone(), spread).prop_map(move |(a, b)| {
            let fill = |slots: Vec<usize>| {
                let mut occ = vec![0; photons];
                for s in slots {
                    occ[s] += 1;
                }
                occ
            };
            (fill(a), fill(b))
        })
    })
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * b.norm().max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn permanent_is_linear_in_each_row(a in square(6), row in 0usize..6, c in entry()) {
        let row = row % a.dim();
        let base = per_ryser(&a).unwrap().value;
        let scaled = per_ryser(&a.with_scaled_row(row, c)).unwrap().value;
        prop_assert!(close(scaled, base * c, 1e-10));
    }

    #[test]
    fn permanent_is_transpose_invariant(a in square(6)) {
        let p = per_glynn(&a).unwrap().value;
        prop_assert!(close(per_glynn(&a.transpose()).unwrap().value, p, 1e-10));
        prop_assert!(close(per_naive(&a).unwrap().value, p, 1e-10));
    }

    #[test]
    fn generalized_formulas_swap_sides_under_transpose(
        seed in 0u64..1000,
        (n, m) in scattering_pair(4, 6),
    ) {
        let u = random_unitary(4, seed);
        let direct = per_roots_of_unity(&u, &n, &m).unwrap().value;
        let swapped = per_roots_of_unity(&u.transpose(), &m, &n).unwrap().value;
        let kan = per_kan_series(&u, &n, &m).unwrap().value;
        prop_assert!(close(swapped, direct, 1e-10));
        prop_assert!(close(kan, direct, 1e-10));
    }

    #[test]
    fn expansion_has_photon_number_dimension((n, m) in scattering_pair(5, 8)) {
        let u = random_unitary(5, 1);
        let a = expand_submatrix(&u, &n, &m).unwrap();
        prop_assert_eq!(a.dim(), n.total());
        let rows = bosonperm::distribution::repeat_indices(&n);
        let cols = bosonperm::distribution::repeat_indices(&m);
        for (r, &i) in rows.iter().enumerate() {
            for (c, &j) in cols.iter().enumerate() {
                prop_assert_eq!(a.get(r, c), u.get(i, j));
            }
        }
    }

    #[test]
    fn comparison_ignores_order_and_padding(
        (a, b) in partition_pair(12),
        pad in 0usize..3,
        rot in 0usize..12,
    ) {
        let base = compare_distributions(&PhotonDistribution::new(a.clone()), &PhotonDistribution::new(b.clone())).unwrap();
        let mut shuffled = a.clone();
        let len = shuffled.len();
        shuffled.rotate_left(rot % len);
        shuffled.extend(std::iter::repeat_n(0, pad));
        let again = compare_distributions(&PhotonDistribution::new(shuffled), &PhotonDistribution::new(b.clone())).unwrap();
        prop_assert_eq!(base, again);
        let reversed = compare_distributions(&PhotonDistribution::new(b), &PhotonDistribution::new(a)).unwrap();
        prop_assert_eq!(reversed, base.reversed());
    }

    #[test]
    fn difference_is_a_metric_on_chains((a, b) in partition_pair(10)) {
        let (pa, pb) = (Partition::new(a).unwrap(), Partition::new(b).unwrap());
        match majorization_difference(&pa, &pb) {
            Ok(d) => {
                prop_assert_eq!(d == 0, pa == pb);
                prop_assert_eq!(majorization_difference(&pb, &pa).unwrap(), d);
            }
            Err(_) => prop_assert!(compare(&pa, &pb).unwrap().as_partial_ordering().is_none()),
        }
    }

    #[test]
    fn bounds_are_symmetric_and_at_most_epsilon((a, b) in partition_pair(20), eps in 0.01..2.0f64) {
        let (n, m) = (PhotonDistribution::new(a), PhotonDistribution::new(b));
        let e = error_bound(&n, &m, eps).unwrap();
        prop_assert!(e <= eps && e > 0.0);
        prop_assert_eq!(e, error_bound(&m, &n, eps).unwrap());
        let entropy = error_bound_entropy(&n, &m, eps).unwrap();
        prop_assert!((entropy - e).abs() <= 1e-9 * e);
    }

    #[test]
    fn runtime_is_symmetric((a, b) in partition_pair(16)) {
        let (n, m) = (PhotonDistribution::new(a), PhotonDistribution::new(b));
        prop_assert_eq!(runtime_exact(&n, &m).unwrap().t_min, runtime_exact(&m, &n).unwrap().t_min);
    }

    #[test]
    fn matrix_json_round_trips_bit_exactly(a in square(5)) {
        let back = ComplexMatrix::from_json(&a.to_json()).unwrap();
        for (x, y) in a.entries().iter().zip(back.entries()) {
            prop_assert_eq!(x.re.to_bits(), y.re.to_bits());
            prop_assert_eq!(x.im.to_bits(), y.im.to_bits());
        }
    }

    #[test]
    fn haar_unitaries_are_unitary(dim in 1usize..12, seed in any::<u64>()) {
        prop_assert!(random_unitary(dim, seed).unitarity_defect() < 1e-12);
    }
}
