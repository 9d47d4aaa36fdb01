#![allow(dead_code)]

use bosonperm::{Complex64, PhotonDistribution};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Uniformly random placement of `photons` photons into `modes` modes.
pub fn random_distribution(rng: &mut ChaCha8Rng, photons: usize, modes: usize) -> PhotonDistribution {
    let mut occ = vec![0; modes];
    for _ in 0..photons {
        occ[rng.random_range(0..modes)] += 1;
    }
    PhotonDistribution::new(occ)
}

pub fn rel_err(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

/// Relative error, falling back to absolute error near zero.
pub fn mixed_err(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}
