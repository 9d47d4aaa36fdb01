//! Randomized estimates converging to the exact permanent.
//!
//! The plain estimator averages Glynn terms over random sign vectors; the
//! generalized one averages over scaled roots of unity on the occupied
//! modes only. Results are reproducible for a fixed seed regardless of the
//! thread count.

use bosonperm::estimator::{
    generalized_estimate_with, gurvits_estimate_with, samples_for_epsilon, Sampling,
};
use bosonperm::permanent::{amplitude, Algorithm};
use bosonperm::{random_unitary, PhotonDistribution};

fn main() -> bosonperm::Result<()> {
    let u = random_unitary(5, 99);
    let n: PhotonDistribution = "2,2,1,0,0".parse().unwrap();
    let m: PhotonDistribution = "1,1,1,1,1".parse().unwrap();
    let exact = amplitude(&u, &n, &m, Algorithm::RootsOfUnity)?;
    println!("exact amplitude {:.6}{:+.6}i", exact.value.re, exact.value.im);

    println!("\n{:>8} {:>9} {:>24} {:>10} {:>10}", "ε", "samples", "estimate", "|error|", "bound");
    for eps in [0.2, 0.1, 0.05, 0.02] {
        let samples = samples_for_epsilon(eps)?;
        let est = generalized_estimate_with(&u, &n, &m, Sampling::Random { samples }, 1, 4)?;
        let amp = est.amplitude();
        println!(
            "{eps:>8} {samples:>9} {:>11.6}{:+.6}i {:>10.2e} {:>10.2e}",
            amp.re,
            amp.im,
            (amp - exact.value).norm(),
            est.bound * est.scale
        );
    }

    let expanded = bosonperm::expand_submatrix(&u, &n, &m)?;
    let exhaustive = gurvits_estimate_with(&expanded, Sampling::Exhaustive, 0, 1)?;
    println!(
        "\nexhaustive Glynn average over {} sign vectors: {:.6}{:+.6}i (permanent)",
        exhaustive.samples, exhaustive.estimate.re, exhaustive.estimate.im
    );
    Ok(())
}
