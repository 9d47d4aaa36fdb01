//! Every permanent algorithm on the same inputs, with the length of each
//! outer sum.
//!
//! ```bash
//! cargo run --example permanents
//! ```

use bosonperm::permanent::{
    per_glynn, per_kan_series, per_naive, per_repeated_cols, per_roots_of_unity, per_ryser,
};
use bosonperm::{expand_submatrix, random_unitary, ComplexMatrix, PhotonDistribution};

fn main() -> bosonperm::Result<()> {
    // The all-ones matrix has permanent N!.
    let ones = ComplexMatrix::ones(6);
    println!("per(J_6) = {} (expected 720)", per_ryser(&ones)?.value.re);

    let u = random_unitary(4, 7);
    let n: PhotonDistribution = "3,1,0,0".parse().unwrap();
    let m: PhotonDistribution = "1,1,1,1".parse().unwrap();
    let expanded = expand_submatrix(&u, &n, &m)?;
    println!("\n[U]_(n,m) for n={n}, m={m} is {0}x{0}", expanded.dim());

    let results = [
        per_naive(&expanded)?,
        per_ryser(&expanded)?,
        per_glynn(&expanded)?,
        per_roots_of_unity(&u, &n, &m)?,
        per_kan_series(&u, &n, &m)?,
        // columns of U^T repeated by n, i.e. rows of U repeated by n
        per_repeated_cols(&u.transpose(), &n)?,
    ];
    println!("{:<16} {:>28} {:>8}", "algorithm", "value", "terms");
    for r in results {
        println!(
            "{:<16} {:>13.10}{:+.10}i {:>8}",
            r.algorithm.name(),
            r.value.re,
            r.value.im,
            r.term_count
        );
    }
    Ok(())
}
