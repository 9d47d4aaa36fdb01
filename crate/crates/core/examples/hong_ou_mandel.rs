//! Two photons on a balanced beam splitter never leave in different ports.

use bosonperm::permanent::{amplitude, output_distribution, Algorithm};
use bosonperm::{random_unitary, ComplexMatrix, PhotonDistribution};

fn main() -> bosonperm::Result<()> {
    let splitter = ComplexMatrix::hadamard();
    let input = PhotonDistribution::from(vec![1, 1]);

    println!("balanced beam splitter, input {input}:");
    for (out, p) in output_distribution(&splitter, &input)? {
        println!("  P{out} = {p:.6}");
    }

    // a bunched input on a random three-mode network
    let u = random_unitary(3, 2024);
    let input = PhotonDistribution::from(vec![2, 1, 0]);
    let dist = output_distribution(&u, &input)?;
    let total: f64 = dist.iter().map(|(_, p)| p).sum();
    let (likeliest, p) = dist
        .iter()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("nonempty");
    println!("\nrandom 3-mode network, input {input}: {} outputs", dist.len());
    println!("  most likely {likeliest} with P = {p:.6}; total = {total:.15}");

    let amp = amplitude(&u, &input, likeliest, Algorithm::KanSeries)?;
    println!(
        "  amplitude {:.6}{:+.6}i from {} terms",
        amp.value.re, amp.value.im, amp.permanent.term_count
    );
    Ok(())
}
