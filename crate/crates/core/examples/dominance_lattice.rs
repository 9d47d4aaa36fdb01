//! The dominance order on partitions of N: covers, a longest chain,
//! cover-step distances, and a Graphviz rendering.
//!
//! ```bash
//! cargo run --example dominance_lattice -- 6 > lattice.dot
//! ```
//! The DOT text goes to stdout, the summary to stderr.

use bosonperm::majorization::{build_lattice, compare, majorization_difference, Partition};

fn main() -> bosonperm::Result<()> {
    let n: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("N must be a positive integer"))
        .unwrap_or(6);
    let lattice = build_lattice(n)?;
    eprintln!(
        "N = {n}: {} partitions, {} cover relations",
        lattice.nodes().len(),
        lattice.edges().len()
    );

    let chain = lattice.longest_chain();
    let steps: Vec<String> = chain.iter().map(ToString::to_string).collect();
    eprintln!("longest chain ({} steps): {}", chain.len() - 1, steps.join(" < "));

    let a = Partition::new(vec![4, 1])?;
    let b = Partition::new(vec![2, 1, 1, 1])?;
    eprintln!(
        "{a} vs {b}: {:?}, {} cover steps apart",
        compare(&a, &b)?,
        majorization_difference(&a, &b)?
    );
    let c = Partition::new(vec![2, 2, 2])?;
    let d = Partition::new(vec![3, 1, 1, 1])?;
    eprintln!("{c} vs {d}: {:?}", compare(&c, &d)?);

    print!("{}", lattice.to_dot());
    Ok(())
}
