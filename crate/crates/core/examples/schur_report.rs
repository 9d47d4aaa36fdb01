//! Schur-concave statistics along a chain of outputs, from fully bunched to
//! fully spread out. Every column moves monotonically.

use bosonperm::majorization::{schur_report, SchurReport};
use bosonperm::PhotonDistribution;

fn main() -> bosonperm::Result<()> {
    let chain = ["6", "5,1", "4,2", "3,3", "3,2,1", "2,2,2", "2,2,1,1", "1,1,1,1,1,1"];

    println!(
        "{:<14} {:>4} {:>6} {:>9} {:>8} {:>9} {:>9}  X_k",
        "partition", "α", "Q", "S_B", "H", "v", "ΔS"
    );
    for occupations in chain {
        let d: PhotonDistribution = occupations.parse().unwrap();
        let SchurReport {
            partition,
            x,
            alpha,
            q,
            v,
            h,
            s_b,
            delta_s,
        } = schur_report(&d)?;
        let x: Vec<String> = x.iter().map(ToString::to_string).collect();
        println!(
            "{:<14} {alpha:>4} {q:>6} {s_b:>9.4} {h:>8.4} {v:>9.5} {delta_s:>9.4}  {}",
            partition.to_string(),
            x.join(" ")
        );
    }
    Ok(())
}
