//! Additive error bounds for estimating an amplitude, in three equivalent
//! or approximate forms.

use bosonperm::estimator::{error_bound, error_bound_entropy, error_bound_stirling};
use bosonperm::PhotonDistribution;

fn d(s: &str) -> PhotonDistribution {
    s.parse().unwrap()
}

fn main() -> bosonperm::Result<()> {
    let eps = 0.1;
    let pairs = [
        ("1,1", "2,0"),
        ("1,1,1,1", "4,0,0,0"),
        ("3,1", "1,3"),
        ("2,2", "3,1"),
        ("1,1,1,1,1,1,1,1", "8,0,0,0,0,0,0,0"),
        ("64,64", "96,32"),
        ("40,40,40", "60,30,30"),
    ];
    println!("ε = {eps}");
    println!("{:<18} {:<18} {:>12} {:>12} {:>12}", "n", "m", "exact", "entropy", "stirling");
    for (n, m) in pairs {
        let (n, m) = (d(n), d(m));
        let stirling = match error_bound_stirling(&n, &m, eps) {
            Ok(b) => format!("{b:.6e}"),
            Err(_) => "—".into(),
        };
        println!(
            "{:<18} {:<18} {:>12.6e} {:>12.6e} {:>12}",
            n.to_string(),
            m.to_string(),
            error_bound(&n, &m, eps)?,
            error_bound_entropy(&n, &m, eps)?,
            stirling
        );
    }
    Ok(())
}
