//! Structural runtime of the exact algorithm versus measured time, and the
//! six-photon multinomial/runtime chain as CSV.

use std::time::Instant;

use bosonperm::complexity::{figure4_csv, figure4_data, runtime_compare, runtime_exact};
use bosonperm::permanent::{scattering_permanent, Algorithm, Options};
use bosonperm::{random_unitary, PhotonDistribution};

fn d(s: &str) -> PhotonDistribution {
    s.parse().unwrap()
}

fn main() -> bosonperm::Result<()> {
    print!("{}", figure4_csv(&figure4_data()));

    println!("\n{:<22} {:<22} {:>10} {:>12}", "n", "m", "T_min", "seconds");
    let cases = [
        ("4,4,0,0,0,0,0,0", "2,2,2,2,0,0,0,0"),
        ("2,2,2,2,0,0,0,0", "2,2,2,2,0,0,0,0"),
        ("2,2,1,1,1,1,0,0", "2,1,1,1,1,1,1,0"),
        ("1,1,1,1,1,1,1,1", "1,1,1,1,1,1,1,1"),
    ];
    let opts = Options { threads: 1 };
    for (n, m) in cases {
        let (n, m) = (d(n), d(m));
        let u = random_unitary(n.modes(), 5);
        let t = runtime_exact(&n, &m)?;
        let start = Instant::now();
        for _ in 0..20 {
            std::hint::black_box(scattering_permanent(&u, &n, &m, Algorithm::RootsOfUnity, &opts)?);
        }
        println!(
            "{:<22} {:<22} {:>10} {:>12.3e}",
            n.to_string(),
            m.to_string(),
            t.t_min,
            start.elapsed().as_secs_f64() / 20.0
        );
    }

    let rel = runtime_compare(&d("1,1,1,1"), &d("2,1,1,0"), &d("2,2,0,0"), &d("3,1,0,0"))?;
    println!("\n(1,1,1,1)->(2,1,1) vs (2,2)->(3,1): {rel:?}");
    Ok(())
}
