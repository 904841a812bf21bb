//! Size of A(S, m) for random sets across bucket counts, with both
//! enumeration algorithms.
//!
//! cargo run --release --example enumerate -- 4096

use std::time::Instant;

use slabcp::experiment::regime_bound;
use slabcp::{build_slab_partition, enumerate_bruteforce, enumerate_dnc, random_points};

fn main() {
    let n: usize = std::env::args().nth(1).map_or(4096, |a| a.parse().expect("n"));
    let points = random_points(n, 2, 11);
    println!("{:>6} {:>8} {:>10} {:>10} {:>8}", "m", "count", "dnc", "brute", "ratio");
    let mut m = 2;
    while m <= n {
        let partition = build_slab_partition(&points, m).unwrap();
        let start = Instant::now();
        let dnc = enumerate_dnc(&points, &partition).unwrap();
        let t_dnc = start.elapsed();
        let t_brute = (m <= 256).then(|| {
            let start = Instant::now();
            let brute = enumerate_bruteforce(&points, &partition);
            assert_eq!(brute.keys(), dnc.keys());
            start.elapsed()
        });
        println!(
            "{m:>6} {:>8} {:>10.3?} {:>10} {:>8.3}",
            dnc.count(),
            t_dnc,
            t_brute.map_or("-".to_string(), |t| format!("{t:.3?}")),
            dnc.count() as f64 / regime_bound(n, m)
        );
        m *= 4;
    }
}
