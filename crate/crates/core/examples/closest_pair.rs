//! Closest pair of a random set by divide and conquer, checked against the
//! quadratic scan.
//!
//! cargo run --release --example closest_pair -- 5000 3

use std::time::Instant;

use slabcp::{closest_pair_bruteforce, closest_pair_dnc, random_points};

fn main() {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(5_000, |a| a.parse().expect("n"));
    let d: usize = args.next().map_or(2, |a| a.parse().expect("d"));
    let points = random_points(n, d, 1);
    let ids: Vec<usize> = (0..n).collect();

    let start = Instant::now();
    let fast = closest_pair_dnc(&ids, &points).expect("n >= 2");
    let t_fast = start.elapsed();
    println!("dnc:   ({}, {}) dist2 = {}  in {t_fast:?}", fast.i, fast.j, fast.dist2);

    let start = Instant::now();
    let slow = closest_pair_bruteforce(&ids, &points).expect("n >= 2");
    println!("scan:  ({}, {}) dist2 = {}  in {:?}", slow.i, slow.j, slow.dist2, start.elapsed());
    assert_eq!(fast, slow);
}
