//! Closest-pair queries for arbitrary vertical slabs with the linear-space
//! index, compared with filtering and scanning.
//!
//! cargo run --release --example slab_queries -- 16384

use std::time::Instant;

use slabcp::query::default_m;
use slabcp::{preprocess, query_bruteforce, random_points, random_slabs, Algo};

fn main() {
    let n: usize = std::env::args().nth(1).map_or(16_384, |a| a.parse().expect("n"));
    let points = random_points(n, 2, 21);
    let m = default_m(n);
    let start = Instant::now();
    let index = preprocess(&points, m, Algo::Dnc).unwrap();
    println!(
        "n={n} m={m}: {} stored segments, {} entries, built in {:?}",
        index.segment_count(),
        index.entry_count(),
        start.elapsed()
    );

    let slabs = random_slabs(200, 0.0, 1.0, 22);
    let start = Instant::now();
    let mut max_boxes = 0;
    let mut max_report = 0;
    let answers: Vec<_> = slabs
        .iter()
        .map(|&(a, b)| {
            let (p, trace) = index.query_slab(a, b).unwrap();
            max_boxes = max_boxes.max(trace.boxes);
            max_report = max_report.max(trace.max_box_report());
            p
        })
        .collect();
    let t_index = start.elapsed();
    let start = Instant::now();
    for (&(a, b), got) in slabs.iter().zip(&answers) {
        assert_eq!(*got, query_bruteforce(&points, a, b).unwrap());
    }
    println!(
        "200 queries: index {t_index:?}, scan {:?}; at most {max_boxes} boxes per query, {max_report} points per box",
        start.elapsed()
    );

    let (a, b) = slabs[0];
    let (p, trace) = index.query_slab(a, b).unwrap();
    println!("[{a:.4}, {b:.4}] -> {p:?}");
    println!("{}", serde_json::to_string(&trace).unwrap());
}
