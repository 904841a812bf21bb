//! Well-separated pair decomposition of a random set.
//!
//! cargo run --release --example wspd -- 2000 4

use slabcp::random_points;
use slabcp::wspd::{build_split_tree, build_wspd, verify_separation};

fn main() {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(2000, |a| a.parse().expect("n"));
    let s: f64 = args.next().map_or(4.0, |a| a.parse().expect("s"));
    for d in [1, 2, 3] {
        let points = random_points(n, d, 3);
        let tree = build_split_tree(&points).unwrap();
        let w = build_wspd(tree, s).unwrap();
        println!(
            "d={d} n={n} s={s}: {} pairs ({:.3} per s^d n), separated: {}, each pair covered once: {}, distance ratio holds: {}",
            w.len(),
            w.size_constant(d),
            w.verify_ball_separation(),
            w.verify_unique_coverage(n),
            verify_separation(&w, &points)
        );
    }
}
