//! Growth of |A(S, m)| in both regimes and the empirical query-time
//! exponent.

use slabcp::experiment::{enum_row, loglog_slope, time_queries, ExperimentRow, QueryTiming};
use slabcp::lowerbound::gen_hypercube;
use slabcp::{random_points, Algo};

fn main() {
    println!("{}", ExperimentRow::CSV_HEADER);
    let points = random_points(4096, 2, 5);
    for m in [8, 16, 32, 64, 128, 512, 4096] {
        println!("{}", enum_row(&points, m, "random", Algo::Dnc).unwrap().to_csv());
    }
    for k in 4..=10 {
        let c = gen_hypercube(k).unwrap().0;
        println!("{}", enum_row(&c.points, c.points.len(), "hypercube", Algo::Dnc).unwrap().to_csv());
    }

    println!("\n{}", QueryTiming::CSV_HEADER);
    let ns: Vec<usize> = (10..=15).map(|e| 1 << e).collect();
    let rows: Vec<QueryTiming> = ns.iter().map(|&n| time_queries(n, 2, 1000, 7).unwrap()).collect();
    for r in &rows {
        println!("{}", r.to_csv());
    }
    let xs: Vec<f64> = rows.iter().map(|r| r.n as f64).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.mean_seconds).collect();
    println!("fitted exponent: {:.3}", loglog_slope(&xs, &ys));
}
