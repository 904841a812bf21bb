//! Growth-curve experiments: counts of `A(S, m)` against the regime bound,
//! and query timings with a log-log slope fit.

use std::time::Instant;

use serde::Serialize;

use crate::error::Result;
use crate::geom::PointSet;
use crate::partition::build_slab_partition;
use crate::query::{default_m, preprocess};
use crate::random::{random_points, random_slabs};
use crate::slab_enum::{enumerate, Algo};

/// `C(m+1, 2)` when `m <= sqrt(n)`, otherwise `n (1 + log2(m / sqrt(n)))`.
pub fn regime_bound(n: usize, m: usize) -> f64 {
    if m * m <= n {
        (m * (m + 1) / 2) as f64
    } else {
        let n = n as f64;
        n * (1.0 + (m as f64 / n.sqrt()).log2())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentRow {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub construction: String,
    pub algo: Algo,
    pub count: usize,
    pub seconds: f64,
    pub bound_ratio: f64,
}

impl ExperimentRow {
    pub const CSV_HEADER: &'static str = "n,m,d,construction,algo,count,seconds,bound_ratio";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{:.6},{:.6}",
            self.n,
            self.m,
            self.d,
            self.construction,
            self.algo.as_str(),
            self.count,
            self.seconds,
            self.bound_ratio
        )
    }
}

/// Enumerates `A(S, m)` with `m` rank-balanced buckets and reports it
/// against [`regime_bound`].
pub fn enum_row(points: &PointSet, m: usize, construction: &str, algo: Algo) -> Result<ExperimentRow> {
    let start = Instant::now();
    let partition = build_slab_partition(points, m)?;
    let count = enumerate(points, &partition, algo)?.count();
    let seconds = start.elapsed().as_secs_f64();
    let n = points.len();
    Ok(ExperimentRow {
        n,
        m,
        d: points.dim(),
        construction: construction.to_string(),
        algo,
        count,
        seconds,
        bound_ratio: count as f64 / regime_bound(n, m),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QueryTiming {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub queries: usize,
    pub mean_seconds: f64,
    pub max_boxes: usize,
    pub max_box_report: usize,
    pub segments: usize,
    pub entries: usize,
}

impl QueryTiming {
    pub const CSV_HEADER: &'static str = "n,m,d,queries,mean_seconds,max_boxes,max_box_report,segments,entries";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{:.9},{},{},{},{}",
            self.n,
            self.m,
            self.d,
            self.queries,
            self.mean_seconds,
            self.max_boxes,
            self.max_box_report,
            self.segments,
            self.entries
        )
    }
}

/// Times `queries` random slab queries on a random set of `n` points with
/// `m = ceil(sqrt(n))`.
pub fn time_queries(n: usize, d: usize, queries: usize, seed: u64) -> Result<QueryTiming> {
    let points = random_points(n, d, seed);
    let m = default_m(n);
    let idx = preprocess(&points, m, Algo::Dnc)?;
    let slabs = random_slabs(queries, 0.0, 1.0, seed ^ 0x51ab);
    let mut max_boxes = 0;
    let mut max_box_report = 0;
    let start = Instant::now();
    for &(a, b) in &slabs {
        let (_, trace) = idx.query_slab(a, b)?;
        max_boxes = max_boxes.max(trace.boxes);
        max_box_report = max_box_report.max(trace.max_box_report());
    }
    let elapsed = start.elapsed().as_secs_f64();
    Ok(QueryTiming {
        n,
        m,
        d,
        queries,
        mean_seconds: elapsed / queries.max(1) as f64,
        max_boxes,
        max_box_report,
        segments: idx.segment_count(),
        entries: idx.entry_count(),
    })
}

/// Least-squares slope of `log y` against `log x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    assert!(xs.len() >= 2, "need two points for a slope");
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let k = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / k;
    let my = ly.iter().sum::<f64>() / k;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}
