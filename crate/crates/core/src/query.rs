//! Linear-space index answering closest-pair queries for arbitrary vertical
//! slabs.
//!
//! Preprocessing partitions the points into `m` buckets and stores the
//! segments of `A(S, m)` in a [`SegmentIndex`] plus a [`BoxReporter`] over
//! all points. A query `[a, b]` with boundary indices `lo` (first boundary
//! `>= a`) and `hi` (last boundary `<= b`) splits the slab into
//!
//! * region A: points of bucket `lo - 1` with `x >= a`,
//! * region B: buckets `lo..hi`, fully inside the slab,
//! * region C: points of bucket `hi` with `x <= b`.
//!
//! `delta1` is the closest pair of `A u C` and `delta2` the shortest stored
//! segment inside `[a_lo, a_hi]`, which is the closest pair of B. Pairs
//! between A and B lie in a box to the right of their A endpoint of side
//! `delta = min(delta1, delta2)`, and symmetrically for C. Each such box
//! holds a bounded number of points, see [`sparsity_bound`].

use std::time::Instant;

use serde::Serialize;

use crate::closest_pair::{closest_pair_bruteforce, closest_pair_dnc};
use crate::error::{Error, Result};
use crate::geom::{Dist2, PairResult, PointSet, Slab};
use crate::indexes::{build_box_reporter, build_segment_index, BoxReporter, SegmentIndex};
use crate::partition::{build_slab_partition, SlabPartition};
use crate::slab_enum::{enumerate, Algo};

/// `2^(d-1) (1 + ceil(sqrt d))^d`: the most points a box of width `delta`
/// and height `2 delta` in the other axes can hold when they are pairwise
/// at least `delta` apart.
pub fn sparsity_bound(d: usize) -> usize {
    assert!(d >= 1, "dimension must be positive");
    let mut c = 1usize;
    while c * c < d {
        c += 1;
    }
    (1usize << (d - 1)) * (1 + c).pow(d as u32)
}

/// `ceil(sqrt(n))`, at least 1.
pub fn default_m(n: usize) -> usize {
    let mut m = 1usize;
    while m * m < n {
        m += 1;
    }
    m
}

#[derive(Clone, Debug)]
pub struct SlabCPIndex {
    points: PointSet,
    partition: SlabPartition,
    seg_index: SegmentIndex,
    reporter: BoxReporter,
    preprocess_seconds: f64,
}

/// What one query did.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct QueryTrace {
    /// First boundary index `>= a` and last boundary index `<= b`.
    pub lo: usize,
    pub hi: usize,
    /// No partition slab lies inside the query, so the points were scanned
    /// directly.
    pub direct: bool,
    pub delta1: Option<Dist2>,
    pub delta2: Option<Dist2>,
    pub delta: Option<Dist2>,
    pub region_a: usize,
    pub region_b: usize,
    pub region_c: usize,
    pub boxes: usize,
    pub box_reports: Vec<usize>,
}

impl QueryTrace {
    pub fn max_box_report(&self) -> usize {
        self.box_reports.iter().copied().max().unwrap_or(0)
    }
}

/// Builds the index with `m` buckets.
pub fn preprocess(points: &PointSet, m: usize, algo: Algo) -> Result<SlabCPIndex> {
    SlabCPIndex::new(points, m, algo)
}

impl SlabCPIndex {
    pub fn new(points: &PointSet, m: usize, algo: Algo) -> Result<Self> {
        let start = Instant::now();
        let partition = build_slab_partition(points, m)?;
        let pairs = enumerate(points, &partition, algo)?;
        let seg_index = build_segment_index(pairs.segments(points));
        let reporter = build_box_reporter(points);
        Ok(SlabCPIndex {
            points: points.clone(),
            partition,
            seg_index,
            reporter,
            preprocess_seconds: start.elapsed().as_secs_f64(),
        })
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn partition(&self) -> &SlabPartition {
        &self.partition
    }

    pub fn segment_index(&self) -> &SegmentIndex {
        &self.seg_index
    }

    /// Number of stored segments, `|A(S, m)|`.
    pub fn segment_count(&self) -> usize {
        self.seg_index.len()
    }

    /// Stored entries over all components: segment index levels, kd-tree
    /// nodes, point ids and boundaries.
    pub fn entry_count(&self) -> usize {
        self.seg_index.entry_count() + self.reporter.node_count() + self.points.len() + self.partition.m() + 1
    }

    pub fn preprocess_seconds(&self) -> f64 {
        self.preprocess_seconds
    }

    /// Closest pair among points with `a <= x <= b`.
    pub fn query(&self, a: f64, b: f64) -> Result<Option<PairResult>> {
        self.query_slab(a, b).map(|(p, _)| p)
    }

    /// Closest pair among points with `a <= x <= b`, with a trace of the
    /// work done.
    pub fn query_slab(&self, a: f64, b: f64) -> Result<(Option<PairResult>, QueryTrace)> {
        if !(a < b) {
            return Err(Error::InvalidSlab { a, b });
        }
        let part = &self.partition;
        let m = part.m();
        let bounds = part.boundaries();
        let ca = a.max(bounds[0]);
        let cb = b.min(bounds[m]);
        let mut trace = QueryTrace::default();
        if ca > cb {
            trace.direct = true;
            return Ok((None, trace));
        }
        let lo = bounds.partition_point(|&x| x < ca);
        let hi = bounds.partition_point(|&x| x <= cb) - 1;
        trace.lo = lo;
        trace.hi = hi;
        let pts = &self.points;
        let inside = |id: &usize| a <= pts.x(*id) && pts.x(*id) <= b;

        if hi <= lo {
            trace.direct = true;
            let first = lo.saturating_sub(1);
            let last = (hi + 1).min(m);
            let ids: Vec<usize> = part.range_ids(first, last.max(first)).iter().copied().filter(inside).collect();
            trace.region_a = ids.len();
            return Ok((closest_pair_dnc(&ids, pts), trace));
        }

        let region_a: &[usize] = if lo > 0 {
            let bucket = part.bucket(lo - 1);
            &bucket[bucket.partition_point(|&id| pts.x(id) < a)..]
        } else {
            &[]
        };
        let region_c: &[usize] = if hi < m {
            let bucket = part.bucket(hi);
            &bucket[..bucket.partition_point(|&id| pts.x(id) <= b)]
        } else {
            &[]
        };
        trace.region_a = region_a.len();
        trace.region_b = part.range_ids(lo, hi).len();
        trace.region_c = region_c.len();

        let outer: Vec<usize> = region_a.iter().chain(region_c).copied().collect();
        let mut best = closest_pair_dnc(&outer, pts);
        trace.delta1 = best.map(|p| p.dist2);
        let inner = self.seg_index.query_unchecked(bounds[lo], bounds[hi]).map(|s| s.pair);
        trace.delta2 = inner.map(|p| p.dist2);
        if let Some(p) = inner {
            PairResult::min_into(&mut best, p);
        }
        trace.delta = best.map(|p| p.dist2);
        let delta = best.map_or(f64::INFINITY, |p| p.dist2.sqrt_upper());

        let d = pts.dim();
        let mut lo_box = vec![0.0; d];
        let mut hi_box = vec![0.0; d];
        let mut scan = |p: usize, x_lo: f64, x_hi: f64, best: &mut Option<PairResult>, trace: &mut QueryTrace| {
            let c = pts.coords(p);
            lo_box[0] = x_lo;
            hi_box[0] = x_hi;
            for t in 1..d {
                lo_box[t] = c[t] - delta;
                hi_box[t] = c[t] + delta;
            }
            let mut reported = 0;
            self.reporter.for_each_in_box(&lo_box, &hi_box, |q| {
                reported += 1;
                if q != p && inside(&q) {
                    PairResult::min_into(best, pts.pair(p, q));
                }
            });
            trace.boxes += 1;
            trace.box_reports.push(reported);
        };
        for &p in region_a {
            let x = pts.x(p);
            scan(p, x, (x + delta).min(bounds[hi]), &mut best, &mut trace);
        }
        for &p in region_c {
            let x = pts.x(p);
            scan(p, (x - delta).max(bounds[lo]), x, &mut best, &mut trace);
        }
        Ok((best, trace))
    }
}

/// Reference answer: brute force over the points inside the slab.
pub fn query_bruteforce(points: &PointSet, a: f64, b: f64) -> Result<Option<PairResult>> {
    let slab = Slab::new(a, b)?;
    Ok(closest_pair_bruteforce(&points.ids_in_slab(slab), points))
}
