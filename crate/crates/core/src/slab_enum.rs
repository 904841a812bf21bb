//! The set `A(S, m)` of distinct closest pairs over all slabs bounded by two
//! partition boundaries.
//!
//! [`enumerate_bruteforce`] evaluates every slab directly. [`enumerate_dnc`]
//! splits the bucket range at its median boundary `H`, collects the pairs
//! that may cross `H` from a well-separated pair decomposition of the
//! range ([`crossing_candidates`]), and recurses on both halves down to
//! single buckets. Every slab's closest pair is then either the closest
//! pair of one bucket or a collected candidate lying inside the slab, so
//! each slab is answered with one [`SegmentIndex`] query.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::closest_pair::closest_pair_dnc;
use crate::error::{Error, Result};
use crate::geom::{Dist2, Mode, PairResult, PointSet};
use crate::indexes::{build_segment_index, SegmentIndex};
use crate::partition::{build_slab_partition, SlabPartition};
use crate::wspd::{build_split_tree_on, build_wspd, Wspd};

/// Separation ratio used for crossing-candidate extraction.
pub const CANDIDATE_SEPARATION: f64 = 4.0;

/// Per-slab tables are kept only up to this many buckets.
pub const PER_SLAB_LIMIT: usize = 1024;

/// A pair together with the x-extent of its segment.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CandidateSegment {
    pub pair: PairResult,
    pub left_x: f64,
    pub right_x: f64,
    pub length2: Dist2,
}

impl CandidateSegment {
    pub fn from_pair(points: &PointSet, pair: PairResult) -> Self {
        let (xi, xj) = (points.x(pair.i), points.x(pair.j));
        CandidateSegment {
            pair,
            left_x: xi.min(xj),
            right_x: xi.max(xj),
            length2: pair.dist2,
        }
    }

    /// Endpoints strictly on opposite sides of `x = h`.
    pub fn crosses(&self, h: f64) -> bool {
        self.left_x < h && h < self.right_x
    }
}

/// Closest pair of every slab `(i, j)`, `0 <= i < j <= m`.
#[derive(Clone, Debug, PartialEq)]
pub struct PerSlabTable {
    m: usize,
    cells: Vec<Option<PairResult>>,
}

impl PerSlabTable {
    fn new(m: usize) -> Self {
        PerSlabTable {
            m,
            cells: vec![None; m * (m + 1) / 2],
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Option<PairResult> {
        self.cells[self.offset(i, j)]
    }

    fn set(&mut self, i: usize, j: usize, v: Option<PairResult>) {
        let k = self.offset(i, j);
        self.cells[k] = v;
    }

    fn offset(&self, i: usize, j: usize) -> usize {
        assert!(i < j && j <= self.m, "slab ({i}, {j}) out of range");
        // Row r holds the m - r cells j = r+1..=m.
        i * self.m - i * i.saturating_sub(1) / 2 + (j - i - 1)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), Option<PairResult>)> + '_ {
        (0..self.m).flat_map(move |i| (i + 1..=self.m).map(move |j| ((i, j), self.get(i, j))))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EnumerationResult {
    /// Distinct pairs, sorted by `(i, j)`.
    pub pairs: Vec<PairResult>,
    pub per_slab: Option<PerSlabTable>,
    pub m: usize,
    /// Candidate segments examined (divide and conquer only).
    pub candidates: usize,
}

impl EnumerationResult {
    pub fn count(&self) -> usize {
        self.pairs.len()
    }

    pub fn keys(&self) -> Vec<(usize, usize)> {
        self.pairs.iter().map(PairResult::key).collect()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        let key = (i.min(j), i.max(j));
        self.pairs.binary_search_by(|p| p.key().cmp(&key)).is_ok()
    }

    pub fn segments(&self, points: &PointSet) -> Vec<CandidateSegment> {
        self.pairs
            .iter()
            .map(|&p| CandidateSegment::from_pair(points, p))
            .collect()
    }

    fn from_cells(m: usize, mut cells: Vec<Option<PairResult>>, table: Option<PerSlabTable>, candidates: usize) -> Self {
        let mut by_key = BTreeMap::new();
        for p in cells.drain(..).flatten() {
            by_key.insert(p.key(), p);
        }
        EnumerationResult {
            pairs: by_key.into_values().collect(),
            per_slab: table,
            m,
            candidates,
        }
    }
}

/// Evaluates every slab by extending it one point at a time and comparing
/// the new point with all points already inside.
pub fn enumerate_bruteforce(points: &PointSet, partition: &SlabPartition) -> EnumerationResult {
    let m = partition.m();
    let mut table = (m <= PER_SLAB_LIMIT).then(|| PerSlabTable::new(m));
    let mut found = Vec::new();
    let mut inside = Vec::with_capacity(points.len());
    for i in 0..m {
        inside.clear();
        let mut best: Option<PairResult> = None;
        for j in i + 1..=m {
            for &p in partition.bucket(j - 1) {
                for &q in &inside {
                    PairResult::min_into(&mut best, points.pair(p, q));
                }
                inside.push(p);
            }
            if let Some(t) = table.as_mut() {
                t.set(i, j, best);
            }
            found.push(best);
        }
    }
    EnumerationResult::from_cells(m, found, table, 0)
}

/// Up to two candidate segments per WSPD pair that cross `x = h`.
///
/// For a pair `{A, B}` these are (rightmost of `A` left of `h`, leftmost of
/// `B` right of `h`) and (leftmost of `A` right of `h`, rightmost of `B` left
/// of `h`). Every closest pair of a slab of the decomposed set whose segment
/// crosses `h` is among them, provided `s > 2`.
pub fn crossing_candidates(points: &PointSet, h: f64, w: &Wspd) -> Result<Vec<CandidateSegment>> {
    if !(w.s > 2.0) {
        return Err(Error::InvalidParameter(format!(
            "crossing candidates need separation ratio s > 2, got {}",
            w.s
        )));
    }
    let tree = &w.tree;
    // Per node: rightmost point left of h, leftmost point right of h.
    let mut left_of = vec![None::<usize>; tree.nodes.len()];
    let mut right_of = vec![None::<usize>; tree.nodes.len()];
    let pick = |a: Option<usize>, b: Option<usize>, rightmost: bool| match (a, b) {
        (Some(p), Some(q)) => {
            let take_p = if rightmost {
                points.x(p) > points.x(q)
            } else {
                points.x(p) < points.x(q)
            };
            Some(if take_p { p } else { q })
        }
        (p, q) => p.or(q),
    };
    for v in (0..tree.nodes.len()).rev() {
        match tree.nodes[v].children {
            None => {
                let id = tree.ids(v)[0];
                let x = points.x(id);
                if x < h {
                    left_of[v] = Some(id);
                } else if x > h {
                    right_of[v] = Some(id);
                }
            }
            Some((l, r)) => {
                left_of[v] = pick(left_of[l], left_of[r], true);
                right_of[v] = pick(right_of[l], right_of[r], false);
            }
        }
    }
    let mut out = Vec::new();
    for pair in &w.pairs {
        if let (Some(p), Some(q)) = (left_of[pair.a], right_of[pair.b]) {
            out.push(CandidateSegment::from_pair(points, points.pair(p, q)));
        }
        if let (Some(p), Some(q)) = (right_of[pair.a], left_of[pair.b]) {
            out.push(CandidateSegment::from_pair(points, points.pair(p, q)));
        }
    }
    Ok(out)
}

/// Median boundary of the bucket range `lo..hi` (`hi - lo >= 2`).
pub fn median_split(lo: usize, hi: usize) -> usize {
    lo + (hi - lo).div_ceil(2)
}

/// Divide-and-conquer enumeration; equal as a pair set to
/// [`enumerate_bruteforce`].
pub fn enumerate_dnc(points: &PointSet, partition: &SlabPartition) -> Result<EnumerationResult> {
    let m = partition.m();
    let mut segs: BTreeMap<(usize, usize), CandidateSegment> = BTreeMap::new();
    let mut add = |seg: CandidateSegment| {
        segs.entry(seg.pair.key()).or_insert(seg);
    };

    for k in 0..m {
        if let Some(p) = closest_pair_dnc(partition.bucket(k), points) {
            add(CandidateSegment::from_pair(points, p));
        }
    }
    let mut candidates = 0;
    let mut stack = vec![(0usize, m)];
    while let Some((lo, hi)) = stack.pop() {
        if hi - lo < 2 {
            continue;
        }
        let split = median_split(lo, hi);
        let h = partition.boundary(split);
        let ids = partition.range_ids(lo, hi);
        let w = build_wspd(build_split_tree_on(points, ids)?, CANDIDATE_SEPARATION)?;
        let cands = crossing_candidates(points, h, &w)?;
        candidates += cands.len();
        cands.into_iter().for_each(&mut add);
        stack.push((lo, split));
        stack.push((split, hi));
    }

    let index = build_segment_index(segs.into_values().collect());
    let mut table = (m <= PER_SLAB_LIMIT).then(|| PerSlabTable::new(m));
    let mut found = Vec::with_capacity(m * (m + 1) / 2);
    for i in 0..m {
        for j in i + 1..=m {
            let best = slab_answer(&index, partition, i, j);
            if let Some(t) = table.as_mut() {
                t.set(i, j, best);
            }
            found.push(best);
        }
    }
    Ok(EnumerationResult::from_cells(m, found, table, candidates))
}

fn slab_answer(index: &SegmentIndex, partition: &SlabPartition, i: usize, j: usize) -> Option<PairResult> {
    index
        .query_unchecked(partition.boundary(i), partition.boundary(j))
        .map(|s| s.pair)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ForestReport {
    pub pos_acyclic: bool,
    pub neg_acyclic: bool,
    /// Members of `A(S, n)` whose segment crosses the line.
    pub crossing: usize,
    /// Crossing members with zero slope (in neither graph).
    pub horizontal: usize,
}

/// For a planar set, checks that the members of `A(S, n)` crossing the
/// vertical line `x = ell` form a forest when restricted to positive slopes,
/// and likewise for negative slopes.
pub fn verify_crossing_forest(points: &PointSet, ell: f64) -> Result<ForestReport> {
    if points.dim() != 2 {
        return Err(Error::InvalidParameter(format!(
            "forest check needs d = 2, got d = {}",
            points.dim()
        )));
    }
    let n = points.len();
    let mut report = ForestReport {
        pos_acyclic: true,
        neg_acyclic: true,
        crossing: 0,
        horizontal: 0,
    };
    if n < 2 {
        return Ok(report);
    }
    let all = enumerate_bruteforce(points, &build_slab_partition(points, n)?);
    let mut pos = DisjointSets::new(n);
    let mut neg = DisjointSets::new(n);
    for seg in all.segments(points) {
        if !seg.crosses(ell) {
            continue;
        }
        report.crossing += 1;
        let (p, q) = (seg.pair.i, seg.pair.j);
        let dy = (points.coord(q, 1) - points.coord(p, 1)) * (points.x(q) - points.x(p)).signum();
        if dy > 0.0 {
            report.pos_acyclic &= pos.union(p, q);
        } else if dy < 0.0 {
            report.neg_acyclic &= neg.union(p, q);
        } else {
            report.horizontal += 1;
        }
    }
    Ok(report)
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    /// False if `a` and `b` were already connected (the edge closes a cycle).
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algo {
    Brute,
    Dnc,
}

impl Algo {
    pub fn as_str(self) -> &'static str {
        match self {
            Algo::Brute => "brute",
            Algo::Dnc => "dnc",
        }
    }
}

impl std::str::FromStr for Algo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(Algo::Brute),
            "dnc" => Ok(Algo::Dnc),
            other => Err(Error::Parse(format!("unknown algorithm `{other}`"))),
        }
    }
}

pub fn enumerate(points: &PointSet, partition: &SlabPartition, algo: Algo) -> Result<EnumerationResult> {
    match algo {
        Algo::Brute => Ok(enumerate_bruteforce(points, partition)),
        Algo::Dnc => enumerate_dnc(points, partition),
    }
}

/// JSON summary of one enumeration run.
#[derive(Clone, Debug, Serialize)]
pub struct EnumReport {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub mode: Mode,
    pub count: usize,
    pub seconds: f64,
    pub algo: Algo,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<PairResult>>,
}

/// Runs an enumeration and times it. Pairs are included when
/// `include_pairs` is set.
pub fn enum_report(points: &PointSet, m: usize, algo: Algo, include_pairs: bool) -> Result<EnumReport> {
    let start = Instant::now();
    let partition = build_slab_partition(points, m)?;
    let result = enumerate(points, &partition, algo)?;
    let seconds = start.elapsed().as_secs_f64();
    Ok(EnumReport {
        n: points.len(),
        m,
        d: points.dim(),
        mode: points.mode(),
        count: result.count(),
        seconds,
        algo,
        pairs: include_pairs.then_some(result.pairs),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closest_pair::closest_pair_bruteforce;
    use crate::random::{random_grid_points, random_points};
    use crate::wspd::build_split_tree;

    #[test]
    fn per_slab_offsets_are_a_bijection() {
        for m in 1..12 {
            let t = PerSlabTable::new(m);
            let mut seen = vec![false; t.cells.len()];
            for i in 0..m {
                for j in i + 1..=m {
                    let k = t.offset(i, j);
                    assert!(!seen[k]);
                    seen[k] = true;
                }
            }
            assert!(seen.iter().all(|&b| b));
        }
    }

    #[test]
    fn one_bucket_gives_the_global_pair() {
        let s = random_points(40, 2, 1);
        let p = build_slab_partition(&s, 1).unwrap();
        let all: Vec<usize> = (0..40).collect();
        let brute = enumerate_bruteforce(&s, &p);
        assert_eq!(brute.count(), 1);
        assert_eq!(brute.pairs[0], closest_pair_bruteforce(&all, &s).unwrap());
        assert_eq!(enumerate_dnc(&s, &p).unwrap().pairs, brute.pairs);
    }

    #[test]
    fn per_slab_entries_lie_inside_their_slab() {
        let s = random_points(50, 3, 2);
        let p = build_slab_partition(&s, 7).unwrap();
        let r = enumerate_bruteforce(&s, &p);
        for ((i, j), cell) in r.per_slab.as_ref().unwrap().iter() {
            let pair = cell.unwrap();
            let slab = p.slab(i, j);
            assert!(slab.contains(s.x(pair.i)) && slab.contains(s.x(pair.j)));
            assert_eq!(Some(pair), closest_pair_bruteforce(&s.ids_in_slab(slab), &s));
        }
    }

    #[test]
    fn dnc_matches_bruteforce() {
        for d in [2, 3] {
            for seed in 0..50 {
                let s = random_points(64, d, seed);
                let p = build_slab_partition(&s, 8).unwrap();
                let brute = enumerate_bruteforce(&s, &p);
                let dnc = enumerate_dnc(&s, &p).unwrap();
                assert_eq!(dnc.pairs, brute.pairs, "d={d} seed={seed}");
                assert_eq!(dnc.per_slab, brute.per_slab);
            }
        }
    }

    #[test]
    fn dnc_matches_bruteforce_with_ties_and_odd_m() {
        for seed in 0..30 {
            let s = random_grid_points(45, 2, 6, seed);
            for m in [3, 5, 7, 45] {
                let p = build_slab_partition(&s, m).unwrap();
                assert_eq!(
                    enumerate_dnc(&s, &p).unwrap().per_slab,
                    enumerate_bruteforce(&s, &p).per_slab,
                    "seed={seed} m={m}"
                );
            }
        }
    }

    #[test]
    fn median_split_rounds_up() {
        assert_eq!(median_split(0, 8), 4);
        assert_eq!(median_split(0, 3), 2);
        assert_eq!(median_split(2, 7), 5);
    }

    #[test]
    fn straddling_pair_is_the_only_candidate() {
        let s = PointSet::from_ints(2, &[vec![0, 0], vec![4, 1]]).unwrap();
        let w = build_wspd(build_split_tree(&s).unwrap(), 4.0).unwrap();
        let c = crossing_candidates(&s, 2.0, &w).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].pair.key(), (0, 1));
        assert_eq!((c[0].left_x, c[0].right_x), (0.0, 4.0));
        assert!(crossing_candidates(&s, 10.0, &w).unwrap().is_empty());
    }

    #[test]
    fn candidates_need_ratio_above_two() {
        let s = random_points(8, 2, 0);
        let w = build_wspd(build_split_tree(&s).unwrap(), 2.0).unwrap();
        assert!(crossing_candidates(&s, 0.5, &w).is_err());
    }

    #[test]
    fn candidates_cover_crossing_members() {
        for d in [2, 3] {
            for seed in 0..20 {
                let s = random_points(64, d, seed);
                let order = s.ids_by_x();
                let h = (s.x(order[31]) + s.x(order[32])) / 2.0;
                let all = enumerate_bruteforce(&s, &build_slab_partition(&s, 64).unwrap());
                let w = build_wspd(build_split_tree(&s).unwrap(), 4.0).unwrap();
                let cands = crossing_candidates(&s, h, &w).unwrap();
                assert!(cands.len() <= 2 * w.len());
                for seg in all.segments(&s).iter().filter(|g| g.crosses(h)) {
                    assert!(cands.iter().any(|c| c.pair.key() == seg.pair.key()));
                }
            }
        }
    }

    #[test]
    fn forest_edge_cases() {
        let s = PointSet::from_ints(2, &[vec![0, 0], vec![2, 1]]).unwrap();
        let r = verify_crossing_forest(&s, 1.0).unwrap();
        assert!(r.pos_acyclic && r.neg_acyclic);
        assert_eq!(r.crossing, 1);
        let r = verify_crossing_forest(&s, 5.0).unwrap();
        assert!(r.pos_acyclic && r.neg_acyclic);
        assert_eq!(r.crossing, 0);
        assert!(verify_crossing_forest(&random_points(5, 3, 0), 0.5).is_err());
    }

    #[test]
    fn forest_on_random_sets() {
        for seed in 0..20 {
            let s = random_points(48, 2, seed);
            let order = s.ids_by_x();
            let ell = (s.x(order[23]) + s.x(order[24])) / 2.0;
            let r = verify_crossing_forest(&s, ell).unwrap();
            assert!(r.pos_acyclic && r.neg_acyclic, "seed={seed}");
        }
    }

    #[test]
    fn report_serializes() {
        let s = PointSet::from_ints(2, &[vec![0, 0], vec![3, 4], vec![10, 0]]).unwrap();
        let r = enum_report(&s, 1, Algo::Dnc, true).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["count"], 1);
        assert_eq!(v["algo"], "dnc");
        assert_eq!(v["mode"], "exact");
        assert_eq!(v["pairs"], serde_json::json!([[0, 1, 25]]));
        let r = enum_report(&s, 1, Algo::Brute, false).unwrap();
        assert!(serde_json::to_value(&r).unwrap().get("pairs").is_none());
    }
}
