//! Shortest segment contained in a vertical slab.
//!
//! A segment with x-extent `[l, r]` lies inside `[a, b]` iff `l >= a` and
//! `r <= b`, a dominance condition on the point `(l, r)`. Segments are
//! sorted by `l`; an implicit binary tree over that order stores, per level,
//! each node's segments sorted by `r` together with running minima. A query
//! splits the suffix `l >= a` into `O(log k)` nodes and binary-searches
//! `r <= b` in each: `O(k log k)` space, `O(log^2 k)` time.

use crate::error::{Error, Result};
use crate::slab_enum::CandidateSegment;

#[derive(Clone, Debug)]
pub struct SegmentIndex {
    segs: Vec<CandidateSegment>,
    lefts: Vec<f64>,
    size: usize,
    levels: Vec<Level>,
}

#[derive(Clone, Debug, Default)]
struct Level {
    /// Right endpoints, sorted within each block of this level.
    rights: Vec<f64>,
    /// Index into `segs` of the best segment in the block prefix ending here.
    best: Vec<u32>,
}

pub fn build_segment_index(segs: Vec<CandidateSegment>) -> SegmentIndex {
    SegmentIndex::new(segs)
}

impl SegmentIndex {
    pub fn new(mut segs: Vec<CandidateSegment>) -> Self {
        segs.sort_by(|s, t| {
            s.left_x
                .total_cmp(&t.left_x)
                .then(s.right_x.total_cmp(&t.right_x))
                .then(s.pair.cmp(&t.pair))
        });
        let k = segs.len();
        let lefts: Vec<f64> = segs.iter().map(|s| s.left_x).collect();
        let size = k.next_power_of_two().max(1);

        let mut levels = Vec::new();
        let mut order: Vec<u32> = (0..k as u32).collect();
        let mut block = 1;
        loop {
            levels.push(Self::level_from(&segs, &order, block));
            if block >= size {
                break;
            }
            // Merge adjacent blocks by right endpoint.
            let mut next = Vec::with_capacity(k);
            for chunk in order.chunks(2 * block) {
                let cut = block.min(chunk.len());
                let (l, r) = chunk.split_at(cut);
                let (mut i, mut j) = (0, 0);
                while i < l.len() && j < r.len() {
                    if segs[l[i] as usize].right_x <= segs[r[j] as usize].right_x {
                        next.push(l[i]);
                        i += 1;
                    } else {
                        next.push(r[j]);
                        j += 1;
                    }
                }
                next.extend_from_slice(&l[i..]);
                next.extend_from_slice(&r[j..]);
            }
            order = next;
            block *= 2;
        }

        SegmentIndex {
            segs,
            lefts,
            size,
            levels,
        }
    }

    fn level_from(segs: &[CandidateSegment], order: &[u32], block: usize) -> Level {
        let mut rights = Vec::with_capacity(order.len());
        let mut best = Vec::with_capacity(order.len());
        for chunk in order.chunks(block) {
            let mut cur = chunk[0];
            for &s in chunk {
                if segs[s as usize].pair < segs[cur as usize].pair {
                    cur = s;
                }
                rights.push(segs[s as usize].right_x);
                best.push(cur);
            }
        }
        Level { rights, best }
    }

    pub fn len(&self) -> usize {
        self.segs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segs.is_empty()
    }

    pub fn segments(&self) -> &[CandidateSegment] {
        &self.segs
    }

    /// Stored entries over all levels (the space measure).
    pub fn entry_count(&self) -> usize {
        self.levels.iter().map(|l| l.rights.len()).sum()
    }

    /// Minimum-length segment with `a <= left_x` and `right_x <= b`.
    pub fn query(&self, a: f64, b: f64) -> Result<Option<&CandidateSegment>> {
        if !(a < b) {
            return Err(Error::InvalidSlab { a, b });
        }
        Ok(self.query_unchecked(a, b))
    }

    pub(crate) fn query_unchecked(&self, a: f64, b: f64) -> Option<&CandidateSegment> {
        let k = self.segs.len();
        let start = self.lefts.partition_point(|&l| l < a);
        if start >= k {
            return None;
        }
        let mut best: Option<u32> = None;
        let mut consider = |level: usize, node: usize| {
            let width = 1usize << level;
            let lo = node * width;
            if lo >= k {
                return;
            }
            let hi = (lo + width).min(k);
            let lvl = &self.levels[level];
            let cnt = lvl.rights[lo..hi].partition_point(|&r| r <= b);
            if cnt == 0 {
                return;
            }
            let cand = lvl.best[lo + cnt - 1];
            match best {
                Some(cur) if self.segs[cur as usize].pair <= self.segs[cand as usize].pair => {}
                _ => best = Some(cand),
            }
        };

        // Canonical decomposition of [start, size) in the implicit tree.
        let (mut l, mut r) = (start + self.size, 2 * self.size);
        let mut level = 0;
        while l < r {
            if l & 1 == 1 {
                consider(level, l - (self.size >> level));
                l += 1;
            }
            if r & 1 == 1 {
                r -= 1;
                consider(level, r - (self.size >> level));
            }
            l >>= 1;
            r >>= 1;
            level += 1;
        }
        best.map(|s| &self.segs[s as usize])
    }
}

/// Free-function form of [`SegmentIndex::query`].
pub fn query_shortest_in_slab(
    idx: &SegmentIndex,
    a: f64,
    b: f64,
) -> Result<Option<&CandidateSegment>> {
    idx.query(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{Dist2, PairResult};
    use rand::Rng;

    fn seg(i: usize, j: usize, l: f64, r: f64, len2: f64) -> CandidateSegment {
        CandidateSegment {
            pair: PairResult::new(i, j, Dist2::Float(len2)),
            left_x: l,
            right_x: r,
            length2: Dist2::Float(len2),
        }
    }

    fn linear_scan(segs: &[CandidateSegment], a: f64, b: f64) -> Option<CandidateSegment> {
        segs.iter()
            .filter(|s| a <= s.left_x && s.right_x <= b)
            .min_by(|s, t| s.pair.cmp(&t.pair))
            .copied()
    }

    #[test]
    fn empty_index_answers_none() {
        let idx = build_segment_index(Vec::new());
        assert!(idx.is_empty());
        assert_eq!(idx.query(0.0, 1.0).unwrap(), None);
        assert_eq!(idx.query(-1e300, 1e300).unwrap(), None);
    }

    #[test]
    fn containment_is_two_sided() {
        let idx = build_segment_index(vec![seg(0, 1, 2.0, 5.0, 9.0)]);
        assert_eq!(idx.len(), 1);
        assert_eq!(idx.query(0.0, 10.0).unwrap().unwrap().pair.key(), (0, 1));
        assert_eq!(idx.query(3.0, 10.0).unwrap(), None);
        assert_eq!(idx.query(0.0, 4.0).unwrap(), None);
        assert!(idx.query(2.0, 5.0).unwrap().is_some());
        assert!(idx.query(5.0, 5.0).is_err());
    }

    #[test]
    fn ties_resolve_by_pair_ids() {
        let idx = build_segment_index(vec![seg(4, 5, 1.0, 2.0, 1.0), seg(2, 9, 1.5, 1.7, 1.0)]);
        assert_eq!(idx.query(0.0, 3.0).unwrap().unwrap().pair.key(), (2, 9));
    }

    #[test]
    fn agrees_with_linear_scan() {
        let mut rng = crate::random::rng(99);
        for k in [1usize, 2, 3, 7, 64, 1000, 10_000] {
            let segs: Vec<CandidateSegment> = (0..k)
                .map(|t| {
                    let l = rng.gen_range(0.0..100.0);
                    let r = l + rng.gen_range(0.0..30.0);
                    // Coarse lengths to exercise ties.
                    seg(2 * t, 2 * t + 1, l, r, rng.gen_range(0..50) as f64)
                })
                .collect();
            let idx = build_segment_index(segs.clone());
            for _ in 0..1000 {
                let a = rng.gen_range(-5.0..105.0);
                let b = a + rng.gen_range(0.001..60.0);
                let got = idx.query(a, b).unwrap().copied();
                assert_eq!(got, linear_scan(&segs, a, b), "k={k} a={a} b={b}");
            }
            let levels = (k as f64).log2().ceil() as usize + 1;
            assert_eq!(idx.entry_count(), k * levels);
        }
    }
}
