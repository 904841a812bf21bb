//! Fair-split tree and well-separated pair decomposition.
//!
//! Each node of the [`SplitTree`] carries the tight bounding box of its
//! points; internal nodes split that box through the middle of its longest
//! side. A [`WspdPair`] is emitted for two nodes once the circumscribed
//! balls of their boxes, enlarged to a common radius `rho`, have centers at
//! least `(s + 2) * rho` apart.

use rand::Rng;

use crate::error::{Error, Result};
use crate::geom::PointSet;
use crate::random;

#[derive(Clone, Debug)]
pub struct SplitTreeNode {
    /// Range into [`SplitTree::order`].
    pub start: usize,
    pub end: usize,
    pub children: Option<(usize, usize)>,
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl SplitTreeNode {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_none()
    }

    pub fn center(&self) -> Vec<f64> {
        self.lo.iter().zip(&self.hi).map(|(a, b)| a + (b - a) / 2.0).collect()
    }

    /// Half the box diagonal.
    pub fn radius(&self) -> f64 {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(a, b)| (b - a) * (b - a))
            .sum::<f64>()
            .sqrt()
            / 2.0
    }

    pub fn longest_side(&self) -> f64 {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(a, b)| b - a)
            .fold(0.0, f64::max)
    }
}

/// Fair-split tree over a subset of a point set. Node 0 is the root and
/// every parent precedes its children.
#[derive(Clone, Debug)]
pub struct SplitTree {
    pub nodes: Vec<SplitTreeNode>,
    pub order: Vec<usize>,
}

impl SplitTree {
    pub fn root(&self) -> &SplitTreeNode {
        &self.nodes[0]
    }

    pub fn node(&self, v: usize) -> &SplitTreeNode {
        &self.nodes[v]
    }

    /// Point ids below node `v`.
    pub fn ids(&self, v: usize) -> &[usize] {
        let n = &self.nodes[v];
        &self.order[n.start..n.end]
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.is_leaf()).count()
    }
}

pub fn build_split_tree(points: &PointSet) -> Result<SplitTree> {
    let ids: Vec<usize> = (0..points.len()).collect();
    build_split_tree_on(points, &ids)
}

/// Fair-split tree over `ids`. Leaves hold exactly one point.
pub fn build_split_tree_on(points: &PointSet, ids: &[usize]) -> Result<SplitTree> {
    if ids.is_empty() {
        return Err(Error::InvalidParameter("split tree over an empty set".into()));
    }
    let d = points.dim();
    let mut order = ids.to_vec();
    let mut nodes = Vec::with_capacity(2 * ids.len());
    let mut stack = vec![(0usize, 0usize, ids.len())];
    nodes.push(empty_node(d));

    while let Some((v, start, end)) = stack.pop() {
        let (lo, hi) = tight_box(points, &order[start..end]);
        nodes[v].start = start;
        nodes[v].end = end;
        nodes[v].lo = lo;
        nodes[v].hi = hi;
        if end - start == 1 {
            continue;
        }
        let axis = (0..d)
            .max_by(|&a, &b| {
                let sa = nodes[v].hi[a] - nodes[v].lo[a];
                let sb = nodes[v].hi[b] - nodes[v].lo[b];
                sa.total_cmp(&sb).then(b.cmp(&a))
            })
            .unwrap();
        let cut = nodes[v].lo[axis] + (nodes[v].hi[axis] - nodes[v].lo[axis]) / 2.0;
        let slice = &mut order[start..end];
        let mut mid = partition_in_place(slice, |&id| points.coord(id, axis) < cut);
        if mid == 0 || mid == slice.len() {
            // Coincident points or no representable cut: split by rank.
            slice.sort_by(|&a, &b| {
                points.coord(a, axis).total_cmp(&points.coord(b, axis)).then(a.cmp(&b))
            });
            mid = slice.len() / 2;
        }
        let left = nodes.len();
        nodes.push(empty_node(d));
        nodes.push(empty_node(d));
        nodes[v].children = Some((left, left + 1));
        stack.push((left + 1, start + mid, end));
        stack.push((left, start, start + mid));
    }
    Ok(SplitTree { nodes, order })
}

fn empty_node(d: usize) -> SplitTreeNode {
    SplitTreeNode {
        start: 0,
        end: 0,
        children: None,
        lo: vec![0.0; d],
        hi: vec![0.0; d],
    }
}

fn tight_box(points: &PointSet, ids: &[usize]) -> (Vec<f64>, Vec<f64>) {
    let mut lo = points.coords(ids[0]).to_vec();
    let mut hi = lo.clone();
    for &id in &ids[1..] {
        for (axis, &c) in points.coords(id).iter().enumerate() {
            lo[axis] = lo[axis].min(c);
            hi[axis] = hi[axis].max(c);
        }
    }
    (lo, hi)
}

fn partition_in_place<F: Fn(&usize) -> bool>(slice: &mut [usize], pred: F) -> usize {
    let mut k = 0;
    for i in 0..slice.len() {
        if pred(&slice[i]) {
            slice.swap(i, k);
            k += 1;
        }
    }
    k
}

#[derive(Clone, Debug)]
pub struct WspdPair {
    pub a: usize,
    pub b: usize,
    /// Common ball radius.
    pub radius: f64,
    pub center_a: Vec<f64>,
    pub center_b: Vec<f64>,
}

impl WspdPair {
    /// Pair of two tree nodes with balls derived from their boxes. No
    /// separation is checked here.
    pub fn new(tree: &SplitTree, a: usize, b: usize) -> Self {
        let (na, nb) = (tree.node(a), tree.node(b));
        WspdPair {
            a,
            b,
            radius: na.radius().max(nb.radius()),
            center_a: na.center(),
            center_b: nb.center(),
        }
    }

    pub fn center_distance(&self) -> f64 {
        self.center_a
            .iter()
            .zip(&self.center_b)
            .map(|(p, q)| (p - q) * (p - q))
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_separated(&self, s: f64) -> bool {
        self.center_distance() >= (s + 2.0) * self.radius
    }
}

#[derive(Clone, Debug)]
pub struct Wspd {
    pub tree: SplitTree,
    pub pairs: Vec<WspdPair>,
    pub s: f64,
}

impl Wspd {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `k / (s^d n)`: the constant in the `O(s^d n)` pair bound.
    pub fn size_constant(&self, d: usize) -> f64 {
        let n = self.tree.order.len() as f64;
        self.pairs.len() as f64 / (self.s.powi(d as i32) * n)
    }

    /// Every emitted pair satisfies the ball-separation condition.
    pub fn verify_ball_separation(&self) -> bool {
        self.pairs.iter().all(|p| p.is_separated(self.s))
    }

    /// Counts, for every unordered pair of distinct ids, how many WSPD pairs
    /// cover it, and checks that each count is exactly one.
    pub fn verify_unique_coverage(&self, n: usize) -> bool {
        let mut count = vec![0u32; n * n];
        for pair in &self.pairs {
            for &p in self.tree.ids(pair.a) {
                for &q in self.tree.ids(pair.b) {
                    let (i, j) = if p < q { (p, q) } else { (q, p) };
                    count[i * n + j] += 1;
                }
            }
        }
        let ids = &self.tree.order;
        for (k, &p) in ids.iter().enumerate() {
            for &q in &ids[k + 1..] {
                let (i, j) = if p < q { (p, q) } else { (q, p) };
                if count[i * n + j] != 1 {
                    return false;
                }
            }
        }
        true
    }
}

/// Builds the decomposition with separation ratio `s >= 1`.
///
/// Ratios `s <= 2` are accepted here but rejected by
/// [`crate::slab_enum::crossing_candidates`].
pub fn build_wspd(tree: SplitTree, s: f64) -> Result<Wspd> {
    if !(s >= 1.0) || !s.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "separation ratio must be a finite s >= 1, got {s}"
        )));
    }
    let mut pairs = Vec::new();
    let mut stack: Vec<(usize, usize)> = tree
        .nodes
        .iter()
        .filter_map(|n| n.children)
        .collect();
    while let Some((u, v)) = stack.pop() {
        let pair = WspdPair::new(&tree, u, v);
        if pair.is_separated(s) {
            pairs.push(pair);
            continue;
        }
        let (nu, nv) = (tree.node(u), tree.node(v));
        // Split the node with the larger box; a leaf is never split.
        let split_u = match (nu.children, nv.children) {
            (None, _) => false,
            (_, None) => true,
            _ => nu.longest_side() >= nv.longest_side(),
        };
        let (big, other) = if split_u { (u, v) } else { (v, u) };
        let (l, r) = tree
            .node(big)
            .children
            .expect("two leaves are always separated");
        stack.push((r, other));
        stack.push((l, other));
    }
    Ok(Wspd { tree, pairs, s })
}

/// Above this many `(p, p', q)` triples per pair, [`verify_separation`]
/// samples instead of enumerating.
pub const SEPARATION_EXHAUSTIVE_LIMIT: usize = 1_000_000;
/// Number of sampled triples per side for large pairs.
pub const SEPARATION_SAMPLES: usize = 20_000;

/// Checks `|p - p'| <= (2/s) |p - q|` for `p, p'` on one side of a pair
/// and `q` on the other, in both directions.
pub fn verify_separation(w: &Wspd, points: &PointSet) -> bool {
    let mut rng = random::rng(0x5e9a);
    let s2 = w.s * w.s;
    let holds = |p: usize, pp: usize, q: usize| {
        let near = points.dist2(p, pp).to_f64();
        let far = points.dist2(p, q).to_f64();
        s2 * near <= 4.0 * far * (1.0 + 1e-12)
    };
    for pair in &w.pairs {
        for (x, y) in [(pair.a, pair.b), (pair.b, pair.a)] {
            let xs = w.tree.ids(x);
            let ys = w.tree.ids(y);
            if xs.len() * xs.len() * ys.len() <= SEPARATION_EXHAUSTIVE_LIMIT {
                for &p in xs {
                    for &pp in xs {
                        for &q in ys {
                            if !holds(p, pp, q) {
                                return false;
                            }
                        }
                    }
                }
            } else {
                for _ in 0..SEPARATION_SAMPLES {
                    let p = xs[rng.gen_range(0..xs.len())];
                    let pp = xs[rng.gen_range(0..xs.len())];
                    let q = ys[rng.gen_range(0..ys.len())];
                    if !holds(p, pp, q) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Mode;
    use crate::random::random_points;

    #[test]
    fn single_point_is_a_leaf() {
        let s = PointSet::from_ints(2, &[vec![3, 4]]).unwrap();
        let t = build_split_tree(&s).unwrap();
        assert_eq!(t.nodes.len(), 1);
        assert!(t.root().is_leaf());
        assert!(build_split_tree_on(&s, &[]).is_err());
    }

    #[test]
    fn two_points_give_root_with_two_leaves() {
        let s = PointSet::from_ints(2, &[vec![0, 0], vec![10, 0]]).unwrap();
        let t = build_split_tree(&s).unwrap();
        assert_eq!(t.nodes.len(), 3);
        let (l, r) = t.root().children.unwrap();
        assert!(t.node(l).is_leaf() && t.node(r).is_leaf());
        let w = build_wspd(t, 4.0).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w.tree.ids(w.pairs[0].a).len(), 1);
        assert_eq!(w.tree.ids(w.pairs[0].b).len(), 1);
    }

    #[test]
    fn tree_structure_on_random_points() {
        let s = random_points(128, 2, 3);
        let t = build_split_tree(&s).unwrap();
        assert_eq!(t.leaf_count(), 128);
        for (v, node) in t.nodes.iter().enumerate() {
            match node.children {
                None => assert_eq!(node.len(), 1),
                Some((l, r)) => {
                    assert_eq!(t.node(l).start, node.start);
                    assert_eq!(t.node(l).end, t.node(r).start);
                    assert_eq!(t.node(r).end, node.end);
                    assert!(l > v && r > v);
                }
            }
        }
        let mut leaves: Vec<usize> = t
            .nodes
            .iter()
            .filter(|n| n.is_leaf())
            .map(|n| t.order[n.start])
            .collect();
        leaves.sort();
        assert_eq!(leaves, (0..128).collect::<Vec<_>>());
    }

    #[test]
    fn random_wspd_has_unique_coverage_and_separation() {
        for d in [2, 3] {
            let s = random_points(64, d, 11);
            let w = build_wspd(build_split_tree(&s).unwrap(), 4.0).unwrap();
            assert!(w.verify_unique_coverage(64));
            assert!(w.verify_ball_separation());
            assert!(verify_separation(&w, &s));
        }
    }

    #[test]
    fn two_far_clusters_share_one_pair() {
        let mut rows = Vec::new();
        for k in 0..32 {
            rows.push(vec![(k % 8) as f64 + 0.01 * k as f64, (k / 8) as f64]);
            rows.push(vec![1000.0 + (k % 8) as f64 + 0.01 * k as f64, (k / 8) as f64]);
        }
        let s = PointSet::new(2, Mode::Float, &rows).unwrap();
        let w = build_wspd(build_split_tree(&s).unwrap(), 4.0).unwrap();
        assert!(w.verify_unique_coverage(64));
        let full = w
            .pairs
            .iter()
            .filter(|p| w.tree.ids(p.a).len() == 32 && w.tree.ids(p.b).len() == 32)
            .count();
        assert_eq!(full, 1);
    }

    #[test]
    fn forced_overlapping_pair_violates_separation() {
        let s = PointSet::from_ints(2, &[vec![0, 0], vec![1, 0], vec![2, 0], vec![3, 0]]).unwrap();
        let tree = build_split_tree(&s).unwrap();
        let (l, r) = tree.root().children.unwrap();
        let pair = WspdPair::new(&tree, l, r);
        assert!(!pair.is_separated(4.0));
        let w = Wspd {
            tree,
            pairs: vec![pair],
            s: 4.0,
        };
        assert!(!verify_separation(&w, &s));
    }

    #[test]
    fn singleton_pairs_are_vacuously_separated() {
        let s = PointSet::from_ints(2, &[vec![0, 0], vec![1, 0]]).unwrap();
        let w = build_wspd(build_split_tree(&s).unwrap(), 100.0).unwrap();
        assert!(verify_separation(&w, &s));
    }

    #[test]
    fn rejects_small_ratio() {
        let s = random_points(4, 2, 0);
        assert!(build_wspd(build_split_tree(&s).unwrap(), 0.5).is_err());
        assert!(build_wspd(build_split_tree(&s).unwrap(), f64::NAN).is_err());
    }
}
