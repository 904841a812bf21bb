//! Orthogonal box reporting with a static kd-tree.

use crate::error::{Error, Result};
use crate::geom::PointSet;

/// Leaves hold at most this many points.
pub const LEAF_SIZE: usize = 8;

#[derive(Clone, Debug)]
struct Node {
    start: u32,
    end: u32,
    /// Index of the left child; the right child follows the left subtree.
    left: u32,
    right: u32,
    lo: Vec<f64>,
    hi: Vec<f64>,
}

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct BoxReporter {
    dim: usize,
    nodes: Vec<Node>,
    order: Vec<usize>,
    coords: Vec<f64>,
}

/// A closed axis-parallel box `lo[t] <= x_t <= hi[t]`.
#[derive(Clone, Debug, PartialEq)]
pub struct QueryBox {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl QueryBox {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::InvalidBox("bound vectors differ in length".into()));
        }
        for (t, (a, b)) in lo.iter().zip(&hi).enumerate() {
            if a.is_nan() || b.is_nan() || a > b {
                return Err(Error::InvalidBox(format!("axis {t}: [{a}, {b}]")));
            }
        }
        Ok(QueryBox { lo, hi })
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        p.iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(c, (a, b))| *a <= *c && *c <= *b)
    }
}

pub fn build_box_reporter(points: &PointSet) -> BoxReporter {
    BoxReporter::new(points)
}

impl BoxReporter {
    pub fn new(points: &PointSet) -> Self {
        let dim = points.dim();
        let n = points.len();
        let mut rep = BoxReporter {
            dim,
            nodes: Vec::with_capacity(2 * n / LEAF_SIZE + 1),
            order: (0..n).collect(),
            coords: points.flat_coords().to_vec(),
        };
        if n > 0 {
            rep.build(0, n);
        }
        rep
    }

    fn coord(&self, id: usize, axis: usize) -> f64 {
        self.coords[id * self.dim + axis]
    }

    fn build(&mut self, start: usize, end: usize) -> u32 {
        let d = self.dim;
        let mut lo = vec![f64::INFINITY; d];
        let mut hi = vec![f64::NEG_INFINITY; d];
        for &id in &self.order[start..end] {
            for t in 0..d {
                let c = self.coords[id * d + t];
                lo[t] = lo[t].min(c);
                hi[t] = hi[t].max(c);
            }
        }
        let v = self.nodes.len() as u32;
        let axis = (0..d)
            .max_by(|&a, &b| (hi[a] - lo[a]).total_cmp(&(hi[b] - lo[b])))
            .unwrap();
        self.nodes.push(Node {
            start: start as u32,
            end: end as u32,
            left: NONE,
            right: NONE,
            lo,
            hi,
        });
        if end - start > LEAF_SIZE {
            let mid = start + (end - start) / 2;
            let coords = &self.coords;
            self.order[start..end].select_nth_unstable_by(mid - start, |&a, &b| {
                coords[a * d + axis].total_cmp(&coords[b * d + axis])
            });
            let left = self.build(start, mid);
            let right = self.build(mid, end);
            self.nodes[v as usize].left = left;
            self.nodes[v as usize].right = right;
        }
        v
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Ids inside the closed box, sorted by id.
    pub fn report(&self, query: &QueryBox) -> Result<Vec<usize>> {
        if query.lo.len() != self.dim {
            return Err(Error::InvalidBox(format!(
                "box has {} axes, points have {}",
                query.lo.len(),
                self.dim
            )));
        }
        let mut out = Vec::new();
        self.for_each_in_box(&query.lo, &query.hi, |id| out.push(id));
        out.sort_unstable();
        Ok(out)
    }

    /// Calls `f` for every id in the closed box `[lo, hi]`, in tree order.
    pub fn for_each_in_box<F: FnMut(usize)>(&self, lo: &[f64], hi: &[f64], mut f: F) {
        if self.nodes.is_empty() {
            return;
        }
        let d = self.dim;
        let mut stack = vec![0u32];
        while let Some(v) = stack.pop() {
            let node = &self.nodes[v as usize];
            let mut inside = true;
            let mut disjoint = false;
            for t in 0..d {
                if node.hi[t] < lo[t] || node.lo[t] > hi[t] {
                    disjoint = true;
                    break;
                }
                if node.lo[t] < lo[t] || node.hi[t] > hi[t] {
                    inside = false;
                }
            }
            if disjoint {
                continue;
            }
            let ids = &self.order[node.start as usize..node.end as usize];
            if inside {
                ids.iter().for_each(|&id| f(id));
            } else if node.left == NONE {
                for &id in ids {
                    if (0..d).all(|t| {
                        let c = self.coord(id, t);
                        lo[t] <= c && c <= hi[t]
                    }) {
                        f(id);
                    }
                }
            } else {
                stack.push(node.right);
                stack.push(node.left);
            }
        }
    }
}

/// Free-function form of [`BoxReporter::report`].
pub fn report_box(rep: &BoxReporter, query: &QueryBox) -> Result<Vec<usize>> {
    rep.report(query)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_grid_points, random_points};
    use rand::Rng;

    fn linear(points: &PointSet, q: &QueryBox) -> Vec<usize> {
        (0..points.len()).filter(|&id| q.contains(points.coords(id))).collect()
    }

    #[test]
    fn empty_set_reports_nothing() {
        let s = PointSet::new(2, crate::geom::Mode::Float, &[]).unwrap();
        let rep = build_box_reporter(&s);
        let q = QueryBox::new(vec![-1.0, -1.0], vec![1.0, 1.0]).unwrap();
        assert!(rep.report(&q).unwrap().is_empty());
        assert_eq!(rep.node_count(), 0);
    }

    #[test]
    fn single_point() {
        let s = PointSet::from_ints(2, &[vec![2, 3]]).unwrap();
        let rep = build_box_reporter(&s);
        let hit = QueryBox::new(vec![2.0, 3.0], vec![2.0, 3.0]).unwrap();
        let miss = QueryBox::new(vec![5.0, 5.0], vec![6.0, 6.0]).unwrap();
        assert_eq!(rep.report(&hit).unwrap(), vec![0]);
        assert!(rep.report(&miss).unwrap().is_empty());
    }

    #[test]
    fn whole_box_and_degenerate_box() {
        let s = random_grid_points(200, 2, 10, 4);
        let rep = build_box_reporter(&s);
        let (lo, hi) = s.bounding_box().unwrap();
        assert_eq!(rep.report(&QueryBox::new(lo, hi).unwrap()).unwrap().len(), 200);
        let p = s.coords(17).to_vec();
        let q = QueryBox::new(p.clone(), p).unwrap();
        assert_eq!(rep.report(&q).unwrap(), linear(&s, &q));
        assert!(rep.report(&q).unwrap().contains(&17));
    }

    #[test]
    fn malformed_boxes_are_rejected() {
        assert!(QueryBox::new(vec![1.0], vec![0.0]).is_err());
        assert!(QueryBox::new(vec![0.0, 0.0], vec![1.0]).is_err());
        let rep = build_box_reporter(&random_points(10, 3, 0));
        let q = QueryBox::new(vec![0.0], vec![1.0]).unwrap();
        assert!(rep.report(&q).is_err());
    }

    #[test]
    fn agrees_with_linear_scan() {
        for d in [2, 3] {
            let s = random_points(10_000, d, 5);
            let rep = build_box_reporter(&s);
            assert!(rep.node_count() <= 4 * s.len());
            let mut rng = crate::random::rng(6);
            for _ in 0..1000 {
                let lo: Vec<f64> = (0..d).map(|_| rng.gen_range(-0.1..1.0)).collect();
                let hi: Vec<f64> = lo.iter().map(|l| l + rng.gen_range(0.0..0.3)).collect();
                let q = QueryBox::new(lo, hi).unwrap();
                assert_eq!(rep.report(&q).unwrap(), linear(&s, &q));
            }
        }
    }
}
