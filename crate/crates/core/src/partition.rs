//! Partition of a point set into `m` vertical buckets of (near) equal size.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{PointSet, Slab};

/// Boundaries `a_0 < a_1 < ... < a_m` and the `m` buckets between them.
///
/// Bucket `k` holds the points strictly between `a_k` and `a_{k+1}`; no
/// point lies on a boundary. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SlabPartition {
    boundaries: Vec<f64>,
    /// Ids sorted by first coordinate.
    sorted: Vec<usize>,
    /// `sorted[offsets[k]..offsets[k + 1]]` is bucket `k`.
    offsets: Vec<usize>,
}

/// Partitions `points` into `m` buckets by x-rank.
///
/// The first `n mod m` buckets hold `ceil(n/m)` points, the rest
/// `floor(n/m)`. Internal boundaries sit at the midpoint between the last
/// point of one bucket and the first of the next; the outer boundaries are
/// `min_x - 1` and `max_x + 1`.
pub fn build_slab_partition(points: &PointSet, m: usize) -> Result<SlabPartition> {
    let n = points.len();
    if m < 1 || m > n {
        return Err(Error::InvalidParameter(format!(
            "bucket count m = {m} must satisfy 1 <= m <= n = {n}"
        )));
    }
    let sorted = points.ids_by_x();
    check_distinct_x(points, &sorted)?;

    let sizes = bucket_sizes(n, m);
    let mut offsets = Vec::with_capacity(m + 1);
    offsets.push(0);
    for s in &sizes {
        offsets.push(offsets.last().unwrap() + s);
    }

    let mut boundaries = Vec::with_capacity(m + 1);
    boundaries.push(points.x(sorted[0]) - 1.0);
    for k in 1..m {
        let left = points.x(sorted[offsets[k] - 1]);
        let right = points.x(sorted[offsets[k]]);
        boundaries.push(midpoint(left, right));
    }
    boundaries.push(points.x(sorted[n - 1]) + 1.0);

    Ok(SlabPartition {
        boundaries,
        sorted,
        offsets,
    })
}

/// Bucket sizes for `n` points in `m` buckets, larger buckets first.
pub fn bucket_sizes(n: usize, m: usize) -> Vec<usize> {
    let (q, r) = (n / m, n % m);
    (0..m).map(|k| if k < r { q + 1 } else { q }).collect()
}

fn midpoint(a: f64, b: f64) -> f64 {
    let mid = a + (b - a) / 2.0;
    debug_assert!(a < mid && mid < b, "no representable midpoint between {a} and {b}");
    mid
}

fn check_distinct_x(points: &PointSet, sorted: &[usize]) -> Result<()> {
    for w in sorted.windows(2) {
        if points.x(w[0]) == points.x(w[1]) {
            return Err(Error::DuplicateX {
                i: w[0].min(w[1]),
                j: w[0].max(w[1]),
                x: points.x(w[0]),
            });
        }
    }
    Ok(())
}

impl SlabPartition {
    /// Partition with caller-supplied boundaries.
    ///
    /// Every point must lie strictly between two consecutive boundaries;
    /// buckets may be empty.
    pub fn from_boundaries(points: &PointSet, boundaries: Vec<f64>) -> Result<SlabPartition> {
        if boundaries.len() < 2 {
            return Err(Error::InvalidParameter("need at least two boundaries".into()));
        }
        if boundaries.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidParameter("boundaries must be strictly increasing".into()));
        }
        let sorted = points.ids_by_x();
        check_distinct_x(points, &sorted)?;
        let m = boundaries.len() - 1;
        let mut offsets = vec![0; m + 1];
        let mut pos = 0;
        for k in 0..m {
            while pos < sorted.len() && points.x(sorted[pos]) < boundaries[k + 1] {
                let x = points.x(sorted[pos]);
                if x <= boundaries[k] {
                    return Err(Error::InvalidParameter(format!(
                        "point {} at x = {x} is not strictly inside a bucket",
                        sorted[pos]
                    )));
                }
                pos += 1;
            }
            offsets[k + 1] = pos;
        }
        if pos != sorted.len() {
            let id = sorted[pos];
            return Err(Error::InvalidParameter(format!(
                "point {id} at x = {} is not strictly inside a bucket",
                points.x(id)
            )));
        }
        Ok(SlabPartition {
            boundaries,
            sorted,
            offsets,
        })
    }

    /// Number of buckets.
    pub fn m(&self) -> usize {
        self.boundaries.len() - 1
    }

    pub fn boundaries(&self) -> &[f64] {
        &self.boundaries
    }

    pub fn boundary(&self, k: usize) -> f64 {
        self.boundaries[k]
    }

    pub fn bucket(&self, k: usize) -> &[usize] {
        &self.sorted[self.offsets[k]..self.offsets[k + 1]]
    }

    pub fn buckets(&self) -> impl Iterator<Item = &[usize]> + '_ {
        (0..self.m()).map(move |k| self.bucket(k))
    }

    /// Ids of buckets `lo..hi`, sorted by first coordinate.
    pub fn range_ids(&self, lo: usize, hi: usize) -> &[usize] {
        &self.sorted[self.offsets[lo]..self.offsets[hi]]
    }

    /// All ids sorted by first coordinate.
    pub fn sorted_ids(&self) -> &[usize] {
        &self.sorted
    }

    /// The slab between boundaries `i < j`.
    pub fn slab(&self, i: usize, j: usize) -> Slab {
        Slab {
            a: self.boundaries[i],
            b: self.boundaries[j],
        }
    }

    pub fn max_bucket_len(&self) -> usize {
        self.offsets.windows(2).map(|w| w[1] - w[0]).max().unwrap_or(0)
    }

    /// Largest `k` with `a_k <= a`; ties resolve to the boundary itself.
    pub fn locate(&self, a: f64) -> Result<usize> {
        let lo = self.boundaries[0];
        let hi = *self.boundaries.last().unwrap();
        if !(lo <= a && a <= hi) {
            return Err(Error::OutOfRange { value: a, lo, hi });
        }
        Ok(self.boundaries.partition_point(|&b| b <= a) - 1)
    }
}

/// Free-function form of [`SlabPartition::locate`].
pub fn locate(a: f64, partition: &SlabPartition) -> Result<usize> {
    partition.locate(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Mode;

    fn line(xs: &[f64]) -> PointSet {
        let rows: Vec<Vec<f64>> = xs.iter().map(|&x| vec![x, 0.0]).collect();
        PointSet::new(2, Mode::Float, &rows).unwrap()
    }

    #[test]
    fn midpoint_rule() {
        let s = line(&[1.0, 2.0, 3.0, 4.0]);
        let p = build_slab_partition(&s, 2).unwrap();
        assert_eq!(p.boundaries(), &[0.0, 2.5, 5.0]);
        assert_eq!(p.bucket(0), &[0, 1]);
        assert_eq!(p.bucket(1), &[2, 3]);
    }

    #[test]
    fn single_bucket_holds_everything() {
        let s = line(&[3.0, -1.0, 7.5]);
        let p = build_slab_partition(&s, 1).unwrap();
        assert_eq!(p.boundaries(), &[-2.0, 8.5]);
        assert_eq!(p.bucket(0), &[1, 0, 2]);
    }

    #[test]
    fn remainder_goes_to_the_front() {
        let xs: Vec<f64> = (0..10).map(|k| (k * 7 % 10) as f64 + 0.25).collect();
        let p = build_slab_partition(&line(&xs), 3).unwrap();
        let sizes: Vec<usize> = p.buckets().map(<[usize]>::len).collect();
        assert_eq!(sizes, vec![4, 3, 3]);
        for k in 0..3 {
            for &id in p.bucket(k) {
                let x = xs[id];
                assert!(p.boundary(k) < x && x < p.boundary(k + 1));
            }
        }
    }

    #[test]
    fn rejects_bad_m_and_duplicate_x() {
        let s = line(&[1.0, 2.0]);
        assert!(build_slab_partition(&s, 0).is_err());
        assert!(build_slab_partition(&s, 3).is_err());
        let dup = line(&[1.0, 1.0]);
        assert!(matches!(
            build_slab_partition(&dup, 1),
            Err(Error::DuplicateX { .. })
        ));
    }

    #[test]
    fn locate_examples() {
        let p = build_slab_partition(&line(&[1.0, 2.0, 3.0, 4.0]), 2).unwrap();
        assert_eq!(locate(1.0, &p).unwrap(), 0);
        assert_eq!(locate(2.5, &p).unwrap(), 1);
        assert_eq!(locate(0.0, &p).unwrap(), 0);
        assert_eq!(locate(5.0, &p).unwrap(), 2);
        assert!(matches!(locate(6.0, &p), Err(Error::OutOfRange { .. })));
        assert!(locate(-0.1, &p).is_err());
    }

    #[test]
    fn explicit_boundaries() {
        let s = line(&[1.5, 2.5, 4.5]);
        let p = SlabPartition::from_boundaries(&s, vec![1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        assert_eq!(p.m(), 4);
        assert_eq!(p.bucket(0), &[0]);
        assert_eq!(p.bucket(2), &[] as &[usize]);
        assert_eq!(p.bucket(3), &[2]);
        assert!(SlabPartition::from_boundaries(&s, vec![1.0, 2.5, 5.0]).is_err());
        assert!(SlabPartition::from_boundaries(&s, vec![2.0, 5.0]).is_err());
    }
}
