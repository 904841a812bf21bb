//! Exact closest pair of a subset of a [`PointSet`].
//!
//! Both solvers return the minimum pair in `(dist2, i, j)` order, so they
//! agree exactly even when distances tie.

use crate::geom::{Dist2, Mode, PairResult, PointSet};

/// Below this many points the divide-and-conquer solver scans all pairs.
pub const BRUTE_FORCE_CUTOFF: usize = 32;

/// Quadratic scan over all pairs of `ids`. `None` when fewer than two ids.
pub fn closest_pair_bruteforce(ids: &[usize], points: &PointSet) -> Option<PairResult> {
    if points.mode() == Mode::Float {
        return scan_float(ids, points);
    }
    let mut best: Option<PairResult> = None;
    for (k, &a) in ids.iter().enumerate() {
        for &b in &ids[k + 1..] {
            let d = points.dist2(a, b);
            // Only a distance no larger than the best can win the tie-break.
            if best.map_or(true, |p| d <= p.dist2) {
                PairResult::min_into(&mut best, PairResult::new(a, b, d));
            }
        }
    }
    best
}

/// Float scan over a contiguous copy of the coordinates. Sums axes in the
/// same order as [`PointSet::dist2`], so distances are bit-identical.
fn scan_float(ids: &[usize], points: &PointSet) -> Option<PairResult> {
    let d = points.dim();
    let buf: Vec<f64> = ids.iter().flat_map(|&id| points.coords(id).iter().copied()).collect();
    let mut best: Option<(f64, usize, usize)> = None;
    for (k, p) in buf.chunks_exact(d).enumerate() {
        for (l, q) in buf.chunks_exact(d).enumerate().skip(k + 1) {
            let mut acc = 0.0;
            for (a, b) in p.iter().zip(q) {
                let t = a - b;
                acc += t * t;
            }
            match best {
                Some((bd, ..)) if acc > bd => {}
                _ => {
                    let (i, j) = (ids[k].min(ids[l]), ids[k].max(ids[l]));
                    if best.map_or(true, |b| (acc, i, j) < b) {
                        best = Some((acc, i, j));
                    }
                }
            }
        }
    }
    best.map(|(acc, i, j)| PairResult::new(i, j, Dist2::Float(acc)))
}

/// `O(n log n)` divide and conquer on the first coordinate.
///
/// The merge step scans a strip around the split ordered by the second
/// coordinate, comparing each point with its successors while their
/// second-coordinate gap does not exceed the current best distance.
pub fn closest_pair_dnc(ids: &[usize], points: &PointSet) -> Option<PairResult> {
    if ids.len() < 2 {
        return None;
    }
    let mut by_x = ids.to_vec();
    by_x.sort_by(|&a, &b| points.x(a).total_cmp(&points.x(b)).then(a.cmp(&b)));
    let axis = if points.dim() > 1 { 1 } else { 0 };
    let mut by_y = vec![0; by_x.len()];
    let mut scratch = Vec::with_capacity(by_x.len());
    recurse(points, axis, &by_x, &mut by_y, &mut scratch)
}

fn recurse(
    points: &PointSet,
    axis: usize,
    by_x: &[usize],
    by_y: &mut [usize],
    scratch: &mut Vec<usize>,
) -> Option<PairResult> {
    let n = by_x.len();
    let ycmp = |a: &usize, b: &usize| {
        points
            .coord(*a, axis)
            .total_cmp(&points.coord(*b, axis))
            .then(a.cmp(b))
    };

    if n < BRUTE_FORCE_CUTOFF {
        by_y.copy_from_slice(by_x);
        by_y.sort_by(ycmp);
        return closest_pair_bruteforce(by_x, points);
    }

    let mid = n / 2;
    let (left_y, right_y) = by_y.split_at_mut(mid);
    let left = recurse(points, axis, &by_x[..mid], left_y, scratch);
    let right = recurse(points, axis, &by_x[mid..], right_y, scratch);
    let mut best = match (left, right) {
        (Some(l), Some(r)) => Some(l.min(r)),
        (l, r) => l.or(r),
    };

    scratch.clear();
    scratch.extend_from_slice(by_y);
    merge(&scratch[..mid], &scratch[mid..], by_y, ycmp);

    let split = by_x[mid - 1];
    let bound = best.map(|b| b.dist2);
    scratch.clear();
    scratch.extend(
        by_y.iter()
            .copied()
            .filter(|&p| bound.is_none_or(|d| points.axis_gap2(p, split, 0) <= d)),
    );
    for (k, &a) in scratch.iter().enumerate() {
        for &b in &scratch[k + 1..] {
            if let Some(cur) = best {
                if points.axis_gap2(a, b, axis) > cur.dist2 {
                    break;
                }
            }
            PairResult::min_into(&mut best, points.pair(a, b));
        }
    }
    best
}

fn merge<F>(left: &[usize], right: &[usize], out: &mut [usize], cmp: F)
where
    F: Fn(&usize, &usize) -> std::cmp::Ordering,
{
    let (mut i, mut j, mut k) = (0, 0, 0);
    while i < left.len() && j < right.len() {
        if cmp(&left[i], &right[j]).is_le() {
            out[k] = left[i];
            i += 1;
        } else {
            out[k] = right[j];
            j += 1;
        }
        k += 1;
    }
    out[k..k + left.len() - i].copy_from_slice(&left[i..]);
    k += left.len() - i;
    out[k..].copy_from_slice(&right[j..]);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{Dist2, Mode};
    use crate::random::{random_grid_points, random_points};

    fn all(points: &PointSet) -> Vec<usize> {
        (0..points.len()).collect()
    }

    #[test]
    fn singleton_and_empty_have_no_pair() {
        let s = PointSet::from_ints(2, &[vec![0, 0]]).unwrap();
        assert_eq!(closest_pair_bruteforce(&[0], &s), None);
        assert_eq!(closest_pair_dnc(&[0], &s), None);
        assert_eq!(closest_pair_dnc(&[], &s), None);
    }

    #[test]
    fn small_examples() {
        let s = PointSet::from_ints(2, &[vec![0, 0], vec![1, 0], vec![5, 0]]).unwrap();
        let p = closest_pair_bruteforce(&all(&s), &s).unwrap();
        assert_eq!((p.i, p.j, p.dist2), (0, 1, Dist2::Exact(1)));

        let s = PointSet::from_ints(2, &[vec![0, 0], vec![3, 4]]).unwrap();
        let p = closest_pair_dnc(&all(&s), &s).unwrap();
        assert_eq!((p.i, p.j, p.dist2), (0, 1, Dist2::Exact(25)));
    }

    #[test]
    fn dnc_matches_bruteforce_on_random_sets() {
        for d in [1, 2, 3] {
            for seed in 0..100 {
                let s = random_points(256, d, seed);
                let ids = all(&s);
                assert_eq!(
                    closest_pair_dnc(&ids, &s),
                    closest_pair_bruteforce(&ids, &s),
                    "d={d} seed={seed}"
                );
            }
        }
    }

    #[test]
    fn dnc_matches_bruteforce_under_ties() {
        // A coarse integer grid produces many equal distances.
        for seed in 0..50 {
            let s = random_grid_points(200, 2, 40, seed);
            let ids = all(&s);
            assert_eq!(s.mode(), Mode::Exact);
            assert_eq!(closest_pair_dnc(&ids, &s), closest_pair_bruteforce(&ids, &s));
        }
    }

    #[test]
    fn works_on_subsets_in_any_order() {
        let s = random_points(300, 2, 7);
        let ids: Vec<usize> = (0..300).rev().step_by(3).collect();
        assert_eq!(closest_pair_dnc(&ids, &s), closest_pair_bruteforce(&ids, &s));
    }
}
