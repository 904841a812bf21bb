//! Padding a point set with far-away points until every bucket holds its
//! balanced share.

use crate::error::{Error, Result};
use crate::geom::{Mode, PointSet};
use crate::partition::{bucket_sizes, SlabPartition};

/// Adds points to `points` so that bucket `k` of `partition` ends up with
/// `bucket_sizes(n_target, m)[k]` points.
///
/// New points are stacked above the bounding box with vertical spacing
/// larger than the diameter, so each new point is farther than the diameter
/// from every other point. Existing ids keep their coordinates; new ids
/// follow them. Exact-mode sets get integer x values strictly inside each
/// bucket, which fails when a bucket has too few free integers.
pub fn pad_to_size(points: &PointSet, partition: &SlabPartition, n_target: usize) -> Result<PointSet> {
    let n = points.len();
    if n_target < n {
        return Err(Error::InvalidParameter(format!(
            "target size {n_target} is below the current size {n}"
        )));
    }
    let m = partition.m();
    let targets = bucket_sizes(n_target, m);
    let mut missing = Vec::with_capacity(m);
    for (k, &target) in targets.iter().enumerate() {
        let have = partition.bucket(k).len();
        if have > target {
            return Err(Error::Infeasible(format!(
                "bucket {k} already holds {have} points, target is {target}"
            )));
        }
        missing.push(target - have);
    }
    if n_target == n {
        return Ok(points.clone());
    }
    let d = points.dim();
    if d < 2 {
        return Err(Error::Infeasible("padding needs at least two dimensions".into()));
    }

    let mode = points.mode();
    let top = points.bounding_box().map_or(0.0, |(_, hi)| hi[1]);
    let gap = points.diameter_bound().ceil() + 1.0;
    let mut coords = Vec::with_capacity((n_target - n) * d);
    let mut t = 0usize;
    for (k, &need) in missing.iter().enumerate() {
        if need == 0 {
            continue;
        }
        let (a, b) = (partition.boundary(k), partition.boundary(k + 1));
        let taken: Vec<f64> = partition.bucket(k).iter().map(|&id| points.x(id)).collect();
        for x in free_positions(a, b, &taken, need, mode)
            .ok_or_else(|| Error::Infeasible(format!("bucket {k} has no room for {need} more x values")))?
        {
            t += 1;
            coords.push(x);
            coords.push(top + t as f64 * gap);
            coords.extend(std::iter::repeat(0.0).take(d - 2));
        }
    }
    let extra = PointSet::from_flat(d, mode, coords)?;
    let mut out = points.clone();
    out.extend(&extra)?;
    Ok(out)
}

/// `need` x values strictly inside `(a, b)` avoiding `taken`.
fn free_positions(a: f64, b: f64, taken: &[f64], need: usize, mode: Mode) -> Option<Vec<f64>> {
    let mut out = Vec::with_capacity(need);
    match mode {
        Mode::Exact => {
            let mut x = a.floor() + 1.0;
            while out.len() < need && x < b {
                if !taken.contains(&x) {
                    out.push(x);
                }
                x += 1.0;
            }
        }
        Mode::Float => {
            let slots = need + taken.len();
            for s in 1..=slots {
                let x = a + (b - a) * s as f64 / (slots + 1) as f64;
                if out.len() < need && a < x && x < b && !taken.contains(&x) {
                    out.push(x);
                }
            }
        }
    }
    (out.len() == need).then_some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::build_slab_partition;
    use crate::random::{random_grid_points, random_points};
    use crate::slab_enum::enumerate_bruteforce;

    #[test]
    fn same_size_is_identity() {
        let s = random_points(20, 2, 1);
        let p = build_slab_partition(&s, 4).unwrap();
        assert_eq!(pad_to_size(&s, &p, 20).unwrap(), s);
    }

    #[test]
    fn pads_to_balanced_buckets_and_keeps_pairs() {
        let s = random_points(20, 2, 2);
        let p = build_slab_partition(&s, 4).unwrap();
        let before = enumerate_bruteforce(&s, &p);
        let padded = pad_to_size(&s, &p, 60).unwrap();
        assert_eq!(padded.len(), 60);
        let q = SlabPartition::from_boundaries(&padded, p.boundaries().to_vec()).unwrap();
        assert!(q.buckets().all(|b| b.len() == 15));
        let after = enumerate_bruteforce(&padded, &q);
        assert_eq!(before.keys(), after.keys());
    }

    #[test]
    fn exact_mode_uses_free_integers() {
        let s = PointSet::from_ints(2, &[vec![1, 0], vec![3, 5]]).unwrap();
        let p = SlabPartition::from_boundaries(&s, vec![0.0, 4.0]).unwrap();
        let padded = pad_to_size(&s, &p, 3).unwrap();
        assert_eq!(padded.x(2), 2.0);
        assert!(matches!(pad_to_size(&s, &p, 4), Err(Error::Infeasible(_))));
    }

    #[test]
    fn overfull_bucket_is_infeasible() {
        let s = random_grid_points(10, 2, 50, 3);
        let p = SlabPartition::from_boundaries(&s, vec![-1.0, 0.5, 100.0]).unwrap();
        assert!(matches!(pad_to_size(&s, &p, 12), Err(Error::Infeasible(_))));
        assert!(pad_to_size(&s, &p, 9).is_err());
    }

    #[test]
    fn one_dimension_cannot_pad() {
        let s = random_points(4, 1, 0);
        let p = build_slab_partition(&s, 2).unwrap();
        assert!(pad_to_size(&s, &p, 6).is_err());
    }
}
