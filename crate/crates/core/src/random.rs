//! Seeded random point sets.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::{validate_general_position, Collision, Mode, PointSet};

/// Above this size the pairwise-distance tie check is skipped; ties among
/// uniform `f64` coordinates are then only resolved by the tie-break order.
pub const DISTANCE_CHECK_LIMIT: usize = 2048;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` points uniform in `[0,1)^d`, nudged until the first coordinates are
/// distinct and (for `n <= DISTANCE_CHECK_LIMIT`) all distances differ.
pub fn random_points(n: usize, d: usize, seed: u64) -> PointSet {
    let mut rng = rng(seed);
    let mut coords: Vec<f64> = (0..n * d).map(|_| rng.gen::<f64>()).collect();
    nudge_into_general_position(&mut coords, d);
    PointSet::from_flat(d, Mode::Float, coords).expect("finite coordinates")
}

fn nudge_into_general_position(coords: &mut [f64], d: usize) {
    let n = coords.len() / d;
    loop {
        let mut ids: Vec<usize> = (0..n).collect();
        ids.sort_by(|&a, &b| coords[a * d].total_cmp(&coords[b * d]));
        let mut changed = false;
        for w in ids.windows(2) {
            if coords[w[1] * d] <= coords[w[0] * d] {
                coords[w[1] * d] = coords[w[0] * d].next_up();
                changed = true;
            }
        }
        if changed {
            continue;
        }
        if n > DISTANCE_CHECK_LIMIT || d < 2 {
            return;
        }
        let set = PointSet::from_flat(d, Mode::Float, coords.to_vec()).expect("finite");
        let report = validate_general_position(&set);
        let mut touched = false;
        for c in report.colliding {
            if let Collision::SameDistance { second, .. } = c {
                let k = second.1 * d + d - 1;
                coords[k] = coords[k].next_up();
                touched = true;
            }
        }
        if !touched {
            return;
        }
    }
}

/// Exact-mode points with distinct first coordinates (a shuffle of
/// `0..n`) and remaining coordinates uniform in `0..range`. Small ranges
/// give many distance ties.
pub fn random_grid_points(n: usize, d: usize, range: i64, seed: u64) -> PointSet {
    let mut rng = rng(seed);
    let mut xs: Vec<i64> = (0..n as i64).collect();
    xs.shuffle(&mut rng);
    let rows: Vec<Vec<i64>> = xs
        .into_iter()
        .map(|x| {
            let mut row = vec![x];
            row.extend((1..d).map(|_| rng.gen_range(0..range)));
            row
        })
        .collect();
    PointSet::from_ints(d, &rows).expect("small integers")
}

/// Random query slabs `a < b` over `[lo, hi]`.
pub fn random_slabs(count: usize, lo: f64, hi: f64, seed: u64) -> Vec<(f64, f64)> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| loop {
            let u = rng.gen_range(lo..hi);
            let v = rng.gen_range(lo..hi);
            if u != v {
                break (u.min(v), u.max(v));
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_sets_are_deterministic_and_in_general_position() {
        let a = random_points(300, 2, 42);
        let b = random_points(300, 2, 42);
        assert_eq!(a, b);
        assert!(validate_general_position(&a).ok());
        assert_ne!(a, random_points(300, 2, 43));
    }

    #[test]
    fn grid_points_have_distinct_x() {
        let s = random_grid_points(100, 3, 5, 1);
        let r = validate_general_position(&s);
        assert!(r.distinct_x);
        assert!(!r.distinct_dist);
    }
}
