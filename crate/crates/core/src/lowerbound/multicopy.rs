//! Several shifted copies of hypercube sets, one family per group
//! `g = 1..=n/m`, padded to `n` points with `n/m` points per unit bucket.
//!
//! All coordinates are multiplied by `F = n/m + 1` so the fractional shifts
//! `g / F` become integers and the set stays in exact mode.

use serde::Serialize;
use serde_json::json;

use super::exact::{ceil_sqrt, dominates, smallest_integer_above_twice_sum};
use super::hypercube::norm2;
use super::padding::pad_to_size;
use super::{ClaimedPair, Construction};
use crate::error::{Error, Result};
use crate::geom::{Mode, PointSet, Slab, EXACT_COORD_LIMIT};
use crate::partition::SlabPartition;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GroupSpec {
    pub g: usize,
    pub k: u32,
    /// Unscaled `(x_{g,i}, y_{g,i})`.
    pub vectors: Vec<(i64, i64)>,
    pub epsilon: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MultiCopySpec {
    pub n: usize,
    pub m: usize,
    pub groups: Vec<GroupSpec>,
    /// Unscaled vertical spacing, `1 + ceil(max diam(Q_g))`.
    pub delta: i64,
    pub scale: i64,
    /// Points before padding.
    pub generated: usize,
    pub lower_bound: usize,
    /// Whether `m > 3 sqrt(n)`.
    pub asymptotic_regime: bool,
}

impl MultiCopySpec {
    /// Certifies the dominance condition over all vectors sorted by
    /// decreasing x.
    pub fn verify_dominance(&self) -> bool {
        let mut all: Vec<(i64, i64)> = self.groups.iter().flat_map(|g| g.vectors.iter().copied()).collect();
        all.sort_by(|a, b| b.0.cmp(&a.0));
        let norms2: Vec<u128> = all.iter().map(|&(x, y)| norm2(x, y)).collect();
        (1..norms2.len()).all(|i| dominates(norms2[i], &norms2[..i]))
    }

    /// Unscaled y-ranges of the copies `S_{g,i}` are pairwise disjoint.
    pub fn verify_disjoint_copies(&self) -> bool {
        let mut ranges = Vec::new();
        for grp in &self.groups {
            let span: i64 = grp.vectors.iter().map(|v| v.1).sum();
            for i in 1..2 * grp.g {
                let base = copy_shift_y(grp.g, i, self.delta);
                ranges.push((base, base + span));
            }
        }
        ranges.sort_unstable();
        ranges.windows(2).all(|w| w[0].1 < w[1].0)
    }
}

fn copy_shift_y(g: usize, i: usize, delta: i64) -> i64 {
    2 * (((g - 1) * (g - 1) + i - 1) as i64) * delta
}

/// `k_g`: the largest `k` with `(2g - 1) 2^k <= m`.
fn group_dimension(m: usize, g: usize) -> u32 {
    let base = 2 * g - 1;
    let mut k = 0;
    while base << (k + 1) <= m {
        k += 1;
    }
    k
}

/// `sum_g (2g - 1) k_g 2^(k_g - 1)` over `g = 1..=n/m`.
pub fn multicopy_lower_bound(n: usize, m: usize) -> usize {
    (1..=n / m)
        .map(|g| {
            let k = group_dimension(m, g) as usize;
            if k == 0 {
                0
            } else {
                (2 * g - 1) * k << (k - 1)
            }
        })
        .sum()
}

/// Squared diameter of the subset sums of `vectors`: the largest
/// `|sum_i s_i v_i|^2` over sign vectors `s`.
fn hypercube_diameter2(vectors: &[(i64, i64)]) -> u128 {
    let k = vectors.len();
    if k == 0 {
        return 0;
    }
    let mut best = 0i128;
    for signs in 0u64..1 << (k - 1) {
        let (mut x, mut y) = (vectors[0].0 as i128, vectors[0].1 as i128);
        for (t, v) in vectors.iter().enumerate().skip(1) {
            let s = if signs >> (t - 1) & 1 == 1 { -1 } else { 1 };
            x += s * v.0 as i128;
            y += s * v.1 as i128;
        }
        best = best.max(x * x + y * y);
    }
    best as u128
}

/// Multi-copy set with `n` points over the `m` buckets `[F j, F (j+1)]`,
/// `j = 1..=m`, where `F = n/m + 1`.
///
/// Requires `m | n`, `m <= n` and `2 n/m - 1 <= m`, so every group has
/// `k_g >= 0`. The claims are the cube edges of every copy.
pub fn gen_multicopy(n: usize, m: usize) -> Result<(Construction, MultiCopySpec)> {
    if m == 0 || m > n || n % m != 0 {
        return Err(Error::InvalidParameter(format!("need 1 <= m <= n and m | n, got n = {n}, m = {m}")));
    }
    let groups_len = n / m;
    if 2 * groups_len - 1 > m {
        return Err(Error::InvalidParameter(format!(
            "m = {m} is too small for {groups_len} groups"
        )));
    }
    let scale = (groups_len + 1) as i64;

    // Global y assignment by decreasing x.
    let mut slots: Vec<(i64, usize, usize)> = Vec::new();
    let mut dims = Vec::with_capacity(groups_len);
    for g in 1..=groups_len {
        let k = group_dimension(m, g);
        dims.push(k);
        for i in 0..k as usize {
            slots.push((((2 * g - 1) as i64) << i, g, i));
        }
    }
    slots.sort_by(|a, b| b.0.cmp(&a.0));
    let mut vectors: Vec<Vec<(i64, i64)>> = dims.iter().map(|&k| vec![(0, 0); k as usize]).collect();
    let mut norms2 = Vec::with_capacity(slots.len());
    for (rank, &(x, g, i)) in slots.iter().enumerate() {
        let y = if rank == 0 { 0 } else { smallest_integer_above_twice_sum(&norms2) };
        let y = i64::try_from(y)
            .ok()
            .filter(|&y| (y as f64) < EXACT_COORD_LIMIT)
            .ok_or_else(|| Error::InvalidParameter("coordinates exceed the exact range".into()))?;
        vectors[g - 1][i] = (x, y);
        norms2.push(norm2(x, y));
    }

    let max_diam2 = vectors.iter().map(|v| hypercube_diameter2(v)).max().unwrap_or(0);
    let delta = i64::try_from(1 + ceil_sqrt(max_diam2))
        .map_err(|_| Error::InvalidParameter("diameter overflow".into()))?;

    let mut coords: Vec<f64> = Vec::new();
    let mut claims = Vec::new();
    let mut next_id = 0usize;
    let too_big = || Error::InvalidParameter("coordinates exceed the exact range".into());
    for (gi, vecs) in vectors.iter().enumerate() {
        let g = gi + 1;
        let k = vecs.len();
        let sums: Vec<(i64, i64)> = (0u64..1 << k)
            .map(|beta| {
                vecs.iter()
                    .enumerate()
                    .filter(|(t, _)| beta >> t & 1 == 1)
                    .fold((0, 0), |(sx, sy), (_, v)| (sx + v.0, sy + v.1))
            })
            .collect();
        for i in 1..2 * g {
            let first = next_id;
            for &(sx, sy) in &sums {
                let x = scale * (i as i64 + sx) + g as i64;
                let y = scale
                    .checked_mul(sy.checked_add(copy_shift_y(g, i, delta)).ok_or_else(too_big)?)
                    .ok_or_else(too_big)?;
                coords.push(x as f64);
                coords.push(y as f64);
                next_id += 1;
            }
            for (beta, &(sx, _)) in sums.iter().enumerate() {
                for t in 0..k {
                    if beta >> t & 1 == 0 {
                        let other = beta | 1 << t;
                        let a = scale * (i as i64 + sx);
                        let b = scale * (i as i64 + sums[other].0 + 1);
                        claims.push(ClaimedPair {
                            i: first + beta,
                            j: first + other,
                            slab: Slab {
                                a: a as f64,
                                b: b as f64,
                            },
                        });
                    }
                }
            }
        }
    }
    let generated = next_id;
    let base = PointSet::from_flat(2, Mode::Exact, coords)?;
    let boundaries: Vec<f64> = (1..=m as i64 + 1).map(|j| (scale * j) as f64).collect();
    let partition = SlabPartition::from_boundaries(&base, boundaries.clone())?;
    let points = pad_to_size(&base, &partition, n)?;

    let groups = vectors
        .into_iter()
        .enumerate()
        .map(|(gi, vectors)| GroupSpec {
            g: gi + 1,
            k: dims[gi],
            vectors,
            epsilon: (gi + 1) as f64 / scale as f64,
        })
        .collect();
    let spec = MultiCopySpec {
        n,
        m,
        groups,
        delta,
        scale,
        generated,
        lower_bound: multicopy_lower_bound(n, m),
        asymptotic_regime: 9 * n < m * m,
    };
    debug_assert_eq!(spec.lower_bound, claims.len());
    let construction = Construction {
        name: "multicopy",
        params: json!({ "n": n, "m": m }),
        points,
        claims,
        m,
        boundaries: Some(boundaries),
    };
    Ok((construction, spec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lowerbound::{gen_hypercube, verify_claims};
    use crate::slab_enum::enumerate_bruteforce;

    #[test]
    fn group_dimensions() {
        assert_eq!(group_dimension(16, 1), 4);
        assert_eq!(group_dimension(16, 2), 2);
        assert_eq!(group_dimension(17, 3), 1);
        assert_eq!(multicopy_lower_bound(32, 16), 4 * 8 + 3 * 2 * 2);
    }

    #[test]
    fn single_group_is_a_shifted_hypercube() {
        let (c, spec) = gen_multicopy(16, 16).unwrap();
        let (h, _) = gen_hypercube(4).unwrap();
        assert_eq!(spec.scale, 2);
        assert_eq!(spec.generated, 16);
        for id in 0..16 {
            let p = c.points.coords(id);
            let q = h.points.coords(id);
            assert_eq!(p[0], 2.0 * (q[0] + 1.0) + 1.0);
            assert_eq!(p[1], 2.0 * q[1]);
        }
    }

    #[test]
    fn exact_diameter_matches_brute_force() {
        let v = [(1, 27), (2, 9), (4, 0)];
        let pts: Vec<(i64, i64)> = (0..8)
            .map(|b: usize| {
                (0..3)
                    .filter(|t| b >> t & 1 == 1)
                    .fold((0, 0), |(x, y), t| (x + v[t].0, y + v[t].1))
            })
            .collect();
        let brute = pts
            .iter()
            .flat_map(|p| pts.iter().map(move |q| norm2(p.0 - q.0, p.1 - q.1)))
            .max()
            .unwrap();
        assert_eq!(hypercube_diameter2(&v), brute);
    }

    #[test]
    fn claims_hold_and_count_is_reached() {
        for (n, m) in [(32, 16), (64, 32), (48, 24), (128, 64)] {
            let (c, spec) = gen_multicopy(n, m).unwrap();
            assert_eq!(c.points.len(), n);
            assert!(spec.verify_dominance());
            assert!(spec.verify_disjoint_copies());
            assert_eq!(c.claimed_count(), spec.lower_bound);
            let report = verify_claims(&c.points, &c.claims);
            assert!(report.all_confirmed(), "n={n} m={m}: {:?}", report.failures.first());
            let p = SlabPartition::from_boundaries(&c.points, c.boundaries.clone().unwrap()).unwrap();
            assert!(p.buckets().all(|b| b.len() == n / m));
            assert!(enumerate_bruteforce(&c.points, &p).count() >= spec.lower_bound);
        }
    }

    #[test]
    fn parameter_checks() {
        assert!(gen_multicopy(30, 16).is_err());
        assert!(gen_multicopy(16, 32).is_err());
        assert!(gen_multicopy(64, 4).is_err());
    }
}
