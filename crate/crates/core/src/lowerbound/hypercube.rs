//! Hypercube set: all subset sums of `k` vectors `v_i = (2^i, y_i)` whose
//! norms dominate twice the sum of all later norms. Each of the `k 2^(k-1)`
//! cube edges is the closest pair of the slab spanned by its endpoints.

use serde::Serialize;
use serde_json::json;

use super::exact::{dominates, smallest_integer_above_twice_sum};
use super::{ClaimedPair, Construction};
use crate::error::{Error, Result};
use crate::geom::{Mode, PointSet, Slab};

pub const MAX_HYPERCUBE_K: u32 = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypercubeSpec {
    pub k: u32,
    /// `(x_i, y_i)` for `i = 0..k`.
    pub vectors: Vec<(i64, i64)>,
}

impl HypercubeSpec {
    pub fn new(k: u32) -> Result<Self> {
        if !(1..=MAX_HYPERCUBE_K).contains(&k) {
            return Err(Error::InvalidParameter(format!(
                "hypercube dimension k = {k} must be in 1..={MAX_HYPERCUBE_K}"
            )));
        }
        let k = k as usize;
        let mut vectors = vec![(0i64, 0i64); k];
        let mut norms2 = vec![0u128; k];
        for i in (0..k).rev() {
            let x = 1i64 << i;
            let y = if i == k - 1 {
                0
            } else {
                smallest_integer_above_twice_sum(&norms2[i + 1..])
            };
            let y = i64::try_from(y).map_err(|_| Error::InvalidParameter("y overflow".into()))?;
            vectors[i] = (x, y);
            norms2[i] = norm2(x, y);
        }
        Ok(HypercubeSpec { k: k as u32, vectors })
    }

    /// Certifies `|v_i| > 2 * sum_{j > i} |v_j|` for every `i < k - 1`.
    pub fn verify_dominance(&self) -> bool {
        let norms2: Vec<u128> = self.vectors.iter().map(|&(x, y)| norm2(x, y)).collect();
        (0..norms2.len().saturating_sub(1)).all(|i| dominates(norms2[i], &norms2[i + 1..]))
    }

    /// Point for the bit mask `beta` (bit `i` selects `v_i`).
    pub fn point(&self, beta: u64) -> (i64, i64) {
        self.vectors
            .iter()
            .enumerate()
            .filter(|(i, _)| beta >> i & 1 == 1)
            .fold((0, 0), |(sx, sy), (_, &(x, y))| (sx + x, sy + y))
    }
}

pub(crate) fn norm2(x: i64, y: i64) -> u128 {
    let (x, y) = (x as i128, y as i128);
    (x * x + y * y) as u128
}

/// Hypercube set with `2^k` points; point `id` is the subset sum for mask
/// `id`, so its first coordinate equals `id`.
pub fn gen_hypercube(k: u32) -> Result<(Construction, HypercubeSpec)> {
    let spec = HypercubeSpec::new(k)?;
    let n = 1u64 << k;
    let mut coords = Vec::with_capacity(2 * n as usize);
    for beta in 0..n {
        let (x, y) = spec.point(beta);
        coords.push(x as f64);
        coords.push(y as f64);
    }
    let points = PointSet::from_flat(2, Mode::Exact, coords)?;

    let mut claims = Vec::with_capacity(k as usize * (n as usize) / 2);
    for beta in 0..n {
        for t in 0..k {
            if beta >> t & 1 == 0 {
                let other = beta | 1 << t;
                claims.push(ClaimedPair {
                    i: beta as usize,
                    j: other as usize,
                    slab: Slab {
                        a: points.x(beta as usize),
                        b: points.x(other as usize),
                    },
                });
            }
        }
    }
    let construction = Construction {
        name: "hypercube",
        params: json!({ "k": k }),
        points,
        claims,
        m: n as usize,
        boundaries: None,
    };
    Ok((construction, spec))
}
