//! Greedy construction with `C(m+1, 2)` distinct slab closest pairs over the
//! unit boundaries `1, 2, ..., m+1`.
//!
//! Slabs are processed by decreasing size. Slab `[i, j]` gets a pair with one
//! point in bucket `[i, i+1]` and one in `[j-1, j]`, placed high above
//! everything so far and one unit longer than the previous pair. Larger
//! slabs are handled first, so every pair inside a slab is either its own
//! pair or a longer one.

use serde::Serialize;
use serde_json::json;

use super::padding::pad_to_size;
use super::{binomial2, ClaimedPair, Construction};
use crate::error::{Error, Result};
use crate::geom::{Mode, PointSet, Slab};
use crate::partition::SlabPartition;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GreedySpec {
    pub m: usize,
    /// Slabs `(i, j)` in placement order; pair `t` has ids `2t, 2t+1`.
    pub order: Vec<(usize, usize)>,
    /// Length of each placed pair.
    pub lengths: Vec<f64>,
    /// Final running diameter bound `D`.
    pub diameter: f64,
}

fn greedy_order(m: usize) -> Vec<(usize, usize)> {
    let mut order = Vec::with_capacity(binomial2(m + 1));
    for size in (1..=m).rev() {
        for i in 1..=m + 1 - size {
            order.push((i, i + size));
        }
    }
    order
}

/// `m (m+1)` points in the plane whose `C(m+1, 2)` slabs over the boundaries
/// `1..=m+1` have pairwise distinct closest pairs.
pub fn gen_theorem31(m: usize) -> Result<(Construction, GreedySpec)> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    let order = greedy_order(m);
    let t_total = order.len();
    let quarter = 4.0 * t_total as f64;
    let d0 = (m + 2) as f64;
    // Vertical clearance above the bounding box. It exceeds every running
    // `D + 2`, which keeps new points far from all earlier ones.
    let clearance = d0 + (t_total - 1) as f64 + 3.0;

    let mut coords = Vec::with_capacity(4 * t_total);
    let mut lengths = Vec::with_capacity(t_total);
    let mut claims = Vec::with_capacity(t_total);
    let mut d = 0.0f64;
    let mut top = 0.0f64;
    for (t, &(i, j)) in order.iter().enumerate() {
        // Distinct x values inside the end buckets.
        let px = i as f64 + (2 * t + 1) as f64 / quarter;
        let qx = (j - 1) as f64 + (2 * t + 2) as f64 / quarter;
        let (len, y) = if t == 0 { (d0, 0.0) } else { (d + 1.0, top + clearance) };
        let dx = qx - px;
        let h = (len * len - dx * dx).sqrt();
        coords.extend_from_slice(&[px, y, qx, y + h]);
        d = (dx * dx + h * h).sqrt();
        top = y + h;
        lengths.push(d);
        claims.push(ClaimedPair {
            i: 2 * t,
            j: 2 * t + 1,
            slab: Slab {
                a: i as f64,
                b: j as f64,
            },
        });
    }
    let points = PointSet::from_flat(2, Mode::Float, coords)?;
    let spec = GreedySpec {
        m,
        order,
        lengths,
        diameter: d,
    };
    let construction = Construction {
        name: "theorem31",
        params: json!({ "m": m }),
        points,
        claims,
        m,
        boundaries: Some(unit_boundaries(m)),
    };
    Ok((construction, spec))
}

fn unit_boundaries(m: usize) -> Vec<f64> {
    (1..=m + 1).map(|i| i as f64).collect()
}

/// The greedy set for `m` padded to `n` points with balanced buckets.
pub fn gen_theorem31_padded(m: usize, n: usize) -> Result<(Construction, GreedySpec)> {
    let (mut c, spec) = gen_theorem31(m)?;
    let partition = SlabPartition::from_boundaries(&c.points, unit_boundaries(m))?;
    c.points = pad_to_size(&c.points, &partition, n)?;
    c.params = json!({ "m": m, "n": n });
    Ok((c, spec))
}

/// `n` points over `m` unit buckets built from the greedy set for
/// `m' = floor(sqrt(n) / 4)` plus far-away padding. The claims cover
/// `C(m'+1, 2)` slabs.
pub fn gen_corollary32(n: usize, m: usize) -> Result<(Construction, GreedySpec)> {
    let mut m_prime = 0;
    while 16 * (m_prime + 1) * (m_prime + 1) <= n {
        m_prime += 1;
    }
    if m_prime == 0 {
        return Err(Error::InvalidParameter(format!("n = {n} is below 16")));
    }
    if m < m_prime || m > n {
        return Err(Error::InvalidParameter(format!(
            "need {m_prime} <= m <= n, got m = {m}"
        )));
    }
    let (mut c, spec) = gen_theorem31(m_prime)?;
    let partition = SlabPartition::from_boundaries(&c.points, unit_boundaries(m))?;
    c.points = pad_to_size(&c.points, &partition, n)?;
    c.name = "corollary32";
    c.params = json!({ "n": n, "m": m, "m_prime": m_prime });
    c.m = m;
    c.boundaries = Some(unit_boundaries(m));
    Ok((c, spec))
}
