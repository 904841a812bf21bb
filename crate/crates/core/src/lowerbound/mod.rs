//! Point sets with many distinct slab closest pairs, and verifiers for the
//! pairs each construction claims.
//!
//! Every generator returns a [`Construction`]: the points, one
//! [`ClaimedPair`] per slab whose closest pair is known by construction, and
//! the bucket count `m` under which the claims imply `|A(S, m)| >=
//! claims.len()`.

mod exact;
mod hypercube;
mod multicopy;
mod padding;
mod theorem31;

use serde::Serialize;

use crate::closest_pair::closest_pair_bruteforce;
use crate::geom::{PairResult, PointSet, Slab};

pub use exact::{ceil_sqrt, dominates, smallest_integer_above_twice_sum};
pub use hypercube::{gen_hypercube, HypercubeSpec, MAX_HYPERCUBE_K};
pub use multicopy::{gen_multicopy, multicopy_lower_bound, GroupSpec, MultiCopySpec};
pub use padding::pad_to_size;
pub use theorem31::{gen_corollary32, gen_theorem31, gen_theorem31_padded, GreedySpec};

/// A pair claimed to be the closest pair of `slab`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ClaimedPair {
    pub i: usize,
    pub j: usize,
    pub slab: Slab,
}

#[derive(Clone, Debug)]
pub struct Construction {
    pub name: &'static str,
    pub params: serde_json::Value,
    pub points: PointSet,
    pub claims: Vec<ClaimedPair>,
    /// Bucket count the claims refer to.
    pub m: usize,
    /// Natural partition boundaries, when the construction has them.
    pub boundaries: Option<Vec<f64>>,
}

impl Construction {
    pub fn claimed_count(&self) -> usize {
        self.claims.len()
    }

    pub fn sidecar(&self) -> Sidecar {
        Sidecar {
            construction: self.name.to_string(),
            params: self.params.clone(),
            pairs: self.claims.iter().map(|c| [c.i, c.j]).collect(),
            slabs: self.claims.iter().map(|c| [c.slab.a, c.slab.b]).collect(),
            claimed_count: self.claimed_count(),
        }
    }
}

/// JSON sidecar written next to a generated point file.
#[derive(Clone, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct Sidecar {
    pub construction: String,
    pub params: serde_json::Value,
    pub pairs: Vec<[usize; 2]>,
    pub slabs: Vec<[f64; 2]>,
    pub claimed_count: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimFailure {
    pub claim: ClaimedPair,
    pub actual: Option<PairResult>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimReport {
    pub checked: usize,
    pub confirmed: usize,
    pub failures: Vec<ClaimFailure>,
}

impl ClaimReport {
    pub fn all_confirmed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks each claim against a brute-force closest pair of its slab.
pub fn verify_claims(points: &PointSet, claims: &[ClaimedPair]) -> ClaimReport {
    let mut failures = Vec::new();
    for claim in claims {
        let actual = closest_pair_bruteforce(&points.ids_in_slab(claim.slab), points);
        if actual.map(|p| p.key()) != Some((claim.i.min(claim.j), claim.i.max(claim.j))) {
            failures.push(ClaimFailure {
                claim: *claim,
                actual,
            });
        }
    }
    ClaimReport {
        checked: claims.len(),
        confirmed: claims.len() - failures.len(),
        failures,
    }
}

pub fn binomial2(m: usize) -> usize {
    m * m.saturating_sub(1) / 2
}
