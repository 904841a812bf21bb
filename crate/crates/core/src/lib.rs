//! Closest pairs in vertical slabs.
//!
//! For a point set `S` in `R^d` split into `m` vertical buckets, the crate
//! enumerates `A(S, m)`, the distinct closest pairs over all slabs bounded
//! by two bucket boundaries, generates point sets on which `A(S, m)` is
//! large, and answers closest-pair queries for arbitrary vertical slabs
//! with a linear-space index.
//!
//! ```
//! use slabcp::{preprocess, random_points, Algo};
//!
//! let points = random_points(500, 2, 7);
//! let index = preprocess(&points, 23, Algo::Dnc).unwrap();
//! let pair = index.query(0.25, 0.5).unwrap().unwrap();
//! assert!(pair.i < pair.j);
//! ```

pub mod cli;
pub mod closest_pair;
pub mod error;
pub mod experiment;
pub mod geom;
pub mod indexes;
pub mod io;
pub mod lowerbound;
pub mod partition;
pub mod query;
pub mod random;
pub mod slab_enum;
pub mod wspd;

pub use closest_pair::{closest_pair_bruteforce, closest_pair_dnc};
pub use error::{Error, Result};
pub use geom::{validate_general_position, Dist2, Mode, PairResult, PointSet, Slab};
pub use partition::{build_slab_partition, SlabPartition};
pub use query::{preprocess, query_bruteforce, sparsity_bound, QueryTrace, SlabCPIndex};
pub use random::{random_points, random_slabs};
pub use slab_enum::{enumerate, enumerate_bruteforce, enumerate_dnc, Algo, EnumerationResult};
pub use wspd::{build_split_tree, build_wspd, Wspd};
