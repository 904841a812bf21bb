//! Points, squared distances and slabs.
//!
//! A [`PointSet`] stores its coordinates as `f64` regardless of mode. In
//! [`Mode::Exact`] every coordinate is an integer of magnitude at most
//! [`EXACT_COORD_LIMIT`], so the `f64` value is exact and squared distances
//! are accumulated without rounding in an `i128`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest coordinate magnitude accepted in exact mode.
///
/// Coordinates, and the midpoints between them, must be exactly
/// representable as `f64` so that abscissa comparisons never round.
pub const EXACT_COORD_LIMIT: f64 = 4_503_599_627_370_496.0; // 2^52

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(Error::Parse(format!("unknown mode `{other}`"))),
        }
    }
}

/// A squared Euclidean distance.
///
/// Both variants never occur within one point set; comparisons across
/// variants fall back to `f64`.
#[derive(Clone, Copy, Debug)]
pub enum Dist2 {
    Exact(i128),
    Float(f64),
}

impl Dist2 {
    pub fn to_f64(self) -> f64 {
        match self {
            Dist2::Exact(v) => v as f64,
            Dist2::Float(v) => v,
        }
    }

    /// The Euclidean distance, rounded up by a small relative margin so
    /// that boxes built from it never miss a point at exactly this distance.
    pub fn sqrt_upper(self) -> f64 {
        let r = self.to_f64().sqrt();
        r * (1.0 + 1e-9) + f64::MIN_POSITIVE
    }
}

impl PartialEq for Dist2 {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Dist2 {}

impl PartialOrd for Dist2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dist2 {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Dist2::Exact(a), Dist2::Exact(b)) => a.cmp(b),
            (Dist2::Float(a), Dist2::Float(b)) => a.total_cmp(b),
            (a, b) => a.to_f64().total_cmp(&b.to_f64()),
        }
    }
}

impl fmt::Display for Dist2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dist2::Exact(v) => write!(f, "{v}"),
            Dist2::Float(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for Dist2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Dist2::Exact(v) => s.serialize_i128(*v),
            Dist2::Float(v) => s.serialize_f64(*v),
        }
    }
}

/// Borrowed view of one point of a [`PointSet`].
#[derive(Clone, Copy, Debug)]
pub struct Point<'a> {
    pub id: usize,
    pub coords: &'a [f64],
}

impl Point<'_> {
    pub fn x(&self) -> f64 {
        self.coords[0]
    }
}

/// `n` points in `R^d` with stable ids `0..n`.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    dim: usize,
    mode: Mode,
    coords: Vec<f64>,
}

impl PointSet {
    /// Builds a point set from rows of coordinates.
    pub fn new(dim: usize, mode: Mode, rows: &[Vec<f64>]) -> Result<Self> {
        let mut coords = Vec::with_capacity(rows.len() * dim);
        for (id, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                    id,
                });
            }
            coords.extend_from_slice(row);
        }
        Self::from_flat(dim, mode, coords)
    }

    /// Builds a point set from a flat row-major coordinate buffer.
    pub fn from_flat(dim: usize, mode: Mode, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("dimension must be at least 1".into()));
        }
        if coords.len() % dim != 0 {
            return Err(Error::InvalidParameter(format!(
                "{} coordinates do not form whole points of dimension {dim}",
                coords.len()
            )));
        }
        for (k, &c) in coords.iter().enumerate() {
            if !c.is_finite() {
                return Err(Error::InvalidCoordinate {
                    id: k / dim,
                    value: c,
                    reason: "not finite",
                });
            }
            if mode == Mode::Exact {
                if c.fract() != 0.0 {
                    return Err(Error::InvalidCoordinate {
                        id: k / dim,
                        value: c,
                        reason: "not an integer in exact mode",
                    });
                }
                if c.abs() > EXACT_COORD_LIMIT {
                    return Err(Error::InvalidCoordinate {
                        id: k / dim,
                        value: c,
                        reason: "exceeds the exact-mode magnitude limit",
                    });
                }
            }
        }
        Ok(PointSet { dim, mode, coords })
    }

    /// Convenience constructor for integer points in exact mode.
    pub fn from_ints(dim: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let rows: Vec<Vec<f64>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| v as f64).collect())
            .collect();
        Self::new(dim, Mode::Exact, &rows)
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn coords(&self, id: usize) -> &[f64] {
        &self.coords[id * self.dim..(id + 1) * self.dim]
    }

    #[inline]
    pub fn coord(&self, id: usize, axis: usize) -> f64 {
        self.coords[id * self.dim + axis]
    }

    /// First coordinate.
    #[inline]
    pub fn x(&self, id: usize) -> f64 {
        self.coords[id * self.dim]
    }

    pub fn point(&self, id: usize) -> Point<'_> {
        Point {
            id,
            coords: self.coords(id),
        }
    }

    pub fn points(&self) -> impl Iterator<Item = Point<'_>> + '_ {
        (0..self.len()).map(move |id| self.point(id))
    }

    pub fn flat_coords(&self) -> &[f64] {
        &self.coords
    }

    #[inline]
    pub fn dist2(&self, i: usize, j: usize) -> Dist2 {
        let p = self.coords(i);
        let q = self.coords(j);
        match self.mode {
            Mode::Exact => {
                let mut acc: i128 = 0;
                for (a, b) in p.iter().zip(q) {
                    let t = (*a as i64 - *b as i64) as i128;
                    acc += t * t;
                }
                Dist2::Exact(acc)
            }
            Mode::Float => {
                let mut acc = 0.0;
                for (a, b) in p.iter().zip(q) {
                    let t = a - b;
                    acc += t * t;
                }
                Dist2::Float(acc)
            }
        }
    }

    /// Squared difference of two points along one axis, in the same
    /// arithmetic as [`PointSet::dist2`].
    #[inline]
    pub fn axis_gap2(&self, i: usize, j: usize, axis: usize) -> Dist2 {
        let a = self.coord(i, axis);
        let b = self.coord(j, axis);
        match self.mode {
            Mode::Exact => {
                let t = (a as i64 - b as i64) as i128;
                Dist2::Exact(t * t)
            }
            Mode::Float => {
                let t = a - b;
                Dist2::Float(t * t)
            }
        }
    }

    pub fn pair(&self, i: usize, j: usize) -> PairResult {
        PairResult::new(i, j, self.dist2(i, j))
    }

    /// Ids sorted by first coordinate (ties by id).
    pub fn ids_by_x(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = (0..self.len()).collect();
        ids.sort_by(|&a, &b| self.x(a).total_cmp(&self.x(b)).then(a.cmp(&b)));
        ids
    }

    /// Axis-aligned bounding box as `(lo, hi)`; `None` for an empty set.
    pub fn bounding_box(&self) -> Option<(Vec<f64>, Vec<f64>)> {
        if self.is_empty() {
            return None;
        }
        let mut lo = self.coords(0).to_vec();
        let mut hi = lo.clone();
        for id in 1..self.len() {
            for (axis, &c) in self.coords(id).iter().enumerate() {
                lo[axis] = lo[axis].min(c);
                hi[axis] = hi[axis].max(c);
            }
        }
        Some((lo, hi))
    }

    /// Upper bound on the diameter: the bounding-box diagonal.
    pub fn diameter_bound(&self) -> f64 {
        match self.bounding_box() {
            None => 0.0,
            Some((lo, hi)) => lo
                .iter()
                .zip(&hi)
                .map(|(a, b)| (b - a) * (b - a))
                .sum::<f64>()
                .sqrt(),
        }
    }

    /// Returns the subset restricted to `ids`, renumbered `0..ids.len()`.
    pub fn subset(&self, ids: &[usize]) -> PointSet {
        let mut coords = Vec::with_capacity(ids.len() * self.dim);
        for &id in ids {
            coords.extend_from_slice(self.coords(id));
        }
        PointSet {
            dim: self.dim,
            mode: self.mode,
            coords,
        }
    }

    /// Appends the points of `other`; ids of `self` are preserved.
    pub fn extend(&mut self, other: &PointSet) -> Result<()> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
                id: self.len(),
            });
        }
        if other.mode != self.mode {
            return Err(Error::InvalidParameter("cannot mix exact and float point sets".into()));
        }
        self.coords.extend_from_slice(&other.coords);
        Ok(())
    }

    /// Ids whose first coordinate lies in the closed interval `[a, b]`.
    pub fn ids_in_slab(&self, slab: Slab) -> Vec<usize> {
        (0..self.len()).filter(|&id| slab.contains(self.x(id))).collect()
    }
}

/// The closed vertical slab `a <= x <= b`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Slab {
    pub a: f64,
    pub b: f64,
}

impl Slab {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a < b) {
            return Err(Error::InvalidSlab { a, b });
        }
        Ok(Slab { a, b })
    }

    #[inline]
    pub fn contains(&self, x: f64) -> bool {
        self.a <= x && x <= self.b
    }
}

/// An unordered pair of point ids (`i < j`) with its squared distance.
///
/// Pairs are ordered by `(dist2, i, j)`; every minimum in this crate is
/// taken in that order, which makes results deterministic under ties.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairResult {
    pub i: usize,
    pub j: usize,
    pub dist2: Dist2,
}

impl PairResult {
    pub fn new(a: usize, b: usize, dist2: Dist2) -> Self {
        debug_assert_ne!(a, b);
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        PairResult { i, j, dist2 }
    }

    pub fn key(&self) -> (usize, usize) {
        (self.i, self.j)
    }

    /// Keeps the smaller of `best` and `cand` in `(dist2, i, j)` order.
    #[inline]
    pub fn min_into(best: &mut Option<PairResult>, cand: PairResult) {
        match best {
            Some(b) if *b <= cand => {}
            _ => *best = Some(cand),
        }
    }
}

impl Ord for PairResult {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dist2
            .cmp(&other.dist2)
            .then(self.i.cmp(&other.i))
            .then(self.j.cmp(&other.j))
    }
}

impl PartialOrd for PairResult {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Serialize for PairResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeTuple;
        let mut t = s.serialize_tuple(3)?;
        t.serialize_element(&self.i)?;
        t.serialize_element(&self.j)?;
        t.serialize_element(&self.dist2)?;
        t.end()
    }
}

/// One violation of general position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Collision {
    /// Two points share a first coordinate.
    SameX { i: usize, j: usize },
    /// Two distinct pairs have the same squared distance.
    SameDistance {
        first: (usize, usize),
        second: (usize, usize),
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneralPositionReport {
    pub distinct_x: bool,
    pub distinct_dist: bool,
    pub colliding: Vec<Collision>,
}

impl GeneralPositionReport {
    pub fn ok(&self) -> bool {
        self.distinct_x && self.distinct_dist
    }
}

/// Checks the two general-position assumptions: distinct first
/// coordinates and pairwise-distinct distances.
///
/// Distance ties are reported between consecutive pairs of the sorted
/// distance list, so a group of `t` equal distances yields `t - 1` entries.
pub fn validate_general_position(points: &PointSet) -> GeneralPositionReport {
    let mut colliding = Vec::new();

    let order = points.ids_by_x();
    let mut distinct_x = true;
    for w in order.windows(2) {
        if points.x(w[0]) == points.x(w[1]) {
            distinct_x = false;
            let (i, j) = (w[0].min(w[1]), w[0].max(w[1]));
            colliding.push(Collision::SameX { i, j });
        }
    }

    let n = points.len();
    let mut pairs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            pairs.push(points.pair(i, j));
        }
    }
    pairs.sort_unstable();
    let mut distinct_dist = true;
    for w in pairs.windows(2) {
        if w[0].dist2 == w[1].dist2 {
            distinct_dist = false;
            colliding.push(Collision::SameDistance {
                first: w[0].key(),
                second: w[1].key(),
            });
        }
    }

    GeneralPositionReport {
        distinct_x,
        distinct_dist,
        colliding,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_points_are_in_general_position() {
        let s = PointSet::from_ints(2, &[vec![0, 0], vec![1, 0]]).unwrap();
        let r = validate_general_position(&s);
        assert!(r.distinct_x && r.distinct_dist);
        assert!(r.colliding.is_empty());
    }

    #[test]
    fn equal_first_coordinates_are_reported() {
        let s = PointSet::from_ints(2, &[vec![0, 0], vec![0, 1]]).unwrap();
        let r = validate_general_position(&s);
        assert!(!r.distinct_x);
        assert!(r.distinct_dist);
        assert_eq!(r.colliding, vec![Collision::SameX { i: 0, j: 1 }]);
    }

    #[test]
    fn equal_spacing_gives_distance_tie() {
        let s = PointSet::from_ints(2, &[vec![0, 0], vec![3, 0], vec![6, 0]]).unwrap();
        let r = validate_general_position(&s);
        assert!(r.distinct_x);
        assert!(!r.distinct_dist);
        assert_eq!(
            r.colliding,
            vec![Collision::SameDistance {
                first: (0, 1),
                second: (1, 2)
            }]
        );
    }

    #[test]
    fn exact_mode_rejects_fractional_and_huge_coordinates() {
        assert!(PointSet::new(1, Mode::Exact, &[vec![0.5]]).is_err());
        assert!(PointSet::new(1, Mode::Exact, &[vec![EXACT_COORD_LIMIT * 2.0]]).is_err());
        assert!(PointSet::new(1, Mode::Exact, &[vec![EXACT_COORD_LIMIT]]).is_ok());
        assert!(PointSet::new(1, Mode::Float, &[vec![f64::NAN]]).is_err());
    }

    #[test]
    fn rows_must_match_dimension() {
        let err = PointSet::new(2, Mode::Float, &[vec![0.0, 1.0], vec![2.0]]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { id: 1, .. }));
    }

    #[test]
    fn exact_distance_does_not_round() {
        let big = (1i64 << 52) - 1;
        let s = PointSet::from_ints(2, &[vec![-big, -big], vec![big, big - 1]]).unwrap();
        let dx = 2 * big as i128;
        let dy = 2 * big as i128 - 1;
        assert_eq!(s.dist2(0, 1), Dist2::Exact(dx * dx + dy * dy));
    }

    #[test]
    fn pairs_order_by_distance_then_ids() {
        let a = PairResult::new(3, 1, Dist2::Exact(5));
        let b = PairResult::new(0, 2, Dist2::Exact(5));
        let c = PairResult::new(0, 1, Dist2::Exact(4));
        assert_eq!((a.i, a.j), (1, 3));
        let mut v = vec![a, b, c];
        v.sort();
        assert_eq!(v, vec![c, b, a]);
    }

    #[test]
    fn slab_requires_a_less_than_b() {
        assert!(Slab::new(1.0, 1.0).is_err());
        assert!(Slab::new(2.0, 1.0).is_err());
        let s = Slab::new(0.0, 1.0).unwrap();
        assert!(s.contains(0.0) && s.contains(1.0) && !s.contains(1.5));
    }
}
