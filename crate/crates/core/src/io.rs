//! Plain-text point files.
//!
//! ```text
//! dim 2 mode exact
//! 0 0
//! 3 4
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::geom::{Mode, PointSet};

pub fn parse_points(text: &str) -> Result<PointSet> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(no, l)| (no + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("missing `dim <d> mode <exact|float>` header".into()))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    let (dim, mode) = match tokens.as_slice() {
        ["dim", d, "mode", m] => {
            let dim: usize = d
                .parse()
                .map_err(|_| Error::Parse(format!("bad dimension `{d}`")))?;
            (dim, m.parse::<Mode>()?)
        }
        _ => return Err(Error::Parse(format!("bad header `{header}`"))),
    };
    if dim == 0 {
        return Err(Error::Parse("dimension must be at least 1".into()));
    }

    let mut coords = Vec::new();
    for (id, (no, line)) in lines.enumerate() {
        let before = coords.len();
        for tok in line.split_whitespace() {
            let v: f64 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("line {no}: bad number `{tok}`")))?;
            coords.push(v);
        }
        let found = coords.len() - before;
        if found != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found,
                id,
            });
        }
    }
    PointSet::from_flat(dim, mode, coords)
}

pub fn format_points(points: &PointSet) -> String {
    let mut out = format!("dim {} mode {}\n", points.dim(), points.mode().as_str());
    for p in points.points() {
        let mut first = true;
        for &c in p.coords {
            if !first {
                out.push(' ');
            }
            first = false;
            match points.mode() {
                Mode::Exact => write!(out, "{}", c as i64).unwrap(),
                Mode::Float => write!(out, "{c:?}").unwrap(),
            }
        }
        out.push('\n');
    }
    out
}

pub fn read_points(path: impl AsRef<Path>) -> Result<PointSet> {
    parse_points(&std::fs::read_to_string(path)?)
}

pub fn write_points(path: impl AsRef<Path>, points: &PointSet) -> Result<()> {
    std::fs::write(path, format_points(points))?;
    Ok(())
}

/// Parses a query file: one `a b` pair per line.
pub fn parse_queries(text: &str) -> Result<Vec<(f64, f64)>> {
    let mut out = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let vals: Vec<f64> = line
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::Parse(format!("line {}: bad number `{t}`", no + 1)))
            })
            .collect::<Result<_>>()?;
        match vals.as_slice() {
            [a, b] => out.push((*a, *b)),
            _ => {
                return Err(Error::Parse(format!(
                    "line {}: expected `a b`, found {} values",
                    no + 1,
                    vals.len()
                )))
            }
        }
    }
    Ok(out)
}
