//! The point-set text format.
//!
//! Lines starting with `#` are comments. The first non-comment line is the
//! point count `n`; each following non-comment line holds one point as
//! `X Y`, where each coordinate is `INT` or `INT/POSINT`. The format
//! round-trips all rational coordinates exactly.

use crate::geom::{GeneralPosition, Point, PointSet};
use crate::rational::{format_rational, parse_rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FileError {
    #[error("line {0}: {1}")]
    Parse(usize, String),
    #[error("expected {0} points, found {1}")]
    WrongCount(usize, usize),
    #[error("invalid point set: {0}")]
    BadSet(String),
    #[error("points {0}, {1}, {2} are collinear")]
    Collinear(usize, usize, usize),
}

/// Renders a point set with optional header comments.
pub fn write_point_set(ps: &PointSet, header: &[String]) -> String {
    let mut out = String::new();
    for h in header {
        out.push_str("# ");
        out.push_str(h);
        out.push('\n');
    }
    out.push_str(&ps.len().to_string());
    out.push('\n');
    for p in ps.points() {
        out.push_str(&format_rational(&p.x));
        out.push(' ');
        out.push_str(&format_rational(&p.y));
        out.push('\n');
    }
    out
}

/// Parses the text format. Does not check general position.
pub fn parse_point_set(text: &str) -> Result<PointSet, FileError> {
    let mut n: Option<usize> = None;
    let mut pts: Vec<Point> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if n.is_none() {
            let count: usize = line
                .parse()
                .map_err(|_| FileError::Parse(lineno + 1, format!("invalid count `{line}`")))?;
            n = Some(count);
            continue;
        }
        let mut it = line.split_whitespace();
        let (xs, ys) = match (it.next(), it.next(), it.next()) {
            (Some(x), Some(y), None) => (x, y),
            _ => {
                return Err(FileError::Parse(
                    lineno + 1,
                    format!("expected `X Y`, found `{line}`"),
                ))
            }
        };
        let x = parse_rational(xs).map_err(|e| FileError::Parse(lineno + 1, e.to_string()))?;
        let y = parse_rational(ys).map_err(|e| FileError::Parse(lineno + 1, e.to_string()))?;
        pts.push(Point::new(x, y));
    }
    let n = n.ok_or_else(|| FileError::Parse(0, "missing point count".into()))?;
    if pts.len() != n {
        return Err(FileError::WrongCount(n, pts.len()));
    }
    PointSet::new(pts).map_err(|e| FileError::BadSet(e.to_string()))
}

/// Parses and certifies general position, reporting the first violating
/// triple otherwise.
pub fn load_point_set(text: &str) -> Result<PointSet, FileError> {
    let ps = parse_point_set(text)?;
    match ps.general_position() {
        GeneralPosition::Certificate => Ok(ps),
        GeneralPosition::Violation(i, j, k) => Err(FileError::Collinear(i, j, k)),
    }
}
