//! Exact planar primitives: points, orientation, convexity, hulls and the
//! separation predicates used by the point-family constructions.
//!
//! Everything in this module is computed over exact rationals (internally,
//! over integer-scaled mirrors of the coordinates). There is no floating
//! point anywhere on any predicate path, so repeated evaluation always
//! yields identical results and the general-position certificates produced
//! by the generators are sound.

use crate::rational::{format_rational, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use std::cmp::Ordering;
use std::fmt;

/// A point of the working plane with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    /// Integer-coordinate point.
    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(crate::rational::rat(x), crate::rational::rat(y))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}",
            format_rational(&self.x),
            format_rational(&self.y)
        )
    }
}

/// Sign of the orientation determinant of an ordered point triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    pub fn from_sign(s: i8) -> Self {
        match s.cmp(&0) {
            Ordering::Less => Orientation::Clockwise,
            Ordering::Equal => Orientation::Collinear,
            Ordering::Greater => Orientation::CounterClockwise,
        }
    }

    pub fn sign(self) -> i8 {
        match self {
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
            Orientation::CounterClockwise => 1,
        }
    }

    pub fn reversed(self) -> Self {
        Orientation::from_sign(-self.sign())
    }
}

/// Exact sign of `(q - p) x (r - p)` over rationals: `+1` for a left turn,
/// `0` for collinear triples, `-1` for a right turn.
pub fn orientation(p: &Point, q: &Point, r: &Point) -> Orientation {
    let ux = &q.x - &p.x;
    let uy = &q.y - &p.y;
    let vx = &r.x - &p.x;
    let vy = &r.y - &p.y;
    let det = &ux * &vy - &uy * &vx;
    Orientation::from_sign(match det.numer().sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    })
}

/// Errors when assembling a point set.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PointSetError {
    #[error("point set is empty")]
    Empty,
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
}

/// Outcome of the general-position check: either a certificate or the
/// lexicographically first collinear triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneralPosition {
    Certificate,
    Violation(usize, usize, usize),
}

impl GeneralPosition {
    pub fn is_certificate(&self) -> bool {
        matches!(self, GeneralPosition::Certificate)
    }
}

/// An immutable labelled point sequence. Labels are the indices `0..n-1`.
///
/// On construction the coordinates are mirrored into integer form (scaled by
/// the common denominator) so that all predicates run on integer
/// determinants, with an `i64` fast path when the scaled values are small.
#[derive(Debug, Clone)]
pub struct PointSet {
    pts: Vec<Point>,
    scaled: Vec<(BigInt, BigInt)>,
    small: Option<Vec<(i64, i64)>>,
}

impl PointSet {
    pub fn new(pts: Vec<Point>) -> Result<Self, PointSetError> {
        if pts.is_empty() {
            return Err(PointSetError::Empty);
        }
        for i in 0..pts.len() {
            for j in (i + 1)..pts.len() {
                if pts[i] == pts[j] {
                    return Err(PointSetError::DuplicatePoint(i, j));
                }
            }
        }
        let mut denom = BigInt::one();
        for p in &pts {
            denom = denom.lcm(p.x.denom());
            denom = denom.lcm(p.y.denom());
        }
        let scaled: Vec<(BigInt, BigInt)> = pts
            .iter()
            .map(|p| {
                let sx = (p.x.numer() * &denom) / p.x.denom();
                let sy = (p.y.numer() * &denom) / p.y.denom();
                (sx, sy)
            })
            .collect();
        // i64 mirror only when every magnitude stays far from the overflow
        // boundary of the i128 determinant path.
        let bound = BigInt::from(1i64 << 61);
        let small = if scaled
            .iter()
            .all(|(x, y)| x.magnitude() < bound.magnitude() && y.magnitude() < bound.magnitude())
        {
            Some(
                scaled
                    .iter()
                    .map(|(x, y)| (i64::try_from(x).unwrap(), i64::try_from(y).unwrap()))
                    .collect(),
            )
        } else {
            None
        };
        Ok(PointSet { pts, scaled, small })
    }

    pub fn from_int_coords(coords: &[(i64, i64)]) -> Result<Self, PointSetError> {
        PointSet::new(
            coords
                .iter()
                .map(|&(x, y)| Point::from_ints(x, y))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.pts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pts.is_empty()
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.pts[i]
    }

    pub fn points(&self) -> &[Point] {
        &self.pts
    }

    /// Orientation sign of the indexed triple: `+1` left, `0` collinear, `-1` right.
    pub fn orient(&self, i: usize, j: usize, k: usize) -> i8 {
        if let Some(sm) = &self.small {
            let (px, py) = sm[i];
            let (qx, qy) = sm[j];
            let (rx, ry) = sm[k];
            let ux = qx as i128 - px as i128;
            let uy = qy as i128 - py as i128;
            let vx = rx as i128 - px as i128;
            let vy = ry as i128 - py as i128;
            let det = ux * vy - uy * vx;
            return det.signum() as i8;
        }
        let (px, py) = &self.scaled[i];
        let (qx, qy) = &self.scaled[j];
        let (rx, ry) = &self.scaled[k];
        let det = (qx - px) * (ry - py) - (qy - py) * (rx - px);
        match det.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    pub fn orientation_of(&self, i: usize, j: usize, k: usize) -> Orientation {
        Orientation::from_sign(self.orient(i, j, k))
    }

    /// Compares two points by `(x, y)`.
    pub fn cmp_xy(&self, i: usize, j: usize) -> Ordering {
        if let Some(sm) = &self.small {
            return sm[i].cmp(&sm[j]);
        }
        self.scaled[i].cmp(&self.scaled[j])
    }

    /// Checks that no three points are collinear. On failure, reports the
    /// lexicographically first violating triple as a value.
    pub fn general_position(&self) -> GeneralPosition {
        let n = self.len();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    if self.orient(i, j, k) == 0 {
                        return GeneralPosition::Violation(i, j, k);
                    }
                }
            }
        }
        GeneralPosition::Certificate
    }

    /// True when all x-coordinates are pairwise distinct.
    pub fn distinct_x(&self) -> bool {
        let n = self.len();
        for i in 0..n {
            for j in (i + 1)..n {
                if self.pts[i].x == self.pts[j].x {
                    return false;
                }
            }
        }
        true
    }
}

/// Convex hull of a subset, as point indices in counterclockwise order.
///
/// Accepts subsets of any size; singletons and pairs come back as given.
/// Under general position no three hull points are collinear, but collinear
/// inputs are still handled (strictly convex vertices only).
pub fn convex_hull(ps: &PointSet, subset: &[usize]) -> Vec<usize> {
    let mut idx: Vec<usize> = subset.to_vec();
    idx.sort_by(|&a, &b| ps.cmp_xy(a, b));
    idx.dedup();
    if idx.len() <= 2 {
        return idx;
    }
    let mut lower: Vec<usize> = Vec::new();
    for &p in &idx {
        while lower.len() >= 2 && ps.orient(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &p in idx.iter().rev() {
        while upper.len() >= 2 && ps.orient(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// True when every point of the subset is a vertex of its convex hull.
pub fn convex_position(ps: &PointSet, subset: &[usize]) -> bool {
    convex_hull(ps, subset).len() == subset.len()
}

/// Strict point-in-convex-polygon test. `cycle` must be a ccw vertex cycle.
pub fn strictly_inside_polygon(ps: &PointSet, cycle: &[usize], q: usize) -> bool {
    let k = cycle.len();
    if k < 3 {
        return false;
    }
    for i in 0..k {
        if ps.orient(cycle[i], cycle[(i + 1) % k], q) <= 0 {
            return false;
        }
    }
    true
}

/// Precondition violation for [`deep_below`]: a two-point line on one side
/// is vertical, so "below" is undefined for it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("vertical line through points {0} and {1}")]
pub struct VerticalPair(pub usize, pub usize);

/// True when every point of `xs` lies strictly below every line through two
/// points of `ys`, and every point of `ys` lies strictly above every line
/// through two points of `xs`. Sides of size one impose no line constraints.
pub fn deep_below(ps: &PointSet, xs: &[usize], ys: &[usize]) -> Result<bool, VerticalPair> {
    let below_all_lines =
        |pts: &[usize], lines: &[usize], want_below: bool| -> Result<bool, VerticalPair> {
            for (ai, &a) in lines.iter().enumerate() {
                for &b in lines.iter().skip(ai + 1) {
                    let (lo, hi) = match ps.point(a).x.cmp(&ps.point(b).x) {
                        Ordering::Less => (a, b),
                        Ordering::Greater => (b, a),
                        Ordering::Equal => return Err(VerticalPair(a, b)),
                    };
                    for &p in pts {
                        // For x-sorted (lo, hi): p below the line iff the triple
                        // turns clockwise.
                        let s = ps.orient(lo, hi, p);
                        let ok = if want_below { s < 0 } else { s > 0 };
                        if !ok {
                            return Ok(false);
                        }
                    }
                }
            }
            Ok(true)
        };
    Ok(below_all_lines(xs, ys, true)? && below_all_lines(ys, xs, false)?)
}

/// True when the complement projective segments of `pq` and `rs` share an
/// interior point.
///
/// The projective line through two points splits into the affine segment and
/// its complement through infinity (the co-segment). Two co-segments over
/// disjoint pairs cross exactly when the unique intersection point of the two
/// lines lies on neither affine segment; parallel lines meet at their common
/// point at infinity, which is interior to both co-segments. Pairs sharing an
/// endpoint meet only at that endpoint, which is not an interior point.
pub fn co_segments_cross(ps: &PointSet, p: usize, q: usize, r: usize, s: usize) -> bool {
    if p == r || p == s || q == r || q == s {
        return false;
    }
    // The intersection lies inside segment pq iff p and q straddle line rs.
    let pq_hit = ps.orient(r, s, p) * ps.orient(r, s, q) < 0;
    let rs_hit = ps.orient(p, q, r) * ps.orient(p, q, s) < 0;
    !pq_hit && !rs_hit
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn ps(coords: &[(i64, i64)]) -> PointSet {
        PointSet::from_int_coords(coords).unwrap()
    }

    #[test]
    fn orientation_basics() {
        let a = Point::from_ints(0, 0);
        let b = Point::from_ints(1, 0);
        let c = Point::from_ints(0, 1);
        assert_eq!(orientation(&a, &b, &c), Orientation::CounterClockwise);
        assert_eq!(
            orientation(&a, &Point::from_ints(1, 1), &Point::from_ints(2, 2)),
            Orientation::Collinear
        );
        assert_eq!(orientation(&a, &c, &b), Orientation::Clockwise);
    }

    #[test]
    fn orientation_antisymmetry_on_rationals() {
        let p = Point::new(ratio(1, 3), ratio(-2, 7));
        let q = Point::new(rat(2), ratio(5, 11));
        let r = Point::new(ratio(-4, 5), rat(1));
        assert_eq!(orientation(&p, &q, &r), orientation(&p, &r, &q).reversed());
    }

    #[test]
    fn general_position_reports_first_violation() {
        let s = ps(&[(0, 0), (1, 1), (2, 2), (0, 1)]);
        assert_eq!(s.general_position(), GeneralPosition::Violation(0, 1, 2));
        let t = ps(&[(0, 0), (1, 0), (0, 1)]);
        assert!(t.general_position().is_certificate());
    }

    #[test]
    fn hull_and_convex_position() {
        let square = ps(&[(0, 0), (1, 0), (1, 1), (0, 1)]);
        let hull = convex_hull(&square, &[0, 1, 2, 3]);
        assert_eq!(hull.len(), 4);
        assert!(convex_position(&square, &[0, 1, 2, 3]));

        let tri = ps(&[(0, 0), (4, 0), (0, 4), (1, 1)]);
        let hull = convex_hull(&tri, &[0, 1, 2, 3]);
        assert_eq!(hull.len(), 3);
        assert!(!hull.contains(&3));
        assert!(!convex_position(&tri, &[0, 1, 2, 3]));

        assert_eq!(convex_hull(&tri, &[2]), vec![2]);

        // Five points on a parabola are in convex position.
        let par = ps(&[(-2, 4), (-1, 1), (0, 0), (1, 1), (2, 4)]);
        assert!(convex_position(&par, &[0, 1, 2, 3, 4]));
    }

    #[test]
    fn hull_is_counterclockwise() {
        let square = ps(&[(0, 0), (1, 0), (1, 1), (0, 1)]);
        let hull = convex_hull(&square, &[0, 1, 2, 3]);
        for i in 0..hull.len() {
            let j = (i + 1) % hull.len();
            let k = (i + 2) % hull.len();
            assert_eq!(square.orient(hull[i], hull[j], hull[k]), 1);
        }
    }

    #[test]
    fn deep_below_examples() {
        let s = ps(&[(0, 0), (2, 0), (1, 100), (3, 101)]);
        assert_eq!(deep_below(&s, &[0, 1], &[2, 3]), Ok(true));
        assert_eq!(deep_below(&s, &[2, 3], &[0, 1]), Ok(false));

        let two = ps(&[(0, 0), (1, 1)]);
        assert_eq!(deep_below(&two, &[0], &[1]), Ok(true));

        let vert = ps(&[(0, 0), (1, 1), (1, 5)]);
        assert_eq!(deep_below(&vert, &[0], &[1, 2]), Err(VerticalPair(1, 2)));
    }

    #[test]
    fn co_segment_crossings() {
        let s = ps(&[(0, 0), (1, 0), (0, 1), (1, 2)]);
        assert!(co_segments_cross(&s, 0, 1, 2, 3));

        // Crossing diagonals of a square: the affine segments intersect, so
        // the co-segments do not.
        let sq = ps(&[(0, 0), (2, 0), (2, 2), (0, 2)]);
        assert!(!co_segments_cross(&sq, 0, 2, 1, 3));

        // Parallel segments meet at their shared point at infinity.
        let par = ps(&[(0, 0), (1, 0), (0, 1), (1, 1)]);
        assert!(co_segments_cross(&par, 0, 1, 2, 3));

        // Pairs sharing an endpoint meet there only, never in an interior point.
        assert!(!co_segments_cross(&sq, 0, 1, 1, 2));
    }

    #[test]
    fn co_segments_cross_is_symmetric() {
        let s = ps(&[(0, 0), (5, 1), (2, 7), (9, 4), (4, -3)]);
        for a in 0..5usize {
            for b in (a + 1)..5 {
                for c in 0..5usize {
                    for d in (c + 1)..5 {
                        if (a, b) == (c, d) {
                            continue;
                        }
                        assert_eq!(
                            co_segments_cross(&s, a, b, c, d),
                            co_segments_cross(&s, c, d, a, b)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn duplicate_points_rejected() {
        let r = PointSet::from_int_coords(&[(0, 0), (1, 1), (0, 0)]);
        assert_eq!(r.unwrap_err(), PointSetError::DuplicatePoint(0, 2));
    }
}
