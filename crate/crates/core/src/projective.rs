//! Projective semantics in a fixed affine chart.
//!
//! A finite point set of the working plane sits inside the projective plane.
//! Removing a projective line yields another affine chart, and a subset that
//! is not in convex position here may become convex there. In any chart a
//! projective gon appears either as an ordinary convex polygon or as a
//! double-chain wedge; this module provides both representations, canonical
//! signatures to deduplicate them across charts, and the chart transforms
//! themselves.
//!
//! Charts come in two forms. [`Chart`] is a materialized invertible integer
//! 3x3 transform. For counting we use an equivalent implicit form: for a
//! chart that removes a line infinitesimally close to the line through two
//! set points, the image orientation of any triple equals the working-plane
//! orientation times the product of per-point side signs. All chart geometry
//! therefore reduces to cached orientation lookups.

use crate::geom::{convex_hull, convex_position, Point, PointSet};
use crate::orient::{bits, OrientTable};
use crate::rational::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Which of the two lines parallel and infinitesimally close to a point pair
/// connecting line gets removed: the one on the left (`Plus`) or on the right
/// (`Minus`) of the directed pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Plus, Side::Minus];
}

/// An invertible integer projective transform. Applying it to a point set
/// realizes "remove a projective line to obtain a new affine plane".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    m: [[BigInt; 3]; 3],
}

impl Chart {
    pub fn identity() -> Self {
        let z = BigInt::zero;
        let o = BigInt::one;
        Chart {
            m: [[o(), z(), z()], [z(), o(), z()], [z(), z(), o()]],
        }
    }

    pub fn from_rows(m: [[BigInt; 3]; 3]) -> Self {
        let c = Chart { m };
        assert!(!c.det().is_zero(), "chart matrix must be invertible");
        c
    }

    pub fn rows(&self) -> &[[BigInt; 3]; 3] {
        &self.m
    }

    pub fn det(&self) -> BigInt {
        let m = &self.m;
        &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
    }

    /// Adjugate matrix: the projective inverse (inverse up to scale).
    pub fn inverse(&self) -> Chart {
        let m = &self.m;
        let c = |r1: usize, c1: usize, r2: usize, c2: usize| -> BigInt {
            &m[r1][c1] * &m[r2][c2] - &m[r1][c2] * &m[r2][c1]
        };
        Chart::from_rows([
            [c(1, 1, 2, 2), c(0, 2, 2, 1), c(0, 1, 1, 2)],
            [c(1, 2, 2, 0), c(0, 0, 2, 2), c(0, 2, 1, 0)],
            [c(1, 0, 2, 1), c(0, 1, 2, 0), c(0, 0, 1, 1)],
        ])
    }

    /// Homogeneous image of an affine point.
    pub fn apply_hom(&self, p: &Point) -> (Rational, Rational, Rational) {
        let row = |r: &[BigInt; 3]| -> Rational {
            Rational::from_integer(r[0].clone()) * &p.x
                + Rational::from_integer(r[1].clone()) * &p.y
                + Rational::from_integer(r[2].clone())
        };
        (row(&self.m[0]), row(&self.m[1]), row(&self.m[2]))
    }

    /// Affine image of a point, or `None` when it maps to the removed line.
    pub fn apply(&self, p: &Point) -> Option<Point> {
        let (x, y, w) = self.apply_hom(p);
        if w.is_zero() {
            None
        } else {
            Some(Point::new(x / w.clone(), y / w))
        }
    }

    /// Applies the chart to a whole point set; fails when some point maps to
    /// the removed line or when images collide.
    pub fn apply_set(&self, ps: &PointSet) -> Option<PointSet> {
        let pts: Option<Vec<Point>> = ps.points().iter().map(|p| self.apply(p)).collect();
        PointSet::new(pts?).ok()
    }
}

/// Builds the chart that removes a line parallel to the line through points
/// `s` and `t`, on the requested side, at half the exact distance to the
/// nearest point strictly on that side (offset 1 when that side is empty).
///
/// All points of `ps` keep finite images and `s`, `t` land on the boundary of
/// the image convex hull.
pub fn chart_for_pair(ps: &PointSet, s: usize, t: usize, side: Side) -> Chart {
    assert_ne!(s, t);
    let (ps_x, ps_y) = (&ps.point(s).x, &ps.point(s).y);
    let (pt_x, pt_y) = (&ps.point(t).x, &ps.point(t).y);
    // Line a x + b y = c through s and t; a x + b y - c equals the
    // orientation form of (s, t, .), positive exactly on the left of the
    // directed line s -> t.
    let a = ps_y - pt_y;
    let b = pt_x - ps_x;
    let c = pt_x * ps_y - ps_x * pt_y;
    let sigma = match side {
        Side::Plus => 1,
        Side::Minus => -1,
    };
    let mut min_abs: Option<Rational> = None;
    for (i, p) in ps.points().iter().enumerate() {
        if i == s || i == t {
            continue;
        }
        let v = &a * &p.x + &b * &p.y - &c;
        let sign = if v.is_positive() { 1 } else { -1 };
        if sign == sigma {
            let av = v.abs();
            if min_abs.as_ref().is_none_or(|m| av < *m) {
                min_abs = Some(av);
            }
        }
    }
    let eps = match min_abs {
        Some(m) => m / Rational::from_integer(BigInt::from(2)),
        None => Rational::one(),
    };
    let c_shift = c + Rational::from_integer(BigInt::from(sigma)) * eps;
    // Clear denominators to integer coefficients (A, B, C).
    let denom_lcm = a.denom().lcm(b.denom()).lcm(c_shift.denom());
    let scale = |r: &Rational| -> BigInt { (r.numer() * &denom_lcm) / r.denom() };
    let mut aa = scale(&a);
    let mut bb = scale(&b);
    let mut cc = scale(&c_shift);
    let g = aa.gcd(&bb).gcd(&cc);
    if !g.is_zero() && !g.is_one() {
        aa /= &g;
        bb /= &g;
        cc /= &g;
    }
    // Pick a translation so the removed line misses the origin, which makes
    // the matrix with third row (A, B, -C) invertible.
    let mut rows: Option<Chart> = None;
    for (dx, dy) in [(0i64, 0i64), (1, 0), (0, 1), (1, 1)] {
        let det = &aa * BigInt::from(dx) + &bb * BigInt::from(dy) - &cc;
        if !det.is_zero() {
            rows = Some(Chart::from_rows([
                [BigInt::one(), BigInt::zero(), BigInt::from(-dx)],
                [BigInt::zero(), BigInt::one(), BigInt::from(-dy)],
                [aa.clone(), bb.clone(), -cc.clone()],
            ]));
            break;
        }
    }
    rows.expect("a nonzero line has a non-incident translate among (0,0),(1,0),(0,1),(1,1)")
}

/// The identity chart followed by, for every point pair, charts near the
/// connecting line on both sides and with both orientations of the third
/// matrix row. This family realizes every projective convex hull of every
/// subset as an affine hull in at least one chart.
pub fn enumerate_charts(ps: &PointSet) -> Vec<Chart> {
    let n = ps.len();
    let mut out = vec![Chart::identity()];
    for s in 0..n {
        for t in (s + 1)..n {
            for side in Side::BOTH {
                let chart = chart_for_pair(ps, s, t, side);
                let mut flipped = chart.rows().clone();
                for e in flipped[2].iter_mut() {
                    *e = -std::mem::take(e);
                }
                out.push(chart);
                out.push(Chart::from_rows(flipped));
            }
        }
    }
    out
}

/// The four charts of a point pair that remove a line infinitesimally close
/// to the connecting line. The parallel pair realizes exactly the gons whose
/// boundary edge between the two points is the affine segment; the rotated
/// pair (about an interior point of the segment) realizes exactly those
/// whose boundary edge is the complement segment through infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum PairChart {
    ParallelLeft,
    ParallelRight,
    RotateForward,
    RotateBackward,
}

impl PairChart {
    pub(crate) const ALL: [PairChart; 4] = [
        PairChart::ParallelLeft,
        PairChart::ParallelRight,
        PairChart::RotateForward,
        PairChart::RotateBackward,
    ];

    /// The directed base edge whose left side holds every other image point.
    pub(crate) fn base_edge(self, s: usize, t: usize) -> (usize, usize) {
        match self {
            PairChart::ParallelLeft | PairChart::ParallelRight => (s, t),
            PairChart::RotateForward | PairChart::RotateBackward => (t, s),
        }
    }
}

/// Implicit pair chart: image orientations are working-plane orientations
/// multiplied by the product of per-point side signs.
pub(crate) struct SideView<'t> {
    tbl: &'t OrientTable,
    /// Bitset of points whose homogeneous weight is positive in this chart.
    splus: Vec<u64>,
}

impl<'t> SideView<'t> {
    pub fn new(tbl: &'t OrientTable, s: usize, t: usize, side: Side) -> Self {
        let pattern = match side {
            Side::Plus => PairChart::ParallelLeft,
            Side::Minus => PairChart::ParallelRight,
        };
        SideView::with_pattern(tbl, s, t, pattern)
    }

    /// Per-point homogeneous signs: points keep the sign of their
    /// orientation against the pair line; the pair points themselves take
    /// the combination that encodes which nearby line was removed.
    pub fn with_pattern(tbl: &'t OrientTable, s: usize, t: usize, pattern: PairChart) -> Self {
        let words = tbl.words();
        let mut splus = vec![0u64; words];
        splus.copy_from_slice(tbl.left_row(s, t));
        match pattern {
            PairChart::ParallelLeft => {}
            PairChart::ParallelRight => {
                bits::set(&mut splus, s);
                bits::set(&mut splus, t);
            }
            PairChart::RotateForward => bits::set(&mut splus, s),
            PairChart::RotateBackward => bits::set(&mut splus, t),
        }
        SideView { tbl, splus }
    }

    #[inline]
    pub fn sgn(&self, u: usize) -> i8 {
        if bits::get(&self.splus, u) {
            1
        } else {
            -1
        }
    }

    /// Image orientation sign of the triple (up to one global mirror common
    /// to the whole chart, which no counting result depends on).
    #[inline]
    pub fn orient(&self, i: usize, j: usize, k: usize) -> i8 {
        self.sgn(i) * self.sgn(j) * self.sgn(k) * self.tbl.orient(i, j, k)
    }

    /// Writes the bitset of points with positive image orientation against
    /// the directed image line `a -> b`.
    pub fn left_row_into(&self, a: usize, b: usize, out: &mut [u64]) {
        let c = self.sgn(a) * self.sgn(b);
        let (x, y) = if c > 0 {
            (self.tbl.left_row(a, b), self.tbl.right_row(a, b))
        } else {
            (self.tbl.right_row(a, b), self.tbl.left_row(a, b))
        };
        for (w, o) in out.iter_mut().enumerate() {
            *o = (self.splus[w] & x[w]) | (!self.splus[w] & y[w]);
        }
    }
}

/// Hull of `{s, t}` together with `rest` in a view where every point of `rest` lies
/// strictly left of the directed image line `s -> t`. Returns the full
/// vertex cycle starting `s, t, ...` in image traversal order.
pub(crate) fn hull_with_base_edge(
    view: &SideView<'_>,
    s: usize,
    t: usize,
    rest: &[usize],
) -> Vec<usize> {
    debug_assert!(rest.iter().all(|&u| view.orient(s, t, u) > 0));
    let mut order: Vec<usize> = rest.to_vec();
    order.sort_by(|&u, &w| {
        if u == w {
            std::cmp::Ordering::Equal
        } else if view.orient(s, u, w) > 0 {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    let mut stack: Vec<usize> = vec![t];
    for &q in &order {
        while stack.len() >= 2
            && view.orient(stack[stack.len() - 2], stack[stack.len() - 1], q) <= 0
        {
            stack.pop();
        }
        stack.push(q);
    }
    let mut cycle = Vec::with_capacity(stack.len() + 1);
    cycle.push(s);
    cycle.extend(stack);
    cycle
}

/// Canonical identity of a projective gon or projective hull over a fixed
/// point set: an affine polygon is identified by its vertex set, a wedge by
/// its unordered pair of ordered chains.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GonSignature {
    /// Vertex indices, strictly increasing.
    Affine(Vec<usize>),
    /// Canonical chains: the first chain holds the smallest vertex index and
    /// orientations are fixed against reversal.
    Wedge(Vec<usize>, Vec<usize>),
}

impl GonSignature {
    pub fn affine(mut verts: Vec<usize>) -> Self {
        verts.sort_unstable();
        GonSignature::Affine(verts)
    }

    pub fn wedge(a: Vec<usize>, b: Vec<usize>) -> Self {
        let (a, b) = canonical_chains(a, b);
        GonSignature::Wedge(a, b)
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            GonSignature::Affine(v) => v.len(),
            GonSignature::Wedge(a, b) => a.len() + b.len(),
        }
    }

    pub fn vertices(&self) -> Vec<usize> {
        match self {
            GonSignature::Affine(v) => v.clone(),
            GonSignature::Wedge(a, b) => {
                let mut v: Vec<usize> = a.iter().chain(b.iter()).copied().collect();
                v.sort_unstable();
                v
            }
        }
    }

    pub fn is_wedge(&self) -> bool {
        matches!(self, GonSignature::Wedge(..))
    }
}

/// Reduces the four equivalent representations of a double chain (swap of
/// the chains, simultaneous reversal of both) to one.
fn canonical_chains(a: Vec<usize>, b: Vec<usize>) -> (Vec<usize>, Vec<usize>) {
    let min = a.iter().chain(b.iter()).copied().min().unwrap();
    let rev = |v: &[usize]| -> Vec<usize> { v.iter().rev().copied().collect() };
    let mut cands: Vec<(Vec<usize>, Vec<usize>)> = Vec::with_capacity(4);
    for (x, y) in [
        (a.clone(), b.clone()),
        (b.clone(), a.clone()),
        (rev(&a), rev(&b)),
        (rev(&b), rev(&a)),
    ] {
        if x.contains(&min) {
            cands.push((x, y));
        }
    }
    cands.into_iter().min().unwrap()
}

/// Error for invalid chain partitions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WedgeError {
    #[error("chains must be nonempty and disjoint")]
    BadChains,
    #[error("line through cyclic neighbors {0} and {1} fails to separate the remaining chains")]
    NotSeparated(usize, usize),
}

/// A double chain over a point set: an ordered partition of a subset into
/// two chains such that every line through cyclic neighbors separates what
/// remains of one chain from what remains of the other. Together with its
/// half-plane system it is the non-polygonal form of a projective gon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleChainWedge {
    a: Vec<usize>,
    b: Vec<usize>,
}

/// One half-plane constraint: the required orientation sign against the
/// directed line through two set points.
#[derive(Debug, Clone, Copy)]
pub(crate) struct HalfPlane {
    pub u: usize,
    pub v: usize,
    pub sign: i8,
}

impl DoubleChainWedge {
    /// Validates the separation invariant and builds the wedge.
    pub fn new(ps: &PointSet, a: Vec<usize>, b: Vec<usize>) -> Result<Self, WedgeError> {
        if a.is_empty() || b.is_empty() || a.iter().any(|x| b.contains(x)) {
            return Err(WedgeError::BadChains);
        }
        let w = DoubleChainWedge { a, b };
        w.check_separation(ps)?;
        Ok(w)
    }

    pub(crate) fn new_unchecked(a: Vec<usize>, b: Vec<usize>) -> Self {
        DoubleChainWedge { a, b }
    }

    pub fn chain_a(&self) -> &[usize] {
        &self.a
    }

    pub fn chain_b(&self) -> &[usize] {
        &self.b
    }

    /// Total number of wedge vertices.
    pub fn len(&self) -> usize {
        self.a.len() + self.b.len()
    }

    /// Chains are nonempty by construction.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn signature(&self) -> GonSignature {
        GonSignature::wedge(self.a.clone(), self.b.clone())
    }

    fn cyclic(&self) -> Vec<usize> {
        self.a.iter().chain(self.b.iter()).copied().collect()
    }

    fn check_separation(&self, ps: &PointSet) -> Result<(), WedgeError> {
        let cyc = self.cyclic();
        let k = cyc.len();
        for i in 0..k {
            let u = cyc[i];
            let v = cyc[(i + 1) % k];
            let rest_a: Vec<i8> = self
                .a
                .iter()
                .filter(|&&x| x != u && x != v)
                .map(|&x| ps.orient(u, v, x))
                .collect();
            let rest_b: Vec<i8> = self
                .b
                .iter()
                .filter(|&&x| x != u && x != v)
                .map(|&x| ps.orient(u, v, x))
                .collect();
            let consistent = |xs: &[i8]| xs.windows(2).all(|w| w[0] == w[1]) && !xs.contains(&0);
            if !consistent(&rest_a) || !consistent(&rest_b) {
                return Err(WedgeError::NotSeparated(u, v));
            }
            if let (Some(sa), Some(sb)) = (rest_a.first(), rest_b.first()) {
                if sa == sb {
                    return Err(WedgeError::NotSeparated(u, v));
                }
            }
        }
        Ok(())
    }

    /// Half-plane constraints of the two regions. The first region is the
    /// intersection along chain A (bounded by the A-chain edges and the two
    /// crossing edges), the second along chain B.
    pub(crate) fn half_planes(&self, ps: &PointSet) -> (Vec<HalfPlane>, Vec<HalfPlane>) {
        let cyc = self.cyclic();
        let k = cyc.len();
        let m = self.a.len();
        let edge = |i: usize| (cyc[i % k], cyc[(i + 1) % k]);
        let side_for = |u: usize, v: usize, own: &[usize], other: &[usize]| -> i8 {
            if let Some(&x) = own.iter().find(|&&x| x != u && x != v) {
                ps.orient(u, v, x)
            } else {
                let y = *other
                    .iter()
                    .find(|&&y| y != u && y != v)
                    .expect("a separating line leaves at least one chain point");
                -ps.orient(u, v, y)
            }
        };
        // Region A: edges (s_k, s_1), (s_1, s_2), .., (s_m, s_{m+1}).
        let mut ha = Vec::with_capacity(m + 1);
        for i in 0..=m {
            let (u, v) = edge((i + k - 1) % k);
            ha.push(HalfPlane {
                u,
                v,
                sign: side_for(u, v, &self.a, &self.b),
            });
        }
        // Region B: edges (s_m, s_{m+1}), .., (s_{k-1}, s_k), (s_k, s_1).
        let mut hb = Vec::with_capacity(k - m + 1);
        for i in (m - 1)..k {
            let (u, v) = edge(i);
            hb.push(HalfPlane {
                u,
                v,
                sign: side_for(u, v, &self.b, &self.a),
            });
        }
        (ha, hb)
    }

    /// Membership of an arbitrary query point in the wedge region.
    /// `strict` demands the interior; otherwise the closed region is used.
    pub fn contains_point(&self, ps: &PointSet, q: &Point, strict: bool) -> bool {
        let (ha, hb) = self.half_planes(ps);
        let test = |hs: &[HalfPlane]| -> bool {
            hs.iter().all(|h| {
                let s = crate::geom::orientation(ps.point(h.u), ps.point(h.v), q).sign() * h.sign;
                if strict {
                    s > 0
                } else {
                    s >= 0
                }
            })
        };
        test(&ha) || test(&hb)
    }

    /// Membership of another set point, by index (always strict; boundary
    /// incidences are impossible under general position).
    pub fn contains_set_point(&self, ps: &PointSet, q: usize) -> bool {
        let (ha, hb) = self.half_planes(ps);
        let test = |hs: &[HalfPlane]| hs.iter().all(|h| ps.orient(h.u, h.v, q) == h.sign);
        test(&ha) || test(&hb)
    }
}

/// Membership mode for [`wedge_contains`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContainMode {
    Interior,
    Closed,
}

/// Membership of a query point in the union of the wedge regions.
pub fn wedge_contains(ps: &PointSet, w: &DoubleChainWedge, q: &Point, mode: ContainMode) -> bool {
    w.contains_point(ps, q, matches!(mode, ContainMode::Interior))
}

/// Shared evaluation context: a point set plus its orientation cache.
pub struct ProjCtx<'a> {
    pub ps: &'a PointSet,
    pub tbl: OrientTable,
    full: Vec<u64>,
}

impl<'a> ProjCtx<'a> {
    pub fn new(ps: &'a PointSet) -> Self {
        let tbl = OrientTable::build(ps);
        let full = bits::full_mask(ps.len(), tbl.words());
        ProjCtx { ps, tbl, full }
    }

    pub(crate) fn side_view(&self, s: usize, t: usize, side: Side) -> SideView<'_> {
        SideView::new(&self.tbl, s, t, side)
    }

    #[cfg(test)]
    pub(crate) fn pattern_view(&self, s: usize, t: usize, pattern: PairChart) -> SideView<'_> {
        SideView::with_pattern(&self.tbl, s, t, pattern)
    }

    /// Mask of all points except the listed ones.
    pub(crate) fn others_mask(&self, except: &[usize]) -> Vec<u64> {
        let mut m = self.full.clone();
        for &i in except {
            bits::clear(&mut m, i);
        }
        m
    }

    /// All double-chain wedges over the subset, one per geometric wedge, in
    /// canonical form.
    pub fn wedges_of_subset(&self, subset: &[usize]) -> Vec<DoubleChainWedge> {
        let mut sigs: std::collections::BTreeSet<GonSignature> = Default::default();
        let k = subset.len();
        for i in 0..k {
            for j in (i + 1)..k {
                let (s, t) = (subset[i], subset[j]);
                for side in Side::BOTH {
                    let view = self.side_view(s, t, side);
                    let rest: Vec<usize> = subset
                        .iter()
                        .copied()
                        .filter(|&u| u != s && u != t)
                        .collect();
                    let cycle = hull_with_base_edge(&view, s, t, &rest);
                    if cycle.len() != k {
                        continue;
                    }
                    if let Some(sig) = signature_of_cycle(&view, &cycle) {
                        if sig.is_wedge() {
                            sigs.insert(sig);
                        }
                    }
                }
            }
        }
        sigs.into_iter()
            .map(|sig| match sig {
                GonSignature::Wedge(a, b) => {
                    let w = DoubleChainWedge::new_unchecked(a, b);
                    debug_assert!(w.check_separation(self.ps).is_ok());
                    w
                }
                GonSignature::Affine(_) => unreachable!(),
            })
            .collect()
    }

    /// All projective gon signatures of the subset: the affine polygon when
    /// the subset is in convex position, plus one signature per wedge.
    pub fn gons_of_subset(&self, subset: &[usize]) -> Vec<GonSignature> {
        let mut out = Vec::new();
        if subset.len() >= 3 && convex_position(self.ps, subset) {
            out.push(GonSignature::affine(subset.to_vec()));
        }
        out.extend(self.wedges_of_subset(subset).iter().map(|w| w.signature()));
        out.sort();
        out
    }

    /// Bitset of set points strictly inside the gon region.
    pub(crate) fn interior_set(&self, sig: &GonSignature, out: &mut Vec<u64>) {
        out.clear();
        out.extend_from_slice(&self.full);
        match sig {
            GonSignature::Affine(verts) => {
                let cycle = convex_hull(self.ps, verts);
                debug_assert_eq!(cycle.len(), verts.len());
                for i in 0..cycle.len() {
                    let (u, v) = (cycle[i], cycle[(i + 1) % cycle.len()]);
                    for (w, r) in self.tbl.left_row(u, v).iter().enumerate() {
                        out[w] &= r;
                    }
                }
            }
            GonSignature::Wedge(a, b) => {
                let w = DoubleChainWedge::new_unchecked(a.clone(), b.clone());
                let (ha, hb) = w.half_planes(self.ps);
                let mut rb = self.full.clone();
                for h in &ha {
                    let row = if h.sign > 0 {
                        self.tbl.left_row(h.u, h.v)
                    } else {
                        self.tbl.right_row(h.u, h.v)
                    };
                    for (wi, r) in row.iter().enumerate() {
                        out[wi] &= r;
                    }
                }
                for h in &hb {
                    let row = if h.sign > 0 {
                        self.tbl.left_row(h.u, h.v)
                    } else {
                        self.tbl.right_row(h.u, h.v)
                    };
                    for (wi, r) in row.iter().enumerate() {
                        rb[wi] &= r;
                    }
                }
                for wi in 0..out.len() {
                    out[wi] |= rb[wi];
                }
            }
        }
    }

    /// True when no set point outside the signature's vertices lies in the
    /// interior of the gon region.
    pub fn is_hole(&self, sig: &GonSignature) -> bool {
        let mut interior = Vec::new();
        self.interior_set(sig, &mut interior);
        let verts = sig.vertices();
        for &v in &verts {
            bits::clear(&mut interior, v);
        }
        interior.iter().all(|&w| w == 0)
    }
}

/// Splits a hull cycle by the homogeneous-weight signs of its vertices.
/// Zero sign changes yield the affine signature; exactly two changes yield
/// the wedge whose chains are the two arcs.
pub(crate) fn signature_of_cycle(view: &SideView<'_>, cycle: &[usize]) -> Option<GonSignature> {
    let h = cycle.len();
    let flips: Vec<usize> = (0..h)
        .filter(|&i| view.sgn(cycle[i]) != view.sgn(cycle[(i + 1) % h]))
        .collect();
    match flips.len() {
        0 => Some(GonSignature::affine(cycle.to_vec())),
        2 => {
            let (i, j) = (flips[0], flips[1]);
            let arc = |from: usize, to: usize| -> Vec<usize> {
                let mut out = Vec::new();
                let mut p = (from + 1) % h;
                loop {
                    out.push(cycle[p]);
                    if p == to {
                        break;
                    }
                    p = (p + 1) % h;
                }
                out
            };
            Some(GonSignature::wedge(arc(i, j), arc(j, i)))
        }
        _ => None,
    }
}

/// Spec operations over a bare point set. Each builds a fresh context; batch
/// callers should construct [`ProjCtx`] once instead.
pub fn enumerate_wedges(ps: &PointSet, subset: &[usize]) -> Vec<DoubleChainWedge> {
    ProjCtx::new(ps).wedges_of_subset(subset)
}

pub fn projective_gons_of_subset(ps: &PointSet, subset: &[usize]) -> Vec<GonSignature> {
    ProjCtx::new(ps).gons_of_subset(subset)
}

pub fn is_projective_hole(ps: &PointSet, sig: &GonSignature) -> bool {
    ProjCtx::new(ps).is_hole(sig)
}

/// Which structures a counting run reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountKind {
    Gons,
    Holes,
    Islands,
}

impl CountKind {
    pub fn parse(s: &str) -> Option<CountKind> {
        match s {
            "gons" => Some(CountKind::Gons),
            "holes" => Some(CountKind::Holes),
            "islands" => Some(CountKind::Islands),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CountKind::Gons => "gons",
            CountKind::Holes => "holes",
            CountKind::Islands => "islands",
        }
    }
}

/// Per-size counts of gons, holes and islands, split into affine and wedge
/// classes where the split is defined.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gons_affine: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gons_wedge: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gons_projective: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub holes_affine: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub holes_wedge: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub holes_projective: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub islands_projective: Option<u128>,
}

/// Counts per gon size `k`, for `k = 3..=max_k`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountTable {
    pub counts: BTreeMap<usize, CountRow>,
}

impl CountTable {
    pub fn with_range(max_k: usize) -> Self {
        let mut counts = BTreeMap::new();
        for k in 3..=max_k {
            counts.insert(k, CountRow::default());
        }
        CountTable { counts }
    }

    pub fn row_mut(&mut self, k: usize) -> &mut CountRow {
        self.counts.entry(k).or_default()
    }

    pub fn row(&self, k: usize) -> CountRow {
        self.counts.get(&k).cloned().unwrap_or_default()
    }

    /// Checks the class-sum identities on every row where the classes are
    /// present. Panics on violation; counters guarantee these by
    /// construction.
    pub fn assert_identities(&self) {
        for (k, row) in &self.counts {
            if let (Some(a), Some(w), Some(p)) =
                (row.gons_affine, row.gons_wedge, row.gons_projective)
            {
                assert_eq!(a + w, p, "gon class sums disagree at k={k}");
            }
            if let (Some(a), Some(w), Some(p)) =
                (row.holes_affine, row.holes_wedge, row.holes_projective)
            {
                assert_eq!(a + w, p, "hole class sums disagree at k={k}");
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::PointSet;

    fn ps(coords: &[(i64, i64)]) -> PointSet {
        PointSet::from_int_coords(coords).unwrap()
    }

    #[test]
    fn chart_identity_and_inverse_round_trip() {
        let s = ps(&[(0, 0), (3, 1), (1, 4), (-2, 2), (5, -1)]);
        for (si, ti) in [(0usize, 1usize), (2, 4), (1, 3)] {
            for side in Side::BOTH {
                let ch = chart_for_pair(&s, si, ti, side);
                assert!(!ch.det().is_zero());
                let inv = ch.inverse();
                for p in s.points() {
                    let img = ch.apply(p).expect("finite image");
                    let back = inv.apply(&img).expect("finite preimage");
                    assert_eq!(&back, p);
                }
            }
        }
    }

    #[test]
    fn chart_images_preserve_general_position() {
        let s = ps(&[(0, 0), (4, 1), (1, 5)]);
        for side in Side::BOTH {
            let ch = chart_for_pair(&s, 0, 1, side);
            let img = ch.apply_set(&s).unwrap();
            assert!(img.general_position().is_certificate());
        }
    }

    #[test]
    fn side_view_matches_materialized_chart() {
        // The implicit sign model must agree (up to one global mirror) with
        // the orientations of the actual transformed coordinates.
        let s = ps(&[(0, 0), (5, 1), (2, 7), (9, 4), (4, -3), (-1, 3)]);
        let ctx = ProjCtx::new(&s);
        for (a, b) in [(0usize, 1usize), (1, 4), (2, 5)] {
            for side in Side::BOTH {
                let view = ctx.side_view(a, b, side);
                let ch = chart_for_pair(&s, a, b, side);
                let img = ch.apply_set(&s).unwrap();
                let mut mirror: Option<i8> = None;
                for i in 0..s.len() {
                    for j in (i + 1)..s.len() {
                        for k in (j + 1)..s.len() {
                            let got = view.orient(i, j, k);
                            let want = img.orient(i, j, k);
                            let m = got * want;
                            match mirror {
                                None => mirror = Some(m),
                                Some(prev) => assert_eq!(prev, m, "inconsistent mirror"),
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn every_other_point_lies_left_of_the_base_edge() {
        let s = ps(&[(0, 0), (5, 1), (2, 7), (9, 4), (4, -3), (-1, 3)]);
        let ctx = ProjCtx::new(&s);
        for a in 0..s.len() {
            for b in 0..s.len() {
                if a == b {
                    continue;
                }
                for pattern in PairChart::ALL {
                    let view = ctx.pattern_view(a, b, pattern);
                    let (e0, e1) = pattern.base_edge(a, b);
                    for q in 0..s.len() {
                        if q != a && q != b {
                            assert_eq!(view.orient(e0, e1, q), 1);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn four_pair_charts_realize_all_four_gons_of_a_triple() {
        // Per pair: the two parallel charts realize the gons whose pair edge
        // is the affine segment, the two rotated charts those whose pair
        // edge runs through infinity. Over one pair of a triple all four
        // gons appear exactly once.
        let s = ps(&[(0, 0), (4, 0), (1, 3)]);
        let ctx = ProjCtx::new(&s);
        let mut sigs = Vec::new();
        for pattern in PairChart::ALL {
            let view = ctx.pattern_view(0, 1, pattern);
            let (e0, e1) = pattern.base_edge(0, 1);
            let cycle = hull_with_base_edge(&view, e0, e1, &[2]);
            assert_eq!(cycle.len(), 3);
            sigs.push(signature_of_cycle(&view, &cycle).unwrap());
        }
        sigs.sort();
        sigs.dedup();
        assert_eq!(sigs.len(), 4, "four distinct gons over one pair");
        assert_eq!(sigs.iter().filter(|s| s.is_wedge()).count(), 3);
    }

    #[test]
    fn three_points_have_three_wedges_and_four_gons() {
        let s = ps(&[(0, 0), (4, 0), (1, 3)]);
        let ctx = ProjCtx::new(&s);
        let wedges = ctx.wedges_of_subset(&[0, 1, 2]);
        assert_eq!(wedges.len(), 3);
        let gons = ctx.gons_of_subset(&[0, 1, 2]);
        assert_eq!(gons.len(), 4);
        // Each wedge has a singleton apex chain; all three apexes occur.
        let mut apexes: Vec<usize> = wedges
            .iter()
            .map(|w| {
                let (a, b) = (w.chain_a(), w.chain_b());
                if a.len() == 1 {
                    a[0]
                } else {
                    b[0]
                }
            })
            .collect();
        apexes.sort_unstable();
        assert_eq!(apexes, vec![0, 1, 2]);
    }

    #[test]
    fn four_points_have_three_gons() {
        let square = ps(&[(0, 0), (1, 0), (1, 1), (0, 1)]);
        assert_eq!(ProjCtx::new(&square).gons_of_subset(&[0, 1, 2, 3]).len(), 3);
        let inner = ps(&[(0, 0), (4, 0), (2, 3), (2, 1)]);
        let gons = ProjCtx::new(&inner).gons_of_subset(&[0, 1, 2, 3]);
        assert_eq!(gons.len(), 3);
        assert!(gons.iter().all(|g| g.is_wedge()));
    }

    #[test]
    fn five_points_have_exactly_one_gon() {
        let pent = ps(&[(0, 0), (4, 0), (5, 3), (2, 5), (-1, 3)]);
        let gons = ProjCtx::new(&pent).gons_of_subset(&[0, 1, 2, 3, 4]);
        assert_eq!(gons.len(), 1);
        assert!(!gons[0].is_wedge());

        let inner = ps(&[(0, 0), (4, 0), (5, 3), (2, 5), (2, 2)]);
        let gons = ProjCtx::new(&inner).gons_of_subset(&[0, 1, 2, 3, 4]);
        assert_eq!(gons.len(), 1);
        assert!(gons[0].is_wedge());
    }

    #[test]
    fn wedge_membership_on_the_square_example() {
        let s = ps(&[(0, 0), (1, 0), (1, 1), (0, 1)]);
        let w = DoubleChainWedge::new(&s, vec![0], vec![1, 2]).unwrap();
        // Hand evaluation of the half-plane system: the region along chain B
        // is bounded by y >= 0, x >= 1 and y <= x.
        let q = Point::new(crate::rational::rat(10), crate::rational::ratio(1, 2));
        assert!(wedge_contains(&s, &w, &q, ContainMode::Interior));
        let outside = Point::new(crate::rational::rat(-5), crate::rational::ratio(1, 2));
        assert!(!wedge_contains(&s, &w, &outside, ContainMode::Interior));
        // A wedge vertex is on the boundary: closed yes, interior no.
        let v = Point::from_ints(1, 0);
        assert!(wedge_contains(&s, &w, &v, ContainMode::Closed));
        assert!(!wedge_contains(&s, &w, &v, ContainMode::Interior));
    }

    #[test]
    fn apex_wedge_contains_planted_point() {
        // Triangle with a fourth point placed inside the apex cone at vertex 2.
        let s = ps(&[(0, 0), (4, 0), (2, 3), (2, 9)]);
        let ctx = ProjCtx::new(&s);
        let wedges = ctx.wedges_of_subset(&[0, 1, 2]);
        let apex2 = wedges
            .iter()
            .find(|w| w.chain_a() == [2] || w.chain_b() == [2])
            .unwrap();
        assert!(apex2.contains_set_point(&s, 3));
        let sig = apex2.signature();
        assert!(!ctx.is_hole(&sig));
    }

    #[test]
    fn hole_tests_on_small_sets() {
        let pent = ps(&[(0, 0), (4, 0), (5, 3), (2, 5), (-1, 3)]);
        let ctx = ProjCtx::new(&pent);
        let gons = ctx.gons_of_subset(&[0, 1, 2, 3, 4]);
        assert!(ctx.is_hole(&gons[0]));

        let tri = ps(&[(0, 0), (4, 0), (2, 3), (2, 1)]);
        let ctx = ProjCtx::new(&tri);
        assert!(!ctx.is_hole(&GonSignature::affine(vec![0, 1, 2])));
    }

    #[test]
    fn chart_count_is_one_plus_four_per_pair() {
        let s = ps(&[(0, 0), (4, 0), (1, 3)]);
        assert_eq!(enumerate_charts(&s).len(), 13);
        assert_eq!(enumerate_charts(&s)[0], Chart::identity());
    }

    #[test]
    fn empty_side_chart_uses_unit_offset_and_keeps_points_one_sided() {
        // All other points lie left of the pair line, so the right-hand
        // chart removes a line at offset one; the image keeps every other
        // point on a single side of the image pair edge.
        let s = ps(&[(0, 0), (4, 0), (1, 3), (2, 5), (3, 2)]);
        for u in 2..s.len() {
            assert_eq!(s.orient(0, 1, u), 1);
        }
        let ch = chart_for_pair(&s, 0, 1, Side::Minus);
        let img = ch.apply_set(&s).unwrap();
        let signs: Vec<i8> = (2..s.len()).map(|u| img.orient(0, 1, u)).collect();
        assert!(signs.iter().all(|&x| x == signs[0] && x != 0));
    }

    #[test]
    fn every_signature_is_an_affine_hull_in_some_enumerated_chart() {
        let s = ps(&[(0, 0), (13, 2), (7, 11), (2, 9), (6, 4), (9, 7)]);
        let ctx = ProjCtx::new(&s);
        let charts = enumerate_charts(&s);
        let mut subset = Vec::new();
        collect_subsets(s.len(), 3, 0, &mut subset, &mut |sub: &[usize]| {
            for sig in ctx.gons_of_subset(sub) {
                let mut found = false;
                'charts: for ch in &charts {
                    let img = match ch.apply_set(&s) {
                        Some(img) => img,
                        None => continue,
                    };
                    if !convex_position(&img, sub) {
                        continue;
                    }
                    let cycle = convex_hull(&img, sub);
                    // Split the hull cycle by the homogeneous-weight signs
                    // of the materialized chart.
                    let sgn = |v: usize| -> i8 {
                        let (_, _, w) = ch.apply_hom(s.point(v));
                        if num_traits::Signed::is_positive(&w) {
                            1
                        } else {
                            -1
                        }
                    };
                    let h = cycle.len();
                    let flips: Vec<usize> = (0..h)
                        .filter(|&i| sgn(cycle[i]) != sgn(cycle[(i + 1) % h]))
                        .collect();
                    let got = match flips.len() {
                        0 => GonSignature::affine(cycle.clone()),
                        2 => {
                            let arc = |from: usize, to: usize| -> Vec<usize> {
                                let mut out = Vec::new();
                                let mut p = (from + 1) % h;
                                loop {
                                    out.push(cycle[p]);
                                    if p == to {
                                        break;
                                    }
                                    p = (p + 1) % h;
                                }
                                out
                            };
                            GonSignature::wedge(arc(flips[0], flips[1]), arc(flips[1], flips[0]))
                        }
                        _ => continue 'charts,
                    };
                    if got == sig {
                        found = true;
                        break;
                    }
                }
                assert!(
                    found,
                    "signature {sig:?} of {sub:?} not realized by any chart"
                );
            }
        });

        fn collect_subsets(
            n: usize,
            min_k: usize,
            start: usize,
            cur: &mut Vec<usize>,
            f: &mut impl FnMut(&[usize]),
        ) {
            if cur.len() >= min_k {
                f(cur);
            }
            for i in start..n {
                cur.push(i);
                collect_subsets(n, min_k, i + 1, cur, f);
                cur.pop();
            }
        }
    }

    #[test]
    fn invalid_chains_are_rejected() {
        let s = ps(&[(0, 0), (1, 0), (1, 1), (0, 1)]);
        // The diagonal split of a convex quadrilateral is not a double chain.
        assert!(DoubleChainWedge::new(&s, vec![0, 2], vec![1, 3]).is_err());
        assert!(DoubleChainWedge::new(&s, vec![0], vec![0, 1]).is_err());
    }

    #[test]
    fn canonical_form_collapses_symmetries() {
        let a = vec![5usize, 3];
        let b = vec![7usize, 1, 2];
        let s1 = GonSignature::wedge(a.clone(), b.clone());
        let s2 = GonSignature::wedge(
            b.iter().rev().copied().collect(),
            a.iter().rev().copied().collect(),
        );
        let s3 = GonSignature::wedge(b.clone(), a.clone());
        assert_eq!(s1, s2);
        assert_eq!(s1, s3);
    }
}
