//! Brute-force, obviously-correct counters and classifiers.
//!
//! Everything here enumerates subsets exhaustively and evaluates the
//! definitions directly. The polynomial counters in [`crate::fast`] are
//! checked against these routines on every set small enough to afford them.

use crate::generators::HortonSet;
use crate::geom::{convex_hull, PointSet};
use crate::orient::{bits, OrientTable};
use crate::projective::{
    enumerate_charts, hull_with_base_edge, signature_of_cycle, CountKind, CountTable,
    DoubleChainWedge, GonSignature, ProjCtx, Side,
};
use std::collections::BTreeSet;

/// Above this size the exhaustive counters refuse to run unless forced.
pub const ORACLE_SOFT_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error(
        "point set of size {0} exceeds the exhaustive-counter limit {1}; pass force to override"
    )]
    TooLarge(usize, usize),
    #[error("operation requires pairwise distinct x-coordinates")]
    NotDistinctX,
    #[error("max_k must satisfy 3 <= max_k <= n (n = {0})")]
    BadRange(usize),
}

fn for_each_subset(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        let remaining = k - cur.len();
        for i in start..=(n - remaining) {
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), f);
    }
}

/// Exhaustive count of projective gons, holes or islands for every size
/// `3..=max_k`, by direct evaluation of the definitions on every subset.
pub fn count_oracle(
    ps: &PointSet,
    max_k: usize,
    what: CountKind,
    force: bool,
) -> Result<CountTable, OracleError> {
    let n = ps.len();
    if n > ORACLE_SOFT_LIMIT && !force {
        return Err(OracleError::TooLarge(n, ORACLE_SOFT_LIMIT));
    }
    if max_k < 3 || max_k > n {
        return Err(OracleError::BadRange(n));
    }
    let ctx = ProjCtx::new(ps);
    let mut table = CountTable::with_range(max_k);
    for k in 3..=max_k {
        let mut affine: u128 = 0;
        let mut wedge: u128 = 0;
        let mut islands: u128 = 0;
        for_each_subset(n, k, &mut |subset| match what {
            CountKind::Gons => {
                for sig in ctx.gons_of_subset(subset) {
                    if sig.is_wedge() {
                        wedge += 1;
                    } else {
                        affine += 1;
                    }
                }
            }
            CountKind::Holes => {
                for sig in ctx.gons_of_subset(subset) {
                    if ctx.is_hole(&sig) {
                        if sig.is_wedge() {
                            wedge += 1;
                        } else {
                            affine += 1;
                        }
                    }
                }
            }
            CountKind::Islands => {
                islands += count_islands_of_subset(&ctx, subset);
            }
        });
        let row = table.row_mut(k);
        match what {
            CountKind::Gons => {
                row.gons_affine = Some(affine);
                row.gons_wedge = Some(wedge);
                row.gons_projective = Some(affine + wedge);
            }
            CountKind::Holes => {
                row.holes_affine = Some(affine);
                row.holes_wedge = Some(wedge);
                row.holes_projective = Some(affine + wedge);
            }
            CountKind::Islands => {
                row.islands_projective = Some(islands);
            }
        }
    }
    table.assert_identities();
    Ok(table)
}

/// Number of projective hulls of the subset that contain no outside point:
/// hull candidates are collected across charts, deduplicated by signature,
/// and tested for an empty complement.
fn count_islands_of_subset(ctx: &ProjCtx<'_>, subset: &[usize]) -> u128 {
    let mut sigs: BTreeSet<GonSignature> = BTreeSet::new();
    // The working plane realizes the bounded hull.
    sigs.insert(GonSignature::affine(convex_hull(ctx.ps, subset)));
    for (i, &s) in subset.iter().enumerate() {
        for &t in subset.iter().skip(i + 1) {
            for side in Side::BOTH {
                let view = ctx.side_view(s, t, side);
                let rest: Vec<usize> = subset
                    .iter()
                    .copied()
                    .filter(|&u| u != s && u != t)
                    .collect();
                let cycle = hull_with_base_edge(&view, s, t, &rest);
                if let Some(sig) = signature_of_cycle(&view, &cycle) {
                    sigs.insert(sig);
                }
            }
        }
    }
    let outside = ctx.others_mask(subset);
    let mut interior = Vec::new();
    let mut count = 0u128;
    for sig in sigs {
        ctx.interior_set(&sig, &mut interior);
        let blocked = interior.iter().zip(&outside).any(|(a, b)| a & b != 0);
        if !blocked {
            count += 1;
        }
    }
    count
}

/// Counts of open two- and three-point caps and cups, plus the diagonal
/// open pair statistics used by the closed-form checks.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize)]
pub struct OpenCapCupStats {
    pub open_2caps: u64,
    pub open_3caps: u64,
    pub open_2cups: u64,
    pub open_3cups: u64,
    /// Pairs with nothing above the line left of them, nothing below it to
    /// their right.
    pub open_up_down: u64,
    /// Pairs with nothing below the line left of them, nothing above it to
    /// their right.
    pub open_down_up: u64,
    pub open_diagonal: u64,
}

/// Exhaustive scan for open caps, cups and diagonal-open pairs. Requires
/// pairwise distinct x-coordinates.
pub fn count_open_caps_cups(ps: &PointSet) -> Result<OpenCapCupStats, OracleError> {
    if !ps.distinct_x() {
        return Err(OracleError::NotDistinctX);
    }
    let n = ps.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| ps.point(a).x.cmp(&ps.point(b).x));
    let rank_of = {
        let mut r = vec![0usize; n];
        for (pos, &i) in order.iter().enumerate() {
            r[i] = pos;
        }
        r
    };
    // No set point strictly between in x and strictly below (above) the
    // chord of the x-sorted pair.
    let open_edge = |lo: usize, hi: usize, below: bool| -> bool {
        (0..n).all(|u| {
            if rank_of[u] <= rank_of[lo] || rank_of[u] >= rank_of[hi] {
                return true;
            }
            let s = ps.orient(lo, hi, u);
            if below {
                s > 0
            } else {
                s < 0
            }
        })
    };
    let mut stats = OpenCapCupStats::default();
    for i in 0..n {
        for j in (i + 1)..n {
            let (lo, hi) = (order[i], order[j]);
            if open_edge(lo, hi, true) {
                stats.open_2caps += 1;
            }
            if open_edge(lo, hi, false) {
                stats.open_2cups += 1;
            }
            let mut up_down = true;
            let mut down_up = true;
            for u in 0..n {
                if u == lo || u == hi {
                    continue;
                }
                let s = ps.orient(lo, hi, u);
                if rank_of[u] < rank_of[lo] {
                    if s > 0 {
                        up_down = false;
                    }
                    if s < 0 {
                        down_up = false;
                    }
                } else if rank_of[u] > rank_of[hi] {
                    if s < 0 {
                        up_down = false;
                    }
                    if s > 0 {
                        down_up = false;
                    }
                }
            }
            if up_down {
                stats.open_up_down += 1;
            }
            if down_up {
                stats.open_down_up += 1;
            }
            for k in (j + 1)..n {
                let mid = order[j];
                let (a, b, c) = (order[i], mid, order[k]);
                let turn = ps.orient(a, b, c);
                if turn < 0 {
                    // A cap: open when no point dips below any of its chords.
                    if open_edge(a, b, true) && open_edge(b, c, true) && open_edge(a, c, true) {
                        stats.open_3caps += 1;
                    }
                } else if turn > 0
                    && open_edge(a, b, false)
                    && open_edge(b, c, false)
                    && open_edge(a, c, false)
                {
                    stats.open_3cups += 1;
                }
            }
        }
    }
    stats.open_diagonal = stats.open_up_down + stats.open_down_up;
    Ok(stats)
}

/// Classification of a projective 3-hole of a Horton set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HoleClass {
    /// An ordinary empty triangle.
    Affine,
    /// Wedge whose apex sits alone in its sub-layer of the base layer; the
    /// two-point chain lives in the opposite sub-layer.
    PairOpposite,
    /// Wedge whose two-point chain splits across the sub-layers, one point
    /// sharing the apex's side.
    PairSplit,
}

/// Counts of projective 3-holes by class.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize)]
pub struct HoleTypeBreakdown {
    pub affine: u64,
    pub pair_opposite: u64,
    pub pair_split: u64,
}

impl HoleTypeBreakdown {
    pub fn total(&self) -> u64 {
        self.affine + self.pair_opposite + self.pair_split
    }
}

/// Every projective 3-hole of the Horton set with its class. The class of a
/// wedge hole is read off the base layer of its three vertices.
pub fn projective_3holes_classified(h: &HortonSet) -> Vec<(GonSignature, HoleClass)> {
    let ps = h.points();
    let ctx = ProjCtx::new(ps);
    let mut out = Vec::new();
    for_each_subset(ps.len(), 3, &mut |subset| {
        for sig in ctx.gons_of_subset(subset) {
            if !ctx.is_hole(&sig) {
                continue;
            }
            let class = match &sig {
                GonSignature::Affine(_) => HoleClass::Affine,
                GonSignature::Wedge(a, b) => {
                    let apex = if a.len() == 1 { a[0] } else { b[0] };
                    let pair = if a.len() == 1 { b } else { a };
                    let base = h.base(subset);
                    let lower = base.lower.as_ref().expect("base splits");
                    let apex_low = lower.contains(apex);
                    let with_apex = pair
                        .iter()
                        .filter(|&&p| lower.contains(p) == apex_low)
                        .count();
                    match with_apex {
                        0 => HoleClass::PairOpposite,
                        1 => HoleClass::PairSplit,
                        _ => unreachable!("base layer would not be minimal"),
                    }
                }
            };
            out.push((sig, class));
        }
    });
    out
}

/// Per-class totals of projective 3-holes in a Horton set.
pub fn classify_3holes(h: &HortonSet) -> HoleTypeBreakdown {
    let mut b = HoleTypeBreakdown::default();
    for (_, class) in projective_3holes_classified(h) {
        match class {
            HoleClass::Affine => b.affine += 1,
            HoleClass::PairOpposite => b.pair_opposite += 1,
            HoleClass::PairSplit => b.pair_split += 1,
        }
    }
    b
}

/// Largest `k` with at least one projective k-gon, computed independently of
/// the pair-sweep counter: every enumerated chart is materialized and the
/// classical longest-convex-chain program runs on its actual coordinates.
pub fn largest_projective_gon(ps: &PointSet) -> usize {
    assert!(ps.len() >= 3);
    let mut best = 0usize;
    for chart in enumerate_charts(ps) {
        let img = chart.apply_set(ps).expect("charts keep images finite");
        best = best.max(largest_convex_subset(&img));
    }
    best
}

/// Classical largest-convex-polygon dynamic program on explicit coordinates.
fn largest_convex_subset(ps: &PointSet) -> usize {
    let n = ps.len();
    let tbl = OrientTable::build(ps);
    let below = |a: usize, b: usize| -> bool {
        let pa = ps.point(a);
        let pb = ps.point(b);
        (&pa.y, &pa.x) < (&pb.y, &pb.x)
    };
    let mut best = 2usize.min(n);
    for s in 0..n {
        let mut cand: Vec<usize> = (0..n).filter(|&u| below(s, u)).collect();
        cand.sort_by(|&u, &w| {
            if u == w {
                std::cmp::Ordering::Equal
            } else if tbl.orient(s, u, w) > 0 {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        let m = cand.len();
        if m < 2 {
            best = best.max(1 + m);
            continue;
        }
        // len[a][b]: longest convex chain from s ending with edge a -> b.
        let mut len = vec![vec![0u32; m]; m];
        for (a, row) in len.iter_mut().enumerate() {
            for slot in row.iter_mut().skip(a + 1) {
                *slot = 3;
            }
        }
        for b in 0..m {
            for a in 0..b {
                if len[a][b] == 0 {
                    continue;
                }
                let cur = len[a][b];
                if tbl.orient(cand[a], cand[b], s) > 0 {
                    best = best.max(cur as usize);
                }
                for c in (b + 1)..m {
                    if tbl.orient(cand[a], cand[b], cand[c]) > 0 {
                        len[b][c] = len[b][c].max(cur + 1);
                    }
                }
            }
        }
    }
    best
}

/// The co-segment crossing census and the derived hole lower bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct CoSegmentBounds {
    pub n: usize,
    /// Number of co-segments (one per point pair).
    pub s_size: u64,
    /// Co-segments crossed in an interior point by at least one other.
    pub s_prime_size: u64,
    /// The planarity bound on the uncrossed remainder: 3n - 3.
    pub euler_bound: u64,
    pub h3_affine: u128,
    pub h4_affine: u128,
    /// Guaranteed projective 3-hole count: h3 + ceil(C(n,2) / 3).
    pub bound3: u128,
    /// Guaranteed projective 4-hole count: h4 + ceil((C(n,2) - 3n + 3) / 2).
    pub bound4: i128,
}

/// Computes the co-segment statistics and the derived lower bounds on
/// projective 3- and 4-hole counts.
pub fn co_segment_bounds(ps: &PointSet, force: bool) -> Result<CoSegmentBounds, OracleError> {
    let n = ps.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let crossed: Vec<bool> = pairs
        .iter()
        .map(|&(p, q)| {
            pairs
                .iter()
                .any(|&(r, s)| (r, s) != (p, q) && crate::geom::co_segments_cross(ps, p, q, r, s))
        })
        .collect();
    let s_size = pairs.len() as u64;
    let s_prime_size = crossed.iter().filter(|&&c| c).count() as u64;
    let holes = count_oracle(ps, 4.min(n), CountKind::Holes, force)?;
    let h3 = holes.row(3).holes_affine.unwrap_or(0);
    let h4 = holes.row(4).holes_affine.unwrap_or(0);
    let c2 = (n as u128) * (n as u128 - 1) / 2;
    let bound3 = h3 + c2.div_ceil(3);
    let slack = c2 as i128 - 3 * n as i128 + 3;
    let bound4 = h4 as i128
        + if slack >= 0 {
            (slack + 1) / 2
        } else {
            slack / 2
        };
    Ok(CoSegmentBounds {
        n,
        s_size,
        s_prime_size,
        euler_bound: (3 * n - 3) as u64,
        h3_affine: h3,
        h4_affine: h4,
        bound3,
        bound4,
    })
}

/// Number of empty apex wedges at the given point: pairs `{i, j}` whose
/// wedge with apex chain `{p}` contains no other set point.
pub fn count_empty_3wedges_with_apex(ps: &PointSet, apex: usize) -> u64 {
    let ctx = ProjCtx::new(ps);
    count_empty_apex_wedges(&ctx, apex)
}

pub(crate) fn count_empty_apex_wedges(ctx: &ProjCtx<'_>, apex: usize) -> u64 {
    let n = ctx.ps.len();
    let mut count = 0u64;
    let mut interior = Vec::new();
    for i in 0..n {
        if i == apex {
            continue;
        }
        for j in (i + 1)..n {
            if j == apex {
                continue;
            }
            let w = DoubleChainWedge::new_unchecked(vec![apex], vec![i, j]);
            let sig = w.signature();
            ctx.interior_set(&sig, &mut interior);
            bits::clear(&mut interior, apex);
            bits::clear(&mut interior, i);
            bits::clear(&mut interior, j);
            if interior.iter().all(|&w| w == 0) {
                count += 1;
            }
        }
    }
    count
}

/// Sum of empty apex wedges over all apexes.
pub fn count_empty_3wedges(ps: &PointSet) -> u64 {
    let ctx = ProjCtx::new(ps);
    (0..ps.len())
        .map(|p| count_empty_apex_wedges(&ctx, p))
        .sum()
}
