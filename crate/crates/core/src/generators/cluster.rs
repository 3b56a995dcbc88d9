//! The tangent-cluster construction: a perturbed grid clipped to a convex
//! anchor polygon, with small almost-collinear clusters placed on strictly
//! convex arcs tangent to the polygon at selected hull vertices.

use crate::geom::{convex_hull, convex_position, strictly_inside_polygon, Point, PointSet};
use crate::rational::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::horton::{gen_squared_horton, SquaredHorton};
use super::GenError;

/// A convex-position subset of the `t x t` integer grid, built from
/// primitive edge vectors sorted by angle. Its size grows like `t^(2/3)`.
pub fn gen_lattice_convex(t: usize) -> Result<Vec<(i64, i64)>, GenError> {
    if t < 2 {
        return Err(GenError::InvalidParameter("grid side must be >= 2".into()));
    }
    let budget = (t - 1) as i64;
    let mut best: Option<Vec<(i64, i64)>> = None;
    for r in 1..=(t as i64) {
        let vecs = primitive_vectors(r);
        let span_x: i64 = vecs.iter().map(|v| v.0.max(0)).sum();
        let span_y: i64 = vecs.iter().map(|v| v.1.max(0)).sum();
        if span_x > budget || span_y > budget {
            break;
        }
        // Stretch the polygon to use the grid budget, so the clipped grid
        // downstream keeps a constant fraction of the points.
        let scale = (budget / span_x.max(1)).min(budget / span_y.max(1)).max(1);
        let scaled: Vec<(i64, i64)> = vecs.iter().map(|&(x, y)| (x * scale, y * scale)).collect();
        best = Some(polygon_from_edges(&scaled));
    }
    let verts = best.unwrap_or_else(|| vec![(0, 0), (1, 0), (1, 1), (0, 1)]);
    Ok(verts)
}

/// All primitive vectors with coordinates bounded by `r`, in angular order.
fn primitive_vectors(r: i64) -> Vec<(i64, i64)> {
    let mut vecs = Vec::new();
    for p in -r..=r {
        for q in -r..=r {
            if (p, q) == (0, 0) {
                continue;
            }
            if p.unsigned_abs().gcd(&q.unsigned_abs()) == 1 {
                vecs.push((p, q));
            }
        }
    }
    vecs.sort_by(|&u, &v| {
        let half = |w: (i64, i64)| -> u8 {
            if w.1 > 0 || (w.1 == 0 && w.0 > 0) {
                0
            } else {
                1
            }
        };
        half(u).cmp(&half(v)).then_with(|| {
            let cross = u.0 * v.1 - u.1 * v.0;
            cross.cmp(&0).reverse()
        })
    });
    vecs
}

fn polygon_from_edges(vecs: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut verts = Vec::with_capacity(vecs.len());
    let (mut x, mut y) = (0i64, 0i64);
    for &(dx, dy) in vecs {
        verts.push((x, y));
        x += dx;
        y += dy;
    }
    let min_x = verts.iter().map(|v| v.0).min().unwrap();
    let min_y = verts.iter().map(|v| v.1).min().unwrap();
    verts.iter().map(|v| (v.0 - min_x, v.1 - min_y)).collect()
}

/// Tangent direction and outward normal of one cluster arc.
type ArcFrame = ((Rational, Rational), (Rational, Rational));

/// The assembled construction with all index annotations.
#[derive(Debug, Clone)]
pub struct ClusterConstruction {
    pub n: usize,
    pub a: usize,
    pub b: usize,
    pub alpha: Option<Rational>,
    /// The full point set: grid part first, then the clusters in arc order.
    pub points: PointSet,
    /// Indices of the grid part (the clipped perturbed grid minus anchors).
    pub horton: Vec<usize>,
    /// One block of `b` indices per cluster, in arc order; entry 0 is the
    /// anchor vertex, which belongs to both the grid and its cluster.
    pub clusters: Vec<Vec<usize>>,
    /// Size of the clipped grid including the anchors.
    pub h_size: usize,
    /// Lattice coordinates of the base convex subset and its tripled copy.
    pub c1: Vec<(i64, i64)>,
    pub c3: Vec<(i64, i64)>,
    /// Indices of the convex anchor polygon vertices (grid or anchor slots).
    pub c3h: Vec<usize>,
    /// The alternating hull selection the anchors were drawn from.
    pub c_prime: Vec<usize>,
}

impl ClusterConstruction {
    /// Certified projective k-hole lower bound: every (k-1)-subset of a
    /// cluster forms an empty wedge with every grid point outside it.
    pub fn certified_hole_bound(&self, k: usize) -> u128 {
        if self.h_size < self.b {
            return 0;
        }
        (self.a as u128)
            * super::families::binomial(self.b as u128, (k - 1) as u128)
            * ((self.h_size - self.b) as u128)
    }
}

/// Builds the construction for `n` grid points, `a` clusters of `b` points
/// each. `alpha` is recorded for reporting only.
pub fn gen_cluster(
    n: usize,
    a: usize,
    b: usize,
    alpha: Option<Rational>,
    seed: u64,
) -> Result<ClusterConstruction, GenError> {
    if a < 2 || b < 2 {
        return Err(GenError::InvalidParameter(
            "need at least two clusters of at least two points".into(),
        ));
    }
    if a * b > n {
        return Err(GenError::InvalidParameter(
            "cluster budget a*b exceeds n".into(),
        ));
    }
    let t = (n as f64).sqrt() as usize;
    let t1 = t / 3;
    if t1 < 2 {
        return Err(GenError::InvalidParameter(
            "n too small for a convex anchor polygon (need n >= 36)".into(),
        ));
    }
    let c1 = gen_lattice_convex(t1)?;
    let c3: Vec<(i64, i64)> = c1.iter().map(|&(x, y)| (3 * x, 3 * y)).collect();
    let sh = gen_squared_horton(t, seed)?;
    build_from_grid(n, a, b, alpha, sh, c1, c3)
}

fn build_from_grid(
    n: usize,
    a: usize,
    b: usize,
    alpha: Option<Rational>,
    sh: SquaredHorton,
    c1: Vec<(i64, i64)>,
    c3: Vec<(i64, i64)>,
) -> Result<ClusterConstruction, GenError> {
    let grid = sh.points();
    let c3h_sh: Vec<usize> = c3
        .iter()
        .map(|&(x, y)| sh.index(x as usize, y as usize))
        .collect();
    if !convex_position(grid, &c3h_sh) {
        return Err(GenError::Degenerate(
            "perturbed anchor polygon lost convex position".into(),
        ));
    }
    let hull_cycle = convex_hull(grid, &c3h_sh);

    // Clip the grid to the closed anchor polygon.
    let mut h_sh: Vec<usize> = hull_cycle.clone();
    for q in 0..grid.len() {
        if !hull_cycle.contains(&q) && strictly_inside_polygon(grid, &hull_cycle, q) {
            h_sh.push(q);
        }
    }
    h_sh.sort_unstable();
    let h_size = h_sh.len();

    // Every second hull vertex; no two are consecutive on the polygon.
    let c_prime_cycle: Vec<usize> = (0..hull_cycle.len() / 2)
        .map(|i| hull_cycle[2 * i])
        .collect();

    // Anchors: evenly spaced over the selection, skipping vertices whose
    // tangent direction hits another clipped grid point exactly.
    let tangent_dir = |v: usize| -> (Rational, Rational) {
        let pos = hull_cycle.iter().position(|&x| x == v).unwrap();
        let prev = hull_cycle[(pos + hull_cycle.len() - 1) % hull_cycle.len()];
        let next = hull_cycle[(pos + 1) % hull_cycle.len()];
        (
            &grid.point(next).x - &grid.point(prev).x,
            &grid.point(next).y - &grid.point(prev).y,
        )
    };
    let tangent_clear = |v: usize, d: &(Rational, Rational)| -> bool {
        h_sh.iter().all(|&q| {
            if q == v {
                return true;
            }
            let qx = &grid.point(q).x - &grid.point(v).x;
            let qy = &grid.point(q).y - &grid.point(v).y;
            !(&d.0 * &qy - &d.1 * &qx).is_zero()
        })
    };
    let mut anchors_sh: Vec<usize> = Vec::new();
    let mut cursor = 0usize;
    while anchors_sh.len() < a && cursor < c_prime_cycle.len() {
        let step = (c_prime_cycle.len() - cursor) / (a - anchors_sh.len());
        let v = c_prime_cycle[cursor];
        let d = tangent_dir(v);
        if tangent_clear(v, &d) {
            anchors_sh.push(v);
            cursor += step.max(1);
        } else {
            cursor += 1;
        }
    }
    if anchors_sh.len() < a {
        return Err(GenError::Infeasible(format!(
            "requested {a} clusters but only {} usable anchor vertices",
            c_prime_cycle.len()
        )));
    }

    // Initial arc radius per anchor, from the exact order-type slack: moving
    // an anchor by e changes the orientation value of (c, p, q) by at most
    // max|e| * (|dx| + |dy|) of the pair difference.
    let two = Rational::from_integer(BigInt::from(2));
    let mut deltas: Vec<Rational> = Vec::with_capacity(a);
    let mut dirs: Vec<ArcFrame> = Vec::with_capacity(a);
    for &c in &anchors_sh {
        let d = tangent_dir(c);
        // Outward normal: opposite side of the tangent from any other vertex.
        let probe = *hull_cycle.iter().find(|&&v| v != c).unwrap();
        let px = &grid.point(probe).x - &grid.point(c).x;
        let py = &grid.point(probe).y - &grid.point(c).y;
        let inner = &d.0 * &py - &d.1 * &px;
        let w = if inner.is_positive() {
            (d.1.clone(), -d.0.clone())
        } else {
            (-d.1.clone(), d.0.clone())
        };
        let mut slack: Option<Rational> = None;
        for (pi, &p) in h_sh.iter().enumerate() {
            if p == c {
                continue;
            }
            for &q in h_sh.iter().skip(pi + 1) {
                if q == c {
                    continue;
                }
                let vx1 = &grid.point(p).x - &grid.point(c).x;
                let vy1 = &grid.point(p).y - &grid.point(c).y;
                let vx2 = &grid.point(q).x - &grid.point(c).x;
                let vy2 = &grid.point(q).y - &grid.point(c).y;
                let val = (&vx1 * &vy2 - &vy1 * &vx2).abs();
                let den = (&grid.point(q).x - &grid.point(p).x).abs()
                    + (&grid.point(q).y - &grid.point(p).y).abs();
                let s = val / den;
                if slack.as_ref().is_none_or(|m| s < *m) {
                    slack = Some(s);
                }
            }
        }
        let slack = slack.unwrap_or_else(Rational::one) / &two;
        let width = (d.0.abs() + d.1.abs() + w.0.abs() + w.1.abs() + Rational::one())
            * Rational::from_integer(BigInt::from(b as u64));
        let delta = pow2_at_most(&(slack / width));
        deltas.push(delta);
        dirs.push((d, w));
    }

    // Build and exactly validate, shrinking the radii on any failure.
    for _ in 0..80 {
        match assemble(
            n,
            a,
            b,
            &alpha,
            &sh,
            &h_sh,
            &anchors_sh,
            &dirs,
            &deltas,
            &c1,
            &c3,
            &c3h_sh,
            &c_prime_cycle,
            h_size,
        ) {
            Ok(c) => return Ok(c),
            Err(_) => {
                for d in deltas.iter_mut() {
                    *d = d.clone() / &two;
                }
            }
        }
    }
    Err(GenError::RetriesExhausted("cluster arc radius".into()))
}

/// Largest power of two not exceeding the value (at most 1/4).
fn pow2_at_most(v: &Rational) -> Rational {
    let mut p = Rational::new(BigInt::one(), BigInt::from(4));
    for _ in 0..512 {
        if p <= *v {
            return p;
        }
        p /= Rational::from_integer(BigInt::from(2));
    }
    p
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    n: usize,
    a: usize,
    b: usize,
    alpha: &Option<Rational>,
    sh: &SquaredHorton,
    h_sh: &[usize],
    anchors_sh: &[usize],
    dirs: &[ArcFrame],
    deltas: &[Rational],
    c1: &[(i64, i64)],
    c3: &[(i64, i64)],
    c3h_sh: &[usize],
    c_prime_cycle: &[usize],
    h_size: usize,
) -> Result<ClusterConstruction, GenError> {
    let grid = sh.points();
    let mut pts: Vec<Point> = Vec::with_capacity(h_sh.len() - a + a * b);
    let mut t_index_of_sh: std::collections::HashMap<usize, usize> = Default::default();
    let mut horton: Vec<usize> = Vec::new();
    for &q in h_sh {
        if anchors_sh.contains(&q) {
            continue;
        }
        t_index_of_sh.insert(q, pts.len());
        horton.push(pts.len());
        pts.push(grid.point(q).clone());
    }
    let mut clusters: Vec<Vec<usize>> = Vec::with_capacity(a);
    let mut new_points: Vec<usize> = Vec::new();
    for (ci, &c) in anchors_sh.iter().enumerate() {
        let (d, w) = &dirs[ci];
        let delta = &deltas[ci];
        let mut block = Vec::with_capacity(b);
        for u in 0..b {
            let s = Rational::from_integer(BigInt::from(u as u64)) * delta;
            let s2 = &s * &s;
            let x = &grid.point(c).x + &s * &d.0 + &s2 * &w.0;
            let y = &grid.point(c).y + &s * &d.1 + &s2 * &w.1;
            block.push(pts.len());
            if u == 0 {
                t_index_of_sh.insert(c, pts.len());
            } else {
                new_points.push(pts.len());
            }
            pts.push(Point::new(x, y));
        }
        clusters.push(block);
    }
    let points = PointSet::new(pts).map_err(|e| GenError::Degenerate(e.to_string()))?;

    // General position: the grid part is already certified, so only triples
    // touching a fresh arc point need checking.
    for &nw in &new_points {
        for i in 0..points.len() {
            if i == nw {
                continue;
            }
            for j in (i + 1)..points.len() {
                if j == nw {
                    continue;
                }
                if points.orient(i, j, nw) == 0 {
                    return Err(GenError::Degenerate("collinear triple".into()));
                }
            }
        }
    }

    // Same side of every in-cluster line for everything outside the cluster.
    for block in &clusters {
        for (bi, &h1) in block.iter().enumerate() {
            for &h2 in block.iter().skip(bi + 1) {
                let mut sign = 0i8;
                for q in 0..points.len() {
                    if block.contains(&q) {
                        continue;
                    }
                    let s = points.orient(h1, h2, q);
                    if s == 0 || (sign != 0 && s != sign) {
                        return Err(GenError::Degenerate("cluster line not supporting".into()));
                    }
                    sign = s;
                }
            }
        }
    }

    // Order-type stability: replacing anchors by arbitrary members of their
    // clusters never flips an orientation of the clipped grid.
    let reps: Vec<&[usize]> = h_sh
        .iter()
        .map(|q| {
            if let Some(ci) = anchors_sh.iter().position(|x| x == q) {
                clusters[ci].as_slice()
            } else {
                std::slice::from_ref(&t_index_of_sh[q])
            }
        })
        .collect();
    let m = reps.len();
    for i in 0..m {
        for j in (i + 1)..m {
            for k in (j + 1)..m {
                if reps[i].len() == 1 && reps[j].len() == 1 && reps[k].len() == 1 {
                    continue;
                }
                let base = points.orient(reps[i][0], reps[j][0], reps[k][0]);
                for &x in reps[i] {
                    for &y in reps[j] {
                        for &z in reps[k] {
                            if points.orient(x, y, z) != base {
                                return Err(GenError::Degenerate("order type drifted".into()));
                            }
                        }
                    }
                }
            }
        }
    }

    let map = |q: usize| t_index_of_sh[&q];
    Ok(ClusterConstruction {
        n,
        a,
        b,
        alpha: alpha.clone(),
        points,
        horton,
        clusters,
        h_size,
        c1: c1.to_vec(),
        c3: c3.to_vec(),
        c3h: c3h_sh.iter().map(|&q| map(q)).collect(),
        c_prime: c_prime_cycle.iter().map(|&q| map(q)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_convex_outputs_are_convex() {
        for t in [2usize, 3, 5, 9, 16, 30] {
            let c = gen_lattice_convex(t).unwrap();
            assert!(c.len() >= 4, "t={t}");
            assert!(c
                .iter()
                .all(|&(x, y)| x >= 0 && y >= 0 && x < t as i64 && y < t as i64));
            let ps = PointSet::from_int_coords(&c).unwrap();
            let all: Vec<usize> = (0..c.len()).collect();
            assert!(convex_position(&ps, &all), "t={t}");
        }
    }

    #[test]
    fn lattice_convex_grows() {
        let small = gen_lattice_convex(4).unwrap().len();
        let large = gen_lattice_convex(64).unwrap().len();
        assert!(large > small);
        assert!(large as f64 >= 0.5 * 64f64.powf(2.0 / 3.0));
    }

    #[test]
    fn exhaustive_maximum_on_tiny_grid() {
        // Exhaustive search over the 3x3 grid: the largest convex-position
        // subset has 6 points; the generator must reach at least 4.
        let coords: Vec<(i64, i64)> = (0..3i64)
            .flat_map(|x| (0..3i64).map(move |y| (x, y)))
            .collect();
        let ps = PointSet::from_int_coords(&coords).unwrap();
        let mut best = 0usize;
        for mask in 0u32..(1 << 9) {
            let subset: Vec<usize> = (0..9).filter(|&i| mask & (1 << i) != 0).collect();
            if subset.len() >= 3 && subset.len() > best && convex_position(&ps, &subset) {
                best = subset.len();
            }
        }
        assert_eq!(best, 6);
        assert!(gen_lattice_convex(3).unwrap().len() >= 4);
    }

    #[test]
    fn tripled_copy_has_lattice_centroids() {
        let c1 = gen_lattice_convex(5).unwrap();
        let c3: Vec<(i64, i64)> = c1.iter().map(|&(x, y)| (3 * x, 3 * y)).collect();
        for i in 0..c3.len() {
            for j in (i + 1)..c3.len() {
                for k in (j + 1)..c3.len() {
                    let sx = c3[i].0 + c3[j].0 + c3[k].0;
                    let sy = c3[i].1 + c3[j].1 + c3[k].1;
                    assert_eq!(sx % 3, 0);
                    assert_eq!(sy % 3, 0);
                }
            }
        }
    }

    #[test]
    fn cluster_construction_small() {
        let c = gen_cluster(49, 2, 3, None, 1).unwrap();
        assert_eq!(c.clusters.len(), 2);
        assert!(c.clusters.iter().all(|b| b.len() == 3));
        assert!(c.points.general_position().is_certificate());
        assert_eq!(c.points.len(), c.horton.len() + 2 * 3);
        assert_eq!(c.h_size, c.horton.len() + 2);
        // The anchors still sit on the hull of the anchor polygon vertices.
        assert!(convex_position(&c.points, &c.c3h));
    }

    #[test]
    fn cluster_parameter_validation() {
        assert!(gen_cluster(10, 2, 4, None, 0).is_err());
        assert!(gen_cluster(400, 1, 4, None, 0).is_err());
        assert!(gen_cluster(400, 2, 300, None, 0).is_err());
    }

    #[test]
    fn every_large_subset_of_two_clusters_is_a_projective_hole() {
        // With two clusters of four points, each of the 2^8 - 37 = 219
        // subsets of their union with at least three elements spans at least
        // one projective hole.
        let c = gen_cluster(49, 2, 4, None, 1).unwrap();
        let ctx = crate::projective::ProjCtx::new(&c.points);
        let union: Vec<usize> = c.clusters.iter().flatten().copied().collect();
        assert_eq!(union.len(), 8);
        let mut holes = 0u32;
        for mask in 0u32..(1 << 8) {
            let subset: Vec<usize> = (0..8)
                .filter(|&i| mask & (1 << i) != 0)
                .map(|i| union[i])
                .collect();
            if subset.len() < 3 {
                continue;
            }
            let has_hole = ctx
                .gons_of_subset(&subset)
                .iter()
                .any(|sig| ctx.is_hole(sig));
            assert!(has_hole, "subset {subset:?} spans no projective hole");
            holes += 1;
        }
        assert_eq!(holes, 219);
    }

    #[test]
    fn collapsing_clusters_maps_holes_to_grid_holes() {
        // Replacing every cluster point by its anchor turns an affine hole
        // of the construction into a hole of the clipped grid.
        let c = gen_cluster(49, 2, 3, None, 1).unwrap();
        let ps = &c.points;
        let ctx = crate::projective::ProjCtx::new(ps);
        // The clipped grid: the grid part plus the anchors.
        let anchors: Vec<usize> = c.clusters.iter().map(|b| b[0]).collect();
        let mut grid: Vec<usize> = c.horton.clone();
        grid.extend(&anchors);
        let collapse = |v: usize| -> usize {
            c.clusters
                .iter()
                .position(|b| b.contains(&v))
                .map(|ci| anchors[ci])
                .unwrap_or(v)
        };
        let n = ps.len();
        for x in 0..n {
            for y in (x + 1)..n {
                for z in (y + 1)..n {
                    let sig = crate::projective::GonSignature::affine(vec![x, y, z]);
                    if !ctx.is_hole(&sig) {
                        continue;
                    }
                    let mut collapsed: Vec<usize> =
                        [x, y, z].iter().map(|&v| collapse(v)).collect();
                    collapsed.sort_unstable();
                    collapsed.dedup();
                    if collapsed.len() < 3 {
                        continue;
                    }
                    // Emptiness within the grid subset only.
                    let hull = crate::geom::convex_hull(ps, &collapsed);
                    if hull.len() < collapsed.len() {
                        continue;
                    }
                    let blocked = grid.iter().any(|&q| {
                        !collapsed.contains(&q)
                            && crate::geom::strictly_inside_polygon(ps, &hull, q)
                    });
                    assert!(!blocked, "collapsed {collapsed:?} is not a grid hole");
                }
            }
        }
    }
}
