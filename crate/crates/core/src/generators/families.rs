//! Remaining point families: the cup-cap free recursion, explicit double
//! chains, the pentagon witness and seeded uniform samples.

use crate::geom::{Point, PointSet};
use crate::projective::DoubleChainWedge;
use crate::rational::{rat, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::GenError;

/// A set free of large caps and cups, realizing the classical recursive
/// lower-bound construction for convex position.
#[derive(Debug, Clone)]
pub struct EsLowerSet {
    pub k: usize,
    points: PointSet,
}

impl EsLowerSet {
    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn into_points(self) -> PointSet {
        self.points
    }

    /// Cap and cup size parameter: the set has no cap and no cup of this size.
    pub fn cap_cup_bound(&self) -> usize {
        self.k / 2 - 1
    }
}

struct Block {
    ys: Vec<BigInt>,
    min_y: BigInt,
    max_y: BigInt,
}

/// Recursive set with no `a`-cap and no `u`-cup: a copy avoiding caps of
/// size `a` and cups of size `u - 1` placed to the left of and deep below a
/// copy avoiding caps of size `a - 1` and cups of size `u`. X-coordinates
/// are consecutive integers; the vertical shift certifies strict deep-below
/// separation.
fn cup_cap_free(a: usize, u: usize) -> Block {
    if a <= 2 || u <= 2 {
        return Block {
            ys: vec![BigInt::zero()],
            min_y: BigInt::zero(),
            max_y: BigInt::zero(),
        };
    }
    let left = cup_cap_free(a, u - 1);
    let right = cup_cap_free(a - 1, u);
    let window = BigInt::from((left.ys.len() + right.ys.len() - 1) as u64);
    let spread_l = &left.max_y - &left.min_y;
    let spread_r = &right.max_y - &right.min_y;
    // Both parts have unit x-gaps, so a two-point line strays at most
    // spread * window from its part's value range inside the window.
    let dev = std::cmp::max(&spread_l * &window, &spread_r * &window);
    let shift = &left.max_y - &right.min_y + dev + BigInt::one();
    let mut ys = left.ys;
    ys.extend(right.ys.into_iter().map(|y| y + &shift));
    let min_y = left.min_y;
    let max_y = &right.max_y + &shift;
    Block {
        ys,
        min_y: min_y.clone(),
        max_y: std::cmp::max(max_y, min_y),
    }
}

/// Builds the point set with no `(k/2 - 1)`-cap and no `(k/2 - 1)`-cup.
/// Its size is the central-ish binomial `C(2*(k/2 - 1) - 4, (k/2 - 1) - 2)`
/// and it contains no projective gon of size `k`.
pub fn gen_es_lower(k: usize) -> Result<EsLowerSet, GenError> {
    if k < 7 {
        return Err(GenError::InvalidParameter(
            "gon size parameter must be >= 7".into(),
        ));
    }
    let a = k / 2 - 1;
    let block = cup_cap_free(a, a);
    let pts: Vec<Point> = block
        .ys
        .into_iter()
        .enumerate()
        .map(|(i, y)| {
            Point::new(
                Rational::from_integer(BigInt::from(i as u64)),
                Rational::from_integer(y),
            )
        })
        .collect();
    let points = PointSet::new(pts).expect("distinct x-coordinates");
    Ok(EsLowerSet { k, points })
}

/// Number of points `gen_es_lower(k)` produces.
pub fn es_lower_size(k: usize) -> u128 {
    let a = (k / 2 - 1) as u128;
    binomial(2 * a - 4, a - 2)
}

pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num: u128 = 1;
    for i in 0..k {
        num = num * (n - i) / (i + 1);
    }
    num
}

/// An explicit double chain: an upper convex chain of `m` points facing a
/// lower concave chain of `k_minus_m` points, with the whole set forming one
/// valid double-chain wedge.
pub fn gen_double_chain(m: usize, k_minus_m: usize, seed: u64) -> Result<PointSet, GenError> {
    if m == 0 || k_minus_m == 0 {
        return Err(GenError::InvalidParameter(
            "both chains must be nonempty".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sa = 2 + rng.gen_range(0..3i64);
    let sb = 2 + rng.gen_range(0..3i64);
    let mut gap: i64 = 16;
    for _ in 0..32 {
        let mut pts = Vec::with_capacity(m + k_minus_m);
        for i in 0..m {
            let x = (2 * i as i64 - (m as i64 - 1)) * sa;
            pts.push(Point::new(rat(x), rat(x * x + gap)));
        }
        for j in 0..k_minus_m {
            let x = (2 * j as i64 - (k_minus_m as i64 - 1)) * sb + 1;
            pts.push(Point::new(rat(x), rat(-x * x - gap)));
        }
        if let Ok(ps) = PointSet::new(pts) {
            if ps.general_position().is_certificate() {
                let a: Vec<usize> = (0..m).collect();
                let b: Vec<usize> = (m..m + k_minus_m).collect();
                if DoubleChainWedge::new(&ps, a, b).is_ok() {
                    return Ok(ps);
                }
            }
        }
        gap = gap.saturating_mul(4);
    }
    Err(GenError::RetriesExhausted("double chain".into()))
}

/// A convex pentagon with one interior point placed outside every triangle
/// of three consecutive pentagon vertices. The six points admit no
/// projective 5-hole; dropping the interior point leaves exactly one.
pub fn gen_pentagon_center_witness() -> PointSet {
    let coords = [(0, 100), (-95, 31), (-59, -81), (59, -81), (95, 31), (0, 0)];
    let ps = PointSet::from_int_coords(&coords).expect("distinct points");
    debug_assert!(ps.general_position().is_certificate());
    ps
}

/// Sampling body for uniform random sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Square,
    Disk,
}

impl Shape {
    pub fn parse(s: &str) -> Option<Shape> {
        match s {
            "square" => Some(Shape::Square),
            "disk" => Some(Shape::Disk),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Shape::Square => "square",
            Shape::Disk => "disk",
        }
    }
}

/// `n` points on the `2^grid_bits` rational grid inside the unit shape,
/// redrawing any point that would break general position. Deterministic per
/// `(n, shape, seed, grid_bits)`; also reports the number of redraws.
pub fn gen_random_uniform(
    n: usize,
    shape: Shape,
    seed: u64,
    grid_bits: u32,
) -> Result<(PointSet, usize), GenError> {
    if n == 0 {
        return Err(GenError::InvalidParameter("need at least one point".into()));
    }
    if !(20..=62).contains(&grid_bits) {
        return Err(GenError::InvalidParameter(
            "grid resolution must be between 20 and 62 bits".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let denom = 1i64 << grid_bits;
    let mut chosen: Vec<(i64, i64)> = Vec::with_capacity(n);
    let mut rejections = 0usize;
    let budget = 10_000usize.saturating_mul(n.max(16));
    while chosen.len() < n {
        if rejections > budget {
            return Err(GenError::RetriesExhausted("uniform sample".into()));
        }
        let cand = match shape {
            Shape::Square => (rng.gen_range(0..denom), rng.gen_range(0..denom)),
            Shape::Disk => {
                let x = rng.gen_range(-denom..denom);
                let y = rng.gen_range(-denom..denom);
                let (xx, yy) = (x as i128, y as i128);
                if xx * xx + yy * yy >= (denom as i128) * (denom as i128) {
                    rejections += 1;
                    continue;
                }
                (x, y)
            }
        };
        let ok = !chosen.contains(&cand)
            && chosen.iter().enumerate().all(|(i, &p)| {
                chosen[i + 1..].iter().all(|&q| {
                    let ux = (q.0 - p.0) as i128;
                    let uy = (q.1 - p.1) as i128;
                    let vx = (cand.0 - p.0) as i128;
                    let vy = (cand.1 - p.1) as i128;
                    ux * vy - uy * vx != 0
                })
            });
        if ok {
            chosen.push(cand);
        } else {
            rejections += 1;
        }
    }
    let den = Rational::from_integer(BigInt::from(denom));
    let pts: Vec<Point> = chosen
        .into_iter()
        .map(|(x, y)| {
            Point::new(
                Rational::from_integer(BigInt::from(x)) / den.clone(),
                Rational::from_integer(BigInt::from(y)) / den.clone(),
            )
        })
        .collect();
    let ps = PointSet::new(pts).expect("collisions were rejected");
    debug_assert!(ps.general_position().is_certificate());
    Ok((ps, rejections))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::horton::{is_cap, is_cup};
    use crate::geom::deep_below;

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, n, k, &mut cur, &mut out);
        out
    }

    #[test]
    fn es_lower_sizes() {
        assert_eq!(gen_es_lower(7).unwrap().points().len(), 1);
        assert_eq!(gen_es_lower(8).unwrap().points().len(), 2);
        assert_eq!(gen_es_lower(10).unwrap().points().len(), 6);
        assert_eq!(gen_es_lower(12).unwrap().points().len(), 20);
        assert_eq!(es_lower_size(12), 20);
        assert!(gen_es_lower(6).is_err());
    }

    #[test]
    fn es_lower_has_no_large_caps_or_cups() {
        for k in [10usize, 12] {
            let s = gen_es_lower(k).unwrap();
            let ps = s.points();
            let bound = s.cap_cup_bound();
            assert!(ps.general_position().is_certificate());
            for sub in subsets(ps.len(), bound) {
                assert!(!is_cap(ps, &sub), "found a {bound}-cap in k={k}");
                assert!(!is_cup(ps, &sub), "found a {bound}-cup in k={k}");
            }
        }
    }

    #[test]
    fn es_lower_recursion_separates() {
        // The left half of the k=10 set lies deep below the right half.
        let s = gen_es_lower(10).unwrap();
        let left: Vec<usize> = (0..3).collect();
        let right: Vec<usize> = (3..6).collect();
        assert_eq!(deep_below(s.points(), &left, &right), Ok(true));
    }

    #[test]
    fn double_chain_validates() {
        for (m, km, seed) in [(1usize, 2usize, 0u64), (4, 5, 1), (3, 3, 9)] {
            let ps = gen_double_chain(m, km, seed).unwrap();
            assert_eq!(ps.len(), m + km);
            let a: Vec<usize> = (0..m).collect();
            let b: Vec<usize> = (m..m + km).collect();
            assert!(DoubleChainWedge::new(&ps, a.clone(), b.clone()).is_ok());
            // The enumeration over the whole set rediscovers the partition,
            // and the full set is a single projective gon.
            let all: Vec<usize> = (0..m + km).collect();
            let wedges = crate::projective::enumerate_wedges(&ps, &all);
            let target = crate::projective::GonSignature::wedge(a, b);
            assert!(wedges.iter().any(|w| w.signature() == target));
            let gons = crate::projective::projective_gons_of_subset(&ps, &all);
            if m + km >= 6 {
                assert_eq!(gons.len(), 1);
            }
        }
    }

    #[test]
    fn pentagon_witness_shape() {
        let ps = gen_pentagon_center_witness();
        assert_eq!(ps.len(), 6);
        assert!(ps.general_position().is_certificate());
        assert!(crate::geom::convex_position(&ps, &[0, 1, 2, 3, 4]));
        // The interior point sits inside the pentagon but outside every
        // triangle of consecutive pentagon vertices.
        let hull = crate::geom::convex_hull(&ps, &[0, 1, 2, 3, 4]);
        assert!(crate::geom::strictly_inside_polygon(&ps, &hull, 5));
        for i in 0..5usize {
            let tri = crate::geom::convex_hull(&ps, &[i, (i + 1) % 5, (i + 2) % 5]);
            assert!(
                !crate::geom::strictly_inside_polygon(&ps, &tri, 5),
                "interior point inside consecutive triangle {i}"
            );
        }
    }

    #[test]
    fn random_uniform_determinism_and_shape() {
        let (a, _) = gen_random_uniform(50, Shape::Disk, 7, 20).unwrap();
        let (b, _) = gen_random_uniform(50, Shape::Disk, 7, 20).unwrap();
        assert_eq!(a.points(), b.points());
        let (c, _) = gen_random_uniform(50, Shape::Disk, 8, 20).unwrap();
        assert_ne!(a.points(), c.points());

        let (one, _) = gen_random_uniform(1, Shape::Square, 0, 20).unwrap();
        assert_eq!(one.len(), 1);

        let (big, rejections) = gen_random_uniform(100, Shape::Square, 3, 20).unwrap();
        assert!(big.general_position().is_certificate());
        assert!(rejections < 50, "unexpectedly many redraws: {rejections}");
    }
}
