//! Polynomial counting: seeded convex-chain dynamic programs driven over all
//! point pairs and their four infinitesimal charts.
//!
//! For a pair `{s, t}` and one of its four charts, every other point maps
//! strictly left of the directed base edge. Convex polygons of the image
//! with that base edge correspond to left-turn chains over the candidates in
//! angular order around the base vertex, counted by the classical
//! edge-indexed recurrence. Summed over all pairs and charts, every
//! projective gon is counted once per boundary edge, so dividing the total
//! by `k` yields the exact projective count; islands are divided by their
//! hull size instead. Holes restrict chains to empty fan triangles; islands
//! accumulate fan-triangle interior counts.
//!
//! All counters assume the input set is in general position; the file
//! loader certifies this before anything reaches them.

use crate::geom::PointSet;
use crate::orient::OrientTable;
use crate::projective::{CountKind, CountTable, PairChart, SideView};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Orientation source of a chart image.
pub(crate) trait ChartOrient: Sync {
    fn orient3(&self, i: usize, j: usize, k: usize) -> i8;
    /// Bitset of points strictly left of the directed image line `a -> b`.
    fn left_into(&self, a: usize, b: usize, out: &mut [u64]);
}

impl ChartOrient for OrientTable {
    fn orient3(&self, i: usize, j: usize, k: usize) -> i8 {
        self.orient(i, j, k)
    }

    fn left_into(&self, a: usize, b: usize, out: &mut [u64]) {
        out.copy_from_slice(self.left_row(a, b));
    }
}

impl ChartOrient for SideView<'_> {
    fn orient3(&self, i: usize, j: usize, k: usize) -> i8 {
        self.orient(i, j, k)
    }

    fn left_into(&self, a: usize, b: usize, out: &mut [u64]) {
        self.left_row_into(a, b, out);
    }
}

/// Reusable buffers for one chain DP run.
#[derive(Default)]
struct Scratch {
    cand: Vec<usize>,
    f_cur: Vec<u128>,
    f_next: Vec<u128>,
    active: Vec<(u32, u32)>,
    next_active: Vec<(u32, u32)>,
    /// 0 unknown, 1 empty, 2 blocked.
    empty_memo: Vec<u8>,
    /// Left rows of (base vertex, candidate), for the fan-triangle tests.
    base_rows: Vec<u64>,
    row_scratch: Vec<u64>,
}

impl Scratch {
    fn reset(&mut self, m: usize, words: usize, need_rows: bool) {
        self.f_cur.clear();
        self.f_cur.resize(m * m, 0);
        self.f_next.clear();
        self.f_next.resize(m * m, 0);
        self.active.clear();
        self.next_active.clear();
        self.empty_memo.clear();
        self.empty_memo.resize(m * m, 0);
        if need_rows {
            self.base_rows.clear();
            self.base_rows.resize(m * words, 0);
            self.row_scratch.clear();
            self.row_scratch.resize(words, 0);
        }
    }
}

/// Is the image triangle (base, cand[v], cand[w]) free of set points?
/// Memoized per (v, w); the test intersects three half-plane bitsets.
fn fan_empty<V: ChartOrient>(
    view: &V,
    cand: &[usize],
    scr: &mut Scratch,
    words: usize,
    v: usize,
    w: usize,
) -> bool {
    let m = cand.len();
    let key = v * m + w;
    match scr.empty_memo[key] {
        1 => return true,
        2 => return false,
        _ => {}
    }
    view.left_into(cand[v], cand[w], &mut scr.row_scratch);
    let row_v = &scr.base_rows[v * words..(v + 1) * words];
    let row_w = &scr.base_rows[w * words..(w + 1) * words];
    let blocked = scr
        .row_scratch
        .iter()
        .zip(row_v.iter().zip(row_w))
        .any(|(&vw, (&sv, &sw))| vw & sv & !sw != 0);
    scr.empty_memo[key] = if blocked { 2 } else { 1 };
    !blocked
}

/// Number of set points strictly inside the image triangle.
fn fan_interior_count<V: ChartOrient>(
    view: &V,
    cand: &[usize],
    scr: &mut Scratch,
    words: usize,
    v: usize,
    w: usize,
) -> usize {
    view.left_into(cand[v], cand[w], &mut scr.row_scratch);
    let row_v = &scr.base_rows[v * words..(v + 1) * words];
    let row_w = &scr.base_rows[w * words..(w + 1) * words];
    scr.row_scratch
        .iter()
        .zip(row_v.iter().zip(row_w))
        .map(|(&vw, (&sv, &sw))| (vw & sv & !sw).count_ones() as usize)
        .sum()
}

/// Which chains get seeded: a single second vertex (the pair sweep) or
/// every candidate (the full affine sweep).
#[derive(Clone, Copy)]
enum Seed {
    Single(usize),
    All,
}

/// Core chain DP: counts convex polygons consisting of the base vertex, a
/// seeded boundary successor, and a left-turn chain over later candidates,
/// for polygon sizes `3..=max_k`. `counts[k]` receives the totals. When
/// `empty_fans` is set, only chains whose fan triangles at the base vertex
/// are empty survive (closed chains are then exactly the holes).
#[allow(clippy::too_many_arguments)]
fn chain_dp<V: ChartOrient>(
    view: &V,
    base: usize,
    seed: Seed,
    max_k: usize,
    words: usize,
    empty_fans: bool,
    scr: &mut Scratch,
    counts: &mut [u128],
) {
    let m = scr.cand.len();
    if m < 2 || max_k < 3 {
        return;
    }
    scr.reset(m, words, empty_fans);
    if empty_fans {
        for v in 0..m {
            let p = scr.cand[v];
            view.left_into(base, p, &mut scr.base_rows[v * words..(v + 1) * words]);
        }
    }
    // Level 3: chains (base, seed, w).
    let seed_pos: Vec<usize> = match seed {
        Seed::Single(s) => vec![scr
            .cand
            .iter()
            .position(|&c| c == s)
            .expect("seed among candidates")],
        Seed::All => (0..m).collect(),
    };
    let cand = std::mem::take(&mut scr.cand);
    for &c in &seed_pos {
        for w in (c + 1)..m {
            if empty_fans && !fan_empty(view, &cand, scr, words, c, w) {
                continue;
            }
            if scr.f_cur[c * m + w] == 0 {
                scr.active.push((c as u32, w as u32));
            }
            scr.f_cur[c * m + w] += 1;
        }
    }
    let mut level = 3usize;
    while level <= max_k && !scr.active.is_empty() {
        // Close every live chain whose final turn back to the base is left.
        for &(u, v) in &scr.active {
            let f = scr.f_cur[u as usize * m + v as usize];
            if view.orient3(cand[u as usize], cand[v as usize], base) > 0 {
                counts[level] += f;
            }
        }
        if level == max_k {
            break;
        }
        scr.next_active.clear();
        let mut active = std::mem::take(&mut scr.active);
        for &(u, v) in &active {
            let f = scr.f_cur[u as usize * m + v as usize];
            for w in (v as usize + 1)..m {
                if view.orient3(cand[u as usize], cand[v as usize], cand[w]) <= 0 {
                    continue;
                }
                if empty_fans && !fan_empty(view, &cand, scr, words, v as usize, w) {
                    continue;
                }
                let slot = v as usize * m + w;
                if scr.f_next[slot] == 0 {
                    scr.next_active.push((v, w as u32));
                }
                scr.f_next[slot] += f;
            }
        }
        for &(u, v) in &active {
            scr.f_cur[u as usize * m + v as usize] = 0;
        }
        active.clear();
        scr.active = active;
        std::mem::swap(&mut scr.f_cur, &mut scr.f_next);
        std::mem::swap(&mut scr.active, &mut scr.next_active);
        level += 1;
    }
    for &(u, v) in &scr.active {
        scr.f_cur[u as usize * m + v as usize] = 0;
    }
    scr.active.clear();
    scr.cand = cand;
}

/// Island DP: like the chain DP but every state carries the number of set
/// points accumulated inside the fan triangles. A closed chain of `h` hull
/// vertices with `i` interior points is one hull realization of an island of
/// size `h + i`.
fn island_dp<V: ChartOrient>(
    view: &V,
    base: usize,
    seed: usize,
    max_k: usize,
    words: usize,
    scr: &mut Scratch,
    raw: &mut BTreeMap<(usize, usize), u128>,
) {
    let m = scr.cand.len();
    if m < 2 || max_k < 3 {
        return;
    }
    scr.reset(m, words, true);
    for v in 0..m {
        let p = scr.cand[v];
        view.left_into(base, p, &mut scr.base_rows[v * words..(v + 1) * words]);
    }
    let cand = std::mem::take(&mut scr.cand);
    let layers = max_k - 2;
    // f[(u, v, i)] dense over interior counts 0..=max_k-3.
    let mut f_cur = vec![0u128; m * m * layers];
    let mut f_next = vec![0u128; m * m * layers];
    let seed_pos: Vec<usize> = vec![cand
        .iter()
        .position(|&c| c == seed)
        .expect("seed among candidates")];
    for &c in &seed_pos {
        for w in (c + 1)..m {
            let i = fan_interior_count(view, &cand, scr, words, c, w);
            if 3 + i <= max_k {
                f_cur[(c * m + w) * layers + i] += 1;
            }
        }
    }
    let mut level = 3usize;
    loop {
        let mut any = false;
        for u in 0..m {
            for v in (u + 1)..m {
                for i in 0..layers {
                    let f = f_cur[(u * m + v) * layers + i];
                    if f == 0 {
                        continue;
                    }
                    any = true;
                    if level + i <= max_k && view.orient3(cand[u], cand[v], base) > 0 {
                        *raw.entry((level, level + i)).or_insert(0) += f;
                    }
                }
            }
        }
        if !any || level == max_k {
            break;
        }
        f_next.iter_mut().for_each(|x| *x = 0);
        for u in 0..m {
            for v in (u + 1)..m {
                let base_slot = (u * m + v) * layers;
                if f_cur[base_slot..base_slot + layers].iter().all(|&f| f == 0) {
                    continue;
                }
                for w in (v + 1)..m {
                    if view.orient3(cand[u], cand[v], cand[w]) <= 0 {
                        continue;
                    }
                    let add = fan_interior_count(view, &cand, scr, words, v, w);
                    for i in 0..layers {
                        let f = f_cur[base_slot + i];
                        if f == 0 {
                            continue;
                        }
                        let ni = i + add;
                        if level + 1 + ni <= max_k {
                            f_next[(v * m + w) * layers + ni] += f;
                        }
                    }
                }
            }
        }
        std::mem::swap(&mut f_cur, &mut f_next);
        level += 1;
    }
    scr.cand = cand;
}

/// Sorts the chart candidates angularly around the base vertex.
fn sorted_candidates<V: ChartOrient>(view: &V, base: usize, raw: &mut [usize]) {
    raw.sort_by(|&u, &w| {
        if u == w {
            std::cmp::Ordering::Equal
        } else if view.orient3(base, u, w) > 0 {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
}

fn pair_list(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|s| ((s + 1)..n).map(move |t| (s, t)))
        .collect()
}

/// A vector of per-size totals, used as a rayon reduction monoid.
fn add_vec(mut a: Vec<u128>, b: Vec<u128>) -> Vec<u128> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

/// Raw pair-sweep totals per size: every projective gon (or hole) counted
/// once per boundary edge.
fn pair_sweep_totals(ps: &PointSet, tbl: &OrientTable, max_k: usize, holes: bool) -> Vec<u128> {
    let n = ps.len();
    let words = tbl.words();
    pair_list(n)
        .par_iter()
        .fold(
            || (Scratch::default(), vec![0u128; max_k + 1]),
            |(mut scr, mut tot), &(s, t)| {
                for pattern in PairChart::ALL {
                    let view = SideView::with_pattern(tbl, s, t, pattern);
                    let (e0, e1) = pattern.base_edge(s, t);
                    scr.cand.clear();
                    scr.cand.extend((0..n).filter(|&u| u != s && u != t));
                    scr.cand.push(e1);
                    sorted_candidates(&view, e0, &mut scr.cand);
                    debug_assert_eq!(scr.cand[0], e1);
                    chain_dp(
                        &view,
                        e0,
                        Seed::Single(e1),
                        max_k,
                        words,
                        holes,
                        &mut scr,
                        &mut tot,
                    );
                }
                (scr, tot)
            },
        )
        .map(|(_, tot)| tot)
        .reduce(|| vec![0u128; max_k + 1], add_vec)
}

/// The generic sweep direction `(1, q)`: the smallest nonnegative integer
/// `q` giving every point a distinct projection `x + q y`.
fn generic_direction(ps: &PointSet) -> u64 {
    let n = ps.len();
    'outer: for q in 0..u64::MAX {
        let qr = crate::rational::rat(q as i64);
        let mut projs: Vec<crate::rational::Rational> = Vec::with_capacity(n);
        for p in ps.points() {
            projs.push(&p.x + &qr * &p.y);
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if projs[i] == projs[j] {
                    continue 'outer;
                }
            }
        }
        return q;
    }
    unreachable!("some integer direction separates finitely many points")
}

/// Affine counts by the classical sweep: for every point, polygons having it
/// as the extreme vertex in the generic direction.
pub fn count_affine(ps: &PointSet, max_k: usize, what: CountKind) -> Vec<u128> {
    let tbl = OrientTable::build(ps);
    count_affine_with(ps, &tbl, max_k, what)
}

fn count_affine_with(ps: &PointSet, tbl: &OrientTable, max_k: usize, what: CountKind) -> Vec<u128> {
    assert!(matches!(what, CountKind::Gons | CountKind::Holes));
    let n = ps.len();
    let words = tbl.words();
    let q = generic_direction(ps);
    let qr = crate::rational::rat(q as i64);
    let projs: Vec<crate::rational::Rational> =
        ps.points().iter().map(|p| &p.x + &qr * &p.y).collect();
    (0..n)
        .into_par_iter()
        .fold(
            || (Scratch::default(), vec![0u128; max_k + 1]),
            |(mut scr, mut tot), s| {
                scr.cand.clear();
                scr.cand.extend((0..n).filter(|&u| projs[u] > projs[s]));
                if scr.cand.len() >= 2 {
                    sorted_candidates(tbl, s, &mut scr.cand);
                    chain_dp(
                        tbl,
                        s,
                        Seed::All,
                        max_k,
                        words,
                        matches!(what, CountKind::Holes),
                        &mut scr,
                        &mut tot,
                    );
                }
                (scr, tot)
            },
        )
        .map(|(_, tot)| tot)
        .reduce(|| vec![0u128; max_k + 1], add_vec)
}

/// Convex polygons (or empty polygons) of the working plane that have the
/// directed edge `s -> t` on their counterclockwise boundary, per size
/// `3..=max_k`.
pub fn count_affine_from_edge(
    ps: &PointSet,
    s: usize,
    t: usize,
    max_k: usize,
    what: CountKind,
) -> Vec<u128> {
    assert!(matches!(what, CountKind::Gons | CountKind::Holes));
    let tbl = OrientTable::build(ps);
    let words = tbl.words();
    let n = ps.len();
    let mut scr = Scratch {
        cand: (0..n)
            .filter(|&u| u != s && u != t && tbl.orient(s, t, u) > 0)
            .collect(),
        ..Default::default()
    };
    scr.cand.push(t);
    sorted_candidates(&tbl, s, &mut scr.cand);
    let mut counts = vec![0u128; max_k + 1];
    chain_dp(
        &tbl,
        s,
        Seed::Single(t),
        max_k,
        words,
        matches!(what, CountKind::Holes),
        &mut scr,
        &mut counts,
    );
    counts
}

/// Exact projective gon or hole counts for sizes `3..=max_k`, with the
/// affine/wedge split recovered by the classical affine sweep.
pub fn count_projective_fast(ps: &PointSet, max_k: usize, what: CountKind) -> CountTable {
    if matches!(what, CountKind::Islands) {
        return count_projective_islands_fast(ps, max_k);
    }
    let n = ps.len();
    assert!((3..=n).contains(&max_k), "need 3 <= max_k <= n");
    let tbl = OrientTable::build(ps);
    let holes = matches!(what, CountKind::Holes);
    let totals = pair_sweep_totals(ps, &tbl, max_k, holes);
    let affine = count_affine_with(ps, &tbl, max_k, what);
    let mut table = CountTable::with_range(max_k);
    for k in 3..=max_k {
        assert!(
            totals[k].is_multiple_of(k as u128),
            "pair-sweep total {} for size {k} is not divisible by {k}; predicate inconsistency",
            totals[k]
        );
        let proj = totals[k] / k as u128;
        let aff = affine[k];
        assert!(
            proj >= aff,
            "affine count {aff} exceeds projective count {proj} at size {k}"
        );
        let row = table.row_mut(k);
        if holes {
            row.holes_affine = Some(aff);
            row.holes_wedge = Some(proj - aff);
            row.holes_projective = Some(proj);
        } else {
            row.gons_affine = Some(aff);
            row.gons_wedge = Some(proj - aff);
            row.gons_projective = Some(proj);
        }
    }
    table.assert_identities();
    table
}

/// Exact projective island counts for sizes `3..=max_k`. Every island hull
/// is met once per hull edge, so the per-(hull size, island size) totals are
/// divided by the hull size.
pub fn count_projective_islands_fast(ps: &PointSet, max_k: usize) -> CountTable {
    let n = ps.len();
    assert!((3..=n).contains(&max_k), "need 3 <= max_k <= n");
    let tbl = OrientTable::build(ps);
    let words = tbl.words();
    let raw: BTreeMap<(usize, usize), u128> = pair_list(n)
        .par_iter()
        .fold(
            || (Scratch::default(), BTreeMap::new()),
            |(mut scr, mut raw), &(s, t)| {
                for pattern in PairChart::ALL {
                    let view = SideView::with_pattern(&tbl, s, t, pattern);
                    let (e0, e1) = pattern.base_edge(s, t);
                    scr.cand.clear();
                    scr.cand.extend((0..n).filter(|&u| u != s && u != t));
                    scr.cand.push(e1);
                    sorted_candidates(&view, e0, &mut scr.cand);
                    island_dp(&view, e0, e1, max_k, words, &mut scr, &mut raw);
                }
                (scr, raw)
            },
        )
        .map(|(_, raw)| raw)
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    let mut table = CountTable::with_range(max_k);
    for k in 3..=max_k {
        table.row_mut(k).islands_projective = Some(0);
    }
    for ((h, k), total) in raw {
        assert!(
            total.is_multiple_of(h as u128),
            "island total {total} with hull size {h} is not divisible by {h}"
        );
        if let Some(v) = table.row_mut(k).islands_projective.as_mut() {
            *v += total / h as u128;
        }
    }
    table
}

/// Largest `k` with at least one projective k-gon, by the pair sweep with a
/// longest-chain recurrence.
pub fn largest_gon_fast(ps: &PointSet) -> usize {
    let n = ps.len();
    assert!(n >= 3);
    let tbl = OrientTable::build(ps);
    pair_list(n)
        .par_iter()
        .map(|&(s, t)| {
            let mut best = 0usize;
            let mut cand: Vec<usize> = Vec::new();
            for pattern in PairChart::ALL {
                let view = SideView::with_pattern(&tbl, s, t, pattern);
                let (e0, e1) = pattern.base_edge(s, t);
                cand.clear();
                cand.extend((0..n).filter(|&u| u != s && u != t));
                cand.push(e1);
                sorted_candidates(&view, e0, &mut cand);
                best = best.max(longest_closable_chain(&view, e0, &cand));
            }
            best
        })
        .max()
        .unwrap_or(0)
}

/// Longest chain over the sorted candidates, seeded at the first candidate,
/// that closes back to the base vertex with a left turn. Returns the vertex
/// count of the largest such polygon.
fn longest_closable_chain<V: ChartOrient>(view: &V, base: usize, cand: &[usize]) -> usize {
    let m = cand.len();
    if m < 2 {
        return 0;
    }
    // g[u*m + v]: most vertices of a chain (base, cand[0], .., u, v).
    let mut g = vec![0u32; m * m];
    for slot in g.iter_mut().take(m).skip(1) {
        *slot = 3; // states (cand[0], cand[w])
    }
    let mut best = 0usize;
    for v in 1..m {
        for u in 0..v {
            let cur = g[u * m + v];
            if cur == 0 {
                continue;
            }
            if view.orient3(cand[u], cand[v], base) > 0 {
                best = best.max(cur as usize);
            }
            for w in (v + 1)..m {
                if view.orient3(cand[u], cand[v], cand[w]) > 0 {
                    let slot = v * m + w;
                    if g[slot] < cur + 1 {
                        g[slot] = cur + 1;
                    }
                }
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{
        gen_double_chain, gen_es_lower, gen_horton, gen_pentagon_center_witness,
        gen_random_uniform, Shape,
    };
    use crate::oracle::count_oracle;

    fn binom(n: u128, k: u128) -> u128 {
        crate::generators::binomial(n, k)
    }

    #[test]
    fn projective_gon_multiplicities_on_random_sets() {
        for seed in 0..6u64 {
            let n = 5 + (seed as usize % 4);
            let (set, _) = gen_random_uniform(n, Shape::Square, seed, 20).unwrap();
            let t = count_projective_fast(&set, n, CountKind::Gons);
            assert_eq!(t.row(3).gons_projective, Some(4 * binom(n as u128, 3)));
            assert_eq!(t.row(4).gons_projective, Some(3 * binom(n as u128, 4)));
            assert_eq!(t.row(5).gons_projective, Some(binom(n as u128, 5)));
            for k in 6..=n {
                assert!(t.row(k).gons_projective.unwrap() <= binom(n as u128, k as u128));
            }
        }
    }

    #[test]
    fn fast_equals_oracle_on_small_sets() {
        for seed in [0u64, 1, 2] {
            let n = 7 + (seed as usize);
            let (set, _) = gen_random_uniform(n, Shape::Disk, seed, 20).unwrap();
            for what in [CountKind::Gons, CountKind::Holes, CountKind::Islands] {
                let fast = count_projective_fast(&set, n, what);
                let oracle = count_oracle(&set, n, what, false).unwrap();
                assert_eq!(fast, oracle, "what={what:?} n={n} seed={seed}");
            }
        }
    }

    #[test]
    fn seeded_edge_counts_on_a_pentagon() {
        let pent = PointSet::from_int_coords(&[(0, 0), (4, 0), (5, 3), (2, 5), (-1, 3)]).unwrap();
        // Bottom-most vertex 0, hull successor 1: the pentagon itself.
        let c = count_affine_from_edge(&pent, 0, 1, 5, CountKind::Gons);
        assert_eq!(c[5], 1);
        assert_eq!(c[3], 3);

        let tri = PointSet::from_int_coords(&[(0, 0), (4, 0), (2, 3), (2, 1)]).unwrap();
        let holes = count_affine_from_edge(&tri, 0, 1, 3, CountKind::Holes);
        // Triangles on edge 0->1: (0,1,2) is blocked by the interior point.
        assert_eq!(holes[3], 1);
        let gons = count_affine_from_edge(&tri, 0, 1, 3, CountKind::Gons);
        assert_eq!(gons[3], 2);
    }

    #[test]
    fn pair_sweep_matches_seeded_edges_summed() {
        let (set, _) = gen_random_uniform(10, Shape::Square, 11, 20).unwrap();
        let fast = count_projective_fast(&set, 6, CountKind::Gons);
        let oracle = count_oracle(&set, 6, CountKind::Gons, false).unwrap();
        for k in 3..=6usize {
            assert_eq!(fast.row(k).gons_projective, oracle.row(k).gons_projective);
            assert_eq!(fast.row(k).gons_affine, oracle.row(k).gons_affine);
        }
    }

    #[test]
    fn horton_holes_match_closed_form() {
        let h = gen_horton(16, true, 0).unwrap();
        let t = count_projective_fast(h.points(), 3, CountKind::Holes);
        assert_eq!(t.row(3).holes_projective, Some(570));
    }

    #[test]
    fn pentagon_and_witness_hole_counts() {
        let w = gen_pentagon_center_witness();
        let t = count_projective_fast(&w, 5, CountKind::Holes);
        assert_eq!(t.row(5).holes_projective, Some(0));
    }

    #[test]
    fn largest_gon_values() {
        let (set, _) = gen_random_uniform(5, Shape::Square, 2, 20).unwrap();
        assert_eq!(largest_gon_fast(&set), 5);

        let dc = gen_double_chain(3, 3, 0).unwrap();
        assert_eq!(largest_gon_fast(&dc), 6);

        let dc = gen_double_chain(4, 5, 1).unwrap();
        assert_eq!(largest_gon_fast(&dc), 9);

        let es = gen_es_lower(12).unwrap();
        let k = largest_gon_fast(es.points());
        assert!(k < 12, "cup-cap free set admits a 12-gon");
        assert_eq!(k, crate::oracle::largest_projective_gon(es.points()));
    }

    #[test]
    fn islands_equal_holes_intersection_bound() {
        let (set, _) = gen_random_uniform(9, Shape::Square, 4, 20).unwrap();
        let gons = count_projective_fast(&set, 9, CountKind::Gons);
        let holes = count_projective_fast(&set, 9, CountKind::Holes);
        let islands = count_projective_islands_fast(&set, 9);
        for k in 3..=9usize {
            let h = holes.row(k).holes_projective.unwrap();
            assert!(h <= gons.row(k).gons_projective.unwrap());
            assert!(h <= islands.row(k).islands_projective.unwrap());
        }
    }
}
