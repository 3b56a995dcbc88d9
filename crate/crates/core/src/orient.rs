//! Cached orientation predicates.
//!
//! The counters evaluate the same triple orientations enormous numbers of
//! times, both in the working plane and in derived charts. This table stores,
//! for every ordered point pair `(a, b)`, the bitset of points strictly to
//! the left and strictly to the right of the directed line `a -> b`. A triple
//! sign is two bit probes; emptiness tests become word-wide intersections.

use crate::geom::PointSet;

/// Per-pair left/right bitsets over a fixed point set.
pub struct OrientTable {
    n: usize,
    words: usize,
    pos: Vec<u64>,
    neg: Vec<u64>,
}

impl OrientTable {
    pub fn build(ps: &PointSet) -> Self {
        let n = ps.len();
        let words = n.div_ceil(64);
        let mut pos = vec![0u64; n * n * words];
        let mut neg = vec![0u64; n * n * words];
        for a in 0..n {
            for b in (a + 1)..n {
                let row_ab = (a * n + b) * words;
                let row_ba = (b * n + a) * words;
                for q in 0..n {
                    if q == a || q == b {
                        continue;
                    }
                    let s = ps.orient(a, b, q);
                    let (w, bit) = (q / 64, 1u64 << (q % 64));
                    if s > 0 {
                        pos[row_ab + w] |= bit;
                        neg[row_ba + w] |= bit;
                    } else if s < 0 {
                        neg[row_ab + w] |= bit;
                        pos[row_ba + w] |= bit;
                    }
                }
            }
        }
        OrientTable { n, words, pos, neg }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> usize {
        self.words
    }

    /// Orientation sign of `(a, b, q)` from the cached rows.
    #[inline]
    pub fn orient(&self, a: usize, b: usize, q: usize) -> i8 {
        let (w, bit) = (q / 64, 1u64 << (q % 64));
        let base = (a * self.n + b) * self.words + w;
        if self.pos[base] & bit != 0 {
            1
        } else if self.neg[base] & bit != 0 {
            -1
        } else {
            0
        }
    }

    /// Bitset of points strictly left of the directed line `a -> b`.
    #[inline]
    pub fn left_row(&self, a: usize, b: usize) -> &[u64] {
        let base = (a * self.n + b) * self.words;
        &self.pos[base..base + self.words]
    }

    /// Bitset of points strictly right of the directed line `a -> b`.
    #[inline]
    pub fn right_row(&self, a: usize, b: usize) -> &[u64] {
        let base = (a * self.n + b) * self.words;
        &self.neg[base..base + self.words]
    }
}

/// Bitset helpers over `words`-sized rows.
pub mod bits {
    /// Sets bit `i`.
    #[inline]
    pub fn set(row: &mut [u64], i: usize) {
        row[i / 64] |= 1u64 << (i % 64);
    }

    /// Clears bit `i`.
    #[inline]
    pub fn clear(row: &mut [u64], i: usize) {
        row[i / 64] &= !(1u64 << (i % 64));
    }

    /// Tests bit `i`.
    #[inline]
    pub fn get(row: &[u64], i: usize) -> bool {
        row[i / 64] & (1u64 << (i % 64)) != 0
    }

    /// Mask with the first `n` bits set.
    pub fn full_mask(n: usize, words: usize) -> Vec<u64> {
        let mut m = vec![0u64; words];
        for (w, word) in m.iter_mut().enumerate() {
            let lo = w * 64;
            if lo + 64 <= n {
                *word = u64::MAX;
            } else if lo < n {
                *word = (1u64 << (n - lo)) - 1;
            }
        }
        m
    }

    /// Iterates the indices of the set bits.
    pub fn iter_ones(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
        row.iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    None
                } else {
                    let b = word.trailing_zeros() as usize;
                    word &= word - 1;
                    Some(w * 64 + b)
                }
            })
        })
    }

    #[inline]
    pub fn count(row: &[u64]) -> usize {
        row.iter().map(|w| w.count_ones() as usize).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_matches_direct_orientation() {
        let ps =
            PointSet::from_int_coords(&[(0, 0), (5, 1), (2, 7), (9, 4), (4, -3), (-1, 3)]).unwrap();
        let t = OrientTable::build(&ps);
        for a in 0..ps.len() {
            for b in 0..ps.len() {
                if a == b {
                    continue;
                }
                for q in 0..ps.len() {
                    if q == a || q == b {
                        continue;
                    }
                    assert_eq!(t.orient(a, b, q), ps.orient(a, b, q));
                }
            }
        }
    }

    #[test]
    fn bit_iteration() {
        let mut row = vec![0u64; 2];
        bits::set(&mut row, 3);
        bits::set(&mut row, 64);
        bits::set(&mut row, 100);
        let got: Vec<usize> = bits::iter_ones(&row).collect();
        assert_eq!(got, vec![3, 64, 100]);
        assert_eq!(bits::count(&row), 3);
        bits::clear(&mut row, 64);
        assert_eq!(bits::count(&row), 2);
    }
}
