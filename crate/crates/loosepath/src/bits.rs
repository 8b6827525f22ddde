//! Fixed-width bitset over edge ranks.

use crate::triples::MAX_TRIPLES;

/// Number of 64-bit words needed for [`MAX_TRIPLES`] bits.
pub const WORDS: usize = (MAX_TRIPLES + 63) / 64;

/// A set of edge ranks, one bit per colex rank.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeBits(pub [u64; WORDS]);

impl Default for EdgeBits {
    fn default() -> Self {
        Self::EMPTY
    }
}

impl EdgeBits {
    pub const EMPTY: EdgeBits = EdgeBits([0; WORDS]);

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.0[i >> 6] >> (i & 63) & 1 != 0
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        self.0[i >> 6] |= 1 << (i & 63);
    }

    #[inline]
    pub fn clear(&mut self, i: usize) {
        self.0[i >> 6] &= !(1 << (i & 63));
    }

    #[inline]
    pub fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    /// The raw backing words, least significant rank first within each word.
    #[inline]
    pub fn words(&self) -> &[u64; WORDS] {
        &self.0
    }

    pub fn and(&self, other: &EdgeBits) -> EdgeBits {
        let mut out = *self;
        for (w, o) in out.0.iter_mut().zip(other.0.iter()) {
            *w &= o;
        }
        out
    }

    pub fn or(&self, other: &EdgeBits) -> EdgeBits {
        let mut out = *self;
        for (w, o) in out.0.iter_mut().zip(other.0.iter()) {
            *w |= o;
        }
        out
    }

    /// Count of bits in `self & other` without materializing the intersection.
    #[inline]
    pub fn and_count(&self, other: &EdgeBits) -> u32 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a & b).count_ones())
            .sum()
    }

    #[inline]
    pub fn intersects(&self, other: &EdgeBits) -> bool {
        self.0.iter().zip(other.0.iter()).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset_of(&self, other: &EdgeBits) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }

    /// Bitset containing ranks `0..len`.
    pub fn prefix(len: usize) -> EdgeBits {
        let mut out = EdgeBits::EMPTY;
        let full = len >> 6;
        for w in 0..full {
            out.0[w] = u64::MAX;
        }
        let rem = len & 63;
        if rem != 0 {
            out.0[full] = (1u64 << rem) - 1;
        }
        out
    }

    /// Count of set ranks strictly below `limit`.
    #[inline]
    pub fn count_below(&self, limit: usize) -> u32 {
        let full = limit >> 6;
        let mut total: u32 = self.0[..full].iter().map(|w| w.count_ones()).sum();
        let rem = limit & 63;
        if rem != 0 {
            total += (self.0[full] & ((1u64 << rem) - 1)).count_ones();
        }
        total
    }

    /// Whether no rank below `64 * nwords` is set. Callers that know every
    /// possible rank fits in the first `nwords` words use this to skip the
    /// zero tail of the fixed-width array.
    #[inline]
    pub fn is_empty_upto(&self, nwords: usize) -> bool {
        self.0[..nwords].iter().all(|&w| w == 0)
    }

    /// Iterate the set ranks in increasing order.
    pub fn iter_ones(&self) -> OnesIter<'_> {
        OnesIter { bits: self, word: 0, cur: self.0[0] }
    }

    /// Compare as bit sequences read from rank 0 upward (rank 0 is the most
    /// significant position; absent-before-present).
    pub fn lex_cmp(&self, other: &EdgeBits) -> std::cmp::Ordering {
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            if a != b {
                return a.reverse_bits().cmp(&b.reverse_bits());
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl std::fmt::Debug for EdgeBits {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "EdgeBits{{{:?}}}", self.iter_ones().collect::<Vec<_>>())
    }
}

pub struct OnesIter<'a> {
    bits: &'a EdgeBits,
    word: usize,
    cur: u64,
}

impl Iterator for OnesIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let bit = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some((self.word << 6) | bit);
            }
            self.word += 1;
            if self.word >= WORDS {
                return None;
            }
            self.cur = self.bits.0[self.word];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_count_iter() {
        let mut b = EdgeBits::EMPTY;
        for &i in &[0usize, 63, 64, 127, 559, 1139] {
            b.set(i);
        }
        assert_eq!(b.count(), 6);
        assert!(b.get(63) && b.get(1139) && !b.get(1));
        assert_eq!(b.iter_ones().collect::<Vec<_>>(), vec![0, 63, 64, 127, 559, 1139]);
        b.clear(64);
        assert_eq!(b.count(), 5);
        assert!(!b.get(64));
    }

    #[test]
    fn count_below_matches_prefix_intersection() {
        let mut b = EdgeBits::EMPTY;
        for &i in &[0usize, 5, 63, 64, 70, 200, 1139] {
            b.set(i);
        }
        for limit in [0usize, 1, 5, 6, 63, 64, 65, 128, 201, 1140] {
            assert_eq!(b.count_below(limit), b.and_count(&EdgeBits::prefix(limit)), "limit {limit}");
        }
        assert!(b.is_empty_upto(0));
        assert!(!b.is_empty_upto(1));
        let mut high = EdgeBits::EMPTY;
        high.set(128);
        assert!(high.is_empty_upto(2));
        assert!(!high.is_empty_upto(3));
    }

    #[test]
    fn prefix_masks() {
        assert_eq!(EdgeBits::prefix(0).count(), 0);
        assert_eq!(EdgeBits::prefix(64).count(), 64);
        assert_eq!(EdgeBits::prefix(65).count(), 65);
        assert_eq!(EdgeBits::prefix(1140).count(), 1140);
        assert!(EdgeBits::prefix(65).get(64));
        assert!(!EdgeBits::prefix(65).get(65));
    }

    #[test]
    fn lex_cmp_reads_low_ranks_first() {
        // {1} < {0} is false: a 1 at rank 0 makes the sequence larger; the
        // set {1} starts with 0 at rank 0 so it sorts before {0}.
        let mut a = EdgeBits::EMPTY;
        let mut b = EdgeBits::EMPTY;
        a.set(1);
        b.set(0);
        assert_eq!(a.lex_cmp(&b), std::cmp::Ordering::Less);
        // Ties on word 0 break on later words.
        let mut c = a;
        c.set(100);
        assert_eq!(a.lex_cmp(&c), std::cmp::Ordering::Less);
        assert_eq!(c.lex_cmp(&c), std::cmp::Ordering::Equal);
    }
}
