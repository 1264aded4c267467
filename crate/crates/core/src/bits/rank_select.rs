//! Rank/select over a plain bitvector.
//!
//! Layout: one absolute 64-bit count of ones per 512-bit block (0.125 extra
//! bits per payload bit), plus one 32-bit block hint per 4096 occurrences of
//! each bit value for select. Rank reads one directory entry and popcounts at
//! most eight words; select jumps to the hinted block, binary searches the
//! directory up to the next hint and scans one block.
//!
//! Positions are 1-based throughout the public API: `rank(b, i)` counts the
//! `b`-bits among positions `1..=i`, `select(b, j)` returns the position of
//! the `j`-th `b`-bit, and `select(b, 0) = 0`.

use super::RawBits;
use crate::par::{prefix_sum_with, DisjointSlice, Executor};

pub(crate) const BLOCK_BITS: usize = 512;
const WORDS_PER_BLOCK: usize = BLOCK_BITS / 64;
const SELECT_SAMPLE: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitSequence {
    bits: RawBits,
    /// Ones strictly before block `b`; one extra trailing entry holds the total.
    block_ones: Vec<u64>,
    select1_hints: Vec<u32>,
    select0_hints: Vec<u32>,
}

impl BitSequence {
    /// Builds the rank/select directory with `threads` workers. The result
    /// does not depend on `threads`.
    pub fn build(bits: RawBits, threads: usize) -> Self {
        let exec = Executor::new(threads);
        Self::build_with(&exec, bits)
    }

    pub(crate) fn build_with(exec: &Executor, bits: RawBits) -> Self {
        let len = bits.len();
        let nblocks = len.div_ceil(BLOCK_BITS);
        let words = bits.words();

        let mut counts = vec![0u64; nblocks + 1];
        exec.for_chunks_mut(&mut counts[..nblocks], |lo, part| {
            for (k, c) in part.iter_mut().enumerate() {
                let w0 = (lo + k) * WORDS_PER_BLOCK;
                let w1 = (w0 + WORDS_PER_BLOCK).min(words.len());
                *c = words[w0..w1].iter().map(|w| w.count_ones() as u64).sum();
            }
        });
        let mut block_ones = prefix_sum_with(exec, &counts);
        // prefix_sum is exclusive, so the trailing slot already holds the total
        // once the (zero) count for the sentinel slot is folded in.
        let total_ones = block_ones[nblocks] as usize;
        block_ones.shrink_to_fit();

        let ones_before = |b: usize| block_ones[b] as usize;
        let zeros_before = |b: usize| (b * BLOCK_BITS).min(len) - block_ones[b] as usize;
        let select1_hints = sample_hints(exec, nblocks, total_ones, &ones_before);
        let select0_hints = sample_hints(exec, nblocks, len - total_ones, &zeros_before);

        Self {
            bits,
            block_ones,
            select1_hints,
            select0_hints,
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn raw(&self) -> &RawBits {
        &self.bits
    }

    pub fn into_raw(self) -> RawBits {
        self.bits
    }

    pub fn count_ones(&self) -> usize {
        *self.block_ones.last().unwrap_or(&0) as usize
    }

    pub fn count_zeros(&self) -> usize {
        self.len() - self.count_ones()
    }

    /// Bit at 1-based position `i`.
    pub fn access(&self, i: usize) -> Option<bool> {
        (1..=self.len()).contains(&i).then(|| self.bits.get(i - 1))
    }

    /// Bit at 1-based position `i`, unchecked in release builds.
    #[inline]
    pub fn bit(&self, i: usize) -> bool {
        self.bits.get(i - 1)
    }

    /// Number of `b`-bits among positions `1..=i`; `None` when `i > len`.
    pub fn rank(&self, b: bool, i: usize) -> Option<usize> {
        (i <= self.len()).then(|| if b { self.rank1(i) } else { i - self.rank1(i) })
    }

    #[inline]
    pub fn rank1(&self, i: usize) -> usize {
        debug_assert!(i <= self.len());
        let block = i / BLOCK_BITS;
        let mut r = self.block_ones[block] as usize;
        let words = self.bits.words();
        let w0 = block * WORDS_PER_BLOCK;
        let wi = i / 64;
        for w in &words[w0..wi] {
            r += w.count_ones() as usize;
        }
        if !i.is_multiple_of(64) {
            r += (words[wi] & ((1u64 << (i % 64)) - 1)).count_ones() as usize;
        }
        r
    }

    #[inline]
    pub fn rank0(&self, i: usize) -> usize {
        i - self.rank1(i)
    }

    /// Position of the `j`-th `b`-bit; `select(b, 0) = 0`; `None` past the last one.
    pub fn select(&self, b: bool, j: usize) -> Option<usize> {
        let available = if b {
            self.count_ones()
        } else {
            self.count_zeros()
        };
        (j <= available).then(|| if b { self.select1(j) } else { self.select0(j) })
    }

    #[inline]
    pub fn select1(&self, j: usize) -> usize {
        if j == 0 {
            return 0;
        }
        debug_assert!(j <= self.count_ones());
        let block = self.locate_block(j, &self.select1_hints, |b| self.block_ones[b] as usize);
        let mut rem = j - self.block_ones[block] as usize;
        let words = self.bits.words();
        let mut w = block * WORDS_PER_BLOCK;
        loop {
            let ones = words[w].count_ones() as usize;
            if rem <= ones {
                return w * 64 + select_in_word(words[w], rem - 1) + 1;
            }
            rem -= ones;
            w += 1;
        }
    }

    #[inline]
    pub fn select0(&self, j: usize) -> usize {
        if j == 0 {
            return 0;
        }
        debug_assert!(j <= self.count_zeros());
        let zeros_before = |b: usize| b * BLOCK_BITS - self.block_ones[b] as usize;
        let block = self.locate_block(j, &self.select0_hints, zeros_before);
        let mut rem = j - zeros_before(block);
        let words = self.bits.words();
        let mut w = block * WORDS_PER_BLOCK;
        loop {
            let zeros = words[w].count_zeros() as usize;
            if rem <= zeros {
                return w * 64 + select_in_word(!words[w], rem - 1) + 1;
            }
            rem -= zeros;
            w += 1;
        }
    }

    /// Last block whose count-before is `< j`, searched between the hints
    /// bracketing occurrence `j`.
    #[inline]
    fn locate_block(&self, j: usize, hints: &[u32], before: impl Fn(usize) -> usize) -> usize {
        let s = (j - 1) / SELECT_SAMPLE;
        let lo = hints[s] as usize;
        let hi = hints
            .get(s + 1)
            .map_or(self.block_ones.len() - 2, |&h| h as usize);
        // before(lo) < j <= before(hi + 1)
        let (mut a, mut b) = (lo, hi);
        while a < b {
            let mid = (a + b).div_ceil(2);
            if before(mid) < j {
                a = mid;
            } else {
                b = mid - 1;
            }
        }
        a
    }

    /// Bits of directory beyond the payload.
    pub fn support_bits(&self) -> usize {
        self.block_ones.len() * 64 + (self.select1_hints.len() + self.select0_hints.len()) * 32
    }

    /// Heap bytes held, payload included.
    pub fn heap_bytes(&self) -> usize {
        self.bits.words().len() * 8
            + self.block_ones.len() * 8
            + (self.select1_hints.len() + self.select0_hints.len()) * 4
    }
}

/// For each `k`, the block holding occurrence `k * SELECT_SAMPLE + 1`.
fn sample_hints(
    exec: &Executor,
    nblocks: usize,
    total: usize,
    before: &(dyn Fn(usize) -> usize + Sync),
) -> Vec<u32> {
    let mut hints = vec![0u32; total.div_ceil(SELECT_SAMPLE)];
    let out = DisjointSlice::new(&mut hints);
    exec.for_chunks(nblocks, |_, blocks| {
        for b in blocks {
            let (lo, hi) = (before(b), before(b + 1));
            // occurrences lo+1..=hi live in block b
            let mut k = lo.div_ceil(SELECT_SAMPLE);
            while k * SELECT_SAMPLE < hi {
                // SAFETY: sample k falls in exactly one block.
                unsafe { *out.get_mut(k) = b as u32 };
                k += 1;
            }
        }
    });
    hints
}

/// 0-based index of the `r`-th (0-based) set bit of `w`.
#[inline]
pub(crate) fn select_in_word(mut w: u64, mut r: usize) -> usize {
    let mut base = 0;
    loop {
        let ones = (w & 0xFF).count_ones() as usize;
        if r < ones {
            break;
        }
        r -= ones;
        w >>= 8;
        base += 8;
    }
    for _ in 0..r {
        w &= w - 1;
    }
    base + w.trailing_zeros() as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> BitSequence {
        BitSequence::build(RawBits::parse(s).unwrap(), 1)
    }

    #[test]
    fn empty_sequence() {
        let b = seq("");
        assert_eq!(b.len(), 0);
        assert_eq!(b.rank(true, 0), Some(0));
        assert_eq!(b.rank(false, 0), Some(0));
        assert_eq!(b.select(true, 0), Some(0));
        assert_eq!(b.select(true, 1), None);
        assert_eq!(b.access(1), None);
    }

    #[test]
    fn small_rank_select() {
        let b = seq("0101");
        assert_eq!(b.rank(false, 0), Some(0));
        assert_eq!(b.rank(true, 4), Some(2));
        assert_eq!(b.select(true, 2), Some(4));
        assert_eq!(b.select(false, 0), Some(0));
        assert_eq!(b.rank(true, 5), None);
        assert_eq!(b.select(true, 3), None);
        assert_eq!(seq("1").access(1), Some(true));
    }

    #[test]
    fn figure_one_a() {
        let b = seq("0110110101110010110100010100");
        assert_eq!(b.rank(true, 28), Some(14));
        assert_eq!(b.rank(false, 28), Some(14));
        assert_eq!(b.select(true, 1), Some(2));
        assert_eq!(b.access(1), Some(false));
        for i in 1..=28 {
            let acc = b.rank1(i) - b.rank1(i - 1) == 1;
            assert_eq!(b.access(i), Some(acc));
        }
    }

    #[test]
    fn select_in_word_matches_naive() {
        let w = 0xF0F0_0001_8000_0F01u64;
        let positions: Vec<usize> = (0..64).filter(|k| (w >> k) & 1 == 1).collect();
        for (r, &p) in positions.iter().enumerate() {
            assert_eq!(select_in_word(w, r), p);
        }
    }

    #[test]
    fn block_boundaries() {
        // all ones across several blocks, then all zeros
        let bits: RawBits = (0..3 * BLOCK_BITS)
            .map(|k| k < 2 * BLOCK_BITS + 7)
            .collect();
        let b = BitSequence::build(bits, 3);
        assert_eq!(b.rank1(BLOCK_BITS), BLOCK_BITS);
        assert_eq!(b.select1(BLOCK_BITS + 1), BLOCK_BITS + 1);
        assert_eq!(b.select1(2 * BLOCK_BITS + 7), 2 * BLOCK_BITS + 7);
        assert_eq!(b.select0(1), 2 * BLOCK_BITS + 8);
        assert_eq!(b.rank0(3 * BLOCK_BITS), BLOCK_BITS - 7);
    }
}
