//! Balanced parentheses over a [`BitSequence`], with `0` as the opening and
//! `1` as the closing parenthesis.
//!
//! `excess(q)` is the number of opens minus closes among the first `q` bits.
//! Each 512-bit block `b` stores the minimum of `excess(q)` over
//! `q in (512 b, 512 (b + 1)]`; those minima are the leaves of a binary
//! min-tree. `match` and `parent` reduce to "nearest prefix at or below a
//! target excess" searches: scan the current block bytewise, jump through the
//! min-tree to the first qualifying block, then scan that block.

use super::rank_select::BLOCK_BITS;
use super::{BitSequence, RawBits};
use crate::error::BuildError;
use crate::par::Executor;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParenSequence {
    seq: BitSequence,
    /// `levels[0]` holds per-block minima; `levels[k + 1][i]` is the min of
    /// `levels[k][2 i]` and `levels[k][2 i + 1]`.
    levels: Vec<Vec<i32>>,
}

/// Excess deltas for a byte read LSB first.
struct ByteTables {
    total: [i8; 256],
    /// min over k in 1..=8 of excess after k bits.
    fwd_min: [i8; 256],
    /// min over k in 0..=7 of (excess after k bits) - total.
    bwd_min: [i8; 256],
}

const TABLES: ByteTables = build_tables();

const fn build_tables() -> ByteTables {
    let mut total = [0i8; 256];
    let mut fwd_min = [0i8; 256];
    let mut bwd_min = [0i8; 256];
    let mut x = 0;
    while x < 256 {
        let mut prefix = [0i8; 9];
        let mut k = 0;
        while k < 8 {
            let delta = if (x >> k) & 1 == 0 { 1 } else { -1 };
            prefix[k + 1] = prefix[k] + delta;
            k += 1;
        }
        let mut fmin = i8::MAX;
        let mut k = 1;
        while k <= 8 {
            if prefix[k] < fmin {
                fmin = prefix[k];
            }
            k += 1;
        }
        let mut bmin = i8::MAX;
        let mut k = 0;
        while k < 8 {
            if prefix[k] - prefix[8] < bmin {
                bmin = prefix[k] - prefix[8];
            }
            k += 1;
        }
        total[x] = prefix[8];
        fwd_min[x] = fmin;
        bwd_min[x] = bmin;
        x += 1;
    }
    ByteTables {
        total,
        fwd_min,
        bwd_min,
    }
}

impl ParenSequence {
    /// Builds match/parent support. Fails when `bits` is not balanced.
    pub fn build(bits: RawBits, threads: usize) -> Result<Self, BuildError> {
        let exec = Executor::new(threads);
        Self::build_with(&exec, bits)
    }

    pub(crate) fn build_with(exec: &Executor, bits: RawBits) -> Result<Self, BuildError> {
        let seq = BitSequence::build_with(exec, bits);
        let len = seq.len();
        let nblocks = len.div_ceil(BLOCK_BITS);
        let mut leaves = vec![0i32; nblocks];
        {
            let seq = &seq;
            exec.for_chunks_mut(&mut leaves, |lo, part| {
                for (k, slot) in part.iter_mut().enumerate() {
                    let b = lo + k;
                    let start = b * BLOCK_BITS;
                    let end = (start + BLOCK_BITS).min(len);
                    *slot = block_min(seq, start, end) as i32;
                }
            });
        }
        if let Some(b) = leaves.iter().position(|&m| m < 0) {
            let start = b * BLOCK_BITS;
            let mut e = excess_of(&seq, start);
            for q in start + 1..=len {
                e += if seq.bit(q) { -1 } else { 1 };
                if e < 0 {
                    return Err(BuildError::Unbalanced(q));
                }
            }
        }
        if excess_of(&seq, len) != 0 {
            return Err(BuildError::Unbalanced(len));
        }

        let mut levels = vec![leaves];
        while levels.last().is_some_and(|l| l.len() > 1) {
            let below = levels.last().unwrap();
            let up = below
                .chunks(2)
                .map(|p| p.iter().copied().min().unwrap())
                .collect();
            levels.push(up);
        }
        Ok(Self { seq, levels })
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn bits(&self) -> &BitSequence {
        &self.seq
    }

    pub fn raw(&self) -> &RawBits {
        self.seq.raw()
    }

    /// Number of parenthesis pairs (tree nodes).
    pub fn nodes(&self) -> usize {
        self.len() / 2
    }

    #[inline]
    pub fn excess(&self, q: usize) -> i64 {
        excess_of(&self.seq, q)
    }

    /// Position matching the parenthesis at 1-based position `i`.
    pub fn find_match(&self, i: usize) -> Option<usize> {
        (1..=self.len())
            .contains(&i)
            .then(|| self.match_unchecked(i))
    }

    #[inline]
    pub(crate) fn match_unchecked(&self, i: usize) -> usize {
        let e = self.excess(i);
        if !self.seq.bit(i) {
            self.fwd_search(i, e - 1)
                .expect("balanced sequence has a matching close")
        } else {
            self.bwd_search(i - 1, e)
                .expect("balanced sequence has a matching open")
                + 1
        }
    }

    /// Parent of node `v` (pre-order rank of its open), or 0 when no open
    /// encloses it.
    pub fn parent(&self, v: usize) -> Option<usize> {
        (1..=self.nodes())
            .contains(&v)
            .then(|| self.parent_unchecked(v))
    }

    #[inline]
    pub(crate) fn parent_unchecked(&self, v: usize) -> usize {
        let open = self.seq.select0(v);
        let before = self.excess(open - 1);
        if before == 0 {
            return 0;
        }
        let q = self
            .bwd_search(open - 1, before - 1)
            .expect("enclosing open exists");
        self.seq.rank0(q + 1)
    }

    /// Smallest `q` in `(p, len]` with `excess(q) <= target`.
    fn fwd_search(&self, p: usize, target: i64) -> Option<usize> {
        let len = self.len();
        if p >= len {
            return None;
        }
        let b0 = p / BLOCK_BITS;
        let end = ((b0 + 1) * BLOCK_BITS).min(len);
        if let Some(q) = self.scan_fwd(p, end, self.excess(p), target) {
            return Some(q);
        }
        let b1 = self.next_block_leq(b0, target)?;
        let start = b1 * BLOCK_BITS;
        let end = (start + BLOCK_BITS).min(len);
        self.scan_fwd(start, end, self.excess(start), target)
    }

    /// Largest `q` in `[0, p)` with `excess(q) <= target`.
    fn bwd_search(&self, p: usize, target: i64) -> Option<usize> {
        if p == 0 {
            return None;
        }
        if p >= 2 {
            let b0 = (p - 2) / BLOCK_BITS;
            if let Some(q) = self.scan_bwd(p, b0 * BLOCK_BITS + 1, self.excess(p), target) {
                return Some(q);
            }
            if let Some(b1) = self.prev_block_leq(b0, target) {
                let top = (b1 + 1) * BLOCK_BITS;
                let e = self.excess(top);
                if e <= target {
                    return Some(top);
                }
                return self.scan_bwd(top, b1 * BLOCK_BITS + 1, e, target);
            }
        }
        (target >= 0).then_some(0)
    }

    /// Walks prefixes `from+1..=to`, starting at `excess(from) = cur`.
    fn scan_fwd(&self, from: usize, to: usize, mut cur: i64, target: i64) -> Option<usize> {
        let words = self.seq.raw().words();
        let mut k = from; // bits consumed so far
        while k < to {
            if k.is_multiple_of(8) && k + 8 <= to {
                let byte = (words[k / 64] >> (k % 64)) as u8 as usize;
                if cur + TABLES.fwd_min[byte] as i64 > target {
                    cur += TABLES.total[byte] as i64;
                    k += 8;
                    continue;
                }
                for s in 0..8 {
                    cur += if (byte >> s) & 1 == 0 { 1 } else { -1 };
                    if cur <= target {
                        return Some(k + s + 1);
                    }
                }
                unreachable!("byte table promised a hit");
            }
            cur += if (words[k / 64] >> (k % 64)) & 1 == 0 {
                1
            } else {
                -1
            };
            k += 1;
            if cur <= target {
                return Some(k);
            }
        }
        None
    }

    /// Walks prefixes `from-1` down to `lo`, starting at `excess(from) = cur`.
    fn scan_bwd(&self, from: usize, lo: usize, mut cur: i64, target: i64) -> Option<usize> {
        let words = self.seq.raw().words();
        let mut q = from;
        while q > lo {
            if q.is_multiple_of(8) && q >= lo + 8 {
                let k = q - 8;
                let byte = (words[k / 64] >> (k % 64)) as u8 as usize;
                if cur + TABLES.bwd_min[byte] as i64 > target {
                    cur -= TABLES.total[byte] as i64;
                    q -= 8;
                    continue;
                }
                for s in (0..8).rev() {
                    cur -= if (byte >> s) & 1 == 0 { 1 } else { -1 };
                    if cur <= target {
                        return Some(k + s);
                    }
                }
                unreachable!("byte table promised a hit");
            }
            let k = q - 1;
            cur -= if (words[k / 64] >> (k % 64)) & 1 == 0 {
                1
            } else {
                -1
            };
            q -= 1;
            if cur <= target {
                return Some(q);
            }
        }
        None
    }

    fn next_block_leq(&self, b: usize, target: i64) -> Option<usize> {
        let mut lvl = 0;
        let mut i = b;
        loop {
            let row = &self.levels[lvl];
            if i.is_multiple_of(2) && i + 1 < row.len() && row[i + 1] as i64 <= target {
                i += 1;
                break;
            }
            if lvl + 1 == self.levels.len() {
                return None;
            }
            i /= 2;
            lvl += 1;
        }
        while lvl > 0 {
            lvl -= 1;
            i *= 2;
            if self.levels[lvl][i] as i64 > target {
                i += 1;
            }
        }
        Some(i)
    }

    fn prev_block_leq(&self, b: usize, target: i64) -> Option<usize> {
        let mut lvl = 0;
        let mut i = b;
        loop {
            let row = &self.levels[lvl];
            if i % 2 == 1 && row[i - 1] as i64 <= target {
                i -= 1;
                break;
            }
            if lvl + 1 == self.levels.len() {
                return None;
            }
            i /= 2;
            lvl += 1;
        }
        while lvl > 0 {
            lvl -= 1;
            let row = &self.levels[lvl];
            i = 2 * i + 1;
            if i >= row.len() || row[i] as i64 > target {
                i -= 1;
            }
        }
        Some(i)
    }

    pub fn support_bits(&self) -> usize {
        self.seq.support_bits() + self.levels.iter().map(|l| l.len() * 32).sum::<usize>()
    }

    pub fn heap_bytes(&self) -> usize {
        self.seq.heap_bytes() + self.levels.iter().map(|l| l.len() * 4).sum::<usize>()
    }
}

#[inline]
fn excess_of(seq: &BitSequence, q: usize) -> i64 {
    q as i64 - 2 * seq.rank1(q) as i64
}

/// Minimum excess over prefixes `start+1..=end`.
fn block_min(seq: &BitSequence, start: usize, end: usize) -> i64 {
    let words = seq.raw().words();
    let mut cur = excess_of(seq, start);
    let mut best = i64::MAX;
    let mut k = start;
    while k < end {
        if k.is_multiple_of(8) && k + 8 <= end {
            let byte = (words[k / 64] >> (k % 64)) as u8 as usize;
            best = best.min(cur + TABLES.fwd_min[byte] as i64);
            cur += TABLES.total[byte] as i64;
            k += 8;
        } else {
            cur += if (words[k / 64] >> (k % 64)) & 1 == 0 {
                1
            } else {
                -1
            };
            best = best.min(cur);
            k += 1;
        }
    }
    best
}
