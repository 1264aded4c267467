use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

/// Plain packed bits, LSB-first within little-endian 64-bit words.
///
/// Position `k` (0-based) lives at bit `k % 64` of word `k / 64`. Bits past
/// `len` in the last word are always zero.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct RawBits {
    words: Vec<u64>,
    len: usize,
}

impl RawBits {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn with_capacity(bits: usize) -> Self {
        Self {
            words: Vec::with_capacity(bits.div_ceil(64)),
            len: 0,
        }
    }

    /// Wraps existing words. Stray bits beyond `len` are cleared.
    pub fn from_words(mut words: Vec<u64>, len: usize) -> Self {
        words.resize(len.div_ceil(64), 0);
        if !len.is_multiple_of(64) {
            if let Some(last) = words.last_mut() {
                *last &= (1u64 << (len % 64)) - 1;
            }
        }
        Self { words, len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn into_words(self) -> Vec<u64> {
        self.words
    }

    pub fn push(&mut self, bit: bool) {
        if self.len.is_multiple_of(64) {
            self.words.push(0);
        }
        if bit {
            self.words[self.len / 64] |= 1 << (self.len % 64);
        }
        self.len += 1;
    }

    /// 0-based read.
    #[inline]
    pub fn get(&self, k: usize) -> bool {
        debug_assert!(k < self.len);
        (self.words[k / 64] >> (k % 64)) & 1 == 1
    }

    /// 0-based write.
    #[inline]
    pub fn set(&mut self, k: usize, bit: bool) {
        debug_assert!(k < self.len);
        let mask = 1u64 << (k % 64);
        if bit {
            self.words[k / 64] |= mask;
        } else {
            self.words[k / 64] &= !mask;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |k| self.get(k))
    }

    /// Parses a string of `0`/`1` characters; anything else is rejected.
    pub fn parse(s: &str) -> Option<Self> {
        let mut bits = Self::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => return None,
            }
        }
        Some(bits)
    }
}

impl FromIterator<bool> for RawBits {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        let mut bits = Self::new();
        for b in iter {
            bits.push(b);
        }
        bits
    }
}

impl fmt::Display for RawBits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for RawBits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RawBits[{}]({})", self.len, self)
    }
}

/// Zero-initialised bits that many threads may set concurrently.
pub(crate) struct AtomicBits {
    words: Vec<AtomicU64>,
    len: usize,
}

impl AtomicBits {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: (0..len.div_ceil(64)).map(|_| AtomicU64::new(0)).collect(),
            len,
        }
    }

    /// Sets 0-based position `k` to one.
    #[inline]
    pub fn set(&self, k: usize) {
        debug_assert!(k < self.len);
        self.words[k / 64].fetch_or(1 << (k % 64), Ordering::Relaxed);
    }

    /// Sets position `k`, returning whether it was previously clear.
    #[inline]
    pub fn test_and_set(&self, k: usize) -> bool {
        let mask = 1u64 << (k % 64);
        self.words[k / 64].fetch_or(mask, Ordering::Relaxed) & mask == 0
    }

    pub fn into_raw(self) -> RawBits {
        let words = self.words.into_iter().map(AtomicU64::into_inner).collect();
        RawBits {
            words,
            len: self.len,
        }
    }
}
