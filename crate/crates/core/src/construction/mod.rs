//! Building the compact representation `(A, B, B*)` of a planar embedding.
//!
//! A tick is one of the `2m` edge occurrences met by a counterclockwise
//! traversal of the embedding guided by a spanning tree: `A` marks which
//! ticks are tree edges, `B` is the balanced-parentheses encoding of the tree
//! in the order its edges are met, and `B*` pairs up the two occurrences of
//! each non-tree edge. Vertex `v` of the compact form is the `v`-th vertex in
//! preorder of the traversal.

mod build;
mod list_ranking;
mod sequential;
mod serialize;

pub use build::{build_compact, construct, construct_sequential, Phase, Profile};
pub use list_ranking::list_ranking;
pub use sequential::{sequential_build, sequential_tour, Tour};
pub use serialize::{read_pemb, write_pemb};

use crate::bits::{BitSequence, ParenSequence, RawBits};
use crate::error::BuildError;
use crate::par::Executor;

/// One entry of the Euler tour list, indexed like `E_T`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EulerEntry {
    /// The parenthesis emitted into `B`: `false` (open) when the edge leads
    /// away from the root, `true` (close) on the way back.
    pub value: bool,
    /// Index in `E_T` of the next tree edge of the tour.
    pub succ: u32,
    /// Weight, then inclusive rank, in `A` (the tree tick plus the gap of
    /// non-tree ticks that follows it).
    pub rank_a: u32,
    /// Weight, then inclusive rank, in `B`.
    pub rank_b: u32,
}

/// The `4m`-bit representation together with its rank/select and
/// parenthesis directories.
#[derive(Clone, Debug)]
pub struct CompactEmbedding {
    n: usize,
    m: usize,
    a: BitSequence,
    b: ParenSequence,
    bstar: ParenSequence,
}

impl CompactEmbedding {
    /// Wraps raw bitvectors, checking their lengths and balance, and builds
    /// the support directories.
    pub fn from_bits(
        n: usize,
        m: usize,
        a: RawBits,
        b: RawBits,
        bstar: RawBits,
        threads: usize,
    ) -> Result<Self, BuildError> {
        Self::from_bits_with(&Executor::new(threads), n, m, a, b, bstar)
    }

    pub(crate) fn from_bits_with(
        exec: &Executor,
        n: usize,
        m: usize,
        a: RawBits,
        b: RawBits,
        bstar: RawBits,
    ) -> Result<Self, BuildError> {
        if n < 2 || m < n - 1 {
            return Err(BuildError::Shape(format!("n = {n}, m = {m}")));
        }
        let expect = [
            (a.len(), 2 * m, "A"),
            (b.len(), 2 * (n - 1), "B"),
            (bstar.len(), 2 * (m + 1 - n), "B*"),
        ];
        for (got, want, name) in expect {
            if got != want {
                return Err(BuildError::Shape(format!(
                    "{name} has {got} bits, expected {want}"
                )));
            }
        }
        if a.count_ones() != 2 * (n - 1) {
            return Err(BuildError::Shape(format!(
                "A has {} ones, expected {}",
                a.count_ones(),
                2 * (n - 1)
            )));
        }
        let a = BitSequence::build_with(exec, a);
        let b = ParenSequence::build_with(exec, b)?;
        let bstar = ParenSequence::build_with(exec, bstar)?;
        Ok(Self { n, m, a, b, bstar })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn a(&self) -> &BitSequence {
        &self.a
    }

    pub fn b(&self) -> &ParenSequence {
        &self.b
    }

    pub fn bstar(&self) -> &ParenSequence {
        &self.bstar
    }

    /// Bits of `A`, `B` and `B*` proper; always `4m`.
    pub fn payload_bits(&self) -> usize {
        self.a.len() + self.b.len() + self.bstar.len()
    }

    /// Bits spent on rank/select samples and parenthesis min-trees.
    pub fn support_bits(&self) -> usize {
        self.a.support_bits() + self.b.support_bits() + self.bstar.support_bits()
    }

    pub fn heap_bytes(&self) -> usize {
        self.a.heap_bytes() + self.b.heap_bytes() + self.bstar.heap_bytes()
    }
}

impl PartialEq for CompactEmbedding {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.m == other.m
            && self.a.raw() == other.a.raw()
            && self.b.raw() == other.b.raw()
            && self.bstar.raw() == other.bstar.raw()
    }
}

impl Eq for CompactEmbedding {}
