//! Succinct primitives: plain bits, rank/select, balanced parentheses.

mod parens;
mod rank_select;
mod raw;

pub use parens::ParenSequence;
pub use rank_select::BitSequence;
pub use raw::RawBits;

pub(crate) use raw::AtomicBits;
