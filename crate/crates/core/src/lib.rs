//! Compact planar embeddings: a `4m + o(m)`-bit representation of a planar
//! graph with its rotation system, built in parallel, with neighbour and
//! face navigation.

pub mod bits;
pub mod construction;
pub mod embedding;
pub mod error;
pub mod memory;
pub mod par;
mod queries;
pub mod tree;

pub use construction::{build_compact, construct, sequential_build, CompactEmbedding};
pub use embedding::{PlanarEmbedding, VertexId};
pub use error::{BuildError, FormatError, PembFileError, QueryError};
