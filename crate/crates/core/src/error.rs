use thiserror::Error;

/// Errors from parsing and validating `.pg` / `.tree` inputs.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: edge {edge} names twin {cmp}, which does not exist")]
    DanglingTwin {
        line: usize,
        edge: usize,
        cmp: usize,
    },
    #[error("line {line}: twin of edge {edge} is not an involution ({reason})")]
    NotInvolution {
        line: usize,
        edge: usize,
        reason: String,
    },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error(
        "line {line}: graph is disconnected ({reached} of {n} vertices reachable from vertex 1)"
    )]
    Disconnected {
        line: usize,
        reached: usize,
        n: usize,
    },
    #[error("line {line}: Euler formula violated: n - m + f = {n} - {m} + {faces} != 2")]
    EulerViolation {
        line: usize,
        n: usize,
        m: usize,
        faces: usize,
    },
    #[error("line {line}: {reason}")]
    Invalid { line: usize, reason: String },
}

/// Errors raised by construction steps on inputs that break their preconditions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("grid side must be at least 2, got {0}")]
    GridTooSmall(usize),
    #[error("parent references do not form a spanning tree: {0}")]
    NotSpanningTree(String),
    #[error("successor pointers do not form a single cycle: {0}")]
    NotSingleCycle(String),
    #[error("parenthesis sequence is unbalanced at position {0}")]
    Unbalanced(usize),
    #[error("embedding has no edges")]
    Empty,
    #[error("bitvector shape does not match n and m: {0}")]
    Shape(String),
}

/// Out-of-range arguments to the navigation queries.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum QueryError {
    #[error("vertex {v} out of range 1..={n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("edge tick {i} out of range 1..={len}")]
    TickOutOfRange { i: usize, len: usize },
}

#[derive(Debug, Error)]
pub enum PembFileError {
    #[error("bad magic, expected PEMB1")]
    BadMagic,
    #[error("file truncated: {0}")]
    Truncated(&'static str),
    #[error("corrupt payload: {0}")]
    Corrupt(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
