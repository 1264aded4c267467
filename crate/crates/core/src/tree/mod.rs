//! Spanning trees of an embedding and their adjacency arrays.

mod adjacency;
mod dfs;
mod parallel;

pub use adjacency::build_tree_adjacency;
pub(crate) use adjacency::build_tree_adjacency_with;
pub use dfs::{dfs_parents, sequential_dfs_tree};
pub use parallel::parallel_spanning_tree;

use crate::bits::RawBits;
use crate::embedding::{DirectedEdge, PlanarEmbedding, VertexId};
use crate::error::BuildError;

/// Parent references: for each vertex, the index of its edge to the parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParentRefs {
    pub root: VertexId,
    /// `parent_edge[v - 1]`; [`ParentRefs::NONE`] for the root.
    pub parent_edge: Vec<u32>,
}

impl ParentRefs {
    pub const NONE: u32 = u32::MAX;

    pub fn n(&self) -> usize {
        self.parent_edge.len()
    }

    #[inline]
    pub fn parent_edge_of(&self, v: VertexId) -> Option<usize> {
        let e = self.parent_edge[v as usize - 1];
        (e != Self::NONE).then_some(e as usize)
    }

    /// Parent vertex per vertex, 0 for the root.
    pub fn parents(&self, g: &PlanarEmbedding) -> Vec<VertexId> {
        self.parent_edge
            .iter()
            .map(|&e| {
                if e == Self::NONE {
                    0
                } else {
                    g.edge(e as usize).tgt
                }
            })
            .collect()
    }

    /// Whether directed edge `e` belongs to the tree (in either direction).
    #[inline]
    pub fn is_tree_edge(&self, g: &PlanarEmbedding, e: usize) -> bool {
        let edge = g.edge(e);
        self.parent_edge[edge.src as usize - 1] as usize == e
            || self.parent_edge[edge.tgt as usize - 1] == edge.cmp
    }

    /// Checks that these references describe a spanning tree of `g` rooted at
    /// `self.root`: one root, well-formed parent edges, no cycles.
    pub fn check(&self, g: &PlanarEmbedding) -> Result<(), BuildError> {
        let n = g.n();
        let fail = |msg: String| Err(BuildError::NotSpanningTree(msg));
        if self.n() != n {
            return fail(format!("{} references for {n} vertices", self.n()));
        }
        if self.root == 0 || self.root as usize > n {
            return fail(format!("root {} out of range", self.root));
        }
        for (k, &e) in self.parent_edge.iter().enumerate() {
            let v = k as VertexId + 1;
            if (e == Self::NONE) != (v == self.root) {
                return fail(format!("vertex {v}: only the root may lack a parent edge"));
            }
            if e != Self::NONE && (e as usize >= g.edges().len() || g.edge(e as usize).src != v) {
                return fail(format!("vertex {v}: parent edge {e} does not leave {v}"));
            }
        }
        // 0 = unknown, 1 = on the current path, 2 = reaches the root
        let mut state = vec![0u8; n + 1];
        state[self.root as usize] = 2;
        let mut path = Vec::new();
        for start in 1..=n {
            let mut v = start;
            while state[v] == 0 {
                state[v] = 1;
                path.push(v);
                v = g.edge(self.parent_edge[v - 1] as usize).tgt as usize;
            }
            if state[v] == 1 {
                return fail(format!("cycle through vertex {v}"));
            }
            for u in path.drain(..) {
                state[u] = 2;
            }
        }
        Ok(())
    }
}

/// A rooted spanning tree in the adjacency form the construction consumes.
///
/// `et` groups tree edges by source vertex. Each non-root group starts with
/// the edge to the parent and continues counterclockwise; the root's group
/// keeps the embedding's order. `refs[j]` is the index in the embedding of
/// `et[j]`, and `c[j]` counts the non-tree edges that follow `et[j]`
/// counterclockwise (cyclically) before the next tree edge around its source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTreeData {
    pub parents: ParentRefs,
    pub tree_mark: RawBits,
    pub et: Vec<DirectedEdge>,
    /// `offsets[v - 1]..offsets[v]` is `v`'s range in `et`.
    pub offsets: Vec<u32>,
    pub refs: Vec<u32>,
    pub c: Vec<u32>,
}

impl SpanningTreeData {
    pub fn root(&self) -> VertexId {
        self.parents.root
    }

    #[inline]
    pub fn vfirst(&self, v: VertexId) -> usize {
        self.offsets[v as usize - 1] as usize
    }

    #[inline]
    pub fn vlast(&self, v: VertexId) -> usize {
        self.offsets[v as usize] as usize - 1
    }

    /// Number of tree edges that precede embedding edge `k` in the global
    /// edge order. Each group of `refs` is a rotation of an ascending run, so
    /// two binary searches suffice.
    pub fn tree_edges_before(&self, g: &PlanarEmbedding, k: usize) -> usize {
        let v = g.edge(k).src;
        let (lo, hi) = (
            self.offsets[v as usize - 1] as usize,
            self.offsets[v as usize] as usize,
        );
        let group = &self.refs[lo..hi];
        let Some(&head) = group.first() else {
            return lo;
        };
        let rot = group.partition_point(|&r| r >= head);
        let k = k as u32;
        lo + group[..rot].partition_point(|&r| r < k) + group[rot..].partition_point(|&r| r < k)
    }

    pub fn heap_bytes(&self) -> usize {
        self.parents.parent_edge.len() * 4
            + self.tree_mark.words().len() * 8
            + self.et.len() * std::mem::size_of::<DirectedEdge>()
            + (self.offsets.len() + self.refs.len() + self.c.len()) * 4
    }
}
