//! Rotation-system representation of a connected planar multigraph.
//!
//! Directed edges are stored grouped by source vertex, each group in
//! counterclockwise order. Vertex ids are 1-based; edge indices are 0-based in
//! the API (the `.pg` text format uses 1-based indices).

mod decode;
mod format;
mod grid;

pub use decode::{decode, decode_with_tree};
pub use format::{
    parse_embedding, parse_embedding_with, parse_tree, write_embedding, write_tree, ParseOptions,
};
pub use grid::generate_grid_triangulation;

use std::fmt;

/// 1-based vertex id.
pub type VertexId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DirectedEdge {
    pub src: VertexId,
    pub tgt: VertexId,
    /// Index of the twin edge.
    pub cmp: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarEmbedding {
    /// `offsets[v - 1]..offsets[v]` is the edge group of vertex `v`.
    offsets: Vec<u32>,
    edges: Vec<DirectedEdge>,
}

/// One violated invariant, as reported by [`PlanarEmbedding::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Edge group of a vertex is not where the offsets say.
    Grouping {
        edge: usize,
        reason: String,
    },
    SelfLoop {
        edge: usize,
    },
    /// Twin pointer out of range.
    DanglingTwin {
        edge: usize,
        cmp: usize,
    },
    /// `cmp(cmp(e)) != e`, or the twin does not swap endpoints.
    Involution {
        edge: usize,
        reason: String,
    },
    Disconnected {
        reached: usize,
        n: usize,
    },
    Euler {
        n: usize,
        m: usize,
        faces: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Grouping { edge, reason } => write!(f, "edge {edge}: {reason}"),
            Violation::SelfLoop { edge } => write!(f, "edge {edge} is a self-loop"),
            Violation::DanglingTwin { edge, cmp } => {
                write!(f, "edge {edge} names twin {cmp}, which does not exist")
            }
            Violation::Involution { edge, reason } => {
                write!(f, "edge {edge} twin is not an involution: {reason}")
            }
            Violation::Disconnected { reached, n } => {
                write!(
                    f,
                    "disconnected: {reached} of {n} vertices reachable from vertex 1"
                )
            }
            Violation::Euler { n, m, faces } => {
                write!(f, "Euler formula violated: {n} - {m} + {faces} != 2")
            }
        }
    }
}

impl PlanarEmbedding {
    /// Assembles an embedding from per-vertex groups without validating it.
    pub fn from_parts(offsets: Vec<u32>, edges: Vec<DirectedEdge>) -> Self {
        Self { offsets, edges }
    }

    /// Builds an embedding from ccw neighbour lists (`rotations[v - 1]`).
    /// Twins are paired in order of appearance, so parallel edges must be
    /// listed consistently at both endpoints. Returns `None` if some edge has
    /// no partner.
    pub fn from_rotations(rotations: &[Vec<VertexId>]) -> Option<Self> {
        let mut offsets = Vec::with_capacity(rotations.len() + 1);
        offsets.push(0u32);
        let mut edges = Vec::new();
        for (v, rot) in rotations.iter().enumerate() {
            for &u in rot {
                edges.push(DirectedEdge {
                    src: v as VertexId + 1,
                    tgt: u,
                    cmp: u32::MAX,
                });
            }
            offsets.push(edges.len() as u32);
        }
        // pair the k-th (v,u) occurrence with the k-th (u,v) occurrence
        let mut pending: std::collections::HashMap<(u32, u32), Vec<u32>> = Default::default();
        for (e, edge) in edges.iter().enumerate() {
            pending
                .entry((edge.src, edge.tgt))
                .or_default()
                .push(e as u32);
        }
        for lists in pending.values_mut() {
            lists.reverse();
        }
        for e in 0..edges.len() {
            if edges[e].cmp != u32::MAX {
                continue;
            }
            let DirectedEdge { src, tgt, .. } = edges[e];
            let mine = pending.get_mut(&(src, tgt))?;
            let me = mine.pop()?;
            debug_assert_eq!(me as usize, e);
            let twin = pending.get_mut(&(tgt, src))?.pop()?;
            edges[e].cmp = twin;
            edges[twin as usize].cmp = e as u32;
        }
        Some(Self { offsets, edges })
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of undirected edges.
    pub fn m(&self) -> usize {
        self.edges.len() / 2
    }

    pub fn edges(&self) -> &[DirectedEdge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> DirectedEdge {
        self.edges[e]
    }

    pub fn offsets(&self) -> &[u32] {
        &self.offsets
    }

    /// Index range of `v`'s edge group.
    #[inline]
    pub fn group(&self, v: VertexId) -> std::ops::Range<usize> {
        self.offsets[v as usize - 1] as usize..self.offsets[v as usize] as usize
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.group(v).len()
    }

    /// First edge index of `v`'s group (`v.first`).
    pub fn first(&self, v: VertexId) -> usize {
        self.offsets[v as usize - 1] as usize
    }

    /// Last edge index of `v`'s group (`v.last`).
    pub fn last(&self, v: VertexId) -> usize {
        self.offsets[v as usize] as usize - 1
    }

    /// Next edge counterclockwise around `edges[e].src`, wrapping.
    #[inline]
    pub fn ccw_next(&self, e: usize) -> usize {
        let v = self.edges[e].src;
        if e + 1 == self.offsets[v as usize] as usize {
            self.offsets[v as usize - 1] as usize
        } else {
            e + 1
        }
    }

    /// Face successor: the ccw successor of the twin, around the twin's source.
    #[inline]
    pub fn face_next(&self, e: usize) -> usize {
        self.ccw_next(self.edges[e].cmp as usize)
    }

    /// Number of orbits of [`Self::face_next`]. Assumes twins are valid.
    pub fn count_faces(&self) -> usize {
        let mut seen = vec![false; self.edges.len()];
        let mut faces = 0;
        for start in 0..self.edges.len() {
            if seen[start] {
                continue;
            }
            faces += 1;
            let mut e = start;
            while !seen[e] {
                seen[e] = true;
                e = self.face_next(e);
            }
        }
        faces
    }

    /// Heap bytes of this adjacency representation.
    pub fn heap_bytes(&self) -> usize {
        self.offsets.len() * std::mem::size_of::<u32>()
            + self.edges.len() * std::mem::size_of::<DirectedEdge>()
    }

    /// Lists every violated invariant; empty iff this is a valid connected
    /// planar embedding.
    pub fn validate(&self) -> Vec<Violation> {
        let mut report = Vec::new();
        let n = self.n();
        let total = self.edges.len();

        let offsets_ok = self.offsets.first() == Some(&0)
            && self.offsets.windows(2).all(|w| w[0] <= w[1])
            && self.offsets.last().map(|&o| o as usize) == Some(total);
        if !offsets_ok {
            report.push(Violation::Grouping {
                edge: 0,
                reason: "vertex offsets do not partition the edge array".into(),
            });
            return report;
        }

        for v in 1..=n as VertexId {
            for e in self.group(v) {
                if self.edges[e].src != v {
                    report.push(Violation::Grouping {
                        edge: e,
                        reason: format!(
                            "source {} listed in group of vertex {v}",
                            self.edges[e].src
                        ),
                    });
                }
            }
        }
        let mut twins_ok = true;
        for (e, edge) in self.edges.iter().enumerate() {
            if edge.tgt == 0 || edge.tgt as usize > n {
                report.push(Violation::Grouping {
                    edge: e,
                    reason: format!("target {} out of range", edge.tgt),
                });
                twins_ok = false;
                continue;
            }
            if edge.src == edge.tgt {
                report.push(Violation::SelfLoop { edge: e });
            }
            let c = edge.cmp as usize;
            if c >= total {
                report.push(Violation::DanglingTwin { edge: e, cmp: c });
                twins_ok = false;
                continue;
            }
            if c == e {
                report.push(Violation::Involution {
                    edge: e,
                    reason: "edge is its own twin".into(),
                });
                twins_ok = false;
            } else if self.edges[c].cmp as usize != e {
                report.push(Violation::Involution {
                    edge: e,
                    reason: format!("cmp({e}) = {c} but cmp({c}) = {}", self.edges[c].cmp),
                });
                twins_ok = false;
            } else if self.edges[c].src != edge.tgt || self.edges[c].tgt != edge.src {
                report.push(Violation::Involution {
                    edge: e,
                    reason: format!("twin {c} does not reverse ({}, {})", edge.src, edge.tgt),
                });
                twins_ok = false;
            }
        }
        if !report.is_empty() && !twins_ok {
            return report;
        }

        if n > 0 {
            let reached = self.reachable_from_root();
            if reached != n {
                report.push(Violation::Disconnected { reached, n });
            }
        }
        let faces = self.count_faces();
        if n as i64 - self.m() as i64 + faces as i64 != 2 {
            report.push(Violation::Euler {
                n,
                m: self.m(),
                faces,
            });
        }
        report
    }

    fn reachable_from_root(&self) -> usize {
        let mut seen = vec![false; self.n() + 1];
        let mut stack = vec![1 as VertexId];
        seen[1] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for e in self.group(v) {
                let u = self.edges[e].tgt as usize;
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u as VertexId);
                }
            }
        }
        count
    }

    /// Applies a vertex relabeling (`map[old - 1] = new`), regrouping edges by
    /// the new ids while keeping each rotation's order and starting edge.
    pub fn relabel(&self, map: &[VertexId]) -> Self {
        let n = self.n();
        let mut inverse = vec![0 as VertexId; n];
        for (old, &new) in map.iter().enumerate() {
            inverse[new as usize - 1] = old as VertexId + 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0u32);
        let mut position = vec![0u32; self.edges.len()];
        let mut next = 0u32;
        for &old in &inverse {
            for e in self.group(old) {
                position[e] = next;
                next += 1;
            }
            offsets.push(next);
        }
        let mut edges = vec![
            DirectedEdge {
                src: 0,
                tgt: 0,
                cmp: 0
            };
            self.edges.len()
        ];
        for (e, edge) in self.edges.iter().enumerate() {
            edges[position[e] as usize] = DirectedEdge {
                src: map[edge.src as usize - 1],
                tgt: map[edge.tgt as usize - 1],
                cmp: position[edge.cmp as usize],
            };
        }
        Self { offsets, edges }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn triangle() -> PlanarEmbedding {
        PlanarEmbedding::from_rotations(&[vec![2, 3], vec![3, 1], vec![1, 2]]).unwrap()
    }

    #[test]
    fn single_edge_has_one_face() {
        let g = PlanarEmbedding::from_rotations(&[vec![2], vec![1]]).unwrap();
        assert_eq!(g.count_faces(), 1);
        assert!(g.validate().is_empty());
    }

    #[test]
    fn triangle_is_valid() {
        let g = triangle();
        assert_eq!(g.count_faces(), 2);
        assert!(g.validate().is_empty());
    }

    #[test]
    fn corrupted_twin_is_reported() {
        let g = triangle();
        let mut edges = g.edges().to_vec();
        edges[0].cmp = edges[1].cmp;
        let bad = PlanarEmbedding::from_parts(g.offsets().to_vec(), edges);
        let report = bad.validate();
        assert!(
            report
                .iter()
                .any(|v| matches!(v, Violation::Involution { .. })),
            "{report:?}"
        );
    }

    #[test]
    fn k5_fails_euler() {
        // K5 with the rotation of each vertex ascending: genus > 0 for every
        // rotation, so any consistent choice breaks Euler.
        let rot: Vec<Vec<VertexId>> = (1..=5)
            .map(|v| (1..=5).filter(|&u| u != v).collect())
            .collect();
        let g = PlanarEmbedding::from_rotations(&rot).unwrap();
        let report = g.validate();
        assert!(
            report.iter().any(|v| matches!(v, Violation::Euler { .. })),
            "{report:?}"
        );
    }

    #[test]
    fn self_loop_is_reported() {
        let g = PlanarEmbedding::from_rotations(&[vec![1, 1, 2], vec![1]]).unwrap();
        assert!(g
            .validate()
            .iter()
            .any(|v| matches!(v, Violation::SelfLoop { .. })));
    }

    #[test]
    fn relabel_preserves_faces() {
        let g = triangle();
        let h = g.relabel(&[3, 1, 2]);
        assert!(h.validate().is_empty());
        assert_eq!(h.degree(3), 2);
        assert_eq!(h.edge(h.first(3)).tgt, 1);
    }
}
