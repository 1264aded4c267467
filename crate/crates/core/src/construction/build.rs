//! Parallel construction: Euler tour list, list ranking, scatter into `A`
//! and `B`, placement of non-tree edges, and the `B*` pairing.

use std::time::{Duration, Instant};

use super::list_ranking::list_ranking_with;
use super::sequential_tour;
use super::{CompactEmbedding, EulerEntry};
use crate::bits::AtomicBits;
use crate::embedding::{PlanarEmbedding, VertexId};
use crate::error::BuildError;
use crate::memory::{vec_bytes, MemoryAccountant};
use crate::par::{DisjointSlice, Executor};
use crate::tree::{
    build_tree_adjacency_with, dfs_parents, parallel_spanning_tree, SpanningTreeData,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phase {
    SpanningTree,
    Euler,
    ListRank,
    Scatter,
    BStar,
    Support,
}

impl Phase {
    pub const ALL: [Phase; 6] = [
        Phase::SpanningTree,
        Phase::Euler,
        Phase::ListRank,
        Phase::Scatter,
        Phase::BStar,
        Phase::Support,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Phase::SpanningTree => "spanning-tree",
            Phase::Euler => "euler",
            Phase::ListRank => "list-rank",
            Phase::Scatter => "scatter",
            Phase::BStar => "bstar",
            Phase::Support => "support",
        }
    }
}

/// Per-phase wall-clock times and the byte accounting of one construction.
#[derive(Clone, Debug, Default)]
pub struct Profile {
    times: [Duration; 6],
    pub memory: MemoryAccountant,
}

impl Profile {
    pub fn time(&self, phase: Phase) -> Duration {
        self.times[phase as usize]
    }

    pub fn total(&self) -> Duration {
        self.times.iter().sum()
    }

    fn record(&mut self, phase: Phase, since: Instant) {
        self.times[phase as usize] += since.elapsed();
    }
}

/// Spanning tree plus compact construction, rooted at vertex 1.
pub fn construct(
    g: &PlanarEmbedding,
    threads: usize,
    deterministic: bool,
) -> Result<(CompactEmbedding, Profile), BuildError> {
    construct_rooted(g, 1, threads, deterministic)
}

pub(crate) fn construct_rooted(
    g: &PlanarEmbedding,
    root: VertexId,
    threads: usize,
    deterministic: bool,
) -> Result<(CompactEmbedding, Profile), BuildError> {
    if g.m() == 0 {
        return Err(BuildError::Empty);
    }
    let exec = Executor::new(threads);
    let mut profile = Profile::default();

    let start = Instant::now();
    let parents = parallel_spanning_tree(g, root, exec.threads(), deterministic);
    profile
        .memory
        .alloc("parents", vec_bytes(&parents.parent_edge));
    let tree = build_tree_adjacency_with(&exec, g, &parents)?;
    profile.memory.alloc("tree", tree.heap_bytes());
    drop(parents);
    profile.memory.free("parents");
    profile.record(Phase::SpanningTree, start);

    let out = build_compact_with(&exec, g, &tree, &mut profile)?;
    drop(tree);
    profile.memory.free("tree");
    Ok((out, profile))
}

/// The sequential baseline: DFS tree and a single traversal. The traversal
/// is reported under [`Phase::Euler`]; phases it does not have stay at zero.
pub fn construct_sequential(
    g: &PlanarEmbedding,
) -> Result<(CompactEmbedding, Profile), BuildError> {
    if g.m() == 0 {
        return Err(BuildError::Empty);
    }
    let mut profile = Profile::default();
    let start = Instant::now();
    let parents = dfs_parents(g, 1);
    profile
        .memory
        .alloc("parents", vec_bytes(&parents.parent_edge));
    profile.record(Phase::SpanningTree, start);

    let start = Instant::now();
    let tour = sequential_tour(g, &parents);
    profile.memory.alloc(
        "tour",
        vec_bytes(&tour.tick_edge) + vec_bytes(&tour.preorder) + g.edges().len().div_ceil(8),
    );
    let (a, b, bstar) = (tour.a, tour.b, tour.bstar);
    profile.memory.alloc(
        "bits",
        (a.words().len() + b.words().len() + bstar.words().len()) * 8,
    );
    drop(tour.tick_edge);
    drop(tour.preorder);
    profile.memory.free("tour");
    drop(parents);
    profile.memory.free("parents");
    profile.record(Phase::Euler, start);

    let start = Instant::now();
    let out = CompactEmbedding::from_bits_with(&Executor::new(1), g.n(), g.m(), a, b, bstar)?;
    profile
        .memory
        .alloc("support", out.support_bits().div_ceil(8));
    profile.record(Phase::Support, start);
    Ok((out, profile))
}

/// Builds `(A, B, B*)` from a spanning tree's adjacency arrays. The output
/// does not depend on `threads`.
pub fn build_compact(
    g: &PlanarEmbedding,
    tree: &SpanningTreeData,
    threads: usize,
) -> Result<CompactEmbedding, BuildError> {
    build_compact_with(&Executor::new(threads), g, tree, &mut Profile::default())
}

pub(crate) fn build_compact_with(
    exec: &Executor,
    g: &PlanarEmbedding,
    tree: &SpanningTreeData,
    profile: &mut Profile,
) -> Result<CompactEmbedding, BuildError> {
    let (n, m) = (g.n(), g.m());
    if m == 0 {
        return Err(BuildError::Empty);
    }
    let root = tree.root();
    let (et, c, refs) = (&tree.et, &tree.c, &tree.refs);
    let tree_len = et.len();
    if tree_len != 2 * (n - 1) {
        return Err(BuildError::NotSpanningTree(format!(
            "{tree_len} tree edge slots for {n} vertices"
        )));
    }

    let start = Instant::now();
    let mut list = vec![EulerEntry::default(); tree_len];
    profile.memory.alloc("euler-list", vec_bytes(&list));
    exec.for_chunks_mut(&mut list, |lo, part| {
        for (k, entry) in part.iter_mut().enumerate() {
            let j = lo + k;
            let e = et[j];
            let forward = e.src == root || tree.vfirst(e.src) != j;
            let succ = if forward {
                let f = tree.vfirst(e.tgt);
                if f == tree.vlast(e.tgt) {
                    f
                } else {
                    f + 1
                }
            } else if e.cmp as usize == tree.vlast(e.tgt) {
                tree.vfirst(e.tgt)
            } else {
                e.cmp as usize + 1
            };
            *entry = EulerEntry {
                value: !forward,
                succ: succ as u32,
                rank_a: 1 + c[e.cmp as usize],
                rank_b: 1,
            };
        }
    });
    profile.record(Phase::Euler, start);

    let start = Instant::now();
    let head = tree.vfirst(root);
    list_ranking_with(exec, &mut list, head)?;
    profile.record(Phase::ListRank, start);

    let start = Instant::now();
    // non-tree edges at the root ahead of its first tree edge
    let r0 = refs[head] as usize - g.first(root);
    let a_bits = AtomicBits::zeros(2 * m);
    let b_bits = AtomicBits::zeros(tree_len);
    profile.memory.alloc("A", (2 * m).div_ceil(64) * 8);
    profile.memory.alloc("B", tree_len.div_ceil(64) * 8);
    exec.for_chunks(tree_len, |_, range| {
        for j in range {
            let entry = list[j];
            let gap = c[et[j].cmp as usize] as usize;
            a_bits.set(r0 + entry.rank_a as usize - gap - 1);
            if entry.value {
                b_bits.set(entry.rank_b as usize - 1);
            }
        }
    });

    let star_len = 2 * m - tree_len;
    let mut d_pos = vec![0u32; star_len];
    let mut d_edge = vec![0u32; star_len];
    profile.memory.alloc("d-pos", vec_bytes(&d_pos));
    profile.memory.alloc("d-edge", vec_bytes(&d_edge));
    {
        let pos_out = DisjointSlice::new(&mut d_pos);
        let edge_out = DisjointSlice::new(&mut d_edge);
        exec.for_chunks(tree_len, |_, range| {
            for j in range {
                let x = et[j].cmp as usize;
                let gap = c[x] as usize;
                if gap == 0 {
                    continue;
                }
                let v = et[j].tgt;
                let group = g.group(v);
                let entry = list[j];
                let mut pos = r0 + (entry.rank_a - entry.rank_b) as usize - gap;
                let mut k = refs[x] as usize + 1;
                let mut nt = k - tree.tree_edges_before(g, refs[x] as usize) - 1;
                for _ in 0..gap {
                    if k == group.end {
                        k = group.start;
                        nt = group.start - tree.vfirst(v);
                        if v == root {
                            pos = 0;
                        }
                    }
                    // SAFETY: every non-tree edge lies in exactly one gap and
                    // every B* position belongs to exactly one edge.
                    unsafe {
                        *pos_out.get_mut(nt) = pos as u32;
                        *edge_out.get_mut(pos) = k as u32;
                    }
                    pos += 1;
                    k += 1;
                    nt += 1;
                }
            }
        });
    }
    drop(list);
    profile.memory.free("euler-list");
    profile.record(Phase::Scatter, start);

    let start = Instant::now();
    let star_bits = AtomicBits::zeros(star_len);
    profile.memory.alloc("B*", star_len.div_ceil(64) * 8);
    exec.for_chunks(star_len, |_, range| {
        for p in range {
            let twin = g.edge(d_edge[p] as usize).cmp as usize;
            let nt = twin - tree.tree_edges_before(g, twin);
            if (d_pos[nt] as usize) < p {
                star_bits.set(p);
            }
        }
    });
    drop(d_pos);
    drop(d_edge);
    profile.memory.free("d-pos");
    profile.memory.free("d-edge");
    profile.record(Phase::BStar, start);

    let start = Instant::now();
    let out = CompactEmbedding::from_bits_with(
        exec,
        n,
        m,
        a_bits.into_raw(),
        b_bits.into_raw(),
        star_bits.into_raw(),
    )?;
    profile
        .memory
        .alloc("support", out.support_bits().div_ceil(8));
    profile.record(Phase::Support, start);
    Ok(out)
}
