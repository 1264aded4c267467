use super::{ParentRefs, SpanningTreeData};
use crate::bits::AtomicBits;
use crate::embedding::{DirectedEdge, PlanarEmbedding, VertexId};
use crate::error::BuildError;
use crate::par::{prefix_sum_with, DisjointSlice, Executor};

/// Builds `E_T`, `ref`, `C` and the tree marks from parent references.
///
/// Tree degrees are counted per vertex and turned into group offsets with a
/// prefix sum; each vertex then fills its own `E_T` range independently.
/// Twin indices inside `E_T` are patched in a second pass in which each
/// vertex writes the parent slots of its children.
pub fn build_tree_adjacency(
    g: &PlanarEmbedding,
    parents: &ParentRefs,
    threads: usize,
) -> Result<SpanningTreeData, BuildError> {
    let exec = Executor::new(threads);
    build_tree_adjacency_with(&exec, g, parents)
}

pub(crate) fn build_tree_adjacency_with(
    exec: &Executor,
    g: &PlanarEmbedding,
    parents: &ParentRefs,
) -> Result<SpanningTreeData, BuildError> {
    parents.check(g)?;
    let n = g.n();
    let root = parents.root;

    let mut degree = vec![0u64; n + 1];
    exec.for_chunks_mut(&mut degree[..n], |lo, part| {
        for (k, d) in part.iter_mut().enumerate() {
            let v = (lo + k + 1) as VertexId;
            *d = g.group(v).filter(|&e| parents.is_tree_edge(g, e)).count() as u64;
        }
    });
    let offsets: Vec<u32> = prefix_sum_with(exec, &degree)
        .into_iter()
        .map(|o| o as u32)
        .collect();
    drop(degree);
    let total = offsets[n] as usize;
    debug_assert_eq!(total, 2 * (n - 1));

    let mut et = vec![
        DirectedEdge {
            src: 0,
            tgt: 0,
            cmp: 0
        };
        total
    ];
    let mut refs = vec![0u32; total];
    let mut c = vec![0u32; total];
    let marks = AtomicBits::zeros(g.edges().len());
    {
        let et_out = DisjointSlice::new(&mut et);
        let refs_out = DisjointSlice::new(&mut refs);
        let c_out = DisjointSlice::new(&mut c);
        let offsets = &offsets;
        exec.for_chunks(n, |_, vertices| {
            for k in vertices {
                let v = (k + 1) as VertexId;
                let group = g.group(v);
                let deg = group.len();
                // start at the parent edge, or at the root's first tree edge
                let start = match parents.parent_edge_of(v) {
                    Some(e) => e,
                    None => match group.clone().find(|&e| parents.is_tree_edge(g, e)) {
                        Some(e) => e,
                        None => continue,
                    },
                };
                let mut slot = offsets[k] as usize;
                let mut e = start;
                for _ in 0..deg {
                    if parents.is_tree_edge(g, e) {
                        let edge = g.edge(e);
                        // SAFETY: slots offsets[k]..offsets[k+1] belong to v alone.
                        unsafe {
                            *et_out.get_mut(slot) = DirectedEdge {
                                src: v,
                                tgt: edge.tgt,
                                cmp: offsets[edge.tgt as usize - 1],
                            };
                            *refs_out.get_mut(slot) = e as u32;
                            *c_out.get_mut(slot) = 0;
                        }
                        marks.set(e);
                        slot += 1;
                    } else {
                        // SAFETY: slot - 1 is v's most recent tree edge.
                        unsafe { *c_out.get_mut(slot - 1) += 1 };
                    }
                    e = g.ccw_next(e);
                }
            }
        });

        // Child slots already point at the child's parent slot; make the
        // parent slot point back. Each parent slot is written by exactly one
        // vertex (its parent), and no vertex reads its own parent slot here.
        exec.for_chunks(n, |_, vertices| {
            for k in vertices {
                let v = (k + 1) as VertexId;
                let (lo, hi) = (offsets[k] as usize, offsets[k + 1] as usize);
                let first_child = if v == root { lo } else { lo + 1 };
                for slot in first_child..hi {
                    // SAFETY: see above.
                    unsafe {
                        let back = et_out.get(slot).cmp as usize;
                        et_out.get_mut(back).cmp = slot as u32;
                    }
                }
            }
        });
    }

    Ok(SpanningTreeData {
        parents: parents.clone(),
        tree_mark: marks.into_raw(),
        et,
        offsets,
        refs,
        c,
    })
}
