use super::{DirectedEdge, PlanarEmbedding, VertexId};
use crate::construction::CompactEmbedding;
use crate::tree::ParentRefs;

/// Expands a compact representation back into a rotation system. Vertex `v`
/// keeps its preorder label and its group lists the ticks from `first(v)`
/// onwards, so re-encoding with the tree from [`decode_with_tree`] gives the
/// same bits.
pub fn decode(c: &CompactEmbedding) -> PlanarEmbedding {
    decode_with_tree(c).0
}

/// Like [`decode`], also returning the spanning tree the bits were built
/// from, rooted at vertex 1.
pub fn decode_with_tree(c: &CompactEmbedding) -> (PlanarEmbedding, ParentRefs) {
    let n = c.n();
    let ticks = c.ticks();
    let mut offsets = Vec::with_capacity(n + 1);
    offsets.push(0u32);
    let mut edge_tick = Vec::with_capacity(ticks);
    let mut sources = Vec::with_capacity(ticks);
    let mut tick_edge = vec![0u32; ticks + 1];
    for v in 1..=n {
        for t in c.ticks_of(v) {
            tick_edge[t] = edge_tick.len() as u32;
            edge_tick.push(t);
            sources.push(v as VertexId);
        }
        offsets.push(edge_tick.len() as u32);
    }
    let edges = edge_tick
        .iter()
        .zip(&sources)
        .map(|(&t, &src)| {
            let back = c.mate(t);
            DirectedEdge {
                src,
                tgt: c.vertex(back) as VertexId,
                cmp: tick_edge[back],
            }
        })
        .collect();
    // a non-root vertex processes its parent edge last
    let parent_edge = (1..=n)
        .map(|v| {
            if v == 1 {
                ParentRefs::NONE
            } else {
                offsets[v] - 1
            }
        })
        .collect();
    (
        PlanarEmbedding::from_parts(offsets, edges),
        ParentRefs {
            root: 1,
            parent_edge,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{construct, sequential_build};
    use crate::embedding::generate_grid_triangulation;

    #[test]
    fn roundtrip_reencodes_identically() {
        let g = generate_grid_triangulation(8, 5).unwrap();
        let (c, _) = construct(&g, 2, false).unwrap();
        let (h, t) = decode_with_tree(&c);
        assert!(h.validate().is_empty());
        assert_eq!((h.n(), h.m()), (g.n(), g.m()));
        assert_eq!(sequential_build(&h, &t).unwrap(), c);
    }
}
