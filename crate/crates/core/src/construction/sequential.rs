use super::CompactEmbedding;
use crate::bits::RawBits;
use crate::embedding::{PlanarEmbedding, VertexId};
use crate::error::BuildError;
use crate::par::Executor;
use crate::tree::ParentRefs;

/// The traversal written out tick by tick.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tour {
    pub a: RawBits,
    pub b: RawBits,
    pub bstar: RawBits,
    /// `tick_edge[i - 1]` is the embedding edge processed at tick `i`.
    pub tick_edge: Vec<u32>,
    /// `preorder[v - 1]` is the compact label of input vertex `v`.
    pub preorder: Vec<VertexId>,
}

/// Walks the embedding along the tree: the root processes its rotation from
/// its first edge; every other vertex processes the edges counterclockwise
/// after the one it was entered through and finishes by returning along it.
pub fn sequential_tour(g: &PlanarEmbedding, tree: &ParentRefs) -> Tour {
    let n = g.n();
    let m = g.m();
    let mut a = RawBits::with_capacity(2 * m);
    let mut b = RawBits::with_capacity(2 * (n - 1));
    let mut bstar = RawBits::with_capacity(2 * (m + 1 - n));
    let mut tick_edge = Vec::with_capacity(2 * m);
    let mut preorder = vec![0; n];
    let mut seen = RawBits::zeros(g.edges().len());

    let root = tree.root;
    let mut label = 1;
    preorder[root as usize - 1] = label;
    // (next edge, edges left before the return, return edge or NONE)
    let mut stack: Vec<(usize, usize, u32)> =
        vec![(g.first(root), g.degree(root), ParentRefs::NONE)];
    while let Some(top) = stack.last_mut() {
        let (e, left, back) = *top;
        if left == 0 {
            if back != ParentRefs::NONE {
                a.push(true);
                b.push(true);
                tick_edge.push(back);
            }
            stack.pop();
            continue;
        }
        *top = (g.ccw_next(e), left - 1, back);
        tick_edge.push(e as u32);
        let edge = g.edge(e);
        if tree.is_tree_edge(g, e) {
            a.push(true);
            b.push(false);
            let u = edge.tgt;
            label += 1;
            preorder[u as usize - 1] = label;
            stack.push((g.ccw_next(edge.cmp as usize), g.degree(u) - 1, edge.cmp));
        } else {
            a.push(false);
            bstar.push(seen.get(e));
            seen.set(edge.cmp as usize, true);
        }
    }
    Tour {
        a,
        b,
        bstar,
        tick_edge,
        preorder,
    }
}

/// Reference construction by a single sequential traversal.
pub fn sequential_build(
    g: &PlanarEmbedding,
    tree: &ParentRefs,
) -> Result<CompactEmbedding, BuildError> {
    if g.m() == 0 {
        return Err(BuildError::Empty);
    }
    tree.check(g)?;
    let tour = sequential_tour(g, tree);
    CompactEmbedding::from_bits_with(&Executor::new(1), g.n(), g.m(), tour.a, tour.b, tour.bstar)
}
