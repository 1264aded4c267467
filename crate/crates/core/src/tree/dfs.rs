use super::{build_tree_adjacency, ParentRefs, SpanningTreeData};
use crate::embedding::{PlanarEmbedding, VertexId};

/// Depth-first spanning tree. Each vertex scans its rotation counterclockwise
/// starting just after the edge it was entered through (the root starts at
/// its first edge) and descends into the first unvisited neighbour.
pub fn dfs_parents(g: &PlanarEmbedding, root: VertexId) -> ParentRefs {
    let n = g.n();
    let mut parent_edge = vec![ParentRefs::NONE; n];
    let mut visited = vec![false; n + 1];
    visited[root as usize] = true;
    // (next edge to scan, edges left to scan)
    let mut stack: Vec<(usize, usize)> = vec![(g.first(root), g.degree(root))];
    while let Some(top) = stack.last_mut() {
        let (e, left) = *top;
        if left == 0 {
            stack.pop();
            continue;
        }
        *top = (g.ccw_next(e), left - 1);
        let edge = g.edge(e);
        let u = edge.tgt;
        if !visited[u as usize] {
            visited[u as usize] = true;
            parent_edge[u as usize - 1] = edge.cmp;
            let back = edge.cmp as usize;
            stack.push((g.ccw_next(back), g.degree(u) - 1));
        }
    }
    ParentRefs { root, parent_edge }
}

/// The sequential DFS tree together with its adjacency arrays.
pub fn sequential_dfs_tree(g: &PlanarEmbedding, root: VertexId) -> SpanningTreeData {
    let parents = dfs_parents(g, root);
    build_tree_adjacency(g, &parents, 1).expect("a DFS tree of a connected graph is spanning")
}
