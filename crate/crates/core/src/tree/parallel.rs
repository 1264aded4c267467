//! Work-stealing parallel spanning tree.
//!
//! A small stub tree is grown sequentially from the root until its frontier
//! can seed every worker. Each worker then runs a stack-driven traversal from
//! its seeds. A vertex is claimed by whichever worker first swings its parent
//! slot from `UNCLAIMED` to an edge pointing at an already-claimed vertex, so
//! every claim hangs off the existing tree and the result is acyclic no matter
//! how the race resolves. Idle workers steal half of another worker's stack.

use std::sync::atomic::{AtomicU32, AtomicUsize, Ordering};

use crossbeam::deque::{Steal, Stealer, Worker};

use super::{dfs_parents, ParentRefs};
use crate::embedding::{PlanarEmbedding, VertexId};

const UNCLAIMED: u32 = u32::MAX - 1;

/// Spanning tree rooted at `root`. With `deterministic` the result is the
/// sequential DFS tree; otherwise it depends on scheduling but is always a
/// valid spanning tree.
pub fn parallel_spanning_tree(
    g: &PlanarEmbedding,
    root: VertexId,
    threads: usize,
    deterministic: bool,
) -> ParentRefs {
    let threads = threads.max(1);
    if deterministic {
        return dfs_parents(g, root);
    }
    let n = g.n();
    let parent: Vec<AtomicU32> = (0..n).map(|_| AtomicU32::new(UNCLAIMED)).collect();
    parent[root as usize - 1].store(ParentRefs::NONE, Ordering::Relaxed);

    let claim = |v: VertexId, e: usize| -> Option<VertexId> {
        let edge = g.edge(e);
        let u = edge.tgt;
        parent[u as usize - 1]
            .compare_exchange(UNCLAIMED, edge.cmp, Ordering::AcqRel, Ordering::Relaxed)
            .ok()
            .map(|_| {
                debug_assert_eq!(g.edge(edge.cmp as usize).tgt, v);
                u
            })
    };

    // stub tree: expand sequentially until the frontier can feed every worker
    let mut frontier = vec![root];
    let want = 4 * threads;
    let mut head = 0;
    while head < frontier.len() && frontier.len() - head < want {
        let v = frontier[head];
        head += 1;
        for e in g.group(v) {
            if let Some(u) = claim(v, e) {
                frontier.push(u);
            }
        }
    }
    let seeds = &frontier[head..];

    let workers: Vec<Worker<VertexId>> = (0..threads).map(|_| Worker::new_lifo()).collect();
    for (k, &v) in seeds.iter().enumerate() {
        workers[k % threads].push(v);
    }
    let stealers: Vec<Stealer<VertexId>> = workers.iter().map(Worker::stealer).collect();
    let pending = AtomicUsize::new(seeds.len());

    std::thread::scope(|s| {
        for (id, local) in workers.into_iter().enumerate() {
            let stealers = &stealers;
            let pending = &pending;
            let claim = &claim;
            s.spawn(move || loop {
                let next = local.pop().or_else(|| steal(id, &local, stealers));
                match next {
                    Some(v) => {
                        for e in g.group(v) {
                            if let Some(u) = claim(v, e) {
                                pending.fetch_add(1, Ordering::AcqRel);
                                local.push(u);
                            }
                        }
                        pending.fetch_sub(1, Ordering::AcqRel);
                    }
                    None if pending.load(Ordering::Acquire) == 0 => break,
                    None => std::thread::yield_now(),
                }
            });
        }
    });

    let parent_edge = parent
        .into_iter()
        .map(AtomicU32::into_inner)
        .collect::<Vec<_>>();
    debug_assert!(
        parent_edge.iter().all(|&e| e != UNCLAIMED),
        "graph must be connected"
    );
    ParentRefs { root, parent_edge }
}

fn steal(id: usize, local: &Worker<VertexId>, stealers: &[Stealer<VertexId>]) -> Option<VertexId> {
    let k = stealers.len();
    for off in 1..k {
        let victim = &stealers[(id + off) % k];
        loop {
            match victim.steal_batch_and_pop(local) {
                Steal::Success(v) => return Some(v),
                Steal::Empty => break,
                Steal::Retry => continue,
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::generate_grid_triangulation;

    #[test]
    fn deterministic_matches_dfs() {
        let g = generate_grid_triangulation(9, 2).unwrap();
        for threads in [1, 2, 4, 8] {
            assert_eq!(
                parallel_spanning_tree(&g, 1, threads, true),
                dfs_parents(&g, 1)
            );
        }
    }

    #[test]
    fn racy_tree_is_spanning() {
        let g = generate_grid_triangulation(50, 9).unwrap();
        for threads in [1, 2, 8] {
            let t = parallel_spanning_tree(&g, 1, threads, false);
            t.check(&g).unwrap();
            // every vertex reaches the root in fewer than n hops
            let parents = t.parents(&g);
            for v in 1..=g.n() {
                let (mut u, mut hops) = (v, 0);
                while u != 1 {
                    u = parents[u - 1] as usize;
                    hops += 1;
                    assert!(hops < g.n());
                }
            }
        }
    }

    #[test]
    fn path_has_one_tree() {
        let rot: Vec<Vec<VertexId>> = (1..=6u32)
            .map(|v| {
                [
                    v.checked_sub(1).filter(|&u| u > 0),
                    (v < 6).then_some(v + 1),
                ]
                .into_iter()
                .flatten()
                .collect()
            })
            .collect();
        let g = PlanarEmbedding::from_rotations(&rot).unwrap();
        for threads in [1, 3] {
            let t = parallel_spanning_tree(&g, 1, threads, false);
            assert_eq!(t.parents(&g), vec![0, 1, 2, 3, 4, 5]);
        }
    }
}
