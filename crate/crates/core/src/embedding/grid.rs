use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{PlanarEmbedding, VertexId};
use crate::error::BuildError;

/// A `side x side` grid with one diagonal per cell, the diagonal direction
/// drawn from `seed`. Vertex `(row, col)` gets id `row * side + col + 1`, so
/// vertex 1 is the bottom-left corner and lies on the outer face. Rotations
/// are ccw by angle, starting from the east neighbour.
///
/// `n = side^2`, `m = (side - 1)(3 side - 1)`.
pub fn generate_grid_triangulation(side: usize, seed: u64) -> Result<PlanarEmbedding, BuildError> {
    if side < 2 {
        return Err(BuildError::GridTooSmall(side));
    }
    let g = side;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // rising[r * (g-1) + c]: cell (r, c) has the (r,c)-(r+1,c+1) diagonal
    let rising: Vec<bool> = (0..(g - 1) * (g - 1)).map(|_| rng.gen()).collect();
    let cell = |r: usize, c: usize| rising[r * (g - 1) + c];
    let id = |r: usize, c: usize| (r * g + c + 1) as VertexId;

    let mut rotations = Vec::with_capacity(g * g);
    for r in 0..g {
        for c in 0..g {
            let mut rot = Vec::with_capacity(8);
            let (up, down, left, right) = (r + 1 < g, r > 0, c > 0, c + 1 < g);
            if right {
                rot.push(id(r, c + 1));
            }
            if up && right && cell(r, c) {
                rot.push(id(r + 1, c + 1));
            }
            if up {
                rot.push(id(r + 1, c));
            }
            if up && left && !cell(r, c - 1) {
                rot.push(id(r + 1, c - 1));
            }
            if left {
                rot.push(id(r, c - 1));
            }
            if down && left && cell(r - 1, c - 1) {
                rot.push(id(r - 1, c - 1));
            }
            if down {
                rot.push(id(r - 1, c));
            }
            if down && right && !cell(r - 1, c) {
                rot.push(id(r - 1, c + 1));
            }
            rotations.push(rot);
        }
    }
    Ok(PlanarEmbedding::from_rotations(&rotations).expect("grid edges are symmetric"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_sizes() {
        for (side, n, m, f) in [(2, 4, 5, 3), (3, 9, 16, 9)] {
            let g = generate_grid_triangulation(side, 7).unwrap();
            assert_eq!((g.n(), g.m(), g.count_faces()), (n, m, f));
            assert!(g.validate().is_empty());
        }
        for side in 2..12 {
            for seed in 0..3 {
                let g = generate_grid_triangulation(side, seed).unwrap();
                assert_eq!(g.m(), (side - 1) * (3 * side - 1));
                assert!(g.validate().is_empty(), "side {side} seed {seed}");
            }
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let a = generate_grid_triangulation(2, 11).unwrap();
        let b = generate_grid_triangulation(2, 11).unwrap();
        assert_eq!(a.edges(), b.edges());
        let c = generate_grid_triangulation(20, 1).unwrap();
        let d = generate_grid_triangulation(20, 2).unwrap();
        assert_ne!(c.edges(), d.edges());
    }

    #[test]
    fn rejects_tiny_side() {
        assert_eq!(
            generate_grid_triangulation(1, 0),
            Err(BuildError::GridTooSmall(1))
        );
    }

    #[test]
    fn every_interior_face_is_a_triangle() {
        let g = generate_grid_triangulation(6, 3).unwrap();
        let mut seen = vec![false; g.edges().len()];
        let mut sizes = Vec::new();
        for s in 0..g.edges().len() {
            let (mut e, mut k) = (s, 0);
            while !seen[e] {
                seen[e] = true;
                e = g.face_next(e);
                k += 1;
            }
            if k > 0 {
                sizes.push(k);
            }
        }
        sizes.sort();
        let outer = sizes.pop().unwrap();
        assert_eq!(outer, 4 * 5);
        assert!(sizes.iter().all(|&k| k == 3));
    }
}
