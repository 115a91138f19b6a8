//! Shared helpers for the randomized suites.

use dskern_core::graph::{Color, Graph, Origin, VertexId};
use dskern_core::plangen::{random_planar, GenSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Erdős–Rényi-style random graph with edge probability `p`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new();
    let vs: Vec<VertexId> = (0..n)
        .map(|_| g.add_vertex(Color::Black, Origin::Original))
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(vs[i], vs[j]).unwrap();
            }
        }
    }
    g
}

/// Random planar instance with up to `max_n` vertices and a random density.
pub fn random_planar_upto(max_n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(4..=max_n.max(4));
    let m = rng.gen_range(n.min(3 * n - 6)..=3 * n - 6);
    random_planar(&GenSpec {
        n,
        m,
        seed: rng.gen(),
    })
    .unwrap()
}

/// Mixed bag: even seeds give planar instances, odd seeds general ones.
pub fn random_instance(max_n: usize, seed: u64) -> Graph {
    if seed % 2 == 0 {
        random_planar_upto(max_n, seed)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=max_n.max(2));
        let p = rng.gen_range(0.05..0.5);
        random_graph(n, p, rng.gen())
    }
}
