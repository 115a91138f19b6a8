//! Instance builders shared by the criterion benchmarks.

use dskern_core::graph::Graph;
use dskern_core::plangen::{random_planar, GenSpec};

/// Planar instance at roughly two-thirds of maximal density.
pub fn planar_instance(n: usize, seed: u64) -> Graph {
    random_planar(&GenSpec {
        n,
        m: 2 * n,
        seed,
    })
    .unwrap()
}
