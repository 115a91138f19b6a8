//! Seeded random planar graph generator.
//!
//! Graphs are planar by construction: starting from a triangle, fresh
//! vertices are inserted into uniformly random faces of the growing
//! combinatorial triangulation (connecting to the three face corners)
//! until the target vertex count is reached, which yields a maximal
//! planar triangulation with `3n - 6` edges. Random edges are then
//! deleted until exactly the requested count remains. The insertion log
//! is the planarity certificate; no planarity tester is involved.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Color, Graph, Origin, VertexId};

/// Target shape of one generated instance.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GenSpec {
    /// Vertex count, at least 3.
    pub n: usize,
    /// Edge count, at most `3n - 6`.
    pub m: usize,
    pub seed: u64,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("need at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("{m} edges exceed the planar bound 3n-6 = {bound} for n = {n}")]
    TooManyEdges { n: usize, m: usize, bound: usize },
}

impl GenSpec {
    pub fn validate(&self) -> Result<(), GenError> {
        if self.n < 3 {
            return Err(GenError::TooFewVertices(self.n));
        }
        let bound = 3 * self.n - 6;
        if self.m > bound {
            return Err(GenError::TooManyEdges {
                n: self.n,
                m: self.m,
                bound,
            });
        }
        Ok(())
    }
}

/// One face-insertion step: `vertex` was connected to the three corners.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Insertion {
    pub vertex: VertexId,
    pub corners: [VertexId; 3],
}

/// Replayable construction history of a generated instance.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BuildLog {
    pub insertions: Vec<Insertion>,
    pub removed_edges: Vec<(VertexId, VertexId)>,
}

fn triangle(g: &mut Graph) -> [VertexId; 3] {
    let a = g.add_vertex(Color::Black, Origin::Original);
    let b = g.add_vertex(Color::Black, Origin::Original);
    let c = g.add_vertex(Color::Black, Origin::Original);
    g.add_edge(a, b).unwrap();
    g.add_edge(b, c).unwrap();
    g.add_edge(a, c).unwrap();
    [a, b, c]
}

/// Generates a graph for `spec`; deterministic in `spec.seed`.
pub fn random_planar(spec: &GenSpec) -> Result<Graph, GenError> {
    random_planar_with_log(spec).map(|(g, _)| g)
}

/// Like [`random_planar`] but also returns the construction history.
pub fn random_planar_with_log(spec: &GenSpec) -> Result<(Graph, BuildLog), GenError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut g = Graph::new();
    let mut log = BuildLog::default();

    let [a, b, c] = triangle(&mut g);
    let mut faces: Vec<[VertexId; 3]> = vec![[a, b, c]];
    while g.num_vertices() < spec.n {
        let ix = rng.gen_range(0..faces.len());
        let corners = faces.swap_remove(ix);
        let x = g.add_vertex(Color::Black, Origin::Original);
        for corner in corners {
            g.add_edge(x, corner).unwrap();
        }
        faces.push([corners[0], corners[1], x]);
        faces.push([corners[1], corners[2], x]);
        faces.push([corners[0], corners[2], x]);
        log.insertions.push(Insertion {
            vertex: x,
            corners,
        });
    }
    debug_assert_eq!(g.num_edges(), 3 * spec.n - 6);

    let mut edges = g.edge_list();
    edges.shuffle(&mut rng);
    while g.num_edges() > spec.m {
        let (u, v) = edges.pop().unwrap();
        g.remove_edge(u, v).unwrap();
        log.removed_edges.push((u, v));
    }
    Ok((g, log))
}

/// Replays only the insertion half of a log, yielding the maximal planar
/// triangulation an instance was carved out of.
pub fn replay_triangulation(log: &BuildLog) -> Graph {
    let mut g = Graph::new();
    triangle(&mut g);
    for ins in &log.insertions {
        let x = g.add_vertex(Color::Black, Origin::Original);
        debug_assert_eq!(x, ins.vertex);
        for corner in ins.corners {
            g.add_edge(x, corner).unwrap();
        }
    }
    g
}

/// Replays a full log including edge deletions.
pub fn replay(log: &BuildLog) -> Graph {
    let mut g = replay_triangulation(log);
    for &(u, v) in &log.removed_edges {
        g.remove_edge(u, v).unwrap();
    }
    g
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

/// The benchmark sample-set shape: eight sizes from 100 to 4000 vertices,
/// one hundred instances each, with per-instance derived seeds and edge
/// targets drawn uniformly from `[n, 3n-6]`.
pub const SAMPLE_SIZES: [usize; 8] = [100, 500, 750, 1000, 1500, 2000, 3000, 4000];

/// Derives `count` instance specs per size, each with its own seed and an
/// edge target drawn uniformly from `[n, 3n-6]`.
pub fn sample_specs(sizes: &[usize], count: usize, seed: u64) -> Vec<GenSpec> {
    let mut specs = Vec::with_capacity(sizes.len() * count);
    for (six, &n) in sizes.iter().enumerate() {
        for instance in 0..count as u64 {
            let derived = splitmix64(seed ^ splitmix64((six as u64) << 32 | instance));
            let mut rng = ChaCha8Rng::seed_from_u64(derived);
            let m = rng.gen_range(n..=3 * n - 6);
            specs.push(GenSpec {
                n,
                m,
                seed: splitmix64(derived),
            });
        }
    }
    specs
}

pub fn paper_sample_sets(seed: u64) -> Vec<GenSpec> {
    sample_specs(&SAMPLE_SIZES, 100, seed)
}
