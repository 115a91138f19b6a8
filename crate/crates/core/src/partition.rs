//! Neighborhood partitions for a single vertex and for a vertex pair.
//!
//! For a center `v` the open neighborhood `N(v)` splits into
//!
//! * `n1`: vertices with a neighbor outside `N[v]` (an escape edge),
//! * `n2`: vertices without one but adjacent to some `n1` vertex,
//! * `n3`: the rest.
//!
//! The pair variant does the same over `N(v) ∪ N(w) \ {v, w}` against
//! `N[v] ∪ N[w]`. Partitions are computed on demand from the current
//! adjacency; nothing is cached across mutations.

use std::collections::BTreeSet;

use crate::graph::{Graph, GraphError, VertexId};

/// The three classes of a (pair) neighborhood, centers excluded.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TriPartition {
    /// One or two center vertices.
    pub centers: Vec<VertexId>,
    /// Members with a neighbor outside the closed (pair) neighborhood.
    pub n1: BTreeSet<VertexId>,
    /// Members adjacent to `n1` but without an escape edge of their own.
    pub n2: BTreeSet<VertexId>,
    /// Members confined to the closed (pair) neighborhood.
    pub n3: BTreeSet<VertexId>,
}

/// Reusable id-stamped scratch space for partition computation.
///
/// Classification only touches vertices within distance two of the
/// centers, so with stamped membership arrays a single classification
/// costs time linear in the size of that local subgraph.
#[derive(Default, Debug)]
pub struct Scratch {
    stamp_closed: Vec<u64>,
    stamp_n1: Vec<u64>,
    round: u64,
    pub(crate) base: Vec<VertexId>,
    pub(crate) n1: Vec<VertexId>,
    pub(crate) n2: Vec<VertexId>,
    pub(crate) n3: Vec<VertexId>,
}

impl Scratch {
    pub fn new() -> Self {
        Scratch::default()
    }

    fn begin(&mut self, id_bound: usize) {
        if self.stamp_closed.len() < id_bound {
            self.stamp_closed.resize(id_bound, 0);
            self.stamp_n1.resize(id_bound, 0);
        }
        self.round += 1;
        self.base.clear();
        self.n1.clear();
        self.n2.clear();
        self.n3.clear();
    }

    fn mark_closed(&mut self, v: VertexId) {
        self.stamp_closed[v.index()] = self.round;
    }

    fn in_closed(&self, v: VertexId) -> bool {
        self.stamp_closed[v.index()] == self.round
    }

    fn mark_n1(&mut self, v: VertexId) {
        self.stamp_n1[v.index()] = self.round;
    }

    fn in_n1(&self, v: VertexId) -> bool {
        self.stamp_n1[v.index()] == self.round
    }

    /// Classifies the neighborhood of the given centers into the scratch
    /// vectors `n1`, `n2`, `n3`. `centers` must be live and distinct.
    pub(crate) fn classify(
        &mut self,
        g: &Graph,
        centers: &[VertexId],
    ) -> Result<(), GraphError> {
        self.begin(g.id_bound());
        for &c in centers {
            g.degree(c)?;
        }
        for &c in centers {
            self.mark_closed(c);
        }
        for &c in centers {
            for u in g.neighbors(c)? {
                if !self.in_closed(u) {
                    self.mark_closed(u);
                    if !centers.contains(&u) {
                        self.base.push(u);
                    }
                }
            }
        }
        self.base.sort_unstable();
        // First pass: members with a neighbor outside the closed neighborhood.
        for i in 0..self.base.len() {
            let u = self.base[i];
            let escapes = g.neighbors(u).unwrap().any(|x| !self.in_closed(x));
            if escapes {
                self.n1.push(u);
                self.mark_n1(u);
            }
        }
        // Second pass: guards (adjacent to n1) versus prisoners.
        for i in 0..self.base.len() {
            let u = self.base[i];
            if self.in_n1(u) {
                continue;
            }
            if g.neighbors(u).unwrap().any(|x| self.in_n1(x)) {
                self.n2.push(u);
            } else {
                self.n3.push(u);
            }
        }
        Ok(())
    }

    fn to_partition(&self, centers: Vec<VertexId>) -> TriPartition {
        TriPartition {
            centers,
            n1: self.n1.iter().copied().collect(),
            n2: self.n2.iter().copied().collect(),
            n3: self.n3.iter().copied().collect(),
        }
    }
}

/// Partition of `N(v)` for a single center.
pub fn partition_single(g: &Graph, v: VertexId) -> Result<TriPartition, GraphError> {
    let mut scratch = Scratch::new();
    scratch.classify(g, &[v])?;
    Ok(scratch.to_partition(vec![v]))
}

/// Partition of `N(v) ∪ N(w) \ {v, w}` for a pair of centers.
///
/// The centers themselves are excluded from the base set even when `v`
/// and `w` are adjacent; rule actions never remove a center.
pub fn partition_pair(
    g: &Graph,
    v: VertexId,
    w: VertexId,
) -> Result<TriPartition, GraphError> {
    if v == w {
        return Err(GraphError::IdenticalPair(v));
    }
    let mut scratch = Scratch::new();
    scratch.classify(g, &[v, w])?;
    Ok(scratch.to_partition(vec![v, w]))
}
