//! Mutable undirected simple graph with black/white vertex annotation.
//!
//! Vertex ids are stable: once a vertex is deleted its id is never handed
//! out again by the same graph instance. Rule applications and event logs
//! rely on this to reference vertices after their removal.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Opaque, stable vertex identifier.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(pub(crate) u32);

impl VertexId {
    /// Raw index of this id. Ids are allocated densely from zero, so this
    /// doubles as an index into id-addressed scratch arrays.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Reconstructs an id from a raw index. Only meaningful for values that
    /// were previously obtained from [`VertexId::index`] on the same graph.
    pub fn from_index(ix: usize) -> Self {
        VertexId(ix as u32)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// Domination status of a vertex in the annotated (black-and-white) setting.
///
/// Black vertices still need to be dominated; white vertices are already
/// taken care of and only matter as potential dominators.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Color {
    Black,
    White,
}

/// Whether a vertex was part of the input or was synthesized by a rule.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Origin {
    Original,
    Gadget,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} is not live in this graph")]
    DeadVertex(VertexId),
    #[error("self-loop on {0} rejected")]
    SelfLoop(VertexId),
    #[error("vertex pair must be distinct, got {0} twice")]
    IdenticalPair(VertexId),
}

#[derive(Clone, PartialEq, Eq, Debug)]
struct VertexState {
    neighbors: BTreeSet<VertexId>,
    color: Color,
}

/// Undirected simple graph with per-vertex color and origin.
///
/// Adjacency is kept as per-vertex ordered neighbor sets, giving `O(deg)`
/// iteration and `O(log deg)` membership. All iteration orders are
/// deterministic (ascending ids), which keeps reductions and solvers
/// reproducible.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Graph {
    slots: Vec<Option<VertexState>>,
    // Origin survives deletion so event logs can classify removed vertices.
    origins: Vec<Origin>,
    live: usize,
    edges: usize,
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    /// Number of live vertices.
    pub fn num_vertices(&self) -> usize {
        self.live
    }

    /// Number of edges.
    pub fn num_edges(&self) -> usize {
        self.edges
    }

    /// Total number of ids ever allocated; ids are always `< id_bound()`.
    pub fn id_bound(&self) -> usize {
        self.slots.len()
    }

    pub fn is_live(&self, v: VertexId) -> bool {
        self.slots
            .get(v.index())
            .map_or(false, |slot| slot.is_some())
    }

    fn state(&self, v: VertexId) -> Result<&VertexState, GraphError> {
        self.slots
            .get(v.index())
            .and_then(|s| s.as_ref())
            .ok_or(GraphError::DeadVertex(v))
    }

    /// Adds a fresh isolated vertex and returns its id.
    pub fn add_vertex(&mut self, color: Color, origin: Origin) -> VertexId {
        let id = VertexId(self.slots.len() as u32);
        self.slots.push(Some(VertexState {
            neighbors: BTreeSet::new(),
            color,
        }));
        self.origins.push(origin);
        self.live += 1;
        id
    }

    /// Inserts the edge `{u, v}`. Idempotent; rejects self-loops and dead ids.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.state(u)?;
        self.state(v)?;
        let inserted = self.slots[u.index()]
            .as_mut()
            .unwrap()
            .neighbors
            .insert(v);
        if inserted {
            self.slots[v.index()].as_mut().unwrap().neighbors.insert(u);
            self.edges += 1;
        }
        Ok(())
    }

    /// Removes the edge `{u, v}` if present.
    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        self.state(u)?;
        self.state(v)?;
        let removed = self.slots[u.index()]
            .as_mut()
            .unwrap()
            .neighbors
            .remove(&v);
        if removed {
            self.slots[v.index()].as_mut().unwrap().neighbors.remove(&u);
            self.edges -= 1;
        }
        Ok(())
    }

    /// Deletes `v` together with all incident edges.
    pub fn remove_vertex(&mut self, v: VertexId) -> Result<(), GraphError> {
        let state = self
            .slots
            .get_mut(v.index())
            .and_then(|s| s.take())
            .ok_or(GraphError::DeadVertex(v))?;
        self.live -= 1;
        self.edges -= state.neighbors.len();
        for u in &state.neighbors {
            self.slots[u.index()].as_mut().unwrap().neighbors.remove(&v);
        }
        Ok(())
    }

    pub fn color(&self, v: VertexId) -> Result<Color, GraphError> {
        Ok(self.state(v)?.color)
    }

    pub fn set_color(&mut self, v: VertexId, color: Color) -> Result<(), GraphError> {
        self.state(v)?;
        self.slots[v.index()].as_mut().unwrap().color = color;
        Ok(())
    }

    pub fn origin(&self, v: VertexId) -> Result<Origin, GraphError> {
        self.state(v)?;
        Ok(self.origins[v.index()])
    }

    /// Origin of any id ever allocated, live or dead.
    pub fn origin_of_id(&self, v: VertexId) -> Option<Origin> {
        self.origins.get(v.index()).copied()
    }

    pub fn degree(&self, v: VertexId) -> Result<usize, GraphError> {
        Ok(self.state(v)?.neighbors.len())
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.state(u)
            .map(|s| s.neighbors.contains(&v))
            .unwrap_or(false)
    }

    /// Neighbors of `v` in ascending id order.
    pub fn neighbors(
        &self,
        v: VertexId,
    ) -> Result<impl Iterator<Item = VertexId> + '_, GraphError> {
        Ok(self.state(v)?.neighbors.iter().copied())
    }

    pub fn neighbor_set(&self, v: VertexId) -> Result<&BTreeSet<VertexId>, GraphError> {
        Ok(&self.state(v)?.neighbors)
    }

    /// `N[v] = N(v) ∪ {v}`.
    pub fn closed_neighborhood(&self, v: VertexId) -> Result<BTreeSet<VertexId>, GraphError> {
        let mut set = self.state(v)?.neighbors.clone();
        set.insert(v);
        Ok(set)
    }

    /// Live vertices in ascending id order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(ix, slot)| slot.as_ref().map(|_| VertexId(ix as u32)))
    }

    pub fn black_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.slots.iter().enumerate().filter_map(|(ix, slot)| {
            slot.as_ref().and_then(|s| {
                (s.color == Color::Black).then_some(VertexId(ix as u32))
            })
        })
    }

    /// Edges as `(u, v)` pairs with `u < v`, ascending.
    pub fn edge_list(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edges);
        for v in self.vertices() {
            for u in &self.state(v).unwrap().neighbors {
                if v < *u {
                    out.push((v, *u));
                }
            }
        }
        out
    }

    /// True iff a path of length at most `d` connects `v` and `w`.
    ///
    /// Bounded breadth-first exploration; never visits vertices farther
    /// than `d` from `v`.
    pub fn within_distance(
        &self,
        v: VertexId,
        w: VertexId,
        d: usize,
    ) -> Result<bool, GraphError> {
        self.state(v)?;
        self.state(w)?;
        if v == w {
            return Ok(true);
        }
        let mut seen = BTreeSet::from([v]);
        let mut frontier = vec![v];
        for _ in 0..d {
            let mut next = Vec::new();
            for x in frontier {
                for y in self.state(x).unwrap().neighbors.iter().copied() {
                    if y == w {
                        return Ok(true);
                    }
                    if seen.insert(y) {
                        next.push(y);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        Ok(false)
    }

    /// Full-scan structural validator: adjacency symmetry, no self-loops,
    /// and consistency of the maintained vertex/edge counters.
    pub fn validate(&self) -> Result<(), String> {
        let mut live = 0usize;
        let mut half_edges = 0usize;
        for (ix, slot) in self.slots.iter().enumerate() {
            let Some(state) = slot else { continue };
            let v = VertexId(ix as u32);
            live += 1;
            half_edges += state.neighbors.len();
            for u in &state.neighbors {
                if *u == v {
                    return Err(format!("self-loop on {v}"));
                }
                match self.state(*u) {
                    Ok(other) if other.neighbors.contains(&v) => {}
                    Ok(_) => return Err(format!("asymmetric edge {v}-{u}")),
                    Err(_) => return Err(format!("edge {v}-{u} points at dead vertex")),
                }
            }
        }
        if live != self.live {
            return Err(format!("vertex count {} != scanned {live}", self.live));
        }
        if half_edges != 2 * self.edges {
            return Err(format!(
                "edge count {} != scanned {}",
                self.edges,
                half_edges / 2
            ));
        }
        Ok(())
    }
}
