//! Checks the partition implementation against an independent classifier
//! that evaluates the set-builder definitions literally over adjacency
//! rebuilt from the edge list.

mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::random_instance;
use dskern_core::graph::{Graph, VertexId};
use dskern_core::partition::{partition_pair, partition_single, TriPartition};
use proptest::prelude::*;

struct Oracle {
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
}

impl Oracle {
    fn new(g: &Graph) -> Self {
        let mut adj: BTreeMap<VertexId, BTreeSet<VertexId>> =
            g.vertices().map(|v| (v, BTreeSet::new())).collect();
        for (u, v) in g.edge_list() {
            adj.get_mut(&u).unwrap().insert(v);
            adj.get_mut(&v).unwrap().insert(u);
        }
        Oracle { adj }
    }

    fn open(&self, v: VertexId) -> &BTreeSet<VertexId> {
        &self.adj[&v]
    }

    /// Literal evaluation of the three set definitions for the centers.
    fn classify(&self, centers: &[VertexId]) -> (BTreeSet<VertexId>, BTreeSet<VertexId>, BTreeSet<VertexId>) {
        let mut closed: BTreeSet<VertexId> = centers.iter().copied().collect();
        let mut base: BTreeSet<VertexId> = BTreeSet::new();
        for &c in centers {
            for &u in self.open(c) {
                closed.insert(u);
                if !centers.contains(&u) {
                    base.insert(u);
                }
            }
        }
        let n1: BTreeSet<VertexId> = base
            .iter()
            .copied()
            .filter(|&u| self.open(u).iter().any(|x| !closed.contains(x)))
            .collect();
        let n2: BTreeSet<VertexId> = base
            .iter()
            .copied()
            .filter(|&u| !n1.contains(&u) && self.open(u).iter().any(|x| n1.contains(x)))
            .collect();
        let n3: BTreeSet<VertexId> = base
            .iter()
            .copied()
            .filter(|&u| !n1.contains(&u) && !n2.contains(&u))
            .collect();
        (n1, n2, n3)
    }
}

fn check_structure(g: &Graph, p: &TriPartition) {
    // Pairwise disjoint and exactly covering the base set, centers excluded.
    assert!(p.n1.intersection(&p.n2).next().is_none());
    assert!(p.n1.intersection(&p.n3).next().is_none());
    assert!(p.n2.intersection(&p.n3).next().is_none());
    let mut base: BTreeSet<VertexId> = BTreeSet::new();
    for &c in &p.centers {
        base.extend(g.neighbors(c).unwrap());
    }
    for c in &p.centers {
        base.remove(c);
        assert!(!p.n1.contains(c) && !p.n2.contains(c) && !p.n3.contains(c));
    }
    let union: BTreeSet<VertexId> = p
        .n1
        .iter()
        .chain(p.n2.iter())
        .chain(p.n3.iter())
        .copied()
        .collect();
    assert_eq!(union, base);
}

fn check_containment(g: &Graph, p: &TriPartition) {
    // Guards and prisoners cannot see outside the closed neighborhood of
    // the centers; rule correctness rests on this.
    let mut closed: BTreeSet<VertexId> = p.centers.iter().copied().collect();
    for &c in &p.centers {
        closed.extend(g.neighbors(c).unwrap());
    }
    for &u in p.n2.iter().chain(p.n3.iter()) {
        for x in g.neighbors(u).unwrap() {
            assert!(closed.contains(&x), "{u} escapes through {x}");
        }
    }
}

#[test]
fn matches_literal_classifier_on_random_graphs() {
    for seed in 0..500u64 {
        let g = random_instance(40, seed);
        let oracle = Oracle::new(&g);
        let vs: Vec<VertexId> = g.vertices().collect();
        for &v in &vs {
            let p = partition_single(&g, v).unwrap();
            let (n1, n2, n3) = oracle.classify(&[v]);
            assert_eq!((p.n1.clone(), p.n2.clone(), p.n3.clone()), (n1, n2, n3));
            check_structure(&g, &p);
            check_containment(&g, &p);
        }
        for (i, &v) in vs.iter().enumerate() {
            for &w in &vs[i + 1..] {
                let p = partition_pair(&g, v, w).unwrap();
                let (n1, n2, n3) = oracle.classify(&[v, w]);
                assert_eq!((p.n1.clone(), p.n2.clone(), p.n3.clone()), (n1, n2, n3));
                check_structure(&g, &p);
                check_containment(&g, &p);
            }
        }
    }
}

proptest! {
    #[test]
    fn partitions_stay_disjoint_and_complete(
        n in 2usize..12,
        edges in prop::collection::vec((0usize..12, 0usize..12), 0..40)
    ) {
        let mut g = Graph::new();
        let vs: Vec<VertexId> = (0..n)
            .map(|_| g.add_vertex(dskern_core::Color::Black, dskern_core::Origin::Original))
            .collect();
        for (a, b) in edges {
            let (a, b) = (a % n, b % n);
            if a != b {
                g.add_edge(vs[a], vs[b]).unwrap();
            }
        }
        for &v in &vs {
            check_structure(&g, &partition_single(&g, v).unwrap());
        }
        for (i, &v) in vs.iter().enumerate() {
            for &w in &vs[i + 1..] {
                check_structure(&g, &partition_pair(&g, v, w).unwrap());
            }
        }
    }
}
