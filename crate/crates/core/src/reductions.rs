//! From k-densest subgraph on planar graphs to multi-terminal interdiction.
//!
//! Every edge is subdivided by a sink of demand 1 fed by unit arcs from both
//! endpoints, and every original vertex becomes a source that may be removed at
//! cost 1. Removing a vertex set `R` lowers the maximum flow by exactly the number
//! of edges with both endpoints in `R`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::ext::{Finite, Inf};
use crate::network::{Dart, EmbeddedNetwork, Mode, NetworkError};
use crate::oracle::{interdict_exhaustive, Component, OracleError};

/// Undirected graph with a rotation system of edge ids per vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PlanarGraph {
    pub edges: Vec<(usize, usize)>,
    pub rotations: Vec<Vec<usize>>,
}

impl PlanarGraph {
    pub fn num_vertices(&self) -> usize {
        self.rotations.len()
    }

    /// Underlying simple graph of a network: loops and repeated vertex pairs are
    /// dropped together with their rotation entries.
    pub fn simple_of(net: &EmbeddedNetwork) -> PlanarGraph {
        let mut seen = BTreeSet::new();
        let mut keep = vec![None; net.num_arcs()];
        let mut edges = Vec::new();
        for (e, a) in net.arcs.iter().enumerate() {
            let key = (a.tail.min(a.head), a.tail.max(a.head));
            if a.tail != a.head && seen.insert(key) {
                keep[e] = Some(edges.len());
                edges.push((a.tail, a.head));
            }
        }
        let rotations = net
            .vertices
            .iter()
            .map(|v| v.rotation.iter().filter_map(|d| keep[d.arc]).collect())
            .collect();
        PlanarGraph { edges, rotations }
    }

    /// Edges with both endpoints in `set`.
    pub fn induced_edges(&self, set: &[usize]) -> usize {
        let mut inside = vec![false; self.num_vertices()];
        for &v in set {
            inside[v] = true;
        }
        self.edges.iter().filter(|&&(a, b)| inside[a] && inside[b]).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ReductionError {
    #[error("graph has a loop or a repeated edge")]
    NotSimpleGraph,
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error("not a set of at most k original vertices")]
    InvalidInterdictionSet,
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KDenseEncoding {
    pub graph: PlanarGraph,
    pub network: EmbeddedNetwork,
    pub k: usize,
}

impl KDenseEncoding {
    /// Network node of original vertex `v`.
    pub fn vertex_node(&self, v: usize) -> usize {
        v
    }

    /// Sink subdividing edge `e`.
    pub fn edge_node(&self, e: usize) -> usize {
        self.graph.num_vertices() + e
    }
}

pub fn encode_kdense(graph: &PlanarGraph, k: usize) -> Result<KDenseEncoding, ReductionError> {
    let n = graph.num_vertices();
    let mut pairs = BTreeSet::new();
    for &(a, b) in &graph.edges {
        if a >= n || b >= n {
            return Err(NetworkError::NoSuchVertex(a.max(b)).into());
        }
        if a == b || !pairs.insert((a.min(b), a.max(b))) {
            return Err(ReductionError::NotSimpleGraph);
        }
    }
    let mut net = EmbeddedNetwork::new();
    for rot in &graph.rotations {
        net.add_vertex(Finite(1), -(rot.len() as i64));
    }
    for _ in &graph.edges {
        net.add_vertex(Inf, 1);
    }
    for (e, &(a, b)) in graph.edges.iter().enumerate() {
        net.add_arc(a, n + e, 1, Inf);
        net.add_arc(b, n + e, 1, Inf);
    }
    for (v, rot) in graph.rotations.iter().enumerate() {
        let mut darts = Vec::with_capacity(rot.len());
        for &e in rot {
            let &(a, b) = graph.edges.get(e).ok_or(NetworkError::DanglingArc { arc: e })?;
            if v == a {
                darts.push(Dart::tail(2 * e));
            } else if v == b {
                darts.push(Dart::tail(2 * e + 1));
            } else {
                return Err(NetworkError::MalformedRotation {
                    vertex: v,
                    reason: "edge not incident",
                }
                .into());
            }
        }
        net.vertices[v].rotation = darts;
    }
    net.dart_positions()?;
    net.sources = (0..n).collect();
    net.sinks = (n..n + graph.edges.len()).collect();
    Ok(KDenseEncoding {
        graph: graph.clone(),
        network: net,
        k,
    })
}

/// Vertex set of an interdiction set, padded with the lowest free ids to `k`,
/// and the number of edges it induces.
pub fn decode_kdense(enc: &KDenseEncoding, removed: &[usize]) -> Result<(Vec<usize>, usize), ReductionError> {
    let n = enc.graph.num_vertices();
    let set: BTreeSet<usize> = removed.iter().copied().collect();
    if set.len() != removed.len() || set.len() > enc.k || set.iter().any(|&v| v >= n) {
        return Err(ReductionError::InvalidInterdictionSet);
    }
    let mut out = set;
    for v in 0..n {
        if out.len() >= enc.k {
            break;
        }
        out.insert(v);
    }
    let out: Vec<usize> = out.into_iter().collect();
    let edges = enc.graph.induced_edges(&out);
    Ok((out, edges))
}

/// Solves the encoding by exhaustive interdiction and decodes the optimum.
pub fn solve_kdense_exhaustive(enc: &KDenseEncoding) -> Result<(Vec<usize>, usize), ReductionError> {
    let out = interdict_exhaustive(&enc.network, enc.k, Mode::WithVertices, false)?;
    let removed: Vec<usize> = out.optimal_sets[enc.k]
        .iter()
        .map(|c| match *c {
            Component::Vertex(v) => Ok(v),
            Component::Arc(_) => Err(ReductionError::InvalidInterdictionSet),
        })
        .collect::<Result<_, _>>()?;
    let (set, edges) = decode_kdense(enc, &removed)?;
    debug_assert_eq!((out.nu_profile[0] - out.nu_profile[enc.k]) as usize, edges);
    Ok((set, edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{random_planar, GenConfig, Terminals};
    use crate::network::validate;
    use crate::oracle::{densest_subgraph_exhaustive, flow_value, Removal};
    use proptest::prelude::*;

    fn triangle() -> PlanarGraph {
        PlanarGraph {
            edges: vec![(0, 1), (1, 2), (2, 0)],
            rotations: vec![vec![0, 2], vec![1, 0], vec![2, 1]],
        }
    }

    fn four_cycle() -> PlanarGraph {
        PlanarGraph {
            edges: vec![(0, 1), (1, 2), (2, 3), (3, 0)],
            rotations: vec![vec![0, 3], vec![1, 0], vec![2, 1], vec![3, 2]],
        }
    }

    #[test]
    fn triangle_encoding_shape() {
        let enc = encode_kdense(&triangle(), 2).unwrap();
        assert_eq!(enc.network.sources.len(), 3);
        assert_eq!(enc.network.sinks.len(), 3);
        assert_eq!(enc.network.num_arcs(), 6);
        assert!(enc.network.arcs.iter().all(|a| a.upper == 1 && a.cost == Inf));
        assert!(validate(&enc.network).embedding_ok());
        for e in 0..3 {
            let into = enc.network.arcs.iter().filter(|a| a.head == enc.edge_node(e)).count();
            assert_eq!(into, 2);
        }
    }

    #[test]
    fn decoding() {
        let enc = encode_kdense(&triangle(), 2).unwrap();
        assert_eq!(decode_kdense(&enc, &[0, 1]).unwrap(), (vec![0, 1], 1));
        let enc1 = encode_kdense(&triangle(), 1).unwrap();
        assert_eq!(decode_kdense(&enc1, &[]).unwrap(), (vec![0], 0));
        assert_eq!(
            decode_kdense(&enc1, &[0, 1]),
            Err(ReductionError::InvalidInterdictionSet)
        );
        assert_eq!(decode_kdense(&enc, &[3]), Err(ReductionError::InvalidInterdictionSet));
    }

    #[test]
    fn four_cycle_best_three_set_keeps_two_edges() {
        let enc = encode_kdense(&four_cycle(), 3).unwrap();
        let (set, edges) = solve_kdense_exhaustive(&enc).unwrap();
        assert_eq!(edges, 2);
        assert_eq!(enc.graph.induced_edges(&set), 2);
    }

    #[test]
    fn empty_edge_set() {
        let g = PlanarGraph {
            edges: Vec::new(),
            rotations: vec![Vec::new(); 3],
        };
        let enc = encode_kdense(&g, 2).unwrap();
        assert_eq!(flow_value(&enc.network, &Removal::none(&enc.network), false), 0);
        assert_eq!(solve_kdense_exhaustive(&enc).unwrap().1, 0);
    }

    #[test]
    fn rejects_non_simple_graphs() {
        let mut g = triangle();
        g.edges[2] = (0, 1);
        assert_eq!(encode_kdense(&g, 1), Err(ReductionError::NotSimpleGraph));
        let mut g = triangle();
        g.edges[0] = (1, 1);
        assert_eq!(encode_kdense(&g, 1), Err(ReductionError::NotSimpleGraph));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn removal_drops_flow_by_induced_edges(seed in 0u64..1000, mask in 0u32..1024) {
            let net = random_planar(8, 13, seed, &GenConfig::default(), Terminals::SinglePair);
            let g = PlanarGraph::simple_of(&net);
            let enc = encode_kdense(&g, 8).unwrap();
            let set: Vec<usize> = (0..8).filter(|v| mask & (1 << v) != 0).collect();
            let full = flow_value(&enc.network, &Removal::none(&enc.network), false);
            let cut = flow_value(&enc.network, &Removal::from_sets(&enc.network, &[], &set), false);
            prop_assert_eq!(full as usize, g.edges.len());
            prop_assert_eq!((full - cut) as usize, g.induced_edges(&set));
        }

        #[test]
        fn matches_densest_subgraph(seed in 0u64..1000, n in 2usize..8, k in 0usize..8) {
            let net = random_planar(n, 2 * n, seed, &GenConfig::default(), Terminals::SinglePair);
            let g = PlanarGraph::simple_of(&net);
            let k = k.min(n);
            let enc = encode_kdense(&g, k).unwrap();
            prop_assert!(validate(&enc.network).embedding_ok());
            let (set, edges) = solve_kdense_exhaustive(&enc).unwrap();
            let (_, best) = densest_subgraph_exhaustive(n, &g.edges, k).unwrap();
            prop_assert_eq!(edges, best);
            prop_assert_eq!(set.len(), k);
        }
    }
}
