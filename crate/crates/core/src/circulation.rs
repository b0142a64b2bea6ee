//! Reduction of saturating multi-terminal flow to a circulation.
//!
//! A spanning tree is laid next to existing arcs and every tree edge is forced to
//! carry the net demand of the side it separates. The resulting network has no
//! terminals; it admits a circulation exactly when the original admits a
//! saturating flow, and that happens exactly when its dual has no negative circuit.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::dual::build_dual;
use crate::ext::{ExtInt, Finite, Inf};
use crate::faces::trace_faces;
use crate::network::{Arc, Dart, EmbeddedNetwork, End, NetworkError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TreeArc {
    /// Arc id in the augmented network.
    pub arc: usize,
    /// Original arc the tree arc is drawn next to.
    pub companion: usize,
    /// Fixed flow `l = u` on the tree arc.
    pub bound: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CirculationInstance {
    pub base: EmbeddedNetwork,
    /// Augmented network: original arcs keep their ids, tree arcs follow. Demands
    /// are zero; sources and sinks are kept for reference.
    pub hat: EmbeddedNetwork,
    pub tree: Vec<TreeArc>,
    pub is_tree: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CirculationError {
    #[error("the underlying graph is not connected")]
    Disconnected,
    #[error("demands sum to {0}, not 0")]
    Unbalanced(i64),
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error("recovered flow violates a bound or conservation")]
    InvalidRecoveredFlow,
}

/// Inserts a new arc next to `companion`: right after it at the companion's tail
/// and right before it at the companion's head, so both run side by side.
fn insert_parallel(net: &mut EmbeddedNetwork, companion: usize, tail: usize, head: usize, bound: i64) -> usize {
    let id = net.arcs.len();
    net.arcs.push(Arc {
        tail,
        head,
        upper: bound,
        lower: bound,
        cost: Inf,
    });
    let c = net.arcs[companion].clone();
    let end_at = |v: usize| if v == tail { End::Tail } else { End::Head };
    let rot = &mut net.vertices[c.tail].rotation;
    let i = rot
        .iter()
        .position(|&d| d == Dart::tail(companion))
        .expect("companion dart at tail");
    rot.insert(i + 1, Dart::new(id, end_at(c.tail)));
    let rot = &mut net.vertices[c.head].rotation;
    let i = rot
        .iter()
        .position(|&d| d == Dart::head(companion))
        .expect("companion dart at head");
    rot.insert(i, Dart::new(id, end_at(c.head)));
    id
}

pub fn build_circulation_instance(net: &EmbeddedNetwork) -> Result<CirculationInstance, CirculationError> {
    net.dart_positions()?;
    let n = net.num_vertices();
    let total: i64 = net.vertices.iter().map(|v| v.demand).sum();
    if total != 0 {
        return Err(CirculationError::Unbalanced(total));
    }
    if !net.is_connected() {
        return Err(CirculationError::Disconnected);
    }
    let mut hat = net.clone();
    for v in &mut hat.vertices {
        v.demand = 0;
    }
    let mut is_tree = vec![false; net.num_arcs()];
    if n == 0 {
        return Ok(CirculationInstance {
            base: net.clone(),
            hat,
            tree: Vec::new(),
            is_tree,
        });
    }

    // Breadth-first spanning tree from vertex 0, scanning arcs in ascending id.
    let mut incident = vec![Vec::new(); n];
    for (e, a) in net.arcs.iter().enumerate() {
        if a.tail != a.head {
            incident[a.tail].push(e);
            incident[a.head].push(e);
        }
    }
    let mut parent = vec![(usize::MAX, usize::MAX); n];
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &e in &incident[v] {
            let a = &net.arcs[e];
            let w = if a.tail == v { a.head } else { a.tail };
            if !seen[w] {
                seen[w] = true;
                parent[w] = (v, e);
                queue.push_back(w);
            }
        }
    }
    let mut subtree = net.vertices.iter().map(|v| v.demand).collect::<Vec<i64>>();
    for &w in order.iter().rev() {
        if w != 0 {
            subtree[parent[w].0] += subtree[w];
        }
    }

    let mut tree = Vec::with_capacity(n.saturating_sub(1));
    for &w in &order[1..] {
        let (p, companion) = parent[w];
        let d = subtree[w];
        let (tail, head, bound) = if d >= 0 { (w, p, d) } else { (p, w, -d) };
        let arc = insert_parallel(&mut hat, companion, tail, head, bound);
        is_tree.push(true);
        tree.push(TreeArc { arc, companion, bound });
    }
    Ok(CirculationInstance {
        base: net.clone(),
        hat,
        tree,
        is_tree,
    })
}

/// Bellman-Ford from `root`; `None` when a negative circuit is reachable.
pub(crate) fn bellman_ford(num_nodes: usize, arcs: &[(usize, usize, i64)], root: usize) -> Option<Vec<ExtInt>> {
    let mut dist = vec![Inf; num_nodes];
    dist[root] = Finite(0);
    for round in 0..=num_nodes {
        let mut changed = false;
        for &(t, h, len) in arcs {
            if let Finite(d) = dist[t] {
                if Finite(d + len) < dist[h] {
                    dist[h] = Finite(d + len);
                    changed = true;
                }
            }
        }
        if !changed {
            return Some(dist);
        }
        if round == num_nodes {
            break;
        }
    }
    None
}

/// Feasible circulation of the augmented network, or `None` if there is none.
///
/// Shortest distances `mu` from face 0 in the dual give the flow
/// `max(0, mu(left) - mu(right))` on every arc. The flow is checked against all
/// bounds and conservation before it is returned.
pub fn check_saturating_flow(ci: &CirculationInstance) -> Result<Option<Vec<i64>>, CirculationError> {
    let hat = &ci.hat;
    if hat.num_arcs() == 0 {
        return Ok(Some(Vec::new()));
    }
    let faces = trace_faces(hat)?;
    let dual = build_dual(hat, &faces);
    let arcs: Vec<(usize, usize, i64)> = dual
        .arcs
        .iter()
        .map(|a| (a.tail, a.head, a.length.unwrap_finite()))
        .collect();
    let Some(mu) = bellman_ford(dual.num_nodes, &arcs, 0) else {
        return Ok(None);
    };
    let flow: Vec<i64> = (0..hat.num_arcs())
        .map(|e| {
            let diff = mu[faces.left_face[e]].unwrap_finite() - mu[faces.right_face[e]].unwrap_finite();
            diff.max(0)
        })
        .collect();
    if !is_circulation(hat, &flow) {
        return Err(CirculationError::InvalidRecoveredFlow);
    }
    Ok(Some(flow))
}

pub fn is_circulation(net: &EmbeddedNetwork, flow: &[i64]) -> bool {
    let mut balance = vec![0i64; net.num_vertices()];
    for (a, &f) in net.arcs.iter().zip(flow) {
        if f < a.lower || f > a.upper {
            return false;
        }
        balance[a.tail] -= f;
        balance[a.head] += f;
    }
    balance.iter().all(|&b| b == 0)
}

/// Whether `flow` on the original arcs meets every demand within bounds.
pub fn is_saturating(net: &EmbeddedNetwork, flow: &[i64]) -> bool {
    let mut inflow = vec![0i64; net.num_vertices()];
    for (a, &f) in net.arcs.iter().zip(flow) {
        if f < a.lower || f > a.upper {
            return false;
        }
        inflow[a.tail] -= f;
        inflow[a.head] += f;
    }
    inflow.iter().zip(&net.vertices).all(|(&x, v)| x == v.demand)
}
