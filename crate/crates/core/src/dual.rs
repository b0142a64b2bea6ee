//! Interdiction duals.
//!
//! Every primal arc `e` yields two dual arcs: `2e` crosses `e` from its right face
//! to its left face (length `u(e)`, cost `c(e)`), and `2e + 1` is its reverse
//! (length `-l(e)`, cost 0). The modified dual adds one node per primal vertex and,
//! for every corner of that vertex, an arc out to the corner's face and an arc back
//! in. Leaving a vertex is free; entering it costs `c(v)`.

use alloc::vec;
use alloc::vec::Vec;

use crate::ext::{ExtInt, Finite, Inf};
use crate::faces::FaceStructure;
use crate::network::EmbeddedNetwork;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DualArcKind {
    /// Crosses primal arc `e` from right to left.
    Forward(usize),
    /// Crosses primal arc `e` from left to right.
    Reverse(usize),
    /// Vertex node to the face at `corner`.
    VertexOut { vertex: usize, corner: usize },
    /// Face at `corner` to the vertex node; carries the vertex cost.
    VertexIn { vertex: usize, corner: usize },
    /// Unremovable face-to-vertex arc whose length is the vertex capacity.
    Capacity { vertex: usize, corner: usize },
}

impl DualArcKind {
    /// Primal vertex of a vertex-layer arc.
    pub fn vertex(self) -> Option<usize> {
        match self {
            DualArcKind::Forward(_) | DualArcKind::Reverse(_) => None,
            DualArcKind::VertexOut { vertex, .. }
            | DualArcKind::VertexIn { vertex, .. }
            | DualArcKind::Capacity { vertex, .. } => Some(vertex),
        }
    }

    pub fn corner(self) -> Option<usize> {
        match self {
            DualArcKind::Forward(_) | DualArcKind::Reverse(_) => None,
            DualArcKind::VertexOut { corner, .. }
            | DualArcKind::VertexIn { corner, .. }
            | DualArcKind::Capacity { corner, .. } => Some(corner),
        }
    }

    /// Primal arc crossed by an arc of the face layer.
    pub fn primal_arc(self) -> Option<usize> {
        match self {
            DualArcKind::Forward(e) | DualArcKind::Reverse(e) => Some(e),
            _ => None,
        }
    }

    /// Whether the arc points into a vertex node.
    pub fn enters_vertex(self) -> bool {
        matches!(self, DualArcKind::VertexIn { .. } | DualArcKind::Capacity { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualArc {
    pub tail: usize,
    pub head: usize,
    pub length: ExtInt,
    pub cost: ExtInt,
    pub kind: DualArcKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterdictionDual {
    /// Face nodes are `0..num_faces`; in the modified dual vertex `v` is node `num_faces + v`.
    pub num_faces: usize,
    pub num_nodes: usize,
    pub arcs: Vec<DualArc>,
    pub modified: bool,
    /// Outgoing dual arcs per node in ascending id.
    pub out: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DualError {
    #[error("terminal {0} carries a finite vertex capacity")]
    GadgetOnTerminal(usize),
    #[error("the gadget needs the modified dual")]
    NotModified,
    #[error("arc sequence is not a directed s-t path")]
    PathNotInNetwork,
}

impl InterdictionDual {
    pub fn vertex_node(&self, v: usize) -> usize {
        self.num_faces + v
    }

    /// Primal vertex of a node, if it is a vertex node.
    pub fn node_vertex(&self, node: usize) -> Option<usize> {
        (self.modified && node >= self.num_faces).then(|| node - self.num_faces)
    }

    pub fn forward(e: usize) -> usize {
        2 * e
    }

    pub fn reverse(e: usize) -> usize {
        2 * e + 1
    }

    fn push(&mut self, arc: DualArc) -> usize {
        let id = self.arcs.len();
        self.out[arc.tail].push(id);
        self.arcs.push(arc);
        id
    }
}

pub fn build_dual(net: &EmbeddedNetwork, faces: &FaceStructure) -> InterdictionDual {
    let f = faces.num_faces();
    let mut dual = InterdictionDual {
        num_faces: f,
        num_nodes: f,
        arcs: Vec::with_capacity(2 * net.num_arcs()),
        modified: false,
        out: vec![Vec::new(); f],
    };
    for (e, a) in net.arcs.iter().enumerate() {
        let (left, right) = (faces.left_face[e], faces.right_face[e]);
        dual.push(DualArc {
            tail: right,
            head: left,
            length: Finite(a.upper),
            cost: a.cost,
            kind: DualArcKind::Forward(e),
        });
        dual.push(DualArc {
            tail: left,
            head: right,
            length: Finite(-a.lower),
            cost: Finite(0),
            kind: DualArcKind::Reverse(e),
        });
    }
    dual
}

pub fn build_modified_dual(net: &EmbeddedNetwork, faces: &FaceStructure) -> InterdictionDual {
    let mut dual = build_dual(net, faces);
    let f = dual.num_faces;
    dual.modified = true;
    dual.num_nodes = f + net.num_vertices();
    dual.out.resize(dual.num_nodes, Vec::new());
    for (v, vert) in net.vertices.iter().enumerate() {
        for (corner, &d) in vert.rotation.iter().enumerate() {
            let face = faces.dart_face(d);
            dual.push(DualArc {
                tail: f + v,
                head: face,
                length: Inf,
                cost: Finite(0),
                kind: DualArcKind::VertexOut { vertex: v, corner },
            });
            dual.push(DualArc {
                tail: face,
                head: f + v,
                length: Inf,
                cost: vert.cost,
                kind: DualArcKind::VertexIn { vertex: v, corner },
            });
        }
    }
    dual
}

/// Adds the unremovable entry arcs that realize finite vertex capacities.
pub fn add_vertex_capacity_gadget(
    dual: &mut InterdictionDual,
    net: &EmbeddedNetwork,
    faces: &FaceStructure,
) -> Result<(), DualError> {
    if !dual.modified {
        return Err(DualError::NotModified);
    }
    for (v, vert) in net.vertices.iter().enumerate() {
        let Some(Finite(cap)) = vert.capacity else {
            continue;
        };
        if net.is_terminal(v) {
            return Err(DualError::GadgetOnTerminal(v));
        }
        for (corner, &d) in vert.rotation.iter().enumerate() {
            let tail = faces.dart_face(d);
            let head = dual.vertex_node(v);
            dual.push(DualArc {
                tail,
                head,
                length: Finite(cap),
                cost: Inf,
                kind: DualArcKind::Capacity { vertex: v, corner },
            });
        }
    }
    Ok(())
}

/// Dual arcs of the cut `[side, V \ side]`: forward arcs over arcs leaving `side`
/// and reverse arcs over arcs entering it.
pub fn cut_dual_arcs(net: &EmbeddedNetwork, side: &[bool]) -> Vec<usize> {
    let mut out = Vec::new();
    for (e, a) in net.arcs.iter().enumerate() {
        match (side[a.tail], side[a.head]) {
            (true, false) => out.push(InterdictionDual::forward(e)),
            (false, true) => out.push(InterdictionDual::reverse(e)),
            _ => {}
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityLabels {
    pub labels: Vec<i8>,
    pub path: Vec<usize>,
}

impl ParityLabels {
    pub fn of(&self, arcs: impl IntoIterator<Item = usize>) -> i64 {
        arcs.into_iter().map(|a| self.labels[a] as i64).sum()
    }
}

fn check_path(net: &EmbeddedNetwork, path: &[usize]) -> Result<(), DualError> {
    let (s, t) = net.single_pair().ok_or(DualError::PathNotInNetwork)?;
    if path.is_empty() || path.iter().any(|&e| e >= net.num_arcs()) {
        return Err(DualError::PathNotInNetwork);
    }
    let mut at = s;
    let mut seen = vec![false; net.num_vertices()];
    seen[s] = true;
    for &e in path {
        let a = &net.arcs[e];
        if a.tail != at || seen[a.head] {
            return Err(DualError::PathNotInNetwork);
        }
        at = a.head;
        seen[at] = true;
    }
    if at != t {
        return Err(DualError::PathNotInNetwork);
    }
    Ok(())
}

/// `+1` on forward and `-1` on reverse dual arcs of path arcs.
pub fn assign_parity(
    dual: &InterdictionDual,
    net: &EmbeddedNetwork,
    path: &[usize],
) -> Result<ParityLabels, DualError> {
    check_path(net, path)?;
    let mut labels = vec![0i8; dual.arcs.len()];
    for &e in path {
        labels[InterdictionDual::forward(e)] = 1;
        labels[InterdictionDual::reverse(e)] = -1;
    }
    Ok(ParityLabels {
        labels,
        path: path.to_vec(),
    })
}

/// Corners of `v` on the left of a path that arrives over `incoming` and leaves
/// over `outgoing`: the counterclockwise sweep from the outgoing to the incoming dart.
pub fn left_corners(
    net: &EmbeddedNetwork,
    positions: &[[usize; 2]],
    v: usize,
    incoming: usize,
    outgoing: usize,
) -> Vec<bool> {
    let deg = net.vertices[v].rotation.len();
    let a = positions[outgoing][0];
    let b = positions[incoming][1];
    let mut left = vec![false; deg];
    let mut i = a;
    while i != b {
        left[i] = true;
        i = (i + 1) % deg;
    }
    left
}

/// Parity on the modified dual: path-arc labels plus vertex-layer labels at
/// interior path vertices (`+1` leaving towards a left corner, `-1` entering from one).
pub fn assign_extended_parity(
    dual: &InterdictionDual,
    net: &EmbeddedNetwork,
    faces: &FaceStructure,
    path: &[usize],
) -> Result<ParityLabels, DualError> {
    let mut parity = assign_parity(dual, net, path)?;
    if !dual.modified {
        return Ok(parity);
    }
    let mut left_at: Vec<Option<Vec<bool>>> = vec![None; net.num_vertices()];
    for w in path.windows(2) {
        let v = net.arcs[w[0]].head;
        left_at[v] = Some(left_corners(net, &faces.positions, v, w[0], w[1]));
    }
    for (id, arc) in dual.arcs.iter().enumerate() {
        let (Some(v), Some(corner)) = (arc.kind.vertex(), arc.kind.corner()) else {
            continue;
        };
        if let Some(left) = &left_at[v] {
            if left[corner] {
                parity.labels[id] = if arc.kind.enters_vertex() { -1 } else { 1 };
            }
        }
    }
    Ok(parity)
}
