//! Embedded interdiction networks.
//!
//! An embedding is given as a rotation system: for every vertex the counterclockwise
//! cyclic order of its incident arc-endpoints ([`Dart`]s). All left/right notions in
//! the crate derive from this orientation.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::ext::{ExtInt, Inf};
use crate::faces::trace_faces;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum End {
    Tail,
    Head,
}

impl End {
    pub fn opposite(self) -> End {
        match self {
            End::Tail => End::Head,
            End::Head => End::Tail,
        }
    }
}

/// One endpoint of an arc, seen from the vertex it is attached to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart {
    pub arc: usize,
    pub end: End,
}

impl Dart {
    pub fn new(arc: usize, end: End) -> Self {
        Dart { arc, end }
    }

    pub fn tail(arc: usize) -> Self {
        Dart::new(arc, End::Tail)
    }

    pub fn head(arc: usize) -> Self {
        Dart::new(arc, End::Head)
    }

    pub fn reversed(self) -> Dart {
        Dart::new(self.arc, self.end.opposite())
    }
}

/// Which components an attacker may remove.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Mode {
    #[default]
    ArcsOnly,
    WithVertices,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    /// Counterclockwise order of incident arc-endpoints.
    pub rotation: Vec<Dart>,
    pub cost: ExtInt,
    /// Negative for sources, positive for sinks.
    pub demand: i64,
    pub capacity: Option<ExtInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
    pub upper: i64,
    pub lower: i64,
    pub cost: ExtInt,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EmbeddedNetwork {
    pub vertices: Vec<Vertex>,
    pub arcs: Vec<Arc>,
    pub sources: Vec<usize>,
    pub sinks: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum NetworkError {
    #[error("malformed rotation at vertex {vertex}: {reason}")]
    MalformedRotation { vertex: usize, reason: &'static str },
    #[error("arc {arc} references a vertex that does not exist")]
    DanglingArc { arc: usize },
    #[error("t is not reachable from s")]
    Unreachable,
    #[error("vertex {0} does not exist")]
    NoSuchVertex(usize),
}

impl EmbeddedNetwork {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, cost: ExtInt, demand: i64) -> usize {
        self.vertices.push(Vertex {
            rotation: Vec::new(),
            cost,
            demand,
            capacity: None,
        });
        self.vertices.len() - 1
    }

    /// Adds an arc and appends its endpoints at the end of both rotations.
    pub fn add_arc(&mut self, tail: usize, head: usize, upper: i64, cost: ExtInt) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc {
            tail,
            head,
            upper,
            lower: 0,
            cost,
        });
        self.vertices[tail].rotation.push(Dart::tail(id));
        self.vertices[head].rotation.push(Dart::head(id));
        id
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arcs(&self) -> usize {
        self.arcs.len()
    }

    /// Vertex a dart is attached to.
    pub fn dart_vertex(&self, d: Dart) -> usize {
        let a = &self.arcs[d.arc];
        match d.end {
            End::Tail => a.tail,
            End::Head => a.head,
        }
    }

    pub fn is_terminal(&self, v: usize) -> bool {
        self.sources.contains(&v) || self.sinks.contains(&v)
    }

    /// The single source and sink of an s-t network.
    pub fn single_pair(&self) -> Option<(usize, usize)> {
        match (self.sources.as_slice(), self.sinks.as_slice()) {
            ([s], [t]) => Some((*s, *t)),
            _ => None,
        }
    }

    /// Position of every dart inside its vertex rotation, `[tail, head]` per arc.
    ///
    /// Fails when an arc-endpoint is missing, duplicated or listed at the wrong vertex.
    pub fn dart_positions(&self) -> Result<Vec<[usize; 2]>, NetworkError> {
        const UNSET: usize = usize::MAX;
        let n = self.vertices.len();
        for (i, a) in self.arcs.iter().enumerate() {
            if a.tail >= n || a.head >= n {
                return Err(NetworkError::DanglingArc { arc: i });
            }
        }
        let mut pos = vec![[UNSET; 2]; self.arcs.len()];
        for (v, vert) in self.vertices.iter().enumerate() {
            for (i, d) in vert.rotation.iter().enumerate() {
                if d.arc >= self.arcs.len() {
                    return Err(NetworkError::MalformedRotation {
                        vertex: v,
                        reason: "unknown arc",
                    });
                }
                if self.dart_vertex(*d) != v {
                    return Err(NetworkError::MalformedRotation {
                        vertex: v,
                        reason: "arc-endpoint belongs to another vertex",
                    });
                }
                let slot = &mut pos[d.arc][d.end as usize];
                if *slot != UNSET {
                    return Err(NetworkError::MalformedRotation {
                        vertex: v,
                        reason: "duplicated arc-endpoint",
                    });
                }
                *slot = i;
            }
        }
        for (i, p) in pos.iter().enumerate() {
            for (k, slot) in p.iter().enumerate() {
                if *slot == UNSET {
                    let a = &self.arcs[i];
                    let vertex = if k == 0 { a.tail } else { a.head };
                    return Err(NetworkError::MalformedRotation {
                        vertex,
                        reason: "missing arc-endpoint",
                    });
                }
            }
        }
        Ok(pos)
    }

    /// Outgoing arcs per vertex in ascending arc id.
    pub fn out_arcs(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.vertices.len()];
        for (i, a) in self.arcs.iter().enumerate() {
            out[a.tail].push(i);
        }
        out
    }

    /// Connected components of the underlying undirected graph, as a label per vertex.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let n = self.vertices.len();
        let mut adj = vec![Vec::new(); n];
        for a in &self.arcs {
            adj[a.tail].push(a.head);
            adj[a.head].push(a.tail);
        }
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        for root in 0..n {
            if label[root] != usize::MAX {
                continue;
            }
            label[root] = count;
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    pub fn is_connected(&self) -> bool {
        self.components().0 <= 1
    }
}

/// Directed s-t path with the fewest arcs; ties go to lower arc ids.
pub fn st_path(net: &EmbeddedNetwork, s: usize, t: usize) -> Result<Vec<usize>, NetworkError> {
    let n = net.num_vertices();
    if s >= n {
        return Err(NetworkError::NoSuchVertex(s));
    }
    if t >= n {
        return Err(NetworkError::NoSuchVertex(t));
    }
    let out = net.out_arcs();
    let mut via = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    seen[s] = true;
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        if v == t {
            break;
        }
        for &e in &out[v] {
            let w = net.arcs[e].head;
            if !seen[w] {
                seen[w] = true;
                via[w] = e;
                queue.push_back(w);
            }
        }
    }
    if !seen[t] || s == t {
        return Err(NetworkError::Unreachable);
    }
    let mut path = Vec::new();
    let mut v = t;
    while v != s {
        let e = via[v];
        path.push(e);
        v = net.arcs[e].tail;
    }
    path.reverse();
    Ok(path)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentEuler {
    pub vertices: usize,
    pub arcs: usize,
    pub faces: usize,
    pub ok: bool,
}

/// Diagnostics produced by [`validate`]. Nothing here is an error by itself; callers
/// decide which findings are fatal.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub rotation_error: Option<NetworkError>,
    pub euler: Vec<ComponentEuler>,
    /// Arcs with `lower > upper` or a negative bound.
    pub bound_violations: Vec<usize>,
    pub demand_sum: i64,
    /// Vertices whose demand sign disagrees with their terminal role.
    pub demand_sign_violations: Vec<usize>,
    /// Terminals with a finite interdiction cost.
    pub terminal_cost_violations: Vec<usize>,
    pub terminals_overlap: bool,
    pub unknown_terminals: Vec<usize>,
}

impl ValidationReport {
    pub fn embedding_ok(&self) -> bool {
        self.rotation_error.is_none() && self.euler.iter().all(|c| c.ok)
    }

    pub fn demand_balanced(&self) -> bool {
        self.demand_sum == 0
    }

    pub fn is_valid(&self) -> bool {
        self.embedding_ok()
            && self.bound_violations.is_empty()
            && self.demand_balanced()
            && self.demand_sign_violations.is_empty()
            && self.terminal_cost_violations.is_empty()
            && !self.terminals_overlap
            && self.unknown_terminals.is_empty()
    }
}

pub fn validate(net: &EmbeddedNetwork) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = net.num_vertices();

    match trace_faces(net) {
        Err(e) => report.rotation_error = Some(e),
        Ok(faces) => {
            let (count, label) = net.components();
            let mut comps = vec![(0usize, 0usize, 0usize); count];
            for v in 0..n {
                comps[label[v]].0 += 1;
            }
            for a in &net.arcs {
                comps[label[a.tail]].1 += 1;
            }
            for walk in &faces.walks {
                let v = net.dart_vertex(walk[0]);
                comps[label[v]].2 += 1;
            }
            report.euler = comps
                .into_iter()
                .map(|(v, a, f)| {
                    // An isolated vertex has one face and no walk.
                    let f = if a == 0 { 1 } else { f };
                    ComponentEuler {
                        vertices: v,
                        arcs: a,
                        faces: f,
                        ok: v as i64 - a as i64 + f as i64 == 2,
                    }
                })
                .collect();
        }
    }

    for (i, a) in net.arcs.iter().enumerate() {
        if a.lower < 0 || a.upper < 0 || a.lower > a.upper {
            report.bound_violations.push(i);
        }
    }

    report.demand_sum = net.vertices.iter().map(|v| v.demand).sum();
    let multi = !(net.sources.len() == 1 && net.sinks.len() == 1);
    for (v, vert) in net.vertices.iter().enumerate() {
        let is_source = net.sources.contains(&v);
        let is_sink = net.sinks.contains(&v);
        if is_source && is_sink {
            report.terminals_overlap = true;
        }
        let sign_ok = if is_source {
            vert.demand < 0 || (!multi && vert.demand == 0)
        } else if is_sink {
            vert.demand > 0 || (!multi && vert.demand == 0)
        } else {
            vert.demand == 0
        };
        if !sign_ok {
            report.demand_sign_violations.push(v);
        }
        if (is_source || is_sink) && vert.cost != Inf {
            report.terminal_cost_violations.push(v);
        }
    }
    for &v in net.sources.iter().chain(&net.sinks) {
        if v >= n {
            report.unknown_terminals.push(v);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::Finite;
    use crate::fixtures;

    #[test]
    fn single_arc_path() {
        let net = fixtures::single_arc(4);
        assert_eq!(st_path(&net, 0, 1), Ok(vec![0]));
    }

    #[test]
    fn diamond_path_has_two_arcs() {
        let net = fixtures::diamond();
        let p = st_path(&net, 0, 3).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p, vec![0, 2]);
    }

    #[test]
    fn disconnected_terminals_are_unreachable() {
        let mut net = EmbeddedNetwork::new();
        net.add_vertex(Inf, 0);
        net.add_vertex(Inf, 0);
        assert_eq!(st_path(&net, 0, 1), Err(NetworkError::Unreachable));
    }

    #[test]
    fn balanced_demands_pass() {
        let net = fixtures::two_parallel_unit(1, 1, Finite(1));
        let r = validate(&net);
        assert!(r.demand_balanced());
        assert!(r.is_valid(), "{r:?}");
    }

    #[test]
    fn unbalanced_demands_fail() {
        let mut net = fixtures::two_parallel_unit(1, 1, Finite(1));
        net.vertices[1].demand = 3;
        let r = validate(&net);
        assert_eq!(r.demand_sum, 1);
        assert!(!r.is_valid());
    }

    #[test]
    fn finite_terminal_cost_is_reported() {
        let mut net = fixtures::three_parallel();
        net.vertices[0].cost = Finite(2);
        let r = validate(&net);
        assert_eq!(r.terminal_cost_violations, vec![0]);
    }

    #[test]
    fn lower_above_upper_is_reported() {
        let mut net = fixtures::three_parallel();
        net.arcs[1].lower = 9;
        assert_eq!(validate(&net).bound_violations, vec![1]);
    }

    #[test]
    fn dart_positions_detects_duplicates_and_gaps() {
        let mut net = fixtures::triangle();
        let d = net.vertices[0].rotation[0];
        net.vertices[0].rotation.push(d);
        assert!(matches!(
            net.dart_positions(),
            Err(NetworkError::MalformedRotation { vertex: 0, .. })
        ));
        let mut net = fixtures::triangle();
        net.vertices[1].rotation.pop();
        assert!(net.dart_positions().is_err());
    }
}
