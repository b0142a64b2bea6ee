//! Lifting an embedded network to a plain flow network: removed components are
//! dropped, capacitated vertices are split and multi-terminal instances get a
//! super source and super sink. The lift ignores the embedding entirely.

use alloc::vec;
use alloc::vec::Vec;

use crate::ext::Finite;
use crate::network::EmbeddedNetwork;
use crate::oracle::maxflow::FlowNetwork;

/// Components removed from a network. Removing a vertex removes every incident arc.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Removal {
    pub arcs: Vec<bool>,
    pub vertices: Vec<bool>,
}

impl Removal {
    pub fn none(net: &EmbeddedNetwork) -> Self {
        Removal {
            arcs: vec![false; net.num_arcs()],
            vertices: vec![false; net.num_vertices()],
        }
    }

    pub fn from_sets(net: &EmbeddedNetwork, arcs: &[usize], vertices: &[usize]) -> Self {
        let mut r = Removal::none(net);
        for &e in arcs {
            r.arcs[e] = true;
        }
        for &v in vertices {
            r.vertices[v] = true;
        }
        r
    }

    pub fn arc_gone(&self, net: &EmbeddedNetwork, e: usize) -> bool {
        let a = &net.arcs[e];
        self.arcs[e] || self.vertices[a.tail] || self.vertices[a.head]
    }
}

#[derive(Clone, Debug)]
pub struct LiftedFlowNetwork {
    pub flow: FlowNetwork,
    pub source: usize,
    pub sink: usize,
    /// Node receiving the arcs that enter each vertex.
    pub v_in: Vec<usize>,
    /// Node emitting the arcs that leave each vertex.
    pub v_out: Vec<usize>,
    /// Lift arc of every surviving primal arc.
    pub arc_of: Vec<Option<usize>>,
}

impl LiftedFlowNetwork {
    fn base(net: &EmbeddedNetwork, removal: &Removal, vertex_capacities: bool, shift: impl Fn(usize) -> i64) -> Self {
        let n = net.num_vertices();
        let mut flow = FlowNetwork::new(n);
        let v_in: Vec<usize> = (0..n).collect();
        let mut v_out = v_in.clone();
        if vertex_capacities {
            for (v, vert) in net.vertices.iter().enumerate() {
                if let Some(Finite(cap)) = vert.capacity {
                    if !removal.vertices[v] {
                        let out = flow.add_node();
                        flow.add_arc(v, out, cap);
                        v_out[v] = out;
                    }
                }
            }
        }
        let mut arc_of = vec![None; net.num_arcs()];
        for (e, a) in net.arcs.iter().enumerate() {
            if removal.arc_gone(net, e) {
                continue;
            }
            arc_of[e] = Some(flow.add_arc(v_out[a.tail], v_in[a.head], a.upper - shift(e)));
        }
        let source = flow.add_node();
        let sink = flow.add_node();
        LiftedFlowNetwork {
            flow,
            source,
            sink,
            v_in,
            v_out,
            arc_of,
        }
    }

    /// Single s-t lift. Demands and lower bounds are ignored.
    pub fn single_pair(net: &EmbeddedNetwork, s: usize, t: usize, removal: &Removal, vertex_capacities: bool) -> Self {
        let mut lift = Self::base(net, removal, vertex_capacities, |_| 0);
        let big = 1 + net.arcs.iter().map(|a| a.upper).sum::<i64>();
        let (src, snk) = (lift.source, lift.sink);
        lift.flow.add_arc(src, lift.v_in[s], big);
        lift.flow.add_arc(lift.v_out[t], snk, big);
        lift
    }

    /// Super source feeding every source up to `-d(s)`, every sink draining up to `d(t)`.
    pub fn multi_terminal(net: &EmbeddedNetwork, removal: &Removal, vertex_capacities: bool) -> Self {
        let mut lift = Self::base(net, removal, vertex_capacities, |_| 0);
        let (src, snk) = (lift.source, lift.sink);
        for &s in &net.sources {
            lift.flow.add_arc(src, lift.v_in[s], -net.vertices[s].demand);
        }
        for &t in &net.sinks {
            lift.flow.add_arc(lift.v_out[t], snk, net.vertices[t].demand);
        }
        lift
    }

    pub fn max_flow(&mut self) -> i64 {
        self.flow.max_flow(self.source, self.sink)
    }

    /// Vertices whose entry node is reachable in the residual network.
    pub fn source_side(&self) -> Vec<bool> {
        let reach = self.flow.residual_reachable(self.source);
        self.v_in.iter().map(|&x| reach[x]).collect()
    }
}

/// Maximum flow of `net` after `removal`: s-t flow for a single pair, super flow otherwise.
pub fn flow_value(net: &EmbeddedNetwork, removal: &Removal, vertex_capacities: bool) -> i64 {
    match net.single_pair() {
        Some((s, t)) => LiftedFlowNetwork::single_pair(net, s, t, removal, vertex_capacities).max_flow(),
        None => LiftedFlowNetwork::multi_terminal(net, removal, vertex_capacities).max_flow(),
    }
}

/// Whether a flow meeting every demand exactly and respecting `l <= f <= u` exists.
pub fn saturation_feasible(net: &EmbeddedNetwork, removal: &Removal, vertex_capacities: bool) -> bool {
    let mut lift = LiftedFlowNetwork::base(net, removal, vertex_capacities, |e| net.arcs[e].lower);
    // Required net outflow per lift node once lower bounds are pre-routed.
    let mut excess = vec![0i64; lift.flow.num_nodes()];
    for (e, a) in net.arcs.iter().enumerate() {
        if removal.arc_gone(net, e) {
            continue;
        }
        if a.lower > a.upper {
            return false;
        }
        excess[lift.v_out[a.tail]] -= a.lower;
        excess[lift.v_in[a.head]] += a.lower;
    }
    for (v, vert) in net.vertices.iter().enumerate() {
        if vert.demand < 0 {
            excess[lift.v_out[v]] -= vert.demand;
        } else if vert.demand > 0 {
            excess[lift.v_in[v]] -= vert.demand;
        }
    }
    let (src, snk) = (lift.source, lift.sink);
    let mut need = 0;
    for (x, &ex) in excess.iter().enumerate() {
        if ex > 0 {
            lift.flow.add_arc(src, x, ex);
            need += ex;
        } else if ex < 0 {
            lift.flow.add_arc(x, snk, -ex);
        }
    }
    lift.max_flow() == need
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn reference_max_flows() {
        let net = fixtures::three_parallel();
        assert_eq!(flow_value(&net, &Removal::none(&net), false), 10);
        let net = fixtures::diamond();
        assert_eq!(flow_value(&net, &Removal::none(&net), false), 3);
    }

    #[test]
    fn vertex_split_limits_throughput() {
        let mut net = fixtures::chain(5, 5);
        net.vertices[1].capacity = Some(Finite(2));
        assert_eq!(flow_value(&net, &Removal::none(&net), true), 2);
        assert_eq!(flow_value(&net, &Removal::none(&net), false), 5);
    }

    #[test]
    fn removing_a_vertex_drops_its_arcs() {
        let net = fixtures::chain(5, 5);
        let r = Removal::from_sets(&net, &[], &[1]);
        assert_eq!(flow_value(&net, &r, false), 0);
    }

    #[test]
    fn saturation_of_two_parallel_arcs() {
        let net = fixtures::two_parallel_unit(1, 1, Finite(1));
        assert!(saturation_feasible(&net, &Removal::none(&net), false));
        let r = Removal::from_sets(&net, &[0], &[]);
        assert!(!saturation_feasible(&net, &r, false));
    }

    #[test]
    fn lower_bounds_can_force_infeasibility() {
        let mut net = fixtures::two_parallel_unit(2, 2, Finite(1));
        net.arcs[0].lower = 2;
        net.arcs[1].lower = 1;
        assert!(!saturation_feasible(&net, &Removal::none(&net), false));
        net.arcs[1].lower = 0;
        assert!(saturation_feasible(&net, &Removal::none(&net), false));
    }
}
