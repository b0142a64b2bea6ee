//! Single source/sink interdiction.
//!
//! A cut of the primal corresponds to a counterclockwise dual circuit that crosses
//! the fixed s-t path with parity one, and an optimal interdiction corresponds to
//! such a circuit of minimum length after removing arcs within budget. The search
//! runs in the budget x parity expansion of the dual, once per dual node that
//! starts a parity-one arc. With vertex removal or vertex capacities the modified
//! dual is used, where passing through a vertex node either removes the vertex or
//! pays its capacity.

use alloc::vec;
use alloc::vec::Vec;

use crate::dual::{
    add_vertex_capacity_gadget, assign_extended_parity, assign_parity, build_dual, build_modified_dual, DualArcKind,
    DualError, InterdictionDual,
};
use crate::exec::{Executor, Sequential};
use crate::ext::{ExtInt, Finite, Inf};
use crate::faces::trace_faces;
use crate::layered::LayeredBudgetGraph;
pub use crate::network::Mode;
use crate::network::{st_path, EmbeddedNetwork, NetworkError};
use crate::oracle::lift::{flow_value, LiftedFlowNetwork, Removal};
use crate::walk::{decompose, kept_length, removal_cost, WalkStep};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StOptions {
    pub budget: usize,
    pub mode: Mode,
    pub vertex_capacities: bool,
    pub clip_parity: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessArc {
    pub dual_arc: usize,
    pub kind: DualArcKind,
    pub removed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterdictionOutcome {
    /// Best remaining max flow for every budget `0..=B`.
    pub nu_profile: Vec<i64>,
    pub arcs: Vec<usize>,
    pub vertices: Vec<usize>,
    pub cost: i64,
    /// Source side of a minimum cut after the removal.
    pub cut_side: Vec<usize>,
    /// Dual circuit behind the optimum; removed arcs are flagged.
    pub witness: Vec<WitnessArc>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum StError {
    #[error("expected exactly one source and one sink")]
    NotSinglePair,
    #[error("terminal {0} has a finite interdiction cost")]
    TerminalRemovable(usize),
    #[error("arc {0} has a positive lower bound")]
    LowerBound(usize),
    #[error("vertex {0} is removable but vertex interdiction is off")]
    RemovableVertex(usize),
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error(transparent)]
    Dual(#[from] DualError),
    #[error("no closed walk with parity one exists")]
    NoWalk,
    #[error("circuit length {circuit} differs from walk length {walk}")]
    WalkCircuitMismatch { walk: ExtInt, circuit: ExtInt },
    #[error("max flow after removal is {found}, expected {expected}")]
    CertificateMismatch { expected: i64, found: i64 },
}

pub fn solve_st_interdiction(net: &EmbeddedNetwork, opts: &StOptions) -> Result<InterdictionOutcome, StError> {
    solve_st_interdiction_with(net, opts, &Sequential)
}

fn check_preconditions(net: &EmbeddedNetwork, opts: &StOptions) -> Result<(usize, usize), StError> {
    let (s, t) = net.single_pair().ok_or(StError::NotSinglePair)?;
    if s >= net.num_vertices() {
        return Err(NetworkError::NoSuchVertex(s).into());
    }
    if t >= net.num_vertices() {
        return Err(NetworkError::NoSuchVertex(t).into());
    }
    for v in [s, t] {
        if net.vertices[v].cost != Inf {
            return Err(StError::TerminalRemovable(v));
        }
    }
    if let Some(e) = net.arcs.iter().position(|a| a.lower != 0) {
        return Err(StError::LowerBound(e));
    }
    if opts.mode == Mode::ArcsOnly {
        if let Some(v) = net.vertices.iter().position(|v| v.cost != Inf) {
            return Err(StError::RemovableVertex(v));
        }
    }
    Ok((s, t))
}

/// Vertices reachable from `s` along arcs.
fn reachable(net: &EmbeddedNetwork, s: usize) -> Vec<usize> {
    let out = net.out_arcs();
    let mut seen = vec![false; net.num_vertices()];
    seen[s] = true;
    let mut stack = vec![s];
    while let Some(v) = stack.pop() {
        for &e in &out[v] {
            let w = net.arcs[e].head;
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    (0..net.num_vertices()).filter(|&v| seen[v]).collect()
}

/// Parity width: `|P|`, or the clipped range when requested. Paths through the
/// modified dual may also cross at the `|P| - 1` interior vertices, so clipping
/// there keeps the full width.
pub fn parity_width(path_len: usize, modified: bool, clip: bool) -> usize {
    if clip && !modified {
        path_len.div_ceil(2)
    } else {
        path_len
    }
}

pub fn solve_st_interdiction_with<E: Executor>(
    net: &EmbeddedNetwork,
    opts: &StOptions,
    exec: &E,
) -> Result<InterdictionOutcome, StError> {
    let (s, t) = check_preconditions(net, opts)?;
    let faces = trace_faces(net)?;
    let budget = opts.budget;
    let path = match st_path(net, s, t) {
        Ok(p) => p,
        Err(NetworkError::Unreachable) => {
            return Ok(InterdictionOutcome {
                nu_profile: vec![0; budget + 1],
                arcs: Vec::new(),
                vertices: Vec::new(),
                cost: 0,
                cut_side: reachable(net, s),
                witness: Vec::new(),
            })
        }
        Err(e) => return Err(e.into()),
    };

    let modified = opts.mode == Mode::WithVertices || opts.vertex_capacities;
    let dual = if modified {
        let mut d = build_modified_dual(net, &faces);
        if opts.vertex_capacities {
            add_vertex_capacity_gadget(&mut d, net, &faces)?;
        }
        d
    } else {
        build_dual(net, &faces)
    };
    let parity = if modified {
        assign_extended_parity(&dual, net, &faces, &path)?
    } else {
        assign_parity(&dual, net, &path)?
    };
    let width = parity_width(path.len(), modified, opts.clip_parity);
    let layered = LayeredBudgetGraph::new(&dual, &parity.labels, budget, width);

    let mut starts: Vec<usize> = (0..dual.arcs.len())
        .filter(|&a| parity.labels[a] == 1)
        .map(|a| dual.arcs[a].tail)
        .collect();
    starts.sort_unstable();
    starts.dedup();
    let walks = exec.map(starts.len(), |i| layered.solve_closed_walk(starts[i]));

    let mut nu = vec![Inf; budget + 1];
    for w in &walks {
        for (k, &v) in w.profile.iter().enumerate() {
            nu[k] = nu[k].min(v);
        }
    }
    let nu_profile: Vec<i64> = nu
        .iter()
        .map(|v| v.finite().ok_or(StError::NoWalk))
        .collect::<Result<_, _>>()?;
    let best = walks
        .iter()
        .filter(|w| w.profile[budget] == nu[budget])
        .min_by_key(|w| w.start)
        .ok_or(StError::NoWalk)?;

    let circuit = select_circuit(&dual, &parity.labels, best.start, &best.walk)?;
    let circuit_len = kept_length(&dual, &circuit);
    if circuit_len != nu[budget] {
        return Err(StError::WalkCircuitMismatch {
            walk: nu[budget],
            circuit: circuit_len,
        });
    }
    debug_assert!(removal_cost(&dual, &circuit) <= Finite(budget as i64));

    let (mut arcs, mut vertices) = removal_set(&dual, &circuit);
    let target = nu_profile[budget];
    let caps = opts.vertex_capacities;
    prune(net, &mut arcs, &mut vertices, target, caps);
    let removal = Removal::from_sets(net, &arcs, &vertices);
    let mut lift = LiftedFlowNetwork::single_pair(net, s, t, &removal, caps);
    let found = lift.max_flow();
    if found != target {
        return Err(StError::CertificateMismatch {
            expected: target,
            found,
        });
    }
    let side = lift.source_side();
    let cut_side = (0..net.num_vertices())
        .filter(|&v| side[v] || removal.vertices[v])
        .collect();
    let cost = arcs
        .iter()
        .map(|&e| net.arcs[e].cost)
        .chain(vertices.iter().map(|&v| net.vertices[v].cost))
        .sum::<ExtInt>()
        .unwrap_finite();
    let witness = circuit
        .iter()
        .map(|st| WitnessArc {
            dual_arc: st.arc,
            kind: dual.arcs[st.arc].kind,
            removed: st.removed,
        })
        .collect();
    Ok(InterdictionOutcome {
        nu_profile,
        arcs,
        vertices,
        cost,
        cut_side,
        witness,
    })
}

/// Parity-one circuit of the walk with the smallest kept length.
fn select_circuit(
    dual: &InterdictionDual,
    labels: &[i8],
    start: usize,
    walk: &[WalkStep],
) -> Result<Vec<WalkStep>, StError> {
    decompose(dual, start, walk)
        .into_iter()
        .filter(|c| c.iter().map(|s| labels[s.arc] as i64).sum::<i64>() == 1)
        .min_by_key(|c| kept_length(dual, c))
        .ok_or(StError::NoWalk)
}

/// Primal arcs of removed forward arcs and vertices entered through a removed arc.
fn removal_set(dual: &InterdictionDual, circuit: &[WalkStep]) -> (Vec<usize>, Vec<usize>) {
    let mut arcs = Vec::new();
    let mut vertices = Vec::new();
    for st in circuit.iter().filter(|s| s.removed) {
        match dual.arcs[st.arc].kind {
            DualArcKind::Forward(e) => arcs.push(e),
            DualArcKind::VertexIn { vertex, .. } => vertices.push(vertex),
            _ => {}
        }
    }
    arcs.sort_unstable();
    arcs.dedup();
    vertices.sort_unstable();
    vertices.dedup();
    (arcs, vertices)
}

/// Drops removals that do not matter, arcs first, each in ascending id.
fn prune(net: &EmbeddedNetwork, arcs: &mut Vec<usize>, vertices: &mut Vec<usize>, target: i64, caps: bool) {
    let mut i = 0;
    while i < arcs.len() {
        let e = arcs.remove(i);
        if flow_value(net, &Removal::from_sets(net, arcs, vertices), caps) != target {
            arcs.insert(i, e);
            i += 1;
        }
    }
    let mut i = 0;
    while i < vertices.len() {
        let v = vertices.remove(i);
        if flow_value(net, &Removal::from_sets(net, arcs, vertices), caps) != target {
            vertices.insert(i, v);
            i += 1;
        }
    }
}

/// Prepends a new source `s'` with an unremovable arc `s' -> s` of capacity `k`.
///
/// Asking whether the interdicted max flow drops strictly below the max flow of
/// the result is the same as asking whether it drops below `k` in the original.
pub fn threshold_reduction(net: &EmbeddedNetwork, k: i64) -> Result<EmbeddedNetwork, StError> {
    let (s, _) = net.single_pair().ok_or(StError::NotSinglePair)?;
    let mut out = net.clone();
    let s2 = out.add_vertex(Inf, 0);
    let e = out.arcs.len();
    out.arcs.push(crate::network::Arc {
        tail: s2,
        head: s,
        upper: k,
        lower: 0,
        cost: Inf,
    });
    out.vertices[s2].rotation.push(crate::network::Dart::tail(e));
    out.vertices[s].rotation.insert(0, crate::network::Dart::head(e));
    out.sources = vec![s2];
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::gen::{random_planar, GenConfig, Terminals};
    use crate::oracle::exhaustive::interdict_exhaustive;
    use proptest::prelude::*;

    fn opts(budget: usize) -> StOptions {
        StOptions {
            budget,
            ..Default::default()
        }
    }

    #[test]
    fn three_parallel_profile() {
        let out = solve_st_interdiction(&fixtures::three_parallel(), &opts(2)).unwrap();
        assert_eq!(out.nu_profile, vec![10, 7, 5]);
        assert!(out.cost <= 2);
    }

    #[test]
    fn diamond_profile_and_set() {
        let net = fixtures::diamond();
        let out = solve_st_interdiction(&net, &opts(1)).unwrap();
        assert_eq!(out.nu_profile, vec![3, 1]);
        assert_eq!(out.arcs, vec![1]);
        let out = solve_st_interdiction(&net, &opts(2)).unwrap();
        assert_eq!(out.nu_profile, vec![3, 1, 0]);
        assert_eq!(out.cost, 2);
    }

    #[test]
    fn vertex_removal_on_a_chain() {
        let mut net = fixtures::chain(5, 5);
        net.vertices[1].cost = Finite(1);
        let o = StOptions {
            budget: 1,
            mode: Mode::WithVertices,
            ..Default::default()
        };
        let out = solve_st_interdiction(&net, &o).unwrap();
        assert_eq!(out.nu_profile, vec![5, 0]);
        assert_eq!(out.vertices, vec![1]);
        assert!(out.cut_side.contains(&1));
    }

    #[test]
    fn vertex_capacity_bounds_the_chain() {
        let mut net = fixtures::chain(5, 5);
        net.vertices[1].capacity = Some(Finite(2));
        let o = StOptions {
            budget: 0,
            vertex_capacities: true,
            ..Default::default()
        };
        assert_eq!(solve_st_interdiction(&net, &o).unwrap().nu_profile, vec![2]);
    }

    #[test]
    fn removable_terminal_is_rejected() {
        let mut net = fixtures::diamond();
        net.vertices[0].cost = Finite(1);
        assert_eq!(
            solve_st_interdiction(&net, &opts(1)),
            Err(StError::TerminalRemovable(0))
        );
    }

    #[test]
    fn vertex_costs_need_vertex_mode() {
        let mut net = fixtures::chain(1, 1);
        net.vertices[1].cost = Finite(1);
        assert_eq!(solve_st_interdiction(&net, &opts(1)), Err(StError::RemovableVertex(1)));
    }

    #[test]
    fn unreachable_sink_gives_zero_profile() {
        let mut net = fixtures::single_arc(3);
        net.sources = vec![1];
        net.sinks = vec![0];
        let out = solve_st_interdiction(&net, &opts(2)).unwrap();
        assert_eq!(out.nu_profile, vec![0, 0, 0]);
        assert_eq!(out.cut_side, vec![1]);
    }

    fn check_against_oracle(net: &EmbeddedNetwork, o: &StOptions) -> Result<(), TestCaseError> {
        let out = solve_st_interdiction(net, o).map_err(|e| TestCaseError::fail(alloc::format!("{e}")))?;
        let expect = interdict_exhaustive(net, o.budget, o.mode, o.vertex_capacities).unwrap();
        prop_assert_eq!(&out.nu_profile, &expect.nu_profile);
        prop_assert!(out.cost <= o.budget as i64);
        let r = Removal::from_sets(net, &out.arcs, &out.vertices);
        prop_assert_eq!(flow_value(net, &r, o.vertex_capacities), out.nu_profile[o.budget]);
        prop_assert!(out.nu_profile.windows(2).all(|w| w[0] >= w[1]));
        Ok(())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn arcs_only_matches_oracle(n in 2usize..8, extra in 0usize..7, seed in 0u64..10_000, budget in 0usize..5) {
            let net = random_planar(n, n - 1 + extra, seed, &GenConfig::default(), Terminals::SinglePair);
            check_against_oracle(&net, &opts(budget))?;
        }

        #[test]
        fn with_vertices_matches_oracle(n in 2usize..8, extra in 0usize..7, seed in 0u64..10_000, budget in 0usize..5) {
            let net = random_planar(n, n - 1 + extra, seed, &GenConfig::with_vertices(), Terminals::SinglePair);
            let o = StOptions { budget, mode: Mode::WithVertices, vertex_capacities: true, clip_parity: false };
            check_against_oracle(&net, &o)?;
        }
    }

    #[test]
    fn clipping_agrees_on_diamond() {
        let net = fixtures::diamond();
        let mut o = opts(2);
        let full = solve_st_interdiction(&net, &o).unwrap();
        o.clip_parity = true;
        assert_eq!(solve_st_interdiction(&net, &o).unwrap().nu_profile, full.nu_profile);
    }

    #[test]
    fn threshold_reduction_answers_the_decision_question() {
        let net = fixtures::three_parallel();
        for (k, expect) in [(5, false), (6, true), (0, false)] {
            let reduced = threshold_reduction(&net, k).unwrap();
            let profile = interdict_exhaustive(&reduced, 2, Mode::ArcsOnly, false)
                .unwrap()
                .nu_profile;
            assert_eq!(profile[0], k.min(10));
            assert_eq!(profile[2] < profile[0], expect, "k = {k}");
            let solved = solve_st_interdiction(&reduced, &opts(2)).unwrap();
            assert_eq!(solved.nu_profile, profile);
        }
    }
}
