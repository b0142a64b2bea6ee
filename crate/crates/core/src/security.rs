//! Flow security of balanced multi-terminal networks.
//!
//! The network is first turned into a circulation instance. Removing components
//! breaks saturation exactly when some dual circuit has negative length after the
//! removals are paid for. In the arc-only case the lengths are the plain dual
//! lengths. With vertex removal the search uses the modified dual, where the
//! vertex-layer arcs carry an unremovable residual that accounts for the tree arcs
//! the curve sweeps past at each vertex it passes through.
//!
//! The search is a dynamic program over budget levels. Within a level, arcs are
//! either kept or removed for free; between levels, a removed arc of cost `c`
//! drops the level by `c`. Within-level distances come from an all-pairs
//! Bellman-Ford pass.

use alloc::vec;
use alloc::vec::Vec;

use crate::circulation::{build_circulation_instance, check_saturating_flow, CirculationError, CirculationInstance};
use crate::dual::{build_dual, build_modified_dual, DualArcKind, InterdictionDual};
use crate::exec::{Executor, Sequential};
use crate::ext::{ExtInt, Finite, Inf};
use crate::faces::{trace_faces, FaceStructure};
use crate::knapsack::max_removable;
use crate::network::{EmbeddedNetwork, End, Mode, NetworkError};
use crate::oracle::lift::{saturation_feasible, Removal};
use crate::st::{solve_st_interdiction_with, StError, StOptions, WitnessArc};
use crate::walk::{decompose, WalkStep};

/// Dual arc lengths split into a removable base and a residual that stays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiLengths {
    pub base: Vec<ExtInt>,
    pub residual: Vec<i64>,
    /// Reference corner per primal vertex.
    pub reference: Vec<usize>,
}

impl ChiLengths {
    /// Length of an arc that is kept.
    pub fn kept(&self, a: usize) -> ExtInt {
        self.base[a] + self.residual[a]
    }

    /// Length of an arc that is paid for.
    pub fn removed(&self, a: usize) -> ExtInt {
        Finite(self.residual[a])
    }

    pub fn step(&self, s: WalkStep) -> ExtInt {
        if s.removed {
            self.removed(s.arc)
        } else {
            self.kept(s.arc)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SecurityError {
    #[error("no saturating flow exists without interdiction")]
    PreconditionUnsatisfiable,
    #[error("terminal {0} has a finite interdiction cost")]
    TerminalRemovable(usize),
    #[error("arc {0} has a lower bound and can be removed")]
    RemovableLowerBound(usize),
    #[error("vertex {0} touches an arc with a lower bound and can be removed")]
    RemovableLowerBoundEndpoint(usize),
    #[error("interdiction costs must be at least 1")]
    ZeroCost,
    #[error(transparent)]
    Circulation(#[from] CirculationError),
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error("recovered removal set does not break saturation")]
    WitnessNotVerified,
    #[error("all demands are zero and the instance has several terminals")]
    NoDemand,
    #[error(transparent)]
    Interdiction(#[from] StError),
}

/// Dual of the circulation instance together with its split lengths.
#[derive(Clone, Debug)]
pub struct SecurityDual {
    pub faces: FaceStructure,
    pub dual: InterdictionDual,
    pub chi: ChiLengths,
}

/// Tree darts passed when sweeping counterclockwise around `v` from corner `c1`
/// to corner `c2`: tree arcs leaving `v` count `+u`, entering ones `-l`.
pub fn alpha(ci: &CirculationInstance, v: usize, c1: usize, c2: usize) -> i64 {
    let rot = &ci.hat.vertices[v].rotation;
    let deg = rot.len();
    let mut total = 0;
    let mut p = c1;
    while p != c2 {
        p = (p + 1) % deg;
        let d = rot[p];
        if ci.is_tree[d.arc] {
            let a = &ci.hat.arcs[d.arc];
            total += match d.end {
                End::Tail => a.upper,
                End::Head => -a.lower,
            };
        }
    }
    total
}

pub fn build_chi_lengths(ci: &CirculationInstance, dual: &InterdictionDual) -> ChiLengths {
    build_chi_lengths_with_reference(ci, dual, &vec![0; ci.hat.num_vertices()])
}

pub fn build_chi_lengths_with_reference(
    ci: &CirculationInstance,
    dual: &InterdictionDual,
    reference: &[usize],
) -> ChiLengths {
    let hat = &ci.hat;
    let mut base = Vec::with_capacity(dual.arcs.len());
    let mut residual = Vec::with_capacity(dual.arcs.len());
    for a in &dual.arcs {
        let (b, r) = match a.kind {
            DualArcKind::Forward(_) | DualArcKind::Reverse(_) => (a.length, 0),
            DualArcKind::VertexOut { vertex, .. } | DualArcKind::VertexIn { vertex, .. } if hat.is_terminal(vertex) => {
                (Inf, 0)
            }
            DualArcKind::VertexIn { vertex, corner } => (Inf, alpha(ci, vertex, corner, reference[vertex])),
            DualArcKind::VertexOut { vertex, corner } => (Inf, -alpha(ci, vertex, corner, reference[vertex])),
            DualArcKind::Capacity { .. } => (a.length, 0),
        };
        base.push(b);
        residual.push(r);
    }
    ChiLengths {
        base,
        residual,
        reference: reference.to_vec(),
    }
}

/// Reduced length of a circuit under `chi` when at most `budget` is spent.
///
/// Arcs with infinite base must be removed; the rest of the budget removes the
/// most valuable finite bases.
pub fn chi_reduced_length(dual: &InterdictionDual, chi: &ChiLengths, circuit: &[usize], budget: usize) -> ExtInt {
    let mut spent = 0usize;
    let mut total = 0i64;
    let mut optional = Vec::new();
    for &a in circuit {
        total += chi.residual[a];
        match chi.base[a] {
            Inf => match dual.arcs[a].cost.as_budget(budget) {
                Some(c) => spent += c,
                None => return Inf,
            },
            Finite(b) => {
                total += b;
                if b > 0 {
                    optional.push((b, dual.arcs[a].cost));
                }
            }
        }
    }
    if spent > budget {
        return Inf;
    }
    let left = budget - spent;
    Finite(total - max_removable(&optional, left)[left])
}

pub fn prepare_security_dual(ci: &CirculationInstance, mode: Mode) -> Result<SecurityDual, SecurityError> {
    let faces = trace_faces(&ci.hat)?;
    let (dual, chi) = match mode {
        Mode::ArcsOnly => {
            let dual = build_dual(&ci.hat, &faces);
            let chi = ChiLengths {
                base: dual.arcs.iter().map(|a| a.length).collect(),
                residual: vec![0; dual.arcs.len()],
                reference: vec![0; ci.hat.num_vertices()],
            };
            (dual, chi)
        }
        Mode::WithVertices => {
            let dual = build_modified_dual(&ci.hat, &faces);
            let chi = build_chi_lengths(ci, &dual);
            (dual, chi)
        }
    };
    Ok(SecurityDual { faces, dual, chi })
}

pub fn check_security_preconditions(net: &EmbeddedNetwork, mode: Mode) -> Result<(), SecurityError> {
    let vertex_removable = |v: usize| mode == Mode::WithVertices && net.vertices[v].cost.is_finite();
    for (e, a) in net.arcs.iter().enumerate() {
        if a.cost.finite().is_some_and(|c| c < 1) {
            return Err(SecurityError::ZeroCost);
        }
        if a.lower > 0 {
            if a.cost.is_finite() {
                return Err(SecurityError::RemovableLowerBound(e));
            }
            for v in [a.tail, a.head] {
                if vertex_removable(v) {
                    return Err(SecurityError::RemovableLowerBoundEndpoint(v));
                }
            }
        }
    }
    if mode == Mode::WithVertices {
        for (v, vert) in net.vertices.iter().enumerate() {
            if vert.cost.finite().is_some_and(|c| c < 1) {
                return Err(SecurityError::ZeroCost);
            }
            if net.is_terminal(v) && vert.cost.is_finite() {
                return Err(SecurityError::TerminalRemovable(v));
            }
        }
    }
    Ok(())
}

/// In-level behavior of a dual arc: its length and whether the cheaper option is
/// to pay for it (only possible for free arcs).
fn within_level(dual: &InterdictionDual, chi: &ChiLengths, a: usize) -> Option<(i64, bool)> {
    let kept = chi.kept(a);
    let best = if dual.arcs[a].cost == Finite(0) && chi.removed(a) < kept {
        (chi.removed(a), true)
    } else {
        (kept, false)
    };
    best.0.finite().map(|l| (l, best.1))
}

/// Arcs that drop the budget level when removed, with their cost.
fn level_drops(dual: &InterdictionDual, budget: usize) -> Vec<(usize, usize)> {
    (0..dual.arcs.len())
        .filter_map(|a| match dual.arcs[a].cost.as_budget(budget) {
            Some(c) if c >= 1 => Some((a, c)),
            _ => None,
        })
        .collect()
}

struct AllPairs {
    n: usize,
    dist: Vec<ExtInt>,
    /// Last arc on a shortest path, `usize::MAX` on the diagonal or if unreachable.
    pred: Vec<usize>,
}

impl AllPairs {
    fn compute<E: Executor>(dual: &InterdictionDual, chi: &ChiLengths, exec: &E) -> Option<(AllPairs, Vec<bool>)> {
        let n = dual.num_nodes;
        let mut arcs = Vec::new();
        let mut removed = vec![false; dual.arcs.len()];
        for a in 0..dual.arcs.len() {
            if let Some((len, r)) = within_level(dual, chi, a) {
                removed[a] = r;
                arcs.push((dual.arcs[a].tail, dual.arcs[a].head, len, a));
            }
        }
        let rows = exec.map(n, |src| {
            let mut dist = vec![Inf; n];
            let mut pred = vec![usize::MAX; n];
            dist[src] = Finite(0);
            for round in 0..=n {
                let mut changed = false;
                for &(t, h, len, a) in &arcs {
                    if let Finite(d) = dist[t] {
                        if Finite(d + len) < dist[h] {
                            dist[h] = Finite(d + len);
                            pred[h] = a;
                            changed = true;
                        }
                    }
                }
                if !changed {
                    return Some((dist, pred));
                }
                if round == n {
                    break;
                }
            }
            None
        });
        let mut dist = Vec::with_capacity(n * n);
        let mut pred = Vec::with_capacity(n * n);
        for row in rows {
            let (d, p) = row?;
            dist.extend(d);
            pred.extend(p);
        }
        Some((AllPairs { n, dist, pred }, removed))
    }

    fn get(&self, from: usize, to: usize) -> ExtInt {
        self.dist[from * self.n + to]
    }

    fn path(&self, dual: &InterdictionDual, from: usize, to: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut x = to;
        while x != from {
            let a = self.pred[from * self.n + x];
            out.push(a);
            x = dual.arcs[a].tail;
        }
        out.reverse();
        out
    }
}

#[derive(Clone, Copy, Debug)]
enum Entry {
    Start,
    /// Removed arc taken from level `from`.
    Arc {
        arc: usize,
        from: usize,
    },
    /// Budget unit left unused, from level `from`.
    Drop,
}

struct LevelDp {
    /// `close[b]`: shortest closed walk back at the start with `b` budget left.
    close: Vec<ExtInt>,
    close_by: Vec<(usize, usize)>,
    dist_from: Vec<Vec<usize>>,
    entry: Vec<Vec<Entry>>,
}

struct Search<'a> {
    dual: &'a InterdictionDual,
    chi: &'a ChiLengths,
    apsp: AllPairs,
    within_removed: Vec<bool>,
    drops: Vec<(usize, usize)>,
    into: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new<E: Executor>(sd: &'a SecurityDual, budget: usize, exec: &E) -> Result<Self, SecurityError> {
        let (apsp, within_removed) =
            AllPairs::compute(&sd.dual, &sd.chi, exec).ok_or(SecurityError::PreconditionUnsatisfiable)?;
        let mut into = vec![Vec::new(); sd.dual.num_nodes];
        for (a, arc) in sd.dual.arcs.iter().enumerate() {
            into[arc.head].push(a);
        }
        Ok(Search {
            dual: &sd.dual,
            chi: &sd.chi,
            apsp,
            within_removed,
            drops: level_drops(&sd.dual, budget),
            into,
        })
    }

    fn run(&self, start: usize, budget: usize) -> LevelDp {
        let n = self.dual.num_nodes;
        let levels = budget + 1;
        let mut inn = vec![vec![Inf; n]; levels];
        let mut entry = vec![vec![Entry::Start; n]; levels];
        let mut dist = vec![vec![Inf; n]; levels];
        let mut dist_from = vec![vec![usize::MAX; n]; levels];
        inn[budget][start] = Finite(0);
        for b in (0..levels).rev() {
            for y in 0..n {
                let Finite(base) = inn[b][y] else { continue };
                for x in 0..n {
                    if let Finite(d) = self.apsp.get(y, x) {
                        if Finite(base + d) < dist[b][x] {
                            dist[b][x] = Finite(base + d);
                            dist_from[b][x] = y;
                        }
                    }
                }
            }
            for &(a, c) in &self.drops {
                if c > b {
                    continue;
                }
                let arc = &self.dual.arcs[a];
                let Finite(d) = dist[b][arc.tail] else { continue };
                let cand = Finite(d + self.chi.residual[a]);
                if cand < inn[b - c][arc.head] {
                    inn[b - c][arc.head] = cand;
                    entry[b - c][arc.head] = Entry::Arc { arc: a, from: b };
                }
            }
            if b > 0 {
                for x in 0..n {
                    if dist[b][x] < inn[b - 1][x] {
                        inn[b - 1][x] = dist[b][x];
                        entry[b - 1][x] = Entry::Drop;
                    }
                }
            }
        }
        let mut close = vec![Inf; levels];
        let mut close_by = vec![(usize::MAX, usize::MAX); levels];
        for b in 0..levels {
            for &a in &self.into[start] {
                let arc = &self.dual.arcs[a];
                if let Some((len, _)) = within_level(self.dual, self.chi, a) {
                    let cand = dist[b][arc.tail] + len;
                    if cand < close[b] {
                        close[b] = cand;
                        close_by[b] = (a, b);
                    }
                }
                if let Some(c) = self.dual.arcs[a].cost.as_budget(budget - b) {
                    if c >= 1 {
                        let cand = dist[b + c][arc.tail] + self.chi.residual[a];
                        if cand < close[b] {
                            close[b] = cand;
                            close_by[b] = (a, b + c);
                        }
                    }
                }
            }
        }
        LevelDp {
            close,
            close_by,
            dist_from,
            entry,
        }
    }

    /// Best closed walk through `start` spending at most `budget - b` for each `b`.
    fn best_by_spend(close: &[ExtInt]) -> Vec<ExtInt> {
        let budget = close.len() - 1;
        let mut out = Vec::with_capacity(close.len());
        let mut acc = Inf;
        for spend in 0..=budget {
            acc = acc.min(close[budget - spend]);
            out.push(acc);
        }
        out
    }

    fn walk(&self, start: usize, dp: &LevelDp, level: usize) -> Vec<WalkStep> {
        let mut rev: Vec<WalkStep> = Vec::new();
        let (last, mut b) = dp.close_by[level];
        let within = b == level;
        rev.push(WalkStep {
            arc: last,
            removed: if within { self.within_removed[last] } else { true },
        });
        let mut x = self.dual.arcs[last].tail;
        loop {
            let y = dp.dist_from[b][x];
            for &a in self.apsp.path(self.dual, y, x).iter().rev() {
                rev.push(WalkStep {
                    arc: a,
                    removed: self.within_removed[a],
                });
            }
            match dp.entry[b][y] {
                Entry::Start => {
                    debug_assert_eq!(y, start);
                    break;
                }
                Entry::Arc { arc, from } => {
                    rev.push(WalkStep { arc, removed: true });
                    x = self.dual.arcs[arc].tail;
                    b = from;
                }
                Entry::Drop => {
                    x = y;
                    b += 1;
                }
            }
        }
        rev.reverse();
        rev
    }
}

/// Result of the circuit search at one budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedCircuit {
    /// Minimum reduced length over all circuits; `Inf` when there is none.
    pub value: ExtInt,
    pub circuit: Vec<WalkStep>,
    /// Primal arcs removed on the circuit (ids in the original network).
    pub arcs: Vec<usize>,
    pub vertices: Vec<usize>,
    pub cost: i64,
}

/// Best closed walk at every spend `0..=budget`, with the start that attains it.
fn search_profile<E: Executor>(s: &Search, budget: usize, exec: &E) -> Vec<(ExtInt, usize)> {
    let per_start = exec.map(s.dual.num_nodes, |r| Search::best_by_spend(&s.run(r, budget).close));
    (0..=budget)
        .map(|spend| {
            let mut best = (Inf, usize::MAX);
            for (r, row) in per_start.iter().enumerate() {
                if row[spend] < best.0 {
                    best = (row[spend], r);
                }
            }
            best
        })
        .collect()
}

fn circuit_at(s: &Search, net: &EmbeddedNetwork, start: usize, budget: usize, value: ExtInt) -> ReducedCircuit {
    if value.is_inf() {
        return ReducedCircuit {
            value,
            circuit: Vec::new(),
            arcs: Vec::new(),
            vertices: Vec::new(),
            cost: 0,
        };
    }
    let dp = s.run(start, budget);
    let level = (0..=budget)
        .filter(|&b| dp.close[b] == value)
        .max()
        .expect("walk value is attained");
    let walk = s.walk(start, &dp, level);
    let mut best: Option<(ExtInt, Vec<WalkStep>)> = None;
    for c in decompose(s.dual, start, &walk) {
        let v: ExtInt = c.iter().map(|&st| s.chi.step(st)).sum();
        if best.as_ref().is_none_or(|b| v < b.0) {
            best = Some((v, c));
        }
    }
    let (_, circuit) = best.expect("nonempty walk");
    let mut arcs = Vec::new();
    let mut vertices = Vec::new();
    let mut cost = 0;
    for st in circuit.iter().filter(|st| st.removed) {
        let arc = &s.dual.arcs[st.arc];
        if let Finite(c) = arc.cost {
            cost += c;
        }
        match arc.kind {
            DualArcKind::Forward(e) if e < net.num_arcs() => arcs.push(e),
            DualArcKind::VertexIn { vertex, .. } => vertices.push(vertex),
            _ => {}
        }
    }
    arcs.sort_unstable();
    arcs.dedup();
    vertices.sort_unstable();
    vertices.dedup();
    let value = circuit.iter().map(|&st| s.chi.step(st)).sum();
    ReducedCircuit {
        value,
        circuit,
        arcs,
        vertices,
        cost,
    }
}

/// Circuit of minimum reduced length when at most `budget` may be spent.
///
/// The value is the minimum over closed walks, which has the same sign as the
/// minimum over circuits and equals it whenever it is negative. The returned
/// circuit is the cheapest circuit of the optimal walk.
pub fn find_min_reduced_circuit(
    ci: &CirculationInstance,
    budget: usize,
    mode: Mode,
) -> Result<(SecurityDual, ReducedCircuit), SecurityError> {
    check_security_preconditions(&ci.base, mode)?;
    if check_saturating_flow(ci)?.is_none() {
        return Err(SecurityError::PreconditionUnsatisfiable);
    }
    let sd = prepare_security_dual(ci, mode)?;
    let s = Search::new(&sd, budget, &Sequential)?;
    let (value, start) = search_profile(&s, budget, &Sequential)[budget];
    let rc = circuit_at(&s, &ci.base, start, budget, value);
    Ok((sd, rc))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecurityOutcome {
    /// Smallest budget at which saturation can be broken, if any up to the limit.
    pub security_budget: Option<usize>,
    /// Minimum reduced walk length for every budget `0..=B_max`.
    pub min_values: Vec<ExtInt>,
    pub arcs: Vec<usize>,
    pub vertices: Vec<usize>,
    pub cost: i64,
    pub witness: Vec<WitnessArc>,
}

pub fn solve_security(net: &EmbeddedNetwork, b_max: usize, mode: Mode) -> Result<SecurityOutcome, SecurityError> {
    solve_security_with(net, b_max, mode, &Sequential)
}

/// Without demands a single-pair network is broken once its maximum flow drops.
/// `min_values[b]` is `nu_b - nu_0`.
fn flow_drop_security<E: Executor>(
    net: &EmbeddedNetwork,
    b_max: usize,
    mode: Mode,
    exec: &E,
) -> Result<SecurityOutcome, SecurityError> {
    if net.single_pair().is_none() {
        return Err(SecurityError::NoDemand);
    }
    let opts = StOptions {
        budget: b_max,
        mode,
        vertex_capacities: false,
        clip_parity: false,
    };
    let full = solve_st_interdiction_with(net, &opts, exec)?;
    let min_values: Vec<ExtInt> = full
        .nu_profile
        .iter()
        .map(|&v| Finite(v - full.nu_profile[0]))
        .collect();
    let Some(sb) = min_values.iter().position(|&v| v < Finite(0)) else {
        return Ok(SecurityOutcome {
            security_budget: None,
            min_values,
            arcs: Vec::new(),
            vertices: Vec::new(),
            cost: 0,
            witness: Vec::new(),
        });
    };
    let at = solve_st_interdiction_with(net, &StOptions { budget: sb, ..opts }, exec)?;
    Ok(SecurityOutcome {
        security_budget: Some(sb),
        min_values,
        arcs: at.arcs,
        vertices: at.vertices,
        cost: at.cost,
        witness: at.witness,
    })
}

pub fn solve_security_with<E: Executor>(
    net: &EmbeddedNetwork,
    b_max: usize,
    mode: Mode,
    exec: &E,
) -> Result<SecurityOutcome, SecurityError> {
    check_security_preconditions(net, mode)?;
    if net.vertices.iter().all(|v| v.demand == 0) {
        return flow_drop_security(net, b_max, mode, exec);
    }
    let ci = build_circulation_instance(net)?;
    if check_saturating_flow(&ci)?.is_none() {
        return Err(SecurityError::PreconditionUnsatisfiable);
    }
    let sd = prepare_security_dual(&ci, mode)?;
    let s = Search::new(&sd, b_max, exec)?;
    let profile = search_profile(&s, b_max, exec);
    let min_values: Vec<ExtInt> = profile.iter().map(|p| p.0).collect();
    let Some(sb) = min_values.iter().position(|&v| v < Finite(0)) else {
        return Ok(SecurityOutcome {
            security_budget: None,
            min_values,
            arcs: Vec::new(),
            vertices: Vec::new(),
            cost: 0,
            witness: Vec::new(),
        });
    };
    let rc = circuit_at(&s, net, profile[sb].1, sb, profile[sb].0);
    let (mut arcs, mut vertices) = (rc.arcs, rc.vertices);
    let broken =
        |arcs: &[usize], vertices: &[usize]| !saturation_feasible(net, &Removal::from_sets(net, arcs, vertices), false);
    if !broken(&arcs, &vertices) {
        return Err(SecurityError::WitnessNotVerified);
    }
    let mut i = 0;
    while i < arcs.len() {
        let e = arcs.remove(i);
        if !broken(&arcs, &vertices) {
            arcs.insert(i, e);
            i += 1;
        }
    }
    let mut i = 0;
    while i < vertices.len() {
        let v = vertices.remove(i);
        if !broken(&arcs, &vertices) {
            vertices.insert(i, v);
            i += 1;
        }
    }
    let cost = arcs
        .iter()
        .map(|&e| net.arcs[e].cost)
        .chain(vertices.iter().map(|&v| net.vertices[v].cost))
        .sum::<ExtInt>()
        .unwrap_finite();
    let witness = rc
        .circuit
        .iter()
        .map(|st| WitnessArc {
            dual_arc: st.arc,
            kind: sd.dual.arcs[st.arc].kind,
            removed: st.removed,
        })
        .collect();
    Ok(SecurityOutcome {
        security_budget: Some(sb),
        min_values,
        arcs,
        vertices,
        cost,
        witness,
    })
}
