//! Exhaustive interdiction and security by enumerating removal sets.

use alloc::vec;
use alloc::vec::Vec;

use crate::ext::ExtInt;
use crate::network::{EmbeddedNetwork, Mode};
use crate::oracle::lift::{flow_value, saturation_feasible, Removal};
use crate::oracle::OracleError;

/// Largest number of removable components the enumeration accepts.
pub const MAX_COMPONENTS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Component {
    Arc(usize),
    Vertex(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExhaustiveOutcome {
    pub nu_profile: Vec<i64>,
    /// For every budget a minimum-cost optimal set, lexicographically smallest among those.
    pub optimal_sets: Vec<Vec<Component>>,
    pub optimal_costs: Vec<i64>,
}

fn components(net: &EmbeddedNetwork, budget: usize, mode: Mode) -> Result<Vec<(Component, usize)>, OracleError> {
    let mut out = Vec::new();
    for (e, a) in net.arcs.iter().enumerate() {
        if let Some(c) = a.cost.as_budget(budget) {
            out.push((Component::Arc(e), c));
        }
    }
    if mode == Mode::WithVertices {
        for (v, vert) in net.vertices.iter().enumerate() {
            if let Some(c) = vert.cost.as_budget(budget) {
                out.push((Component::Vertex(v), c));
            }
        }
    }
    if out.len() > MAX_COMPONENTS {
        return Err(OracleError::TooLarge {
            size: out.len(),
            limit: MAX_COMPONENTS,
        });
    }
    Ok(out)
}

/// Calls `visit` on every subset of `items` with total cost at most `budget`.
fn for_each_subset(items: &[(Component, usize)], budget: usize, mut visit: impl FnMut(&[Component], usize)) {
    fn rec(
        items: &[(Component, usize)],
        i: usize,
        left: usize,
        chosen: &mut Vec<Component>,
        spent: usize,
        visit: &mut dyn FnMut(&[Component], usize),
    ) {
        if i == items.len() {
            visit(chosen, spent);
            return;
        }
        rec(items, i + 1, left, chosen, spent, visit);
        let (comp, cost) = items[i];
        if cost <= left {
            chosen.push(comp);
            rec(items, i + 1, left - cost, chosen, spent + cost, visit);
            chosen.pop();
        }
    }
    let mut chosen = Vec::new();
    rec(items, 0, budget, &mut chosen, 0, &mut visit);
}

fn removal_of(net: &EmbeddedNetwork, set: &[Component]) -> Removal {
    let mut r = Removal::none(net);
    for c in set {
        match *c {
            Component::Arc(e) => r.arcs[e] = true,
            Component::Vertex(v) => r.vertices[v] = true,
        }
    }
    r
}

/// Exact interdiction profile for every budget `0..=budget`.
///
/// The objective is the s-t max flow for single-pair networks and the super
/// flow (sources capped at `-d`, sinks at `d`) otherwise.
pub fn interdict_exhaustive(
    net: &EmbeddedNetwork,
    budget: usize,
    mode: Mode,
    vertex_capacities: bool,
) -> Result<ExhaustiveOutcome, OracleError> {
    let items = components(net, budget, mode)?;
    let mut best: Vec<Option<(i64, Vec<Component>)>> = vec![None; budget + 1];
    for_each_subset(&items, budget, |set, spent| {
        let value = flow_value(net, &removal_of(net, set), vertex_capacities);
        let slot = &mut best[spent];
        let better = match slot {
            None => true,
            Some((v, s)) => value < *v || (value == *v && set < s.as_slice()),
        };
        if better {
            *slot = Some((value, set.to_vec()));
        }
    });
    let mut nu_profile = Vec::with_capacity(budget + 1);
    let mut optimal_sets = Vec::with_capacity(budget + 1);
    let mut optimal_costs = Vec::with_capacity(budget + 1);
    let mut current: Option<(i64, usize)> = None;
    for (b, slot) in best.iter().enumerate() {
        if let Some((v, _)) = slot {
            if current.is_none_or(|(cv, _)| *v < cv) {
                current = Some((*v, b));
            }
        }
        let (value, cost) = current.expect("the empty set costs nothing");
        nu_profile.push(value);
        optimal_costs.push(cost as i64);
        optimal_sets.push(best[cost].as_ref().map(|s| s.1.clone()).unwrap_or_default());
    }
    Ok(ExhaustiveOutcome {
        nu_profile,
        optimal_sets,
        optimal_costs,
    })
}

/// Smallest budget `<= b_max` whose best removal breaks the network.
///
/// With nonzero demands a network is broken once no saturating flow exists;
/// otherwise once the maximum flow drops. Vertex capacities are not modelled.
pub fn security_exhaustive(net: &EmbeddedNetwork, b_max: usize, mode: Mode) -> Result<Option<usize>, OracleError> {
    let items = components(net, b_max, mode)?;
    let demands = net.vertices.iter().any(|v| v.demand != 0);
    let base = Removal::none(net);
    let broken: alloc::boxed::Box<dyn Fn(&Removal) -> bool> = if demands {
        if !saturation_feasible(net, &base, false) {
            return Err(OracleError::NotSaturated);
        }
        alloc::boxed::Box::new(|r: &Removal| !saturation_feasible(net, r, false))
    } else {
        let full = flow_value(net, &base, false);
        alloc::boxed::Box::new(move |r: &Removal| flow_value(net, r, false) < full)
    };
    let mut best: Option<usize> = None;
    for_each_subset(&items, b_max, |set, spent| {
        if best.is_some_and(|b| b <= spent) {
            return;
        }
        if broken(&removal_of(net, set)) {
            best = Some(spent);
        }
    });
    Ok(best)
}

/// Total cost of a component set.
pub fn set_cost(net: &EmbeddedNetwork, set: &[Component]) -> ExtInt {
    set.iter()
        .map(|c| match *c {
            Component::Arc(e) => net.arcs[e].cost,
            Component::Vertex(v) => net.vertices[v].cost,
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::{Finite, Inf};
    use crate::fixtures;

    #[test]
    fn three_parallel_profile() {
        let out = interdict_exhaustive(&fixtures::three_parallel(), 2, Mode::ArcsOnly, false).unwrap();
        assert_eq!(out.nu_profile, vec![10, 7, 5]);
    }

    #[test]
    fn diamond_profile_and_sets() {
        let out = interdict_exhaustive(&fixtures::diamond(), 2, Mode::ArcsOnly, false).unwrap();
        assert_eq!(out.nu_profile, vec![3, 1, 0]);
        assert_eq!(out.optimal_sets[1], vec![Component::Arc(1)]);
        // Both {s->a, s->b} and {s->b, a->t} reach 0 at cost 2; the first is smaller.
        assert_eq!(out.optimal_sets[2], vec![Component::Arc(0), Component::Arc(1)]);
    }

    #[test]
    fn zero_budget_is_max_flow() {
        let out = interdict_exhaustive(&fixtures::diamond(), 0, Mode::ArcsOnly, false).unwrap();
        assert_eq!(out.nu_profile, vec![3]);
    }

    #[test]
    fn vertex_removal_cuts_a_chain() {
        let mut net = fixtures::chain(5, 5);
        net.vertices[1].cost = Finite(1);
        let out = interdict_exhaustive(&net, 1, Mode::WithVertices, false).unwrap();
        assert_eq!(out.nu_profile, vec![5, 0]);
        assert_eq!(out.optimal_sets[1], vec![Component::Vertex(1)]);
    }

    #[test]
    fn security_budgets() {
        let net = fixtures::two_parallel_unit(1, 1, Finite(1));
        assert_eq!(security_exhaustive(&net, 4, Mode::ArcsOnly), Ok(Some(1)));

        let net = fixtures::two_parallel_unit(1, 1, Inf);
        assert_eq!(security_exhaustive(&net, 4, Mode::ArcsOnly), Ok(None));

        let mut net = fixtures::chain(1, 1);
        net.vertices[1].cost = Finite(3);
        net.vertices[0].demand = -1;
        net.vertices[2].demand = 1;
        assert_eq!(security_exhaustive(&net, 4, Mode::WithVertices), Ok(Some(3)));
        assert_eq!(security_exhaustive(&net, 2, Mode::WithVertices), Ok(None));
    }

    #[test]
    fn too_many_components() {
        let net = crate::gen::grid(
            4,
            4,
            1,
            &crate::gen::GenConfig {
                arc_costs: vec![Finite(1)],
                ..Default::default()
            },
        );
        assert!(matches!(
            interdict_exhaustive(&net, 1, Mode::ArcsOnly, false),
            Err(OracleError::TooLarge { .. })
        ));
    }
}
