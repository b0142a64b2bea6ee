//! Closed dual walks and their decomposition into circuits.

use alloc::vec;
use alloc::vec::Vec;

use crate::dual::InterdictionDual;
use crate::ext::{ExtInt, Finite};

/// One traversed dual arc; `removed` marks arcs paid for with budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WalkStep {
    pub arc: usize,
    pub removed: bool,
}

/// Splits a closed walk starting at `start` into circuits with distinct nodes.
///
/// Arcs are pushed on a stack; whenever the walk returns to a node already on the
/// stack, the arcs since that node form a circuit and are popped.
pub fn decompose(dual: &InterdictionDual, start: usize, steps: &[WalkStep]) -> Vec<Vec<WalkStep>> {
    let mut where_on_stack = vec![usize::MAX; dual.num_nodes];
    let mut nodes = vec![start];
    let mut arcs: Vec<WalkStep> = Vec::new();
    where_on_stack[start] = 0;
    let mut circuits = Vec::new();
    for &step in steps {
        let head = dual.arcs[step.arc].head;
        arcs.push(step);
        let i = where_on_stack[head];
        if i != usize::MAX {
            circuits.push(arcs.split_off(i));
            for &v in &nodes[i + 1..] {
                where_on_stack[v] = usize::MAX;
            }
            nodes.truncate(i + 1);
        } else {
            where_on_stack[head] = nodes.len();
            nodes.push(head);
        }
    }
    debug_assert!(arcs.is_empty(), "walk does not close at its start");
    circuits
}

/// Length of the arcs that were not removed.
pub fn kept_length(dual: &InterdictionDual, steps: &[WalkStep]) -> ExtInt {
    steps
        .iter()
        .filter(|s| !s.removed)
        .map(|s| dual.arcs[s.arc].length)
        .sum()
}

/// Budget spent on removed arcs.
pub fn removal_cost(dual: &InterdictionDual, steps: &[WalkStep]) -> ExtInt {
    steps
        .iter()
        .filter(|s| s.removed)
        .map(|s| dual.arcs[s.arc].cost)
        .fold(Finite(0), |a, b| a + b)
}
