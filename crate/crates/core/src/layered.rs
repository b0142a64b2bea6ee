//! The budget x parity expansion of a dual.
//!
//! Node `(b, p, x)` stands for dual node `x` with `b` budget left and accumulated
//! parity `p`. Arcs never increase `b`, so shortest paths are computed one budget
//! level at a time, highest first, with Dijkstra inside each level.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::dual::InterdictionDual;
use crate::ext::{ExtInt, Finite, Inf};
use crate::walk::WalkStep;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Eq,
    Plus,
    Minus,
}

impl Sign {
    fn of(label: i8) -> Sign {
        match label {
            0 => Sign::Eq,
            l if l > 0 => Sign::Plus,
            _ => Sign::Minus,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArcClass {
    /// Gives up one unit of budget at zero length.
    E0,
    /// Traverses a dual arc and pays its length.
    E1(Sign),
    /// Removes a dual arc: pays its cost in budget, zero length.
    E2(Sign),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LayeredArc {
    pub class: ArcClass,
    pub target: usize,
    pub length: i64,
    /// Dual arc behind an `E1` or `E2` arc.
    pub eta: Option<usize>,
}

#[derive(Clone, Copy, Debug)]
pub struct LayeredBudgetGraph<'a> {
    pub dual: &'a InterdictionDual,
    pub labels: &'a [i8],
    pub budget: usize,
    /// Parity coordinates range over `-width..=width`.
    pub width: usize,
}

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pred {
    node: usize,
    arc: usize,
    removed: bool,
}

/// Shortest-path tree from one start node.
#[derive(Clone, Debug)]
pub struct ShortestPaths {
    pub start: usize,
    pub dist: Vec<ExtInt>,
    pred: Vec<Pred>,
}

/// Best closed walks through one dual node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedWalk {
    pub start: usize,
    /// Entry `k`: shortest parity-one closed walk spending at most `k` budget.
    pub profile: Vec<ExtInt>,
    /// The walk behind `profile[budget]`, as dual arcs.
    pub walk: Vec<WalkStep>,
}

impl<'a> LayeredBudgetGraph<'a> {
    pub fn new(dual: &'a InterdictionDual, labels: &'a [i8], budget: usize, width: usize) -> Self {
        LayeredBudgetGraph {
            dual,
            labels,
            budget,
            width,
        }
    }

    fn parities(&self) -> usize {
        2 * self.width + 1
    }

    pub fn num_nodes(&self) -> usize {
        (self.budget + 1) * self.parities() * self.dual.num_nodes
    }

    pub fn node(&self, b: usize, p: i64, x: usize) -> usize {
        debug_assert!(p.unsigned_abs() as usize <= self.width);
        let pi = (p + self.width as i64) as usize;
        (b * self.parities() + pi) * self.dual.num_nodes + x
    }

    pub fn decode(&self, node: usize) -> (usize, i64, usize) {
        let x = node % self.dual.num_nodes;
        let rest = node / self.dual.num_nodes;
        let pi = rest % self.parities();
        (rest / self.parities(), pi as i64 - self.width as i64, x)
    }

    pub fn for_each_arc(&self, node: usize, mut f: impl FnMut(LayeredArc)) {
        let (b, p, x) = self.decode(node);
        if b > 0 {
            f(LayeredArc {
                class: ArcClass::E0,
                target: self.node(b - 1, p, x),
                length: 0,
                eta: None,
            });
        }
        let w = self.width as i64;
        for &a in &self.dual.out[x] {
            let arc = &self.dual.arcs[a];
            let label = self.labels[a];
            let q = p + label as i64;
            if q.abs() > w {
                continue;
            }
            let sign = Sign::of(label);
            if let Finite(len) = arc.length {
                f(LayeredArc {
                    class: ArcClass::E1(sign),
                    target: self.node(b, q, arc.head),
                    length: len,
                    eta: Some(a),
                });
            }
            if let Some(c) = arc.cost.as_budget(b) {
                f(LayeredArc {
                    class: ArcClass::E2(sign),
                    target: self.node(b - c, q, arc.head),
                    length: 0,
                    eta: Some(a),
                });
            }
        }
    }

    /// Every arc of the graph; for inspection on small instances.
    pub fn arcs(&self) -> Vec<(usize, LayeredArc)> {
        let mut out = Vec::new();
        for v in 0..self.num_nodes() {
            self.for_each_arc(v, |a| out.push((v, a)));
        }
        out
    }

    /// Dijkstra from `start`, processing budget levels from high to low.
    ///
    /// Ties keep the first predecessor found; settled nodes pop in order of
    /// (level descending, distance, node id), which makes the tree deterministic.
    pub fn shortest_paths(&self, start: usize) -> ShortestPaths {
        let n = self.num_nodes();
        let mut dist = vec![Inf; n];
        let mut pred = vec![
            Pred {
                node: NONE,
                arc: NONE,
                removed: false
            };
            n
        ];
        let mut done = vec![false; n];
        let mut heap = BinaryHeap::new();
        dist[start] = Finite(0);
        let level = |v: usize| v / (self.parities() * self.dual.num_nodes);
        heap.push((level(start), Reverse(0i64), Reverse(start)));
        while let Some((_, Reverse(d), Reverse(v))) = heap.pop() {
            if done[v] {
                continue;
            }
            done[v] = true;
            self.for_each_arc(v, |a| {
                let nd = Finite(d + a.length);
                if nd < dist[a.target] {
                    dist[a.target] = nd;
                    pred[a.target] = Pred {
                        node: v,
                        arc: a.eta.unwrap_or(NONE),
                        removed: matches!(a.class, ArcClass::E2(_)),
                    };
                    heap.push((level(a.target), Reverse(d + a.length), Reverse(a.target)));
                }
            });
        }
        ShortestPaths { start, dist, pred }
    }

    /// Dual arcs along the tree path to `target`, with `E0` arcs dropped.
    pub fn path_to(&self, sp: &ShortestPaths, target: usize) -> Option<Vec<WalkStep>> {
        if sp.dist[target].is_inf() {
            return None;
        }
        let mut steps = Vec::new();
        let mut v = target;
        while v != sp.start {
            let p = sp.pred[v];
            if p.arc != NONE {
                steps.push(WalkStep {
                    arc: p.arc,
                    removed: p.removed,
                });
            }
            v = p.node;
        }
        steps.reverse();
        Some(steps)
    }

    /// Shortest closed walks through dual node `x` with parity one, for every budget.
    pub fn solve_closed_walk(&self, x: usize) -> ClosedWalk {
        let start = self.node(self.budget, 0, x);
        let sp = self.shortest_paths(start);
        let profile = (0..=self.budget)
            .map(|k| sp.dist[self.node(self.budget - k, 1, x)])
            .collect();
        let walk = self.path_to(&sp, self.node(0, 1, x)).unwrap_or_default();
        ClosedWalk {
            start: x,
            profile,
            walk,
        }
    }
}
