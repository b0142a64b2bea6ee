//! Edmonds-Karp max flow on a plain directed network.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, Debug, Default)]
pub struct FlowNetwork {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
    initial: Vec<i64>,
}

impl FlowNetwork {
    pub fn new(n: usize) -> Self {
        FlowNetwork {
            adj: vec![Vec::new(); n],
            ..Default::default()
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.adj.len()
    }

    pub fn add_node(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    /// Adds `from -> to` with capacity `cap` and returns its id.
    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64) -> usize {
        let id = self.to.len();
        self.to.push(to);
        self.cap.push(cap);
        self.initial.push(cap);
        self.adj[from].push(id);
        self.to.push(from);
        self.cap.push(0);
        self.initial.push(0);
        self.adj[to].push(id + 1);
        id / 2
    }

    /// Flow currently routed over arc `id`.
    pub fn flow(&self, id: usize) -> i64 {
        self.initial[2 * id] - self.cap[2 * id]
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        if s == t {
            return 0;
        }
        let n = self.adj.len();
        let mut total = 0;
        loop {
            let mut via = vec![usize::MAX; n];
            let mut seen = vec![false; n];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                if v == t {
                    break;
                }
                for &r in &self.adj[v] {
                    let w = self.to[r];
                    if !seen[w] && self.cap[r] > 0 {
                        seen[w] = true;
                        via[w] = r;
                        queue.push_back(w);
                    }
                }
            }
            if !seen[t] {
                return total;
            }
            let mut push = i64::MAX;
            let mut v = t;
            while v != s {
                let r = via[v];
                push = push.min(self.cap[r]);
                v = self.to[r ^ 1];
            }
            let mut v = t;
            while v != s {
                let r = via[v];
                self.cap[r] -= push;
                self.cap[r ^ 1] += push;
                v = self.to[r ^ 1];
            }
            total += push;
        }
    }

    /// Nodes reachable from `s` in the residual network.
    pub fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &r in &self.adj[v] {
                let w = self.to[r];
                if !seen[w] && self.cap[r] > 0 {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }
}
