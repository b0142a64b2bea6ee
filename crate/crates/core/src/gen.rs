//! Seeded instance generators with baked-in rotation systems.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ext::{ExtInt, Finite, Inf};
use crate::faces::trace_faces;
use crate::network::{Arc, Dart, EmbeddedNetwork, End};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenConfig {
    /// Upper capacities are drawn from `0..=max_upper`.
    pub max_upper: i64,
    pub min_upper: i64,
    /// Lower bounds are drawn from `0..=min(max_lower, upper)`.
    pub max_lower: i64,
    pub arc_costs: Vec<ExtInt>,
    /// Costs for non-terminal vertices.
    pub vertex_costs: Vec<ExtInt>,
    /// Capacities for non-terminal vertices.
    pub vertex_capacities: Vec<Option<ExtInt>>,
    /// Chance in percent that a random arc points from the older to the newer vertex.
    pub forward_percent: u32,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            max_upper: 6,
            min_upper: 0,
            max_lower: 0,
            arc_costs: vec![Finite(1), Finite(2), Finite(3), Inf],
            vertex_costs: vec![Inf],
            vertex_capacities: vec![None],
            forward_percent: 75,
        }
    }
}

impl GenConfig {
    pub fn with_vertices() -> Self {
        GenConfig {
            vertex_costs: vec![Finite(1), Finite(2), Inf],
            vertex_capacities: vec![
                Some(Finite(1)),
                Some(Finite(2)),
                Some(Finite(3)),
                Some(Finite(4)),
                Some(Inf),
                None,
            ],
            ..GenConfig::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Terminals {
    /// Source 0 and sink `n - 1`, zero demands.
    SinglePair,
    /// Random disjoint sources and sinks with balanced demands.
    Balanced { max_terminals: usize, max_demand: i64 },
}

fn draw_arc(net: &mut EmbeddedNetwork, rng: &mut ChaCha8Rng, cfg: &GenConfig, tail: usize, head: usize) {
    let upper = rng.random_range(cfg.min_upper..=cfg.max_upper.max(cfg.min_upper));
    let lower = rng.random_range(0..=cfg.max_lower.min(upper));
    let cost = *cfg.arc_costs.choose(rng).unwrap_or(&Inf);
    net.arcs.push(Arc {
        tail,
        head,
        upper,
        lower,
        cost,
    });
}

fn decorate_vertices(net: &mut EmbeddedNetwork, rng: &mut ChaCha8Rng, cfg: &GenConfig) {
    for v in 0..net.num_vertices() {
        if net.is_terminal(v) {
            net.vertices[v].cost = Inf;
            net.vertices[v].capacity = None;
        } else {
            net.vertices[v].cost = *cfg.vertex_costs.choose(rng).unwrap_or(&Inf);
            net.vertices[v].capacity = *cfg.vertex_capacities.choose(rng).unwrap_or(&None);
        }
    }
}

fn assign_terminals(net: &mut EmbeddedNetwork, rng: &mut ChaCha8Rng, terminals: Terminals) {
    let n = net.num_vertices();
    match terminals {
        Terminals::SinglePair => {
            net.sources = vec![0];
            net.sinks = vec![n - 1];
        }
        Terminals::Balanced {
            max_terminals,
            max_demand,
        } => {
            let mut ids: Vec<usize> = (0..n).collect();
            ids.shuffle(rng);
            let cap = max_terminals.max(1).min(n / 2).max(1);
            let ns = rng.random_range(1..=cap);
            let nt = rng.random_range(1..=cap);
            let sources: Vec<usize> = ids[..ns].to_vec();
            let sinks: Vec<usize> = ids[ns..ns + nt.min(n - ns)].to_vec();
            let mut total = 0;
            for &s in &sources {
                let d = rng.random_range(1..=max_demand.max(1));
                net.vertices[s].demand = -d;
                total += d;
            }
            let sinks: Vec<usize> = sinks.into_iter().take(total as usize).collect();
            let mut shares = vec![1i64; sinks.len()];
            for _ in 0..total - sinks.len() as i64 {
                let k = rng.random_range(0..sinks.len());
                shares[k] += 1;
            }
            for (&t, d) in sinks.iter().zip(shares) {
                net.vertices[t].demand = d;
            }
            let mut sources = sources;
            let mut sinks = sinks;
            sources.sort_unstable();
            sinks.sort_unstable();
            net.sources = sources;
            net.sinks = sinks;
        }
    }
}

/// Random connected embedded multigraph with `n` vertices and `m >= n - 1` arcs.
///
/// Alternates leaf insertions into a random corner and chords across a random
/// face, both of which keep the rotation system planar. No loops are produced.
pub fn random_planar(n: usize, m: usize, seed: u64, cfg: &GenConfig, terminals: Terminals) -> EmbeddedNetwork {
    assert!(n >= 2, "need at least two vertices");
    let m = m.max(n - 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut net = EmbeddedNetwork::new();
    net.add_vertex(Inf, 0);

    let mut ops = vec![true; n - 1];
    ops.extend(core::iter::repeat_n(false, m - (n - 1)));
    ops[1..].shuffle(&mut rng);

    for leaf in ops {
        let arc = net.arcs.len();
        if leaf {
            let v = rng.random_range(0..net.num_vertices());
            let w = net.add_vertex(Inf, 0);
            let (tail, head) = if rng.random_ratio(cfg.forward_percent.min(100), 100) {
                (v, w)
            } else {
                (w, v)
            };
            draw_arc(&mut net, &mut rng, cfg, tail, head);
            let at_v = Dart::new(arc, if tail == v { End::Tail } else { End::Head });
            let len = net.vertices[v].rotation.len();
            let pos = rng.random_range(0..=len);
            net.vertices[v].rotation.insert(pos, at_v);
            net.vertices[w].rotation.push(at_v.reversed());
        } else {
            let faces = trace_faces(&net).expect("generator keeps rotations well formed");
            let f = rng.random_range(0..faces.num_faces());
            let walk = &faces.walks[f];
            // Corners of the face: the corner after each dart of the walk at its tail.
            let corners: Vec<(usize, usize)> = walk.iter().map(|&d| (net.dart_vertex(d), faces.position(d))).collect();
            let mut pairs = Vec::new();
            for (i, a) in corners.iter().enumerate() {
                for b in &corners[i + 1..] {
                    if a.0 != b.0 {
                        pairs.push((*a, *b));
                    }
                }
            }
            let &((x, cx), (y, cy)) = pairs.choose(&mut rng).expect("faces of a tree edge have two vertices");
            let (lo, hi) = (x.min(y), x.max(y));
            let (tail, head) = if rng.random_ratio(cfg.forward_percent.min(100), 100) {
                (lo, hi)
            } else {
                (hi, lo)
            };
            draw_arc(&mut net, &mut rng, cfg, tail, head);
            let end_x = if tail == x { End::Tail } else { End::Head };
            net.vertices[x].rotation.insert(cx + 1, Dart::new(arc, end_x));
            net.vertices[y]
                .rotation
                .insert(cy + 1, Dart::new(arc, end_x.opposite()));
        }
    }
    assign_terminals(&mut net, &mut rng, terminals);
    decorate_vertices(&mut net, &mut rng, cfg);
    net
}

/// `rows x cols` grid with arcs pointing right and down; s is the top-left
/// vertex and t the bottom-right one.
pub fn grid(rows: usize, cols: usize, seed: u64, cfg: &GenConfig) -> EmbeddedNetwork {
    assert!(rows * cols >= 2, "grid needs at least two vertices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut net = EmbeddedNetwork::new();
    let id = |r: usize, c: usize| r * cols + c;
    for _ in 0..rows * cols {
        net.add_vertex(Inf, 0);
    }
    let mut right = vec![usize::MAX; rows * cols];
    let mut down = vec![usize::MAX; rows * cols];
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                right[id(r, c)] = net.arcs.len();
                draw_arc(&mut net, &mut rng, cfg, id(r, c), id(r, c + 1));
            }
            if r + 1 < rows {
                down[id(r, c)] = net.arcs.len();
                draw_arc(&mut net, &mut rng, cfg, id(r, c), id(r + 1, c));
            }
        }
    }
    for r in 0..rows {
        for c in 0..cols {
            let mut rot = Vec::new();
            if c + 1 < cols {
                rot.push(Dart::tail(right[id(r, c)]));
            }
            if r > 0 {
                rot.push(Dart::head(down[id(r - 1, c)]));
            }
            if c > 0 {
                rot.push(Dart::head(right[id(r, c - 1)]));
            }
            if r + 1 < rows {
                rot.push(Dart::tail(down[id(r, c)]));
            }
            net.vertices[id(r, c)].rotation = rot;
        }
    }
    net.sources = vec![0];
    net.sinks = vec![rows * cols - 1];
    decorate_vertices(&mut net, &mut rng, cfg);
    net
}

/// Wheel with hub 0 and rim vertices `1..=k` in counterclockwise order. Spokes
/// point outward and rim arcs run counterclockwise; t sits opposite rim vertex 1.
pub fn wheel(k: usize, seed: u64, cfg: &GenConfig) -> EmbeddedNetwork {
    assert!(k >= 3, "wheel needs at least three rim vertices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut net = EmbeddedNetwork::new();
    for _ in 0..=k {
        net.add_vertex(Inf, 0);
    }
    let spoke = |i: usize| 2 * (i - 1);
    let rim = |i: usize| 2 * (i - 1) + 1;
    for i in 1..=k {
        draw_arc(&mut net, &mut rng, cfg, 0, i);
        draw_arc(&mut net, &mut rng, cfg, i, i % k + 1);
    }
    net.vertices[0].rotation = (1..=k).map(|i| Dart::tail(spoke(i))).collect();
    for i in 1..=k {
        let prev = if i == 1 { k } else { i - 1 };
        net.vertices[i].rotation = vec![Dart::tail(rim(i)), Dart::head(spoke(i)), Dart::head(rim(prev))];
    }
    net.sources = vec![0];
    net.sinks = vec![k / 2 + 1];
    decorate_vertices(&mut net, &mut rng, cfg);
    net
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::validate;

    #[test]
    fn grid_three_by_three_is_valid() {
        let net = grid(3, 3, 1, &GenConfig::default());
        assert_eq!(net.num_vertices(), 9);
        assert_eq!(net.num_arcs(), 12);
        let r = validate(&net);
        assert!(r.is_valid(), "{r:?}");
        // 4 inner faces plus the outer one.
        assert_eq!(trace_faces(&net).unwrap().num_faces(), 5);
    }

    #[test]
    fn wheel_is_valid() {
        let net = wheel(5, 3, &GenConfig::default());
        let r = validate(&net);
        assert!(r.is_valid(), "{r:?}");
        assert_eq!(trace_faces(&net).unwrap().num_faces(), 6);
    }

    #[test]
    fn same_seed_same_instance() {
        let cfg = GenConfig::with_vertices();
        let a = random_planar(8, 13, 42, &cfg, Terminals::SinglePair);
        let b = random_planar(8, 13, 42, &cfg, Terminals::SinglePair);
        assert_eq!(a, b);
        assert_ne!(a, random_planar(8, 13, 43, &cfg, Terminals::SinglePair));
    }

    #[test]
    fn random_instances_validate() {
        for seed in 0..50 {
            let t = Terminals::Balanced {
                max_terminals: 3,
                max_demand: 3,
            };
            let net = random_planar(7, 11, seed, &GenConfig::default(), t);
            let r = validate(&net);
            assert!(r.is_valid(), "seed {seed}: {r:?}");
            assert!(net.arcs.iter().all(|a| a.tail != a.head));
        }
    }
}
