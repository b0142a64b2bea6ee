//! Small hand-embedded instances shared by unit tests.

use crate::ext::{ExtInt, Finite, Inf};
use alloc::vec;

use crate::network::{Dart, EmbeddedNetwork};

/// Triangle 0 -> 1 -> 2 -> 0, counterclockwise.
pub fn triangle() -> EmbeddedNetwork {
    let mut net = EmbeddedNetwork::new();
    for _ in 0..3 {
        net.add_vertex(Inf, 0);
    }
    net.add_arc(0, 1, 1, Finite(1));
    net.add_arc(1, 2, 1, Finite(1));
    net.add_arc(2, 0, 1, Finite(1));
    net.vertices[0].rotation = vec![Dart::tail(0), Dart::head(2)];
    net.vertices[1].rotation = vec![Dart::tail(1), Dart::head(0)];
    net.vertices[2].rotation = vec![Dart::tail(2), Dart::head(1)];
    net.sources = vec![0];
    net.sinks = vec![1];
    net
}

/// Three parallel s -> t arcs, top to bottom: (u=5, c=2), (u=3, c=1), (u=2, c=1).
pub fn three_parallel() -> EmbeddedNetwork {
    let mut net = EmbeddedNetwork::new();
    net.add_vertex(Inf, 0);
    net.add_vertex(Inf, 0);
    net.add_arc(0, 1, 5, Finite(2));
    net.add_arc(0, 1, 3, Finite(1));
    net.add_arc(0, 1, 2, Finite(1));
    net.vertices[0].rotation = vec![Dart::tail(2), Dart::tail(1), Dart::tail(0)];
    net.vertices[1].rotation = vec![Dart::head(0), Dart::head(1), Dart::head(2)];
    net.sources = vec![0];
    net.sinks = vec![1];
    net
}

/// s=0, a=1 (upper), b=2 (lower), t=3:
/// s->a (2, 1), s->b (2, 1), a->t (1, 1), b->t (3, 2) as (u, c).
pub fn diamond() -> EmbeddedNetwork {
    let mut net = EmbeddedNetwork::new();
    for _ in 0..4 {
        net.add_vertex(Inf, 0);
    }
    net.add_arc(0, 1, 2, Finite(1));
    net.add_arc(0, 2, 2, Finite(1));
    net.add_arc(1, 3, 1, Finite(1));
    net.add_arc(2, 3, 3, Finite(2));
    net.vertices[0].rotation = vec![Dart::tail(0), Dart::tail(1)];
    net.vertices[1].rotation = vec![Dart::head(0), Dart::tail(2)];
    net.vertices[2].rotation = vec![Dart::tail(3), Dart::head(1)];
    net.vertices[3].rotation = vec![Dart::head(2), Dart::head(3)];
    net.sources = vec![0];
    net.sinks = vec![3];
    net
}

/// s=0 -> v=1 -> t=2 with unremovable arcs.
pub fn chain(u1: i64, u2: i64) -> EmbeddedNetwork {
    let mut net = EmbeddedNetwork::new();
    for _ in 0..3 {
        net.add_vertex(Inf, 0);
    }
    net.add_arc(0, 1, u1, Inf);
    net.add_arc(1, 2, u2, Inf);
    net.sources = vec![0];
    net.sinks = vec![2];
    net
}

pub fn single_arc(u: i64) -> EmbeddedNetwork {
    let mut net = EmbeddedNetwork::new();
    net.add_vertex(Inf, 0);
    net.add_vertex(Inf, 0);
    net.add_arc(0, 1, u, Finite(1));
    net.sources = vec![0];
    net.sinks = vec![1];
    net
}

/// Source s1 (d=-2) and sink t1 (d=+2) joined by two parallel arcs.
pub fn two_parallel_unit(ua: i64, ub: i64, cost: ExtInt) -> EmbeddedNetwork {
    let mut net = EmbeddedNetwork::new();
    net.add_vertex(Inf, -2);
    net.add_vertex(Inf, 2);
    net.add_arc(0, 1, ua, cost);
    net.add_arc(0, 1, ub, cost);
    net.vertices[0].rotation = vec![Dart::tail(1), Dart::tail(0)];
    net.vertices[1].rotation = vec![Dart::head(0), Dart::head(1)];
    net.sources = vec![0];
    net.sinks = vec![1];
    net
}
