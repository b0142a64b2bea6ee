//! Face tracing on a rotation system.
//!
//! A dart leaving `v` has its face on the left. The walk continues at the head
//! with the dart that precedes the reversed dart in counterclockwise order there.
//! Corner `i` of a vertex is the angle between rotation entries `i` and `i + 1`;
//! it belongs to the face left of entry `i`.

use alloc::vec;
use alloc::vec::Vec;

use crate::network::{Dart, EmbeddedNetwork, End, NetworkError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceStructure {
    /// Boundary walk of every face as a sequence of darts.
    pub walks: Vec<Vec<Dart>>,
    /// Face to the left of each arc.
    pub left_face: Vec<usize>,
    /// Face to the right of each arc.
    pub right_face: Vec<usize>,
    /// Rotation index of every dart, `[tail, head]` per arc.
    pub positions: Vec<[usize; 2]>,
}

impl FaceStructure {
    pub fn num_faces(&self) -> usize {
        self.walks.len()
    }

    /// Face to the left of a dart (the face it bounds in its walk).
    pub fn dart_face(&self, d: Dart) -> usize {
        match d.end {
            End::Tail => self.left_face[d.arc],
            End::Head => self.right_face[d.arc],
        }
    }

    pub fn position(&self, d: Dart) -> usize {
        self.positions[d.arc][d.end as usize]
    }

    /// Face containing corner `corner` of vertex `v`.
    pub fn corner_face(&self, net: &EmbeddedNetwork, v: usize, corner: usize) -> usize {
        self.dart_face(net.vertices[v].rotation[corner])
    }
}

/// Dart that follows `d` on the boundary of the face left of `d`.
pub fn next_in_face(net: &EmbeddedNetwork, positions: &[[usize; 2]], d: Dart) -> Dart {
    let back = d.reversed();
    let w = net.dart_vertex(back);
    let rot = &net.vertices[w].rotation;
    let j = positions[back.arc][back.end as usize];
    rot[(j + rot.len() - 1) % rot.len()]
}

pub fn trace_faces(net: &EmbeddedNetwork) -> Result<FaceStructure, NetworkError> {
    let positions = net.dart_positions()?;
    let m = net.num_arcs();
    const UNSET: usize = usize::MAX;
    let mut face_of = vec![[UNSET; 2]; m];
    let mut walks = Vec::new();
    for arc in 0..m {
        for end in [End::Tail, End::Head] {
            if face_of[arc][end as usize] != UNSET {
                continue;
            }
            let id = walks.len();
            let start = Dart::new(arc, end);
            let mut walk = Vec::new();
            let mut d = start;
            loop {
                face_of[d.arc][d.end as usize] = id;
                walk.push(d);
                d = next_in_face(net, &positions, d);
                if d == start {
                    break;
                }
            }
            walks.push(walk);
        }
    }
    Ok(FaceStructure {
        walks,
        left_face: face_of.iter().map(|f| f[0]).collect(),
        right_face: face_of.iter().map(|f| f[1]).collect(),
        positions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::gen::{random_planar, GenConfig, Terminals};
    use crate::network::validate;
    use proptest::prelude::*;

    #[test]
    fn triangle_has_two_faces() {
        let net = fixtures::triangle();
        let f = trace_faces(&net).unwrap();
        assert_eq!(f.num_faces(), 2);
        for e in 0..3 {
            assert_ne!(f.left_face[e], f.right_face[e]);
        }
    }

    #[test]
    fn three_parallel_arcs_have_three_faces() {
        let f = trace_faces(&fixtures::three_parallel()).unwrap();
        assert_eq!(f.num_faces(), 3);
        // Consecutive arcs in the rotation at s share the face between them.
        assert_eq!(f.left_face[1], f.right_face[0]);
        assert_eq!(f.left_face[2], f.right_face[1]);
        assert_eq!(f.left_face[0], f.right_face[2]);
    }

    #[test]
    fn bridge_has_the_same_face_on_both_sides() {
        let f = trace_faces(&fixtures::chain(5, 5)).unwrap();
        assert_eq!(f.num_faces(), 1);
        assert_eq!(f.left_face[0], f.right_face[0]);
    }

    #[test]
    fn missing_endpoint_is_malformed() {
        let mut net = fixtures::triangle();
        net.vertices[2].rotation.clear();
        assert!(matches!(trace_faces(&net), Err(NetworkError::MalformedRotation { .. })));
    }

    #[test]
    fn random_instance_satisfies_euler() {
        let net = random_planar(8, 13, 7, &GenConfig::default(), Terminals::SinglePair);
        let f = trace_faces(&net).unwrap();
        // Independent count: V - E + F = 2 on a connected graph.
        assert!(net.is_connected());
        assert_eq!(8 - 13 + f.num_faces() as i64, 2);
    }

    fn face_sets(net: &EmbeddedNetwork) -> Vec<[usize; 2]> {
        let f = trace_faces(net).unwrap();
        (0..net.num_arcs()).map(|e| [f.left_face[e], f.right_face[e]]).collect()
    }

    proptest! {
        #[test]
        fn euler_holds_on_generated_instances(n in 2usize..10, extra in 0usize..8, seed in 0u64..500) {
            let m = n - 1 + extra;
            let net = random_planar(n, m, seed, &GenConfig::default(), Terminals::SinglePair);
            let report = validate(&net);
            prop_assert!(report.embedding_ok(), "{:?}", report);
        }

        #[test]
        fn tracing_is_invariant_under_rotation_shifts(seed in 0u64..300, shift in 1usize..5) {
            let net = random_planar(7, 11, seed, &GenConfig::default(), Terminals::SinglePair);
            let mut shifted = net.clone();
            for v in &mut shifted.vertices {
                let len = v.rotation.len();
                if len > 0 {
                    v.rotation.rotate_left(shift % len);
                }
            }
            // Same partition of darts into faces, up to face renumbering.
            let a = face_sets(&net);
            let b = face_sets(&shifted);
            let mut map = std::collections::BTreeMap::new();
            for (x, y) in a.iter().flatten().zip(b.iter().flatten()) {
                let prev = map.insert(*x, *y);
                prop_assert!(prev.is_none() || prev == Some(*y));
            }
        }

        #[test]
        fn non_bridges_separate_distinct_faces(seed in 0u64..300) {
            let net = random_planar(8, 12, seed, &GenConfig::default(), Terminals::SinglePair);
            let f = trace_faces(&net).unwrap();
            for e in 0..net.num_arcs() {
                let bridge = is_bridge(&net, e);
                prop_assert_eq!(f.left_face[e] == f.right_face[e], bridge);
            }
        }
    }

    fn is_bridge(net: &EmbeddedNetwork, e: usize) -> bool {
        let n = net.num_vertices();
        let mut seen = vec![false; n];
        let mut stack = vec![net.arcs[e].tail];
        seen[net.arcs[e].tail] = true;
        while let Some(v) = stack.pop() {
            for (i, a) in net.arcs.iter().enumerate() {
                if i == e {
                    continue;
                }
                for (x, y) in [(a.tail, a.head), (a.head, a.tail)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        !seen[net.arcs[e].head]
    }
}
