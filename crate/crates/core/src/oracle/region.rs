//! Vertices enclosed counterclockwise by a dual circuit.
//!
//! A circuit is a closed curve through faces and, in the modified dual, through
//! vertices. The curve crosses every primal arc whose dual it uses; an arc crossed
//! from right to left has its tail on the curve's left, which is the enclosed side.
//! At a vertex on the curve the incident arcs split into those on the left of the
//! curve and those on the right. Plain connectivity then fills in the rest.

use alloc::vec;
use alloc::vec::Vec;

use crate::dual::{DualArcKind, InterdictionDual};
use crate::faces::FaceStructure;
use crate::network::EmbeddedNetwork;
use crate::oracle::OracleError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    /// Enclosed vertices, including the vertices on the curve.
    pub inside: Vec<bool>,
    pub on_curve: Vec<bool>,
    /// For vertices on the curve: which rotation entries lie left of the curve.
    pub left_darts: Vec<Option<Vec<bool>>>,
}

impl Region {
    /// Encloses `s` and leaves `t` outside, with neither on the curve.
    pub fn separates(&self, s: usize, t: usize) -> bool {
        self.inside[s] && !self.inside[t] && !self.on_curve[s] && !self.on_curve[t]
    }
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

pub fn trace_region(
    net: &EmbeddedNetwork,
    faces: &FaceStructure,
    dual: &InterdictionDual,
    circuit: &[usize],
) -> Result<Region, OracleError> {
    let n = net.num_vertices();
    let k = circuit.len();
    if k == 0 {
        return Err(OracleError::NotACircuit);
    }
    for i in 0..k {
        if dual.arcs[circuit[i]].head != dual.arcs[circuit[(i + 1) % k]].tail {
            return Err(OracleError::NotACircuit);
        }
    }
    let mut on_curve = vec![false; n];
    let mut left_darts: Vec<Option<Vec<bool>>> = vec![None; n];
    let mut crossed = vec![0u8; net.num_arcs()];
    for i in 0..k {
        let a = dual.arcs[circuit[i]];
        match a.kind {
            DualArcKind::Forward(e) => crossed[e] |= 1,
            DualArcKind::Reverse(e) => crossed[e] |= 2,
            _ => {}
        }
        if a.kind.enters_vertex() {
            let v = a.kind.vertex().unwrap();
            let c_in = a.kind.corner().unwrap();
            let next = dual.arcs[circuit[(i + 1) % k]].kind;
            let c_out = next.corner().ok_or(OracleError::NotACircuit)?;
            let deg = net.vertices[v].rotation.len();
            let mut left = vec![false; deg];
            let mut p = c_out;
            while p != c_in {
                p = (p + 1) % deg;
                left[p] = true;
            }
            on_curve[v] = true;
            left_darts[v] = Some(left);
        }
    }
    if crossed.contains(&3) {
        // A lens around a single arc encloses no vertex.
        return Ok(Region {
            inside: on_curve.clone(),
            on_curve,
            left_darts,
        });
    }

    // Node `v` is a vertex (or the left part of a curve vertex); `n + v` the right part.
    let node = |v: usize, pos: usize| match &left_darts[v] {
        Some(left) if !left[pos] => n + v,
        _ => v,
    };
    let mut dsu = Dsu((0..2 * n).collect());
    let mut seeds: Vec<(usize, bool)> = Vec::new();
    for (e, a) in net.arcs.iter().enumerate() {
        let t = node(a.tail, faces.positions[e][0]);
        let h = node(a.head, faces.positions[e][1]);
        match crossed[e] {
            0 => dsu.union(t, h),
            1 => seeds.extend([(t, true), (h, false)]),
            _ => seeds.extend([(h, true), (t, false)]),
        }
    }
    for v in 0..n {
        if on_curve[v] {
            seeds.extend([(v, true), (n + v, false)]);
        }
    }
    let mut mark = vec![0u8; 2 * n];
    for (x, inside) in seeds {
        let r = dsu.find(x);
        mark[r] |= if inside { 1 } else { 2 };
        if mark[r] == 3 {
            return Err(OracleError::InconsistentRegion);
        }
    }
    let inside = (0..n).map(|v| on_curve[v] || mark[dsu.find(v)] == 1).collect();
    Ok(Region {
        inside,
        on_curve,
        left_darts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::{build_dual, build_modified_dual};
    use crate::faces::trace_faces;
    use crate::fixtures;

    #[test]
    fn forward_triple_encloses_the_source() {
        let net = fixtures::three_parallel();
        let faces = trace_faces(&net).unwrap();
        let dual = build_dual(&net, &faces);
        // Forward duals of arcs 2, 1, 0 chain outer -> lower -> upper -> outer.
        let r = trace_region(&net, &faces, &dual, &[4, 2, 0]).unwrap();
        assert_eq!(r.inside, vec![true, false]);
        assert!(r.separates(0, 1));
        assert_eq!(
            trace_region(&net, &faces, &dual, &[4, 0, 2]),
            Err(OracleError::NotACircuit)
        );
    }

    #[test]
    fn lens_encloses_nothing() {
        let net = fixtures::diamond();
        let faces = trace_faces(&net).unwrap();
        let dual = build_dual(&net, &faces);
        let r = trace_region(&net, &faces, &dual, &[0, 1]).unwrap();
        assert!(r.inside.iter().all(|&x| !x));
    }

    #[test]
    fn curve_through_the_chain_vertex() {
        let net = fixtures::chain(1, 1);
        let faces = trace_faces(&net).unwrap();
        let dual = build_modified_dual(&net, &faces);
        // One face; enter v at one corner and leave at the other.
        let into: Vec<usize> = (0..dual.arcs.len())
            .filter(|&a| matches!(dual.arcs[a].kind, DualArcKind::VertexIn { vertex: 1, .. }))
            .collect();
        let out: Vec<usize> = (0..dual.arcs.len())
            .filter(|&a| matches!(dual.arcs[a].kind, DualArcKind::VertexOut { vertex: 1, .. }))
            .collect();
        let r = trace_region(&net, &faces, &dual, &[into[0], out[1]]).unwrap();
        assert!(r.on_curve[1] && r.inside[1]);
        // The curve separates the two sides of v: exactly one of s, t is enclosed.
        assert!(r.inside[0] != r.inside[2]);
    }
}
