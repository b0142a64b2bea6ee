use planarint_core::circulation::{build_circulation_instance, check_saturating_flow, CirculationInstance};
use planarint_core::dual::{build_modified_dual, InterdictionDual};
use planarint_core::ext::{ExtInt, Finite, Inf};
use planarint_core::faces::{trace_faces, FaceStructure};
use planarint_core::gen::{random_planar, GenConfig, Terminals};
use planarint_core::oracle::{enumerate_circuits, gamma_reduced, security_exhaustive, trace_region};
use planarint_core::security::{build_chi_lengths, chi_reduced_length, ChiLengths};
use planarint_core::{EmbeddedNetwork, Mode};

struct Instance {
    net: EmbeddedNetwork,
    ci: CirculationInstance,
    faces: FaceStructure,
    dual: InterdictionDual,
    chi: ChiLengths,
    circuits: Vec<Vec<usize>>,
}

fn instances(count: u64) -> Vec<Instance> {
    let cfg = GenConfig {
        vertex_capacities: vec![None],
        ..GenConfig::with_vertices()
    };
    let mut out = Vec::new();
    for seed in 0..count {
        let terminals = Terminals::Balanced {
            max_terminals: 3,
            max_demand: 3,
        };
        let mut net = random_planar(5, 7, seed, &cfg, terminals);
        for v in 0..net.num_vertices() {
            if net.is_terminal(v) {
                net.vertices[v].cost = Inf;
            }
        }
        let ci = build_circulation_instance(&net).unwrap();
        if check_saturating_flow(&ci).unwrap().is_none() {
            continue;
        }
        let faces = trace_faces(&ci.hat).unwrap();
        let dual = build_modified_dual(&ci.hat, &faces);
        let chi = build_chi_lengths(&ci, &dual);
        let pairs: Vec<(usize, usize)> = dual.arcs.iter().map(|a| (a.tail, a.head)).collect();
        let circuits = enumerate_circuits(dual.num_nodes, &pairs, 200_000).unwrap();
        out.push(Instance {
            net,
            ci,
            faces,
            dual,
            chi,
            circuits,
        });
    }
    out
}

fn has_negative(inst: &Instance, len: impl Fn(&[usize]) -> ExtInt) -> bool {
    inst.circuits.iter().any(|c| len(c) < Finite(0))
}

#[test]
fn negative_chi_circuits_match_exhaustive_security() {
    for inst in instances(120) {
        for b in 0..=3 {
            let circuit = has_negative(&inst, |c| chi_reduced_length(&inst.dual, &inst.chi, c, b));
            let broken = security_exhaustive(&inst.net, b, Mode::WithVertices).unwrap().is_some();
            assert_eq!(circuit, broken, "budget {b} on {:?}", inst.net);
        }
    }
}

#[test]
fn gamma_differs_from_chi_only_at_crossed_tree_arcs_next_to_the_curve() {
    let mut differing = 0;
    for inst in instances(60) {
        for c in &inst.circuits {
            for b in 0..=3 {
                let x = chi_reduced_length(&inst.dual, &inst.chi, c, b);
                let g = gamma_reduced(&inst.ci, &inst.faces, &inst.dual, c, b).unwrap();
                if x == g {
                    continue;
                }
                differing += 1;
                let region = trace_region(&inst.ci.hat, &inst.faces, &inst.dual, c).unwrap();
                let explained = inst.ci.tree.iter().any(|t| {
                    let a = &inst.ci.hat.arcs[t.arc];
                    let crossed = c.iter().any(|&d| inst.dual.arcs[d].kind.primal_arc() == Some(t.arc));
                    crossed && (region.on_curve[a.tail] || region.on_curve[a.head])
                });
                assert!(explained, "unexplained difference on circuit {c:?}");
            }
        }
    }
    assert!(differing > 0);
}
