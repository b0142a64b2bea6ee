//! Direct evaluation of the tree-corrected reduced length of a dual circuit.
//!
//! The reduced length of the circuit under plain dual lengths (vertex-layer arcs
//! infinite, so they must be paid for) is corrected by the tree arcs that leave
//! the enclosed region from a vertex on the curve (`+u`) or enter it at one (`-l`).

use alloc::vec::Vec;

use crate::circulation::CirculationInstance;
use crate::dual::{DualArcKind, InterdictionDual};
use crate::ext::{ExtInt, Finite, Inf};
use crate::faces::FaceStructure;
use crate::knapsack::max_removable;
use crate::oracle::region::trace_region;
use crate::oracle::OracleError;

/// Reduced length with vertex-layer arcs forced out of the circuit.
pub fn lambda_reduced(dual: &InterdictionDual, circuit: &[usize], budget: usize) -> ExtInt {
    let mut forced = 0usize;
    let mut total = 0i64;
    let mut items: Vec<(i64, ExtInt)> = Vec::new();
    for &a in circuit {
        let arc = &dual.arcs[a];
        match arc.kind {
            DualArcKind::Forward(_) | DualArcKind::Reverse(_) => {
                let l = arc.length.unwrap_finite();
                total += l;
                items.push((l.max(0), arc.cost));
            }
            _ => match arc.cost.as_budget(budget) {
                Some(c) => forced += c,
                None => return Inf,
            },
        }
    }
    let Some(left) = budget.checked_sub(forced) else {
        return Inf;
    };
    Finite(total - max_removable(&items, left)[left])
}

pub fn gamma_reduced(
    ci: &CirculationInstance,
    faces: &FaceStructure,
    dual: &InterdictionDual,
    circuit: &[usize],
    budget: usize,
) -> Result<ExtInt, OracleError> {
    let region = trace_region(&ci.hat, faces, dual, circuit)?;
    let mut correction = 0i64;
    for t in &ci.tree {
        let a = &ci.hat.arcs[t.arc];
        if region.on_curve[a.tail] && !region.inside[a.head] {
            correction += a.upper;
        }
        if region.on_curve[a.head] && !region.inside[a.tail] {
            correction -= a.lower;
        }
    }
    Ok(lambda_reduced(dual, circuit, budget) + correction)
}
