//! Enumeration of simple directed circuits in small multigraphs.

use alloc::vec;
use alloc::vec::Vec;

use crate::oracle::OracleError;

/// Every circuit with pairwise distinct nodes, as arc ids starting at the circuit's
/// smallest node. Parallel arcs give distinct circuits. Fails beyond `limit` circuits.
pub fn enumerate_circuits(
    num_nodes: usize,
    arcs: &[(usize, usize)],
    limit: usize,
) -> Result<Vec<Vec<usize>>, OracleError> {
    let mut out_arcs = vec![Vec::new(); num_nodes];
    for (i, &(t, _)) in arcs.iter().enumerate() {
        out_arcs[t].push(i);
    }
    let mut found = Vec::new();
    let mut on_path = vec![false; num_nodes];
    let mut path = Vec::new();

    struct Ctx<'a> {
        arcs: &'a [(usize, usize)],
        out_arcs: &'a [Vec<usize>],
        limit: usize,
    }

    fn dfs(
        ctx: &Ctx,
        root: usize,
        v: usize,
        on_path: &mut [bool],
        path: &mut Vec<usize>,
        found: &mut Vec<Vec<usize>>,
    ) -> Result<(), OracleError> {
        for &a in &ctx.out_arcs[v] {
            let w = ctx.arcs[a].1;
            if w == root {
                path.push(a);
                found.push(path.clone());
                path.pop();
                if found.len() > ctx.limit {
                    return Err(OracleError::TooLarge {
                        size: found.len(),
                        limit: ctx.limit,
                    });
                }
            } else if w > root && !on_path[w] {
                on_path[w] = true;
                path.push(a);
                dfs(ctx, root, w, on_path, path, found)?;
                path.pop();
                on_path[w] = false;
            }
        }
        Ok(())
    }

    let ctx = Ctx {
        arcs,
        out_arcs: &out_arcs,
        limit,
    };
    for root in 0..num_nodes {
        on_path[root] = true;
        dfs(&ctx, root, root, &mut on_path, &mut path, &mut found)?;
        on_path[root] = false;
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_on_small_graphs() {
        // Two parallel arcs 0->1 and one back: two circuits.
        let c = enumerate_circuits(2, &[(0, 1), (0, 1), (1, 0)], 100).unwrap();
        assert_eq!(c, vec![vec![0, 2], vec![1, 2]]);
        // Complete digraph on 3 nodes: three 2-cycles and two 3-cycles.
        let k3 = [(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)];
        assert_eq!(enumerate_circuits(3, &k3, 100).unwrap().len(), 5);
        // A loop is a circuit.
        assert_eq!(enumerate_circuits(1, &[(0, 0)], 100).unwrap(), vec![vec![0]]);
    }

    #[test]
    fn limit_is_enforced() {
        let k3 = [(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)];
        assert!(enumerate_circuits(3, &k3, 3).is_err());
    }
}
