//! Exact k-densest subgraph by enumerating vertex subsets.

use alloc::vec::Vec;

use crate::oracle::OracleError;

pub const MAX_VERTICES: usize = 16;

/// Vertex set of size `k` inducing the most edges; ties go to the
/// lexicographically smallest set.
pub fn densest_subgraph_exhaustive(
    n: usize,
    edges: &[(usize, usize)],
    k: usize,
) -> Result<(Vec<usize>, usize), OracleError> {
    if n > MAX_VERTICES {
        return Err(OracleError::TooLarge {
            size: n,
            limit: MAX_VERTICES,
        });
    }
    let k = k.min(n);
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut set: Vec<usize> = (0..k).collect();
    loop {
        let mut mask = 0u32;
        for &v in &set {
            mask |= 1 << v;
        }
        let count = edges
            .iter()
            .filter(|&&(a, b)| mask >> a & 1 == 1 && mask >> b & 1 == 1)
            .count();
        if best.as_ref().is_none_or(|(c, _)| count > *c) {
            best = Some((count, set.clone()));
        }
        // Next k-combination in lexicographic order.
        let mut i = k;
        loop {
            if i == 0 {
                let (count, set) = best.expect("at least one combination");
                return Ok((set, count));
            }
            i -= 1;
            if set[i] < n - k + i {
                set[i] += 1;
                for j in i + 1..k {
                    set[j] = set[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn small_graphs() {
        let tri = [(0, 1), (1, 2), (2, 0)];
        assert_eq!(densest_subgraph_exhaustive(3, &tri, 2).unwrap(), (vec![0, 1], 1));
        assert_eq!(densest_subgraph_exhaustive(3, &tri, 3).unwrap(), (vec![0, 1, 2], 3));
        let square = [(0, 1), (1, 2), (2, 3), (3, 0)];
        assert_eq!(densest_subgraph_exhaustive(4, &square, 3).unwrap().1, 2);
        assert_eq!(densest_subgraph_exhaustive(4, &square, 0).unwrap(), (vec![], 0));
    }

    #[test]
    fn refuses_large_graphs() {
        assert!(densest_subgraph_exhaustive(17, &[], 2).is_err());
    }
}
