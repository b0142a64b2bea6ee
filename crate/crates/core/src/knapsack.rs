//! Reduced cut values: the cheapest remaining capacity of a cut after spending a
//! budget on removals, as a 0/1 knapsack over the budget.

use alloc::vec;
use alloc::vec::Vec;

use crate::ext::ExtInt;
use crate::network::EmbeddedNetwork;

/// Largest total `value` removable with cost at most `b`, for every `b <= budget`.
pub fn max_removable(items: &[(i64, ExtInt)], budget: usize) -> Vec<i64> {
    let mut best = vec![0i64; budget + 1];
    for &(value, cost) in items {
        let Some(c) = cost.as_budget(budget) else {
            continue;
        };
        for b in (c..=budget).rev() {
            best[b] = best[b].max(best[b - c] + value);
        }
    }
    best
}

/// Remaining capacity of the arc set `cut` after the best removal within `budget`.
pub fn reduced_cut_value(net: &EmbeddedNetwork, cut: &[usize], budget: usize) -> i64 {
    let items: Vec<(i64, ExtInt)> = cut.iter().map(|&e| (net.arcs[e].upper, net.arcs[e].cost)).collect();
    let total: i64 = items.iter().map(|i| i.0).sum();
    total - max_removable(&items, budget)[budget]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::{Finite, Inf};
    use crate::fixtures;
    use proptest::prelude::*;

    #[test]
    fn three_arc_cut() {
        let net = fixtures::three_parallel();
        let cut = [0, 1, 2];
        assert_eq!(reduced_cut_value(&net, &cut, 2), 5);
        assert_eq!(reduced_cut_value(&net, &cut, 0), 10);
        assert_eq!(reduced_cut_value(&net, &cut, 4), 0);
    }

    #[test]
    fn infinite_costs_are_never_removed() {
        let items = [(7, Inf), (2, Finite(1))];
        assert_eq!(max_removable(&items, 5), vec![0, 2, 2, 2, 2, 2]);
    }

    fn brute(items: &[(i64, ExtInt)], budget: i64) -> i64 {
        let mut best = 0;
        for mask in 0u32..(1 << items.len()) {
            let mut cost = Finite(0);
            let mut value = 0;
            for (i, it) in items.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    cost = cost + it.1;
                    value += it.0;
                }
            }
            if cost <= Finite(budget) {
                best = best.max(value);
            }
        }
        best
    }

    proptest! {
        #[test]
        fn matches_subset_enumeration(
            raw in proptest::collection::vec((0i64..7, 0u8..5), 0..9),
            budget in 0usize..8,
        ) {
            let items: Vec<(i64, ExtInt)> = raw
                .iter()
                .map(|&(v, c)| (v, if c == 4 { Inf } else { Finite(c as i64 + 1) }))
                .collect();
            let dp = max_removable(&items, budget);
            for b in 0..=budget {
                prop_assert_eq!(dp[b], brute(&items, b as i64));
            }
        }
    }
}
