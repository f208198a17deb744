//! Exhaustive enumeration of small codes.

use super::{validate, MemCode, RawPointedGraph};

/// Every valid code on nodes `"0"…"n-1"` whose labeling is topological and
/// whose top is `"n-1"`, for `1 ≤ n ≤ max_nodes`. Every code with at most
/// `max_nodes` nodes is isomorphic to one of these.
pub fn enumerate_codes(max_nodes: usize) -> Vec<MemCode> {
    assert!(max_nodes <= 8, "enumeration beyond 8 nodes is infeasible");
    let mut out = Vec::new();
    for n in 1..=max_nodes {
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        let nodes: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        for mask in 0u64..1 << slots.len() {
            let edges = slots
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &(i, j))| (nodes[i].clone(), nodes[j].clone()))
                .collect();
            let raw = RawPointedGraph {
                nodes: nodes.clone(),
                edges,
                top: nodes[n - 1].clone(),
            };
            if let Ok(code) = validate(&raw) {
                out.push(code);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hfset::hf_enumerate_tc_bounded;
    use crate::memcode::collapse;
    use crate::Caps;
    use std::collections::BTreeSet;

    #[test]
    fn collapses_match_tc_enumeration() {
        for n in 1..=5 {
            let got: BTreeSet<_> = enumerate_codes(n).iter().map(collapse).collect();
            let want: BTreeSet<_> = hf_enumerate_tc_bounded(n, &Caps::default())
                .unwrap()
                .into_iter()
                .collect();
            assert_eq!(got, want, "n = {n}");
        }
    }
}
