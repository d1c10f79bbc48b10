//! Exhaustive enumeration of small labelled graphs.
//!
//! Every subset of the `n(n-1)/2` possible edges is visited in increasing
//! bit-mask order and kept when the resulting graph is connected. No
//! isomorphism reduction is attempted, so each unlabelled graph appears once
//! per distinct labelling.

use super::Graph;

/// Largest order the enumerator accepts (`2^28` masks at `n = 8`).
pub const MAX_ORDER: usize = 8;

fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            out.push((u, v));
        }
    }
    out
}

fn connected_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> bool {
    let mut adj = [0u32; MAX_ORDER];
    for (bit, &(u, v)) in pairs.iter().enumerate() {
        if mask >> bit & 1 == 1 {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
    }
    let full = (1u32 << n) - 1;
    let mut seen = 1u32;
    let mut frontier = 1u32;
    while frontier != 0 {
        let mut next = 0;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[v];
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen == full
}

/// Iterator over all connected labelled graphs on exactly `n` vertices.
pub struct ConnectedGraphs {
    n: usize,
    pairs: Vec<(usize, usize)>,
    next_mask: u64,
    end: u64,
}

impl Iterator for ConnectedGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        while self.next_mask < self.end {
            let mask = self.next_mask;
            self.next_mask += 1;
            if connected_mask(self.n, &self.pairs, mask) {
                let edges = self
                    .pairs
                    .iter()
                    .enumerate()
                    .filter(|(bit, _)| mask >> bit & 1 == 1)
                    .map(|(_, &e)| e);
                return Some(Graph::from_edges(self.n, edges).expect("enumerated edges are simple"));
            }
        }
        None
    }
}

/// # Panics
/// When `n` is 0 or exceeds [`MAX_ORDER`].
pub fn connected_graphs(n: usize) -> ConnectedGraphs {
    assert!((1..=MAX_ORDER).contains(&n), "order {n} outside 1..={MAX_ORDER}");
    let pairs = pairs(n);
    let end = 1u64 << pairs.len();
    ConnectedGraphs {
        n,
        pairs,
        next_mask: 0,
        end,
    }
}

/// All connected labelled graphs with `1..=max_n` vertices, by increasing order.
pub fn connected_graphs_up_to(max_n: usize) -> impl Iterator<Item = Graph> {
    (1..=max_n).flat_map(connected_graphs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_labelled_connected_graph_numbers() {
        // OEIS A001187
        let expected = [1usize, 1, 4, 38, 728, 26704];
        for (i, &want) in expected.iter().enumerate() {
            assert_eq!(connected_graphs(i + 1).count(), want, "n = {}", i + 1);
        }
    }

    #[test]
    fn every_graph_is_connected() {
        assert!(connected_graphs_up_to(5).all(|g| g.is_connected()));
    }
}
