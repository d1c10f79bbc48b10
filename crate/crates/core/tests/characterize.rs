//! Cross-checks between the metric properties, the structural recognizers
//! and the backbone machinery on random graphs.

use copguard::characterize::{
    check_p1, check_p2, check_p3_with_r, compute_c, exhaustive_p3_guard_set, find_backbone, is_block_graph,
    is_extended_block_graph, p3_blocker, verify_backbone, BackboneSearch, DEFAULT_EXHAUSTIVE_LIMIT,
};
use copguard::families::{
    random_block_graph, random_connected_graph, random_vertebrate_graph, VertebrateParams,
};
use copguard::graph::gated_neighbors;
use copguard::{DistanceMatrix, Graph, SubgraphView};
use proptest::prelude::*;

fn small_graph(seed: u64) -> Graph {
    let n = 3 + (seed % 7) as usize;
    let p = [0.05, 0.15, 0.3, 0.5][(seed / 7 % 4) as usize];
    random_connected_graph(seed, n, p).unwrap()
}

/// Some R satisfying (P3), when the graph has one.
fn p3_set(g: &Graph, d: &DistanceMatrix) -> Option<Vec<usize>> {
    exhaustive_p3_guard_set(g, d, DEFAULT_EXHAUSTIVE_LIMIT).unwrap()
}

fn far_pairs<'a>(d: &'a DistanceMatrix, r: &'a [usize]) -> impl Iterator<Item = (usize, usize)> + 'a {
    r.iter()
        .flat_map(move |&c| (0..d.n()).map(move |x| (c, x)))
        .filter(|&(c, x)| d.get(c, x) >= 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn implication_chain(seed in any::<u64>()) {
        let g = small_graph(seed);
        let d = DistanceMatrix::new(&g);
        let p1 = check_p1(&g, &d).unwrap().holds();
        let p2 = check_p2(&g, &d).unwrap().holds();
        let all: Vec<usize> = (0..g.n()).collect();
        let p3_all = check_p3_with_r(&g, &d, &all).unwrap().holds();
        let block = is_block_graph(&g).unwrap().holds();
        let ext = is_extended_block_graph(&g).unwrap().holds();
        let vert = matches!(find_backbone(&g, &d, DEFAULT_EXHAUSTIVE_LIMIT).unwrap(), BackboneSearch::Found(_));
        prop_assert!(!p1 || p2, "P1 without P2");
        prop_assert!(!p2 || p3_all, "P2 without P3 for R = V(G)");
        prop_assert!(!block || ext);
        prop_assert!(!ext || vert);
        prop_assert_eq!(p1, block);
        prop_assert_eq!(p2, ext);
    }

    #[test]
    fn gates_in_c_sets(seed in any::<u64>()) {
        let g = small_graph(seed);
        let d = DistanceMatrix::new(&g);
        let Some(r) = p3_set(&g, &d) else { return Ok(()) };
        let mut sets: Vec<Vec<usize>> = Vec::new();
        for (c, x) in far_pairs(&d, &r) {
            let cs = compute_c(&g, &d, &r, c, x).unwrap();
            // every gate in R that no y defeats lies in C(c,x)
            for cp in gated_neighbors(&g, &d, c, x).unwrap().into_iter().filter(|v| r.contains(v)) {
                if p3_blocker(&d, c, x, cp, 0..g.n()).is_none() {
                    prop_assert!(cs.contains(&cp), "unblocked gate {} of ({}, {}) not in C", cp, c, x);
                }
            }
            prop_assert!(!cs.is_empty(), "C({}, {}) is empty", c, x);
            for &a in &cs {
                for &b in &cs {
                    prop_assert_eq!(g.closed_neighborhood(a), g.closed_neighborhood(b));
                }
            }
            sets.push(cs);
        }
        for a in &sets {
            for b in &sets {
                let meet = a.iter().any(|v| b.contains(v));
                prop_assert!(!meet || a == b, "C sets {:?} and {:?} overlap", a, b);
            }
        }
    }

    #[test]
    fn p2_gates_are_twins(seed in any::<u64>()) {
        let g = small_graph(seed);
        let d = DistanceMatrix::new(&g);
        if !check_p2(&g, &d).unwrap().holds() {
            return Ok(());
        }
        for c in 0..g.n() {
            for x in (0..g.n()).filter(|&x| d.get(c, x) >= 2) {
                let gates = gated_neighbors(&g, &d, c, x).unwrap();
                for &a in &gates {
                    prop_assert_eq!(g.closed_neighborhood(a), g.closed_neighborhood(gates[0]));
                }
            }
        }
    }

    #[test]
    fn backbone_shortcuts(seed in 0u64..5000) {
        let Ok((g, b)) = random_vertebrate_graph(seed, &VertebrateParams::default()) else { return Ok(()) };
        let d = DistanceMatrix::new(&g);
        prop_assert!(verify_backbone(&g, &d, &b).unwrap().holds());
        // some shortest path between any far pair runs inside B
        for u in 0..g.n() {
            for v in (u + 1..g.n()).filter(|&v| d.get(u, v) >= 2) {
                let mut keep = b.clone();
                keep.extend([u, v]);
                keep.sort_unstable();
                keep.dedup();
                let view = SubgraphView::new(&g, &keep).unwrap();
                let dv = DistanceMatrix::new(view.graph());
                let (lu, lv) = (view.local_id(u).unwrap(), view.local_id(v).unwrap());
                prop_assert_eq!(dv.get(lu, lv), d.get(u, v), "no backbone geodesic between {} and {}", u, v);
            }
        }
    }

    #[test]
    fn block_graphs_pass_everything(seed in any::<u64>(), n in 1usize..14, clique in 2usize..5) {
        let g = random_block_graph(seed, n, clique).unwrap();
        let d = DistanceMatrix::new(&g);
        prop_assert!(is_block_graph(&g).unwrap().holds());
        prop_assert!(check_p1(&g, &d).unwrap().holds());
        prop_assert!(check_p2(&g, &d).unwrap().holds());
        prop_assert!(is_extended_block_graph(&g).unwrap().holds());
    }
}
