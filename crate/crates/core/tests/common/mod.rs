//! Seeded arenas shared by the integration tests.

#![allow(dead_code)]

use copguard::characterize::{certify_backbone, Verdict, DEFAULT_EXHAUSTIVE_LIMIT};
use copguard::families::{random_connected_graph, random_isometric_host, random_vertebrate_graph, VertebrateParams};
use copguard::graph::shortest_path;
use copguard::guard::GuardArena;
use copguard::{DistanceMatrix, Graph};

/// A guarded subgraph embedded in a host, with H on ids `0..h_len`.
pub struct VertebrateArena {
    pub seed: u64,
    pub h: Graph,
    pub backbone: Vec<usize>,
    pub arena: GuardArena,
}

/// `count` arenas from consecutive seeds: a random vertebrate graph with its
/// declared backbone (R from its certificate) inside a random isometric host
/// of at most 25 vertices. Seeds whose generator gives up are skipped.
pub fn vertebrate_arenas(count: usize) -> Vec<VertebrateArena> {
    let params = VertebrateParams::default();
    let mut out = Vec::new();
    let mut seed = 0;
    while out.len() < count {
        seed += 1;
        let Ok((h, backbone)) = random_vertebrate_graph(seed, &params) else { continue };
        if h.n() > 20 {
            continue;
        }
        let dh = DistanceMatrix::new(&h);
        let cert = match certify_backbone(&h, &dh, &backbone, DEFAULT_EXHAUSTIVE_LIMIT).unwrap() {
            Verdict::Holds(cert) => cert,
            Verdict::Fails(w) => panic!("seed {seed}: declared backbone rejected: {w}"),
        };
        let r = cert.guard_set.expect("certificate carries a guard set");
        let host_n = (h.n() + 3 + (seed % 7) as usize).min(25);
        let host = random_isometric_host(seed.wrapping_mul(0x9e37_79b9), &h, host_n, 4).unwrap();
        let ids: Vec<usize> = (0..h.n()).collect();
        let arena = GuardArena::new(host, &ids, Some(&r)).unwrap();
        out.push(VertebrateArena {
            seed,
            h,
            backbone,
            arena,
        });
    }
    out
}

/// A random connected host and a shortest path between two distinct
/// vertices chosen from the seed.
pub fn path_instance(seed: u64) -> (Graph, Vec<usize>) {
    let n = 6 + (seed % 13) as usize;
    let g = random_connected_graph(seed, n, 0.15).unwrap();
    let d = DistanceMatrix::new(&g);
    let u = (seed as usize * 7) % n;
    let v = (u + 1 + (seed as usize * 3) % (n - 1)) % n;
    let path = shortest_path(&g, &d, u, v).expect("host is connected");
    (g, path)
}
