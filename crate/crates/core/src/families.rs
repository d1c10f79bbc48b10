//! Generators for the graph families used throughout the crate, plus frozen
//! fixtures.
//!
//! Random generators draw everything from a `ChaCha8Rng` seeded with the
//! caller's 64-bit seed and only sample `u64` ranges, so outputs are the same
//! on every platform.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::characterize::{is_block_graph, verify_backbone};
use crate::graph::{all_pairs_distances, blocks, is_isometric, DistanceMatrix, Graph, SubgraphView};
use crate::{Error, Result};

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges are simple")
}

/// # Panics
/// When `n < 3`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least 3 vertices");
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges are simple")
}

pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::from_edges(n, edges).expect("clique edges are simple")
}

/// `K_{1,leaves}` with centre 0.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star edges are simple")
}

/// Coordinates of MGP(n,k,t): vertex `v_i^j` (layer `j`, index `i`) has id
/// `j * n + i`. GP(n,k) uses the same layout with `t = 1`, so `a_i = i` and
/// `b_i = n + i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MgpLabeling {
    pub n: usize,
    pub k: usize,
    pub t: usize,
}

impl MgpLabeling {
    #[inline]
    pub fn to_id(&self, layer: usize, index: usize) -> usize {
        debug_assert!(layer <= self.t && index < self.n);
        layer * self.n + index
    }

    /// `(layer, index)` of a vertex id.
    #[inline]
    pub fn to_coord(&self, id: usize) -> (usize, usize) {
        (id / self.n, id % self.n)
    }

    pub fn vertex_count(&self) -> usize {
        self.n * (self.t + 1)
    }

    /// The column B_i = { v_i^j : 0 <= j <= t }.
    pub fn column(&self, index: usize) -> Vec<usize> {
        (0..=self.t).map(|j| self.to_id(j, index)).collect()
    }

    /// Side-file lines `v <id> <j> <i>`, one per vertex in id order.
    pub fn coords_text(&self) -> String {
        (0..self.vertex_count())
            .map(|id| {
                let (j, i) = self.to_coord(id);
                format!("v {id} {j} {i}\n")
            })
            .collect()
    }
}

fn check_gp_params(n: usize, k: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidParameters(format!("n = {n} must be at least 3")));
    }
    if k == 0 || k >= n {
        return Err(Error::InvalidParameters(format!("k = {k} must lie in 1..{n}")));
    }
    if (2 * k).is_multiple_of(n) {
        return Err(Error::InvalidParameters(format!(
            "2k = {} is divisible by n = {n}; the skip cycle would repeat edges",
            2 * k
        )));
    }
    Ok(())
}

/// Generalized Petersen graph GP(n,k): outer cycle `a_i a_{i+1}`, spokes
/// `a_i b_i`, inner skip cycle `b_i b_{i+k}`.
pub fn gen_gp(n: usize, k: usize) -> Result<(Graph, MgpLabeling)> {
    check_gp_params(n, k)?;
    let (a, b) = (|i: usize| i % n, |i: usize| n + i % n);
    let mut edges = Vec::with_capacity(3 * n);
    for i in 0..n {
        edges.push((a(i), a(i + 1)));
        edges.push((a(i), b(i)));
        edges.push((b(i), b(i + k)));
    }
    Ok((Graph::from_edges(2 * n, edges)?, MgpLabeling { n, k, t: 1 }))
}

/// Multi-layer generalized Petersen graph MGP(n,k,t). Layer 0 is the cycle
/// `v_i^0 v_{i+1}^0`, each layer `1..=t` is the skip cycle
/// `v_i^j v_{i+k}^j`, and every column B_i is a clique.
pub fn gen_mgp(n: usize, k: usize, t: usize) -> Result<(Graph, MgpLabeling)> {
    check_gp_params(n, k)?;
    if t == 0 {
        return Err(Error::InvalidParameters("t must be at least 1".into()));
    }
    let lab = MgpLabeling { n, k, t };
    let mut edges = Vec::with_capacity(n + n * t + n * t * (t + 1) / 2);
    for i in 0..n {
        edges.push((lab.to_id(0, i), lab.to_id(0, (i + 1) % n)));
        for j in 1..=t {
            edges.push((lab.to_id(j, i), lab.to_id(j, (i + k) % n)));
        }
        for j in 0..=t {
            for j2 in j + 1..=t {
                edges.push((lab.to_id(j, i), lab.to_id(j2, i)));
            }
        }
    }
    Ok((Graph::from_edges(lab.vertex_count(), edges)?, lab))
}

/// The Petersen graph as GP(5,2).
pub fn petersen() -> Graph {
    gen_gp(5, 2).expect("GP(5,2) is valid").0
}

/// A block graph together with the clique size replacing each listed cut
/// vertex. Unlisted cut vertices keep size 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupSpec {
    pub base: Graph,
    pub sizes: BTreeMap<usize, usize>,
}

/// Replaces each listed cut vertex by a clique joined to all of the vertex's
/// neighbours. Copies of base vertex `v` receive consecutive ids, in base
/// order. Returns the graph and the base vertex behind each new id.
pub fn blow_up_with_origin(spec: &BlowupSpec) -> Result<(Graph, Vec<usize>)> {
    let base = &spec.base;
    if let Some(w) = is_block_graph(base)?.violation() {
        return Err(Error::InvalidParameters(format!("base is not a block graph: {w}")));
    }
    let cut = blocks(base)?.cut_vertices;
    for (&v, &size) in &spec.sizes {
        if !cut.contains(&v) {
            return Err(Error::InvalidParameters(format!("vertex {v} is not a cut vertex of the base")));
        }
        if size == 0 {
            return Err(Error::InvalidParameters(format!("clique size for {v} must be at least 1")));
        }
    }
    let mut first = Vec::with_capacity(base.n());
    let mut origin = Vec::new();
    for v in 0..base.n() {
        first.push(origin.len());
        let size = spec.sizes.get(&v).copied().unwrap_or(1);
        origin.extend(std::iter::repeat_n(v, size));
    }
    let copies = |v: usize| first[v]..first[v] + spec.sizes.get(&v).copied().unwrap_or(1);
    let mut edges = Vec::new();
    for v in 0..base.n() {
        let ids: Vec<usize> = copies(v).collect();
        for (a, &p) in ids.iter().enumerate() {
            edges.extend(ids[a + 1..].iter().map(|&q| (p, q)));
        }
    }
    for (u, v) in base.edges() {
        for p in copies(u) {
            edges.extend(copies(v).map(|q| (p, q)));
        }
    }
    Ok((Graph::from_edges(origin.len(), edges)?, origin))
}

pub fn blow_up(spec: &BlowupSpec) -> Result<Graph> {
    blow_up_with_origin(spec).map(|(g, _)| g)
}

/// A cop-win graph H (vertices 0..=5) sitting isometrically in a 7-vertex
/// host where one cop cannot guard it. Vertex 6 is adjacent to 2, 4 and 5.
pub fn figure1_instance() -> (Graph, SubgraphView) {
    let h_edges = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 5), (3, 4), (3, 5)];
    let extra = [(2, 6), (4, 6), (5, 6)];
    let g = Graph::from_edges(7, h_edges.into_iter().chain(extra)).expect("fixture is simple");
    let h = SubgraphView::new(&g, &[0, 1, 2, 3, 4, 5]).expect("fixture ids are valid");
    (g, h)
}

/// Block graph with blocks {0,1,2}, {2,3,6}, {1,5}, {0,4}.
pub fn sample_block_graph() -> Graph {
    Graph::from_edges(
        7,
        [(0, 1), (0, 2), (0, 4), (1, 2), (1, 5), (2, 3), (2, 6), (3, 6)],
    )
    .expect("fixture is simple")
}

const SAMPLE_EXTENDED_EDGES: [(usize, usize); 18] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (0, 4),
    (0, 5),
    (0, 6),
    (1, 2),
    (1, 3),
    (1, 4),
    (1, 5),
    (1, 6),
    (2, 3),
    (4, 5),
    (4, 6),
    (4, 7),
    (5, 6),
    (5, 7),
    (6, 8),
];

/// [`sample_block_graph`] with cut vertex 2 blown up to the pair {0,1} and cut
/// vertex 0 blown up to the pair {4,5} (ids renumbered).
pub fn sample_extended_block_graph() -> Graph {
    Graph::from_edges(9, SAMPLE_EXTENDED_EDGES).expect("fixture is simple")
}

/// [`sample_extended_block_graph`] plus three vertices outside the backbone: 9 and 11
/// hang off the pair {4,5} together with 7, and 10 is attached to 1, 2, 3.
/// Returns the graph and its backbone `0..=8`.
pub fn sample_vertebrate_graph() -> (Graph, Vec<usize>) {
    let extra = [(4, 9), (4, 11), (5, 9), (5, 11), (7, 9), (7, 11), (9, 11), (1, 10), (2, 10), (3, 10)];
    let g = Graph::from_edges(12, SAMPLE_EXTENDED_EDGES.into_iter().chain(extra))
        .expect("fixture is simple");
    (g, (0..9).collect())
}

#[inline]
fn pick(rng: &mut ChaCha8Rng, n: usize) -> usize {
    rng.gen_range(0..n as u64) as usize
}

/// Random block graph on `vertex_budget` vertices. Starting from one vertex,
/// repeatedly pick a uniform existing vertex `v` and a clique size `s` in
/// `2..=max_clique` (clamped to the remaining budget), then add `s - 1` new
/// vertices forming a clique with `v`.
pub fn random_block_graph(seed: u64, vertex_budget: usize, max_clique: usize) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_block_graph_with(&mut rng, vertex_budget, max_clique)
}

fn random_block_graph_with(rng: &mut ChaCha8Rng, vertex_budget: usize, max_clique: usize) -> Result<Graph> {
    if vertex_budget == 0 {
        return Err(Error::InvalidParameters("vertex budget must be at least 1".into()));
    }
    if max_clique < 2 && vertex_budget > 1 {
        return Err(Error::InvalidParameters("max_clique must be at least 2".into()));
    }
    let mut n = 1;
    let mut edges = Vec::new();
    while n < vertex_budget {
        let v = pick(rng, n);
        let s = 2 + pick(rng, max_clique - 1);
        let added = (s - 1).min(vertex_budget - n);
        let members: Vec<usize> = std::iter::once(v).chain(n..n + added).collect();
        for (a, &p) in members.iter().enumerate() {
            edges.extend(members[a + 1..].iter().map(|&q| (p, q)));
        }
        n += added;
    }
    Graph::from_edges(n, edges)
}

/// Knobs for [`random_vertebrate_graph`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertebrateParams {
    /// Vertices of the underlying block graph.
    pub base_vertices: usize,
    pub max_clique: usize,
    /// Each cut vertex is blown up with probability 1/2 to a clique of size
    /// `2..=max_joint_size`.
    pub max_joint_size: usize,
    /// Vertices attached outside the backbone.
    pub extra_vertices: usize,
    /// Attempts per extra vertex before giving up.
    pub max_retries: usize,
}

impl Default for VertebrateParams {
    fn default() -> Self {
        VertebrateParams {
            base_vertices: 6,
            max_clique: 3,
            max_joint_size: 2,
            extra_vertices: 2,
            max_retries: 64,
        }
    }
}

/// Random vertebrate graph with its declared backbone.
///
/// A random block graph is blown up at random cut vertices; the result is the
/// backbone B with ids `0..|B|`. Each extra vertex `w` picks an anchor `a`
/// (a joint when B has any, otherwise any backbone vertex) and becomes
/// adjacent to `a` and to a random subset of N(a), so N[w] ⊆ N[a]. The
/// attachment is kept only if B still verifies as a backbone; otherwise a new
/// attachment is drawn.
pub fn random_vertebrate_graph(seed: u64, params: &VertebrateParams) -> Result<(Graph, Vec<usize>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = random_block_graph_with(&mut rng, params.base_vertices, params.max_clique)?;
    let cut = if base.n() > 1 { blocks(&base)?.cut_vertices } else { Vec::new() };
    let mut sizes = BTreeMap::new();
    for &v in &cut {
        if params.max_joint_size >= 2 && rng.gen_bool(0.5) {
            sizes.insert(v, 2 + pick(&mut rng, params.max_joint_size - 1));
        }
    }
    let (b_graph, origin) = blow_up_with_origin(&BlowupSpec { base, sizes })?;
    let backbone: Vec<usize> = (0..b_graph.n()).collect();
    let joints: Vec<usize> = backbone.iter().copied().filter(|&v| cut.contains(&origin[v])).collect();
    let anchors = if joints.is_empty() { backbone.clone() } else { joints };

    let mut edges = b_graph.edges();
    let mut n = b_graph.n();
    for _ in 0..params.extra_vertices {
        let current = Graph::from_edges(n, edges.iter().copied())?;
        let mut accepted = false;
        for _ in 0..params.max_retries.max(1) {
            let a = anchors[pick(&mut rng, anchors.len())];
            let mut attach = vec![a];
            attach.extend(current.neighbors(a).iter().copied().filter(|_| rng.gen_bool(0.5)));
            let mut trial = edges.clone();
            trial.extend(attach.iter().map(|&u| (u, n)));
            let g = Graph::from_edges(n + 1, trial.iter().copied())?;
            let d = all_pairs_distances(&g);
            if verify_backbone(&g, &d, &backbone)?.holds() {
                edges = trial;
                n += 1;
                accepted = true;
                break;
            }
        }
        if !accepted {
            return Err(Error::RetriesExhausted(params.max_retries));
        }
    }
    Ok((Graph::from_edges(n, edges)?, backbone))
}

/// Random connected graph: a random recursive spanning tree (vertex `v`
/// joins a uniform earlier vertex) plus each remaining pair independently
/// with probability `extra_edge_prob`.
#[allow(clippy::needless_range_loop)]
pub fn random_connected_graph(seed: u64, n: usize, extra_edge_prob: f64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameters("n must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&extra_edge_prob) {
        return Err(Error::InvalidParameters("edge probability must lie in [0, 1]".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adj = vec![vec![false; n]; n];
    for v in 1..n {
        let u = pick(&mut rng, v);
        adj[u][v] = true;
    }
    for u in 0..n {
        for v in u + 1..n {
            if !adj[u][v] && rng.gen_bool(extra_edge_prob) {
                adj[u][v] = true;
            }
        }
    }
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::from_edges(n, edges.filter(|&(u, v)| adj[u][v]).collect::<Vec<_>>())
}

/// Embeds `h` (ids `0..h.n()`) isometrically into a random connected host on
/// `host_vertices` vertices. Each new vertex joins 1 to 3 random existing
/// vertices; afterwards `extra_edges` random non-edges with at least one
/// endpoint outside `h` are proposed. Every addition that would shorten a
/// distance inside `h` is rejected. The induced subgraph on `0..h.n()` is
/// exactly `h`.
pub fn random_isometric_host(seed: u64, h: &Graph, host_vertices: usize, extra_edges: usize) -> Result<Graph> {
    if !h.is_connected() {
        return Err(Error::Disconnected);
    }
    if host_vertices < h.n() {
        return Err(Error::InvalidParameters("host must be at least as large as h".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h_ids: Vec<usize> = (0..h.n()).collect();
    let keeps_isometry = |n: usize, edges: &[(usize, usize)]| -> Result<bool> {
        let g = Graph::from_edges(n, edges.iter().copied())?;
        let view = SubgraphView::new(&g, &h_ids)?;
        Ok(is_isometric(&view, &DistanceMatrix::new(&g)))
    };
    const TRIES: usize = 200;
    let mut edges = h.edges();
    let mut n = h.n();
    while n < host_vertices {
        let mut accepted = false;
        for _ in 0..TRIES {
            let want = 1 + pick(&mut rng, 3);
            let mut nbrs: Vec<usize> = Vec::new();
            for _ in 0..want {
                let u = pick(&mut rng, n);
                if !nbrs.contains(&u) {
                    nbrs.push(u);
                }
            }
            let mut trial = edges.clone();
            trial.extend(nbrs.iter().map(|&u| (u, n)));
            if keeps_isometry(n + 1, &trial)? {
                edges = trial;
                n += 1;
                accepted = true;
                break;
            }
        }
        if !accepted {
            return Err(Error::RetriesExhausted(TRIES));
        }
    }
    for _ in 0..extra_edges {
        let (u, v) = (pick(&mut rng, n), pick(&mut rng, n));
        let (u, v) = (u.min(v), u.max(v));
        // an edge inside h would change h itself
        if u == v || v < h.n() || edges.contains(&(u, v)) || edges.contains(&(v, u)) {
            continue;
        }
        let mut trial = edges.clone();
        trial.push((u, v));
        if keeps_isometry(n, &trial)? {
            edges = trial;
        }
    }
    Graph::from_edges(n, edges)
}
