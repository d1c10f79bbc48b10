use serde::Serialize;

use super::{check_p3_with_r, is_extended_block_graph, metric::blocks_gate, Verdict, Violation};
use crate::graph::{gates, DistanceMatrix, Graph};
use crate::{Error, Result};

/// Largest graph for which backbone and guard-set searches fall back to
/// enumerating vertex subsets.
pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 12;

/// Hard ceiling on the configurable limit; subsets are kept in a `u64`.
const MAX_LIMIT: usize = 30;

/// Which search stage produced a backbone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BackboneStage {
    Canonical,
    Exhaustive,
    /// Supplied by the caller and verified.
    Declared,
}

/// `c'` is a backbone gate of `c` towards `x` dominating all of N(c,x).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DominationWitness {
    pub c: usize,
    pub x: usize,
    pub c_prime: usize,
}

/// A verified backbone B with the guard set R used by the guarding strategy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BackboneCertificate {
    /// Sorted vertex ids of B.
    pub backbone: Vec<usize>,
    /// Sorted vertex ids of R ⊆ B satisfying (P3), when one was found.
    pub guard_set: Option<Vec<usize>>,
    /// One witness per `c ∈ R` (or `c ∈ B` without R) and `x` with
    /// `d(c,x) >= 2`, ordered by `(c, x)`.
    pub witnesses: Vec<DominationWitness>,
    pub stage: BackboneStage,
}

impl BackboneCertificate {
    /// Re-checks every invariant from scratch.
    pub fn validate(&self, g: &Graph, d: &DistanceMatrix) -> Result<bool> {
        if !verify_backbone(g, d, &self.backbone)?.holds() {
            return Ok(false);
        }
        if let Some(r) = &self.guard_set {
            if !r.iter().all(|v| self.backbone.contains(v)) || !check_p3_with_r(g, d, r)?.holds() {
                return Ok(false);
            }
        }
        let witnesses_ok = self.witnesses.iter().all(|w| {
            self.backbone.contains(&w.c_prime)
                && d.get(w.c, w.x) >= 2
                && g.has_edge(w.c, w.c_prime)
                && d.get(w.c_prime, w.x) + 1 == d.get(w.c, w.x)
                && gates(g, d, w.c, w.x).all(|v| g.dominates(w.c_prime, v))
        });
        Ok(witnesses_ok)
    }
}

/// Outcome of [`find_backbone`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum BackboneSearch {
    Found(BackboneCertificate),
    /// The exhaustive stage ruled out every vertex subset.
    NotVertebrate,
    /// The canonical stage failed and the graph exceeds the exhaustive limit.
    Unknown,
}

/// Per-pair gate masks for graphs small enough for subset enumeration.
struct GateMasks {
    n: usize,
    closed: Vec<u64>,
    /// Vertices at distance at least 2 from each vertex.
    far: Vec<u64>,
    /// Gates of `c` towards `x` that no `y` defeats, at `c * n + x`.
    p3: Vec<u64>,
    /// Gates of `c` towards `x` dominating all of N(c,x), at `c * n + x`.
    dom: Vec<u64>,
}

impl GateMasks {
    fn new(g: &Graph, d: &DistanceMatrix) -> Self {
        let n = g.n();
        let mask = |it: &mut dyn Iterator<Item = usize>| it.fold(0u64, |m, v| m | 1 << v);
        let closed = (0..n).map(|v| mask(&mut g.closed_neighborhood(v).ones())).collect();
        let far = (0..n).map(|c| mask(&mut (0..n).filter(|&x| d.get(c, x) >= 2))).collect();
        let mut p3 = vec![0u64; n * n];
        let mut dom = vec![0u64; n * n];
        for c in 0..n {
            for x in 0..n {
                if d.get(c, x) < 2 {
                    continue;
                }
                for cp in gates(g, d, c, x) {
                    if !(0..n).any(|y| blocks_gate(d, c, x, cp, y)) {
                        p3[c * n + x] |= 1 << cp;
                    }
                    if gates(g, d, c, x).all(|v| g.dominates(cp, v)) {
                        dom[c * n + x] |= 1 << cp;
                    }
                }
            }
        }
        GateMasks {
            n,
            closed,
            far,
            p3,
            dom,
        }
    }

    /// Every `c ∈ set` and `x` far from `c` has a gate from `table` in `set`.
    fn gated(&self, table: &[u64], set: u64) -> bool {
        ones(set).all(|c| ones(self.far[c]).all(|x| table[c * self.n + x] & set != 0))
    }

    fn dominating(&self, set: u64) -> bool {
        self.closed.iter().all(|&nb| nb & set != 0)
    }

    fn connected(&self, set: u64) -> bool {
        if set == 0 {
            return false;
        }
        let mut seen = set & set.wrapping_neg();
        loop {
            let next = ones(seen).fold(seen, |m, v| m | (self.closed[v] & set));
            if next == seen {
                return seen == set;
            }
            seen = next;
        }
    }
}

fn ones(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

fn to_vec(m: u64) -> Vec<usize> {
    ones(m).collect()
}

fn check_limit(limit: usize) -> Result<()> {
    if limit > MAX_LIMIT {
        return Err(Error::InvalidParameters(format!(
            "exhaustive limit {limit} exceeds {MAX_LIMIT}"
        )));
    }
    Ok(())
}

/// Searches all vertex subsets R (in increasing bit-mask order) for one
/// satisfying (P3). `Ok(None)` means no subset works.
pub fn exhaustive_p3_guard_set(g: &Graph, d: &DistanceMatrix, limit: usize) -> Result<Option<Vec<usize>>> {
    check_limit(limit)?;
    d.require_connected()?;
    let n = g.n();
    if n > limit {
        return Err(Error::SearchLimit { n, limit });
    }
    let m = GateMasks::new(g, d);
    Ok((1u64..1 << n)
        .find(|&r| m.dominating(r) && m.gated(&m.p3, r))
        .map(to_vec))
}

/// Checks that `b` is a backbone: G[B] is an extended block graph, and for
/// every `c ∈ B` and `x` with `d(c,x) >= 2` some gate in B dominates all of
/// N(c,x).
pub fn verify_backbone(g: &Graph, d: &DistanceMatrix, b: &[usize]) -> Result<Verdict> {
    let n = g.n();
    if b.is_empty() {
        return Err(Error::Precondition("backbone is empty".into()));
    }
    let view = crate::graph::SubgraphView::new(g, b)?;
    if !view.graph().is_connected() {
        return Err(Error::Precondition("backbone does not induce a connected subgraph".into()));
    }
    if let Verdict::Fails(w) = is_extended_block_graph(view.graph())? {
        return Ok(Verdict::Fails(Violation::BackboneNotExtended(Box::new(
            w.map_ids(|i| view.parent_id(i)),
        ))));
    }
    let mut sorted = b.to_vec();
    sorted.sort_unstable();
    for &c in &sorted {
        for x in 0..n {
            if d.get(c, x) < 2 {
                continue;
            }
            if dominating_gate(g, d, &view, c, x).is_none() {
                return Ok(Verdict::Fails(Violation::NoDominatingGate { c, x }));
            }
        }
    }
    Ok(Verdict::Holds(()))
}

fn dominating_gate(
    g: &Graph,
    d: &DistanceMatrix,
    b: &crate::graph::SubgraphView,
    c: usize,
    x: usize,
) -> Option<usize> {
    gates(g, d, c, x)
        .filter(|&cp| b.contains(cp))
        .find(|&cp| gates(g, d, c, x).all(|v| g.dominates(cp, v)))
}

/// Looks for a backbone in two stages.
///
/// The canonical stage tries B = V(G) and B = G[S], where S is the union of
/// all C(c,x) with R = V(G). When both fail and `n <= limit`, every vertex
/// subset is tried in decreasing size (ties by increasing bit mask), so the
/// first hit is a maximum backbone. Above the limit the answer is
/// [`BackboneSearch::Unknown`].
pub fn find_backbone(g: &Graph, d: &DistanceMatrix, limit: usize) -> Result<BackboneSearch> {
    check_limit(limit)?;
    d.require_connected()?;
    let n = g.n();
    let all: Vec<usize> = (0..n).collect();
    let mut canonical = vec![all.clone()];
    let s = union_of_c(g, d, &all);
    if !s.is_empty() && s.len() < n {
        canonical.push(s);
    }
    for b in canonical {
        let view = crate::graph::SubgraphView::new(g, &b)?;
        if view.graph().is_connected() && verify_backbone(g, d, &b)?.holds() {
            return certify(g, d, b, BackboneStage::Canonical, limit).map(BackboneSearch::Found);
        }
    }
    if n > limit {
        return Ok(BackboneSearch::Unknown);
    }
    let m = GateMasks::new(g, d);
    let mut masks: Vec<u64> = (1u64..1 << n).collect();
    masks.sort_by_key(|&s| (std::cmp::Reverse(s.count_ones()), s));
    for set in masks {
        if !m.gated(&m.dom, set) || !m.connected(set) {
            continue;
        }
        let b = to_vec(set);
        if is_extended_block_graph(&g.induced(&b))?.holds() {
            return certify(g, d, b, BackboneStage::Exhaustive, limit).map(BackboneSearch::Found);
        }
    }
    Ok(BackboneSearch::NotVertebrate)
}

/// Certificate for a caller-supplied backbone: verifies `b`, then picks R as
/// [`find_backbone`] does.
pub fn certify_backbone(
    g: &Graph,
    d: &DistanceMatrix,
    b: &[usize],
    limit: usize,
) -> Result<Verdict<BackboneCertificate>> {
    check_limit(limit)?;
    let mut b = b.to_vec();
    b.sort_unstable();
    b.dedup();
    match verify_backbone(g, d, &b)? {
        Verdict::Fails(w) => Ok(Verdict::Fails(w)),
        Verdict::Holds(()) => certify(g, d, b, BackboneStage::Declared, limit).map(Verdict::Holds),
    }
}

/// Union of C(c,x) over `c ∈ r` and all `x` with `d(c,x) >= 2`, sorted.
fn union_of_c(g: &Graph, d: &DistanceMatrix, r: &[usize]) -> Vec<usize> {
    let n = g.n();
    let mut in_r = vec![false; n];
    for &v in r {
        in_r[v] = true;
    }
    let mut hit = vec![false; n];
    for &c in r {
        for x in 0..n {
            if d.get(c, x) < 2 {
                continue;
            }
            for cp in gates(g, d, c, x).filter(|&v| in_r[v]) {
                if gates(g, d, c, x).all(|v| g.dominates(cp, v)) {
                    hit[cp] = true;
                }
            }
        }
    }
    (0..n).filter(|&v| hit[v]).collect()
}

/// Picks R for a verified backbone: the dominating gates of B, then B itself,
/// then (small graphs only) every subset of B.
fn certify(
    g: &Graph,
    d: &DistanceMatrix,
    backbone: Vec<usize>,
    stage: BackboneStage,
    limit: usize,
) -> Result<BackboneCertificate> {
    let mut guard_set = None;
    let refined = union_of_c(g, d, &backbone);
    for r in [refined, backbone.clone()] {
        if !r.is_empty() && check_p3_with_r(g, d, &r)?.holds() {
            guard_set = Some(r);
            break;
        }
    }
    if guard_set.is_none() && g.n() <= limit {
        let m = GateMasks::new(g, d);
        let bmask = backbone.iter().fold(0u64, |acc, &v| acc | 1 << v);
        let mut sub = bmask;
        // walk the non-empty submasks of B in decreasing numeric order
        while sub != 0 {
            if m.dominating(sub) && m.gated(&m.p3, sub) {
                guard_set = Some(to_vec(sub));
                break;
            }
            sub = (sub - 1) & bmask;
        }
    }
    let view = crate::graph::SubgraphView::new(g, &backbone)?;
    let sources = guard_set.as_ref().unwrap_or(&backbone);
    let mut witnesses = Vec::new();
    for &c in sources {
        for x in 0..g.n() {
            if d.get(c, x) < 2 {
                continue;
            }
            let c_prime = dominating_gate(g, d, &view, c, x).expect("backbone was verified");
            witnesses.push(DominationWitness { c, x, c_prime });
        }
    }
    Ok(BackboneCertificate {
        backbone,
        guard_set,
        witnesses,
        stage,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::all_pairs_distances;

    fn g(n: usize, e: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, e.iter().copied()).unwrap()
    }

    #[test]
    fn extended_block_graph_is_its_own_backbone() {
        let h = g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]);
        let d = all_pairs_distances(&h);
        let BackboneSearch::Found(cert) = find_backbone(&h, &d, DEFAULT_EXHAUSTIVE_LIMIT).unwrap() else {
            panic!("K4 minus an edge is vertebrate")
        };
        assert_eq!(cert.backbone, vec![0, 1, 2, 3]);
        assert_eq!(cert.stage, BackboneStage::Canonical);
        assert!(cert.guard_set.is_some());
        assert!(cert.validate(&h, &d).unwrap());
    }

    #[test]
    fn c4_has_no_backbone() {
        let c4 = g(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let d = all_pairs_distances(&c4);
        assert_eq!(
            find_backbone(&c4, &d, DEFAULT_EXHAUSTIVE_LIMIT).unwrap(),
            BackboneSearch::NotVertebrate
        );
        assert_eq!(exhaustive_p3_guard_set(&c4, &d, DEFAULT_EXHAUSTIVE_LIMIT).unwrap(), None);
        assert_eq!(find_backbone(&c4, &d, 3).unwrap(), BackboneSearch::Unknown);
    }

    #[test]
    fn verify_backbone_rejects_bad_sets() {
        let c4 = g(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let d = all_pairs_distances(&c4);
        let b = [0, 1, 2, 3];
        let v = verify_backbone(&c4, &d, &b).unwrap();
        let w = v.violation().unwrap();
        assert!(matches!(w, Violation::BackboneNotExtended(_)));
        assert!(w.reproduces(&c4, &d, Some(&b)));

        let b = [0, 1];
        let w = verify_backbone(&c4, &d, &b).unwrap().violation().cloned().unwrap();
        assert!(matches!(w, Violation::NoDominatingGate { c: 0, x: 2 }));
        assert!(w.reproduces(&c4, &d, Some(&b)));

        assert!(verify_backbone(&c4, &d, &[]).is_err());
        assert!(verify_backbone(&c4, &d, &[0, 2]).is_err());
    }

    #[test]
    fn complete_graph_backbone() {
        let k4 = g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let d = all_pairs_distances(&k4);
        let BackboneSearch::Found(cert) = find_backbone(&k4, &d, DEFAULT_EXHAUSTIVE_LIMIT).unwrap() else {
            panic!()
        };
        assert_eq!(cert.guard_set, Some(vec![0, 1, 2, 3]));
        assert!(cert.witnesses.is_empty());
    }
}
