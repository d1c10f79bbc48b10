//! Simple undirected graphs on vertex ids `0..n`.

mod distance;
pub mod enumerate;
mod structure;
mod subgraph;

use std::fmt::Write as _;
use std::str::FromStr;

use fixedbitset::FixedBitSet;

use crate::{Error, Result};

pub use distance::{all_pairs_distances, gated_neighbors, shortest_path, DistanceMatrix, UNREACHABLE};
pub(crate) use distance::gates;
pub use structure::{blocks, closed_twin_classes, is_dismantlable, BlockDecomposition};
pub use subgraph::{is_isometric, isometry_violation, IsometryViolation, SubgraphView};

/// An undirected simple graph. Vertex identity is positional; labels such as
/// MGP coordinates live in side tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    closed: Vec<FixedBitSet>,
}

impl Graph {
    /// Graph on `n` vertices without edges.
    pub fn empty(n: usize) -> Self {
        let closed = (0..n)
            .map(|v| {
                let mut s = FixedBitSet::with_capacity(n);
                s.insert(v);
                s
            })
            .collect();
        Graph {
            adj: vec![Vec::new(); n],
            closed,
        }
    }

    /// Builds a graph, rejecting out-of-range ids, self-loops and repeated
    /// pairs (in either orientation).
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        Ok(g)
    }

    fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::VertexOutOfRange { u, v, n });
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.closed[u].contains(v) {
            return Err(Error::DuplicateEdge(u, v));
        }
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.closed[u].insert(v);
        self.closed[v].insert(u);
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Sorted open neighbourhood N(v).
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Closed neighbourhood N[v] as a bit set over `0..n`.
    #[inline]
    pub fn closed_neighborhood(&self, v: usize) -> &FixedBitSet {
        &self.closed[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.closed[u].contains(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// `true` when N[v] ⊆ N[u], i.e. `u` dominates `v`.
    #[inline]
    pub fn dominates(&self, u: usize, v: usize) -> bool {
        self.closed[v].is_subset(&self.closed[u])
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// Induced subgraph on `vertices`, relabelled `0..vertices.len()` in the
    /// given order. Callers guarantee the ids are distinct and in range.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut g = Graph::empty(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = local[w];
                if j != usize::MAX {
                    g.adj[i].push(j);
                    g.closed[i].insert(j);
                }
            }
            g.adj[i].sort_unstable();
        }
        g
    }

    /// Parses the `p <n> <m>` / `e <u> <v>` text format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let tag = parts.next().unwrap_or_default();
            let nums = parts
                .map(|t| {
                    t.parse::<usize>().map_err(|_| Error::Parse {
                        line: line_no,
                        msg: format!("expected a non-negative integer, found {t:?}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let bad = |msg: &str| Error::Parse {
                line: line_no,
                msg: msg.to_string(),
            };
            match tag {
                "p" => {
                    if header.is_some() {
                        return Err(bad("repeated header line"));
                    }
                    let [n, m] = nums[..] else {
                        return Err(bad("header must be `p <n> <m>`"));
                    };
                    header = Some((n, m));
                }
                "e" => {
                    if header.is_none() {
                        return Err(bad("edge line before the `p` header"));
                    }
                    let [u, v] = nums[..] else {
                        return Err(bad("edge must be `e <u> <v>`"));
                    };
                    edges.push((u, v));
                }
                other => return Err(bad(&format!("unknown line tag {other:?}"))),
            }
        }
        let (n, m) = header.ok_or(Error::Parse {
            line: 0,
            msg: "missing `p <n> <m>` header".into(),
        })?;
        if edges.len() != m {
            return Err(Error::Parse {
                line: 0,
                msg: format!("header announces {m} edges, found {}", edges.len()),
            });
        }
        Graph::from_edges(n, edges)
    }

    /// Serializes to the text format with edges in lexicographic order.
    pub fn to_text(&self) -> String {
        let edges = self.edges();
        let mut out = format!("p {} {}\n", self.n(), edges.len());
        for (u, v) in edges {
            let _ = writeln!(out, "e {u} {v}");
        }
        out
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Graph::parse(s)
    }
}

/// `(a ∩ mask) ⊆ b`, block-wise without allocating.
#[inline]
pub(crate) fn subset_within(a: &FixedBitSet, mask: &FixedBitSet, b: &FixedBitSet) -> bool {
    a.as_slice()
        .iter()
        .zip(mask.as_slice())
        .zip(b.as_slice())
        .all(|((&x, &m), &y)| x & m & !y == 0)
}

/// Builds a bit set of capacity `n` from ids.
pub fn vertex_set(n: usize, ids: impl IntoIterator<Item = usize>) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    for v in ids {
        s.insert(v);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_small_path() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert!(g.is_connected());
    }

    #[test]
    fn single_vertex() {
        let g = Graph::from_edges(1, []).unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.edge_count(), 0);
        assert!(g.is_connected());
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            Graph::from_edges(4, [(0, 1), (1, 1)]),
            Err(Error::SelfLoop(1))
        );
        assert_eq!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(1, 0))
        );
        assert_eq!(
            Graph::from_edges(3, [(0, 3)]),
            Err(Error::VertexOutOfRange { u: 0, v: 3, n: 3 })
        );
    }

    #[test]
    fn text_format_roundtrip_and_comments() {
        let text = "# a triangle with a tail\np 4 4\ne 0 1\n  e 1 2\n# mid comment\ne 2 0\ne 2 3";
        let g: Graph = text.parse().unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (0, 2), (1, 2), (2, 3)]);
        assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
        assert_eq!(g.to_text(), "p 4 4\ne 0 1\ne 0 2\ne 1 2\ne 2 3\n");
    }

    #[test]
    fn text_format_errors() {
        assert!(matches!(
            Graph::parse("p 3 2\ne 0 1\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(Graph::parse("e 0 1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(
            Graph::parse("p 3 1\nx 0 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert_eq!(Graph::parse("p 3 1\ne 2 2\n"), Err(Error::SelfLoop(2)));
    }

    #[test]
    fn induced_relabels_in_given_order() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let h = g.induced(&[2, 1, 0]);
        assert_eq!(h.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn domination() {
        // K4 minus the edge 2-3
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert!(g.dominates(0, 2));
        assert!(g.dominates(0, 1) && g.dominates(1, 0));
        assert!(!g.dominates(2, 3));
    }
}
