use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::{subset_within, Graph};
use crate::{Error, Result};

/// Partition of the vertex set into classes of equal closed neighbourhood.
/// Classes are sorted internally and ordered by their smallest member.
pub fn closed_twin_classes(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        if class_of[v] != usize::MAX {
            continue;
        }
        let id = classes.len();
        class_of[v] = id;
        let mut class = vec![v];
        // twins are adjacent, so only neighbours need checking
        for &w in g.neighbors(v) {
            if w > v && class_of[w] == usize::MAX && g.closed_neighborhood(v) == g.closed_neighborhood(w) {
                class_of[w] = id;
                class.push(w);
            }
        }
        classes.push(class);
    }
    classes
}

/// Biconnected components and cut vertices of a connected graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    /// Vertex set of each block, sorted; blocks ordered lexicographically.
    pub blocks: Vec<Vec<usize>>,
    /// Vertices lying in two or more blocks, ascending.
    pub cut_vertices: Vec<usize>,
}

/// Hopcroft–Tarjan with an explicit edge stack. A bridge forms its own
/// two-vertex block; `K1` is a single one-vertex block.
pub fn blocks(g: &Graph) -> Result<BlockDecomposition> {
    let n = g.n();
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if n == 1 {
        return Ok(BlockDecomposition {
            blocks: vec![vec![0]],
            cut_vertices: vec![],
        });
    }
    const NONE: usize = usize::MAX;
    let mut disc = vec![NONE; n];
    let mut low = vec![0usize; n];
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut mark = vec![false; n];
    // (vertex, dfs parent, next neighbour index)
    let mut stack: Vec<(usize, usize, usize)> = vec![(0, NONE, 0)];
    disc[0] = 0;
    let mut timer = 1;
    while let Some(top) = stack.last_mut() {
        let (v, parent, idx) = *top;
        if idx < g.degree(v) {
            top.2 += 1;
            let w = g.neighbors(v)[idx];
            if disc[w] == NONE {
                disc[w] = timer;
                low[w] = timer;
                timer += 1;
                edge_stack.push((v, w));
                stack.push((w, v, 0));
            } else if w != parent && disc[w] < disc[v] {
                low[v] = low[v].min(disc[w]);
                edge_stack.push((v, w));
            }
        } else {
            stack.pop();
            if let Some(&(u, _, _)) = stack.last() {
                low[u] = low[u].min(low[v]);
                if low[v] >= disc[u] {
                    let mut block = Vec::new();
                    while let Some((a, b)) = edge_stack.pop() {
                        for x in [a, b] {
                            if !mark[x] {
                                mark[x] = true;
                                block.push(x);
                            }
                        }
                        if (a, b) == (u, v) {
                            break;
                        }
                    }
                    for &x in &block {
                        mark[x] = false;
                    }
                    block.sort_unstable();
                    out.push(block);
                }
            }
        }
    }
    out.sort();
    let mut count = vec![0usize; n];
    for b in &out {
        for &v in b {
            count[v] += 1;
        }
    }
    let cut_vertices = (0..n).filter(|&v| count[v] >= 2).collect();
    Ok(BlockDecomposition {
        blocks: out,
        cut_vertices,
    })
}

/// Repeatedly deletes the lowest-id dominated vertex (some other live vertex
/// `u` with N[v] ⊆ N[u] in the remaining graph). Returns the elimination
/// order, ending with the surviving vertex, when the graph dismantles to a
/// single vertex.
pub fn is_dismantlable(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    if n == 0 {
        return None;
    }
    let mut alive = FixedBitSet::with_capacity(n);
    alive.insert_range(..);
    let mut order = Vec::with_capacity(n);
    for _ in 1..n {
        let victim = alive.ones().find(|&v| {
            let nv = g.closed_neighborhood(v);
            g.neighbors(v)
                .iter()
                .any(|&u| alive.contains(u) && subset_within(nv, &alive, g.closed_neighborhood(u)))
        })?;
        alive.remove(victim);
        order.push(victim);
    }
    order.extend(alive.ones());
    Some(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, e.iter().copied()).unwrap()
    }

    #[test]
    fn twin_classes() {
        let k4_minus = g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]);
        assert_eq!(closed_twin_classes(&k4_minus), vec![vec![0, 1], vec![2], vec![3]]);
        let k3 = g(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(closed_twin_classes(&k3), vec![vec![0, 1, 2]]);
        let p4 = g(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(closed_twin_classes(&p4), vec![vec![0], vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn blocks_of_path_bowtie_and_cycle() {
        let p4 = g(4, &[(0, 1), (1, 2), (2, 3)]);
        let b = blocks(&p4).unwrap();
        assert_eq!(b.blocks, vec![vec![0, 1], vec![1, 2], vec![2, 3]]);
        assert_eq!(b.cut_vertices, vec![1, 2]);

        let bowtie = g(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]);
        let b = blocks(&bowtie).unwrap();
        assert_eq!(b.blocks, vec![vec![0, 1, 2], vec![2, 3, 4]]);
        assert_eq!(b.cut_vertices, vec![2]);

        let c5 = g(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let b = blocks(&c5).unwrap();
        assert_eq!(b.blocks, vec![vec![0, 1, 2, 3, 4]]);
        assert!(b.cut_vertices.is_empty());
    }

    #[test]
    fn blocks_edge_cases() {
        assert_eq!(
            blocks(&g(1, &[])).unwrap(),
            BlockDecomposition {
                blocks: vec![vec![0]],
                cut_vertices: vec![]
            }
        );
        assert_eq!(blocks(&g(3, &[(0, 1)])), Err(Error::Disconnected));
    }

    #[test]
    fn dismantling() {
        let tree = g(6, &[(0, 1), (0, 2), (2, 3), (2, 4), (4, 5)]);
        let order = is_dismantlable(&tree).unwrap();
        assert_eq!(order.len(), 6);
        // lowest-id dominated vertex first: 0 is not dominated, leaf 1 is
        assert_eq!(order[0], 1);
        let c4 = g(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(is_dismantlable(&c4), None);
        assert_eq!(is_dismantlable(&g(1, &[])), Some(vec![0]));
    }
}
