use serde::Serialize;

use super::{Verdict, Violation};
use crate::graph::{blocks, closed_twin_classes, Graph};
use crate::{Error, Result};

/// Joint blocks of an extended block graph: the closed-twin classes sitting
/// at cut vertices of the twin contraction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JointStructure {
    /// Sorted, ordered by smallest member.
    pub joint_blocks: Vec<Vec<usize>>,
    /// Union of the joint blocks, ascending.
    pub joints: Vec<usize>,
}

/// Every block induces a clique. The witness is the first non-adjacent pair
/// in the first offending block.
pub fn is_block_graph(g: &Graph) -> Result<Verdict> {
    let bd = blocks(g)?;
    for block in &bd.blocks {
        for (i, &u) in block.iter().enumerate() {
            if let Some(&v) = block[i + 1..].iter().find(|&&v| !g.has_edge(u, v)) {
                return Ok(Verdict::Fails(Violation::NonCliqueBlock {
                    u,
                    v,
                    contracted: false,
                }));
            }
        }
    }
    Ok(Verdict::Holds(()))
}

/// Contracts each closed-twin class to one vertex. Returns the contraction
/// (class `i` becomes vertex `i`, classes ordered by smallest member) and
/// the class of every original vertex.
pub fn twin_contraction(g: &Graph) -> (Graph, Vec<usize>) {
    let classes = closed_twin_classes(g);
    let mut class_of = vec![0; g.n()];
    for (i, cl) in classes.iter().enumerate() {
        for &v in cl {
            class_of[v] = i;
        }
    }
    let mut edges = Vec::new();
    for (i, cl) in classes.iter().enumerate() {
        for &w in g.neighbors(cl[0]) {
            let j = class_of[w];
            if i < j {
                edges.push((i, j));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let h = Graph::from_edges(classes.len(), edges).expect("contraction of a simple graph is simple");
    (h, class_of)
}

/// Accepts exactly when the closed-twin contraction is a block graph. Blowing
/// up a non-cut vertex of a block graph keeps it a block graph, so this is
/// the same as being a blow-up of a block graph at its cut vertices.
pub fn is_extended_block_graph(g: &Graph) -> Result<Verdict<JointStructure>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let classes = closed_twin_classes(g);
    let (h, _) = twin_contraction(g);
    match is_block_graph(&h)? {
        Verdict::Fails(w) => Ok(Verdict::Fails(match w {
            Violation::NonCliqueBlock { u, v, .. } => Violation::NonCliqueBlock {
                u: classes[u][0],
                v: classes[v][0],
                contracted: true,
            },
            other => other,
        })),
        Verdict::Holds(()) => {
            let cut = blocks(&h)?.cut_vertices;
            let joint_blocks: Vec<Vec<usize>> = cut.iter().map(|&i| classes[i].clone()).collect();
            let mut joints: Vec<usize> = joint_blocks.iter().flatten().copied().collect();
            joints.sort_unstable();
            Ok(Verdict::Holds(JointStructure {
                joint_blocks,
                joints,
            }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::all_pairs_distances;

    fn g(n: usize, e: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, e.iter().copied()).unwrap()
    }

    #[test]
    fn block_graph_examples() {
        let bowtie = g(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]);
        assert!(is_block_graph(&bowtie).unwrap().holds());
        let c4 = g(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let v = is_block_graph(&c4).unwrap();
        assert_eq!(
            v.violation(),
            Some(&Violation::NonCliqueBlock {
                u: 0,
                v: 2,
                contracted: false
            })
        );
        let d = all_pairs_distances(&c4);
        assert!(v.violation().unwrap().reproduces(&c4, &d, None));
    }

    #[test]
    fn extended_block_examples() {
        let k4_minus = g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]);
        let js = is_extended_block_graph(&k4_minus).unwrap().ok().unwrap();
        assert_eq!(js.joint_blocks, vec![vec![0, 1]]);
        assert_eq!(js.joints, vec![0, 1]);

        let c4 = g(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let v = is_extended_block_graph(&c4).unwrap();
        let w = v.violation().unwrap();
        assert!(matches!(w, Violation::NonCliqueBlock { contracted: true, .. }));
        assert!(w.reproduces(&c4, &all_pairs_distances(&c4), None));

        let p4 = g(4, &[(0, 1), (1, 2), (2, 3)]);
        let js = is_extended_block_graph(&p4).unwrap().ok().unwrap();
        assert_eq!(js.joint_blocks, vec![vec![1], vec![2]]);
    }

    #[test]
    fn complete_graph_has_no_joints() {
        let k3 = g(3, &[(0, 1), (1, 2), (0, 2)]);
        let js = is_extended_block_graph(&k3).unwrap().ok().unwrap();
        assert!(js.joint_blocks.is_empty());
    }
}
