use serde::Serialize;

use super::{DistanceMatrix, Graph};
use crate::{Error, Result};

/// An induced subgraph of a parent graph. Local ids follow the order of
/// `vertices`; the induced graph is materialized once at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgraphView {
    vertices: Vec<usize>,
    local: Vec<Option<usize>>,
    graph: Graph,
}

impl SubgraphView {
    pub fn new(parent: &Graph, vertices: &[usize]) -> Result<Self> {
        let n = parent.n();
        let mut local = vec![None; n];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= n {
                return Err(Error::InvalidSubgraph(format!(
                    "vertex {v} is outside 0..{n}"
                )));
            }
            if local[v].is_some() {
                return Err(Error::InvalidSubgraph(format!("vertex {v} is repeated")));
            }
            local[v] = Some(i);
        }
        Ok(SubgraphView {
            vertices: vertices.to_vec(),
            local,
            graph: parent.induced(vertices),
        })
    }

    /// Parent ids, in local order.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// The induced graph on local ids.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, parent_id: usize) -> bool {
        self.local.get(parent_id).is_some_and(Option::is_some)
    }

    pub fn local_id(&self, parent_id: usize) -> Option<usize> {
        self.local.get(parent_id).copied().flatten()
    }

    pub fn parent_id(&self, local_id: usize) -> usize {
        self.vertices[local_id]
    }
}

/// A pair of subgraph vertices whose internal distance differs from the
/// parent distance. `internal` is [`super::UNREACHABLE`] when the subgraph
/// separates them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IsometryViolation {
    pub u: usize,
    pub v: usize,
    pub internal: u32,
    pub parent: u32,
}

impl From<IsometryViolation> for Error {
    fn from(w: IsometryViolation) -> Self {
        Error::NotIsometric {
            u: w.u,
            v: w.v,
            internal: w.internal,
            parent: w.parent,
        }
    }
}

/// First pair (in parent-id order of the view) whose distances disagree.
pub fn isometry_violation(h: &SubgraphView, d_parent: &DistanceMatrix) -> Option<IsometryViolation> {
    let dh = DistanceMatrix::new(h.graph());
    let k = h.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&i| h.parent_id(i));
    for (a, &i) in order.iter().enumerate() {
        for &j in &order[a + 1..] {
            let (u, v) = (h.parent_id(i), h.parent_id(j));
            let internal = dh.get(i, j);
            let parent = d_parent.get(u, v);
            if internal != parent {
                return Some(IsometryViolation {
                    u,
                    v,
                    internal,
                    parent,
                });
            }
        }
    }
    None
}

pub fn is_isometric(h: &SubgraphView, d_parent: &DistanceMatrix) -> bool {
    isometry_violation(h, d_parent).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::UNREACHABLE;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn view_rejects_bad_vertex_lists() {
        let g = cycle(4);
        assert!(SubgraphView::new(&g, &[0, 4]).is_err());
        assert!(SubgraphView::new(&g, &[1, 1]).is_err());
    }

    #[test]
    fn view_maps_ids() {
        let g = cycle(6);
        let h = SubgraphView::new(&g, &[4, 5, 0]).unwrap();
        assert_eq!(h.local_id(5), Some(1));
        assert_eq!(h.local_id(2), None);
        assert_eq!(h.parent_id(2), 0);
        assert_eq!(h.graph().edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn long_arc_of_c6_is_not_isometric() {
        let g = cycle(6);
        let d = DistanceMatrix::new(&g);
        let h = SubgraphView::new(&g, &[0, 1, 2, 3, 4]).unwrap();
        let w = isometry_violation(&h, &d).unwrap();
        assert_eq!(
            w,
            IsometryViolation {
                u: 0,
                v: 4,
                internal: 4,
                parent: 2
            }
        );
    }

    #[test]
    fn shortest_path_is_isometric() {
        let g = cycle(6);
        let d = DistanceMatrix::new(&g);
        let h = SubgraphView::new(&g, &[0, 1, 2, 3]).unwrap();
        assert!(is_isometric(&h, &d));
    }

    #[test]
    fn disconnected_view_reports_unreachable() {
        let g = cycle(6);
        let d = DistanceMatrix::new(&g);
        let h = SubgraphView::new(&g, &[0, 3]).unwrap();
        let w = isometry_violation(&h, &d).unwrap();
        assert_eq!(w.internal, UNREACHABLE);
        assert_eq!(w.parent, 3);
    }
}
