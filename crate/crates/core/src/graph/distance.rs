use std::collections::VecDeque;

use super::Graph;
use crate::{Error, Result};

/// Sentinel distance for pairs in different components.
pub const UNREACHABLE: u32 = u32::MAX;

/// Dense all-pairs shortest-path table for an unweighted graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    /// One breadth-first search per source.
    pub fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut d = vec![UNREACHABLE; n * n];
        let mut queue = VecDeque::with_capacity(n);
        for s in 0..n {
            let row = &mut d[s * n..(s + 1) * n];
            row[s] = 0;
            queue.clear();
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                let next = row[v] + 1;
                for &w in g.neighbors(v) {
                    if row[w] == UNREACHABLE {
                        row[w] = next;
                        queue.push_back(w);
                    }
                }
            }
        }
        DistanceMatrix { n, d }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.d[u * self.n + v]
    }

    #[inline]
    pub fn row(&self, u: usize) -> &[u32] {
        &self.d[u * self.n..(u + 1) * self.n]
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.d.iter().all(|&x| x != UNREACHABLE)
    }

    /// Largest finite distance, or `None` when disconnected or empty.
    pub fn diameter(&self) -> Option<u32> {
        if !self.is_connected() {
            return None;
        }
        self.d.iter().copied().max()
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }
}

pub fn all_pairs_distances(g: &Graph) -> DistanceMatrix {
    DistanceMatrix::new(g)
}

/// N(c, x): neighbours of `c` on some shortest `c`–`x` path. Requires
/// `d(c, x) >= 2`.
pub fn gated_neighbors(g: &Graph, d: &DistanceMatrix, c: usize, x: usize) -> Result<Vec<usize>> {
    let dist = d.get(c, x);
    if dist == UNREACHABLE {
        return Err(Error::Unreachable(c, x));
    }
    if dist < 2 {
        return Err(Error::TooClose { c, x, dist });
    }
    Ok(g
        .neighbors(c)
        .iter()
        .copied()
        .filter(|&v| d.get(v, x) + 1 == dist)
        .collect())
}

/// A shortest `u`–`v` path, always stepping to the lowest-id neighbour that
/// gets closer to `v`. `None` when `v` is unreachable.
pub fn shortest_path(g: &Graph, d: &DistanceMatrix, u: usize, v: usize) -> Option<Vec<usize>> {
    if d.get(u, v) == UNREACHABLE {
        return None;
    }
    let mut path = vec![u];
    let mut cur = u;
    while cur != v {
        cur = *g
            .neighbors(cur)
            .iter()
            .find(|&&w| d.get(w, v) + 1 == d.get(cur, v))
            .expect("a finite distance has a predecessor");
        path.push(cur);
    }
    Some(path)
}

/// Same as [`gated_neighbors`] without the precondition check; callers have
/// already established `2 <= d(c, x) < UNREACHABLE`.
#[inline]
pub(crate) fn gates<'a>(g: &'a Graph, d: &'a DistanceMatrix, c: usize, x: usize) -> impl Iterator<Item = usize> + 'a {
    let dist = d.get(c, x);
    let row = d.row(x);
    g.neighbors(c)
        .iter()
        .copied()
        .filter(move |&v| row[v] + 1 == dist)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn path_and_cycle_distances() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let d = all_pairs_distances(&p3);
        assert_eq!(d.get(0, 2), 2);
        assert_eq!(d.diameter(), Some(2));

        let c4 = cycle(4);
        let d = all_pairs_distances(&c4);
        assert_eq!(d.get(0, 2), 2);
        assert_eq!(d.get(1, 3), 2);
        assert_eq!(d.get(0, 1), 1);
    }

    #[test]
    fn shortest_path_prefers_low_ids() {
        let c6 = cycle(6);
        let d = all_pairs_distances(&c6);
        assert_eq!(shortest_path(&c6, &d, 0, 3), Some(vec![0, 1, 2, 3]));
        assert_eq!(shortest_path(&c6, &d, 2, 2), Some(vec![2]));
    }

    #[test]
    fn disconnected_pairs_use_sentinel() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let d = all_pairs_distances(&g);
        assert_eq!(d.get(0, 2), UNREACHABLE);
        assert!(!d.is_connected());
        assert_eq!(d.diameter(), None);
        assert_eq!(gated_neighbors(&g, &d, 0, 2), Err(Error::Unreachable(0, 2)));
    }

    #[test]
    fn gated_neighbors_examples() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let d = all_pairs_distances(&p3);
        assert_eq!(gated_neighbors(&p3, &d, 0, 2).unwrap(), vec![1]);
        assert_eq!(
            gated_neighbors(&p3, &d, 0, 1),
            Err(Error::TooClose { c: 0, x: 1, dist: 1 })
        );

        let c4 = cycle(4);
        let d = all_pairs_distances(&c4);
        assert_eq!(gated_neighbors(&c4, &d, 0, 2).unwrap(), vec![1, 3]);
    }
}
