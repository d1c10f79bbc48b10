use super::{Verdict, Violation};
use crate::graph::{gates, vertex_set, DistanceMatrix, Graph};
use crate::{Error, Result};

/// `y` defeats the gate `c'` of `c` towards `x`: `d(c',y) >= 2` and neither
/// `d(c,y) = d(c,c') + d(c',y)` nor `d(x,y) = d(x,c') + d(c',y)`.
#[inline]
pub(crate) fn blocks_gate(d: &DistanceMatrix, c: usize, x: usize, cp: usize, y: usize) -> bool {
    let cy = d.get(cp, y);
    cy >= 2 && d.get(c, y) != d.get(c, cp) + cy && d.get(x, y) != d.get(x, cp) + cy
}

/// First `y` among `ys` that defeats the gate `c'` (see (P3)), if any.
pub fn p3_blocker(
    d: &DistanceMatrix,
    c: usize,
    x: usize,
    c_prime: usize,
    ys: impl IntoIterator<Item = usize>,
) -> Option<usize> {
    ys.into_iter().find(|&y| blocks_gate(d, c, x, c_prime, y))
}

/// Four-point condition over all ordered quadruples `(c, c', x, y)`.
pub fn check_p1(g: &Graph, d: &DistanceMatrix) -> Result<Verdict> {
    d.require_connected()?;
    let n = g.n();
    for c in 0..n {
        for cp in 0..n {
            for x in 0..n {
                for y in 0..n {
                    let sums = [
                        d.get(c, cp) + d.get(x, y),
                        d.get(c, x) + d.get(cp, y),
                        d.get(c, y) + d.get(cp, x),
                    ];
                    let mut s = sums;
                    s.sort_unstable();
                    if s[1] != s[2] {
                        return Ok(Verdict::Fails(Violation::FourPoint {
                            c,
                            c_prime: cp,
                            x,
                            y,
                            sums,
                        }));
                    }
                }
            }
        }
    }
    Ok(Verdict::Holds(()))
}

/// (P2) over all `(c, x, c', y)` with `d(c,x) >= 2`, `c' ∈ N(c,x)` and
/// `d(c',y) >= 2`.
pub fn check_p2(g: &Graph, d: &DistanceMatrix) -> Result<Verdict> {
    d.require_connected()?;
    let n = g.n();
    for c in 0..n {
        for x in 0..n {
            if d.get(c, x) < 2 {
                continue;
            }
            for cp in gates(g, d, c, x) {
                if let Some(y) = p3_blocker(d, c, x, cp, 0..n) {
                    return Ok(Verdict::Fails(Violation::P2 { c, x, c_prime: cp, y }));
                }
            }
        }
    }
    Ok(Verdict::Holds(()))
}

/// C(c,x): gates of `c` towards `x` inside `r` whose closed neighbourhood
/// contains the closed neighbourhood of every gate in N(c,x).
pub fn compute_c(g: &Graph, d: &DistanceMatrix, r: &[usize], c: usize, x: usize) -> Result<Vec<usize>> {
    if !r.contains(&c) {
        return Err(Error::Precondition(format!("c = {c} is not in R")));
    }
    let all = crate::graph::gated_neighbors(g, d, c, x)?;
    Ok(all
        .iter()
        .copied()
        .filter(|u| r.contains(u))
        .filter(|&u| all.iter().all(|&v| g.dominates(u, v)))
        .collect())
}

/// (P3) for a fixed choice of R: N[R] = V(G), and every `c ∈ R`, `x` with
/// `d(c,x) >= 2` has a gate `c' ∈ N_R(c,x)` that no `y` defeats.
pub fn check_p3_with_r(g: &Graph, d: &DistanceMatrix, r: &[usize]) -> Result<Verdict> {
    d.require_connected()?;
    let n = g.n();
    if let Some(&v) = r.iter().find(|&&v| v >= n) {
        return Err(Error::InvalidSubgraph(format!("vertex {v} is outside 0..{n}")));
    }
    let in_r = vertex_set(n, r.iter().copied());
    if let Some(v) = (0..n).find(|&v| g.closed_neighborhood(v).is_disjoint(&in_r)) {
        return Ok(Verdict::Fails(Violation::Uncovered { v }));
    }
    for c in in_r.ones() {
        for x in 0..n {
            if d.get(c, x) < 2 {
                continue;
            }
            let mut blockers = Vec::new();
            let mut found = false;
            for cp in gates(g, d, c, x).filter(|&v| in_r.contains(v)) {
                match p3_blocker(d, c, x, cp, 0..n) {
                    Some(y) => blockers.push((cp, y)),
                    None => {
                        found = true;
                        break;
                    }
                }
            }
            if !found {
                return Ok(Verdict::Fails(Violation::NoP3Gate { c, x, blockers }));
            }
        }
    }
    Ok(Verdict::Holds(()))
}
