//! One cop guarding an isometric subgraph H of a host G.
//!
//! The cop keeps the potential
//! `f(c, r) = min_{x ∈ V(H)} d(r, x) - d(c, x)` from decreasing. Once
//! `f >= 0`, every vertex of H is at least as close to the cop as to the
//! robber, so entering H means capture on the next cop move.

mod game;
mod simulate;

use serde::Serialize;

use crate::characterize::{find_backbone, BackboneCertificate, BackboneSearch};
use crate::graph::{gates, isometry_violation, DistanceMatrix, Graph, SubgraphView};
use crate::{Error, Result};

pub use game::{solve_guard_game, GuardGameResult, Turn, Winner};
pub use simulate::{
    audit_escape, audit_monotonicity, audit_post_guard, simulate_guard, EscapeBound, Forcing,
    GreedyRobber, GuardOutcome, GuardRun, GuardState, MonotonicityFailure, RandomRobber,
    RobberPolicy, RoundRecord, ScriptedRobber, StayingRobber,
};

/// Host graph, guarded subgraph H and the set R of positions the guarding
/// cop may occupy. All ids are host ids.
#[derive(Clone, Debug)]
pub struct GuardArena {
    g: Graph,
    h: SubgraphView,
    r: Vec<usize>,
    in_h: Vec<bool>,
    in_r: Vec<bool>,
    d: DistanceMatrix,
    /// `f(c, r)` at `c * n + r` for `c ∈ V(H)`; other rows are unused.
    pot: Vec<i32>,
}

impl GuardArena {
    /// Validates that G is connected, H is isometric, R ⊆ V(H) and every
    /// vertex of H lies in N[R]. `r = None` means R = V(H).
    pub fn new(g: Graph, h_vertices: &[usize], r: Option<&[usize]>) -> Result<Self> {
        let d = DistanceMatrix::new(&g);
        d.require_connected()?;
        let h = SubgraphView::new(&g, h_vertices)?;
        if h.is_empty() {
            return Err(Error::InvalidSubgraph("guarded subgraph is empty".into()));
        }
        if let Some(w) = isometry_violation(&h, &d) {
            return Err(w.into());
        }
        let n = g.n();
        let mut r: Vec<usize> = r.map_or_else(|| h_vertices.to_vec(), <[usize]>::to_vec);
        r.sort_unstable();
        r.dedup();
        if r.is_empty() {
            return Err(Error::InvalidSubgraph("guard set R is empty".into()));
        }
        let mut in_h = vec![false; n];
        h_vertices.iter().for_each(|&v| in_h[v] = true);
        let mut in_r = vec![false; n];
        for &v in &r {
            if v >= n || !in_h[v] {
                return Err(Error::InvalidSubgraph(format!("R vertex {v} is not in H")));
            }
            in_r[v] = true;
        }
        if let Some(&v) = h_vertices
            .iter()
            .find(|&&v| !g.closed_neighborhood(v).ones().any(|u| in_r[u]))
        {
            return Err(Error::InvalidSubgraph(format!("H vertex {v} is not in N[R]")));
        }
        let mut pot = vec![0i32; n * n];
        for &c in h_vertices {
            for rob in 0..n {
                pot[c * n + rob] = h_vertices
                    .iter()
                    .map(|&x| d.get(rob, x) as i32 - d.get(c, x) as i32)
                    .min()
                    .expect("H is non-empty");
            }
        }
        Ok(GuardArena {
            g,
            h,
            r,
            in_h,
            in_r,
            d,
            pot,
        })
    }

    /// Builds the arena with R taken from a backbone certificate of H.
    pub fn with_backbone(g: Graph, h_vertices: &[usize], limit: usize) -> Result<(Self, BackboneCertificate)> {
        let h = SubgraphView::new(&g, h_vertices)?;
        let dh = DistanceMatrix::new(h.graph());
        let cert = match find_backbone(h.graph(), &dh, limit)? {
            BackboneSearch::Found(cert) => cert,
            other => {
                return Err(Error::Precondition(format!(
                    "H has no backbone certificate ({other:?})"
                )))
            }
        };
        let Some(local_r) = &cert.guard_set else {
            return Err(Error::Precondition("backbone certificate has no guard set".into()));
        };
        let r: Vec<usize> = local_r.iter().map(|&v| h.parent_id(v)).collect();
        Ok((GuardArena::new(g, h_vertices, Some(&r))?, cert))
    }

    pub fn graph(&self) -> &Graph {
        &self.g
    }

    pub fn subgraph(&self) -> &SubgraphView {
        &self.h
    }

    pub fn distances(&self) -> &DistanceMatrix {
        &self.d
    }

    /// Sorted guard set R.
    pub fn guard_set(&self) -> &[usize] {
        &self.r
    }

    pub fn in_h(&self, v: usize) -> bool {
        self.in_h[v]
    }

    pub fn in_r(&self, v: usize) -> bool {
        self.in_r[v]
    }

    /// `f(c, r)`. Requires `c ∈ V(H)`.
    #[inline]
    pub fn potential(&self, c: usize, r: usize) -> i32 {
        debug_assert!(self.in_h[c]);
        self.pot[c * self.g.n() + r]
    }

    /// The robber stands in H but outside N[c].
    #[inline]
    pub fn is_breach(&self, c: usize, r: usize) -> bool {
        self.in_h[r] && !self.g.closed_neighborhood(c).contains(r)
    }
}

/// Which rule produced a guard move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GuardCase {
    /// The robber stepped into N[c] ∩ V(H); the cop moves onto it.
    Capture,
    /// `f` was negative and strictly increased.
    Stay,
    /// `f` was zero and is still non-negative.
    StayZero,
    /// The cop steps to a gate of R towards a minimizing `x`.
    Advance,
}

/// The guarding cop's response after the robber moved to `r_new`.
///
/// `f_old <= 0` is the potential before the robber's move (callers clamp
/// positive values to 0). In the advance case, minimizers `x` of
/// `d(r_new, x) - d(c, x)` and gates `c' ∈ N_R(c, x)` are tried in
/// lexicographic order; the first `c'` such that no `y ∈ V(H)` with
/// `d(c', y) >= 2` breaks both `d(c, y) = 1 + d(c', y)` and
/// `d(x, y) = d(x, c') + d(c', y)` is taken.
pub fn guard_move(arena: &GuardArena, c: usize, r_new: usize, f_old: i32) -> Result<(usize, GuardCase)> {
    if f_old > 0 {
        return Err(Error::Precondition(format!("f_old = {f_old} must be at most 0")));
    }
    if !arena.in_r[c] {
        return Err(Error::Precondition(format!("cop vertex {c} is not in R")));
    }
    if arena.in_h[r_new] && arena.g.closed_neighborhood(c).contains(r_new) {
        return Ok((r_new, GuardCase::Capture));
    }
    let f_new = arena.potential(c, r_new);
    if f_old < 0 && f_new > f_old {
        return Ok((c, GuardCase::Stay));
    }
    if f_old == 0 && f_new >= 0 {
        return Ok((c, GuardCase::StayZero));
    }
    let d = &arena.d;
    let h = arena.h.vertices();
    let mut minimizers: Vec<usize> = h
        .iter()
        .copied()
        .filter(|&x| d.get(r_new, x) as i32 - d.get(c, x) as i32 == f_new)
        .collect();
    minimizers.sort_unstable();
    for &x in &minimizers {
        if d.get(c, x) < 2 {
            continue;
        }
        let mut candidates: Vec<usize> = gates(&arena.g, d, c, x).filter(|&v| arena.in_r[v]).collect();
        candidates.sort_unstable();
        for cp in candidates {
            let blocked = h.iter().any(|&y| {
                let cy = d.get(cp, y);
                cy >= 2 && d.get(c, y) != 1 + cy && d.get(x, y) != d.get(x, cp) + cy
            });
            if !blocked {
                return Ok((cp, GuardCase::Advance));
            }
        }
    }
    Err(Error::NoGuardWitness {
        c,
        x: minimizers.first().copied().unwrap_or(c),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cycle, figure1_instance, path};

    #[test]
    fn potential_examples() {
        let a = GuardArena::new(path(4), &[0, 1, 2, 3], None).unwrap();
        assert_eq!(a.potential(1, 3), -2);
        assert_eq!(a.potential(2, 2), 0);

        let (g, h) = figure1_instance();
        let a = GuardArena::new(g, h.vertices(), None).unwrap();
        let d = a.distances();
        let scan = (0..6).map(|x| d.get(6, x) as i32 - d.get(0, x) as i32).min().unwrap();
        assert_eq!(a.potential(0, 6), scan);
    }

    #[test]
    fn arena_rejects_bad_inputs() {
        let c6 = cycle(6);
        assert!(matches!(
            GuardArena::new(c6.clone(), &[0, 1, 2, 3, 4], None),
            Err(Error::NotIsometric { .. })
        ));
        assert!(GuardArena::new(c6.clone(), &[0, 1, 2], Some(&[0])).is_err());
        assert!(GuardArena::new(c6.clone(), &[0, 1, 2], Some(&[1, 4])).is_err());
        assert!(GuardArena::new(c6, &[0, 1, 2], Some(&[1])).is_ok());
    }

    #[test]
    fn stay_cases() {
        // C6 with H = 0-1-2-3; robber at 5 steps to 4
        let a = GuardArena::new(cycle(6), &[0, 1, 2, 3], None).unwrap();
        let f = a.potential(0, 5);
        assert_eq!(f, -1);
        // at 4 the robber is one step from 3 while the cop is three away
        let (c2, case) = guard_move(&a, 0, 4, f).unwrap();
        assert_eq!(case, GuardCase::Advance);
        assert_eq!(c2, 1);
        assert!(a.potential(c2, 4) >= f);

        // robber walking away from H raises f: Case 1
        let a = GuardArena::new(path(5), &[0, 1, 2], None).unwrap();
        assert_eq!(a.potential(2, 4), 2);
        assert_eq!(a.potential(0, 4), 0);
        assert_eq!(guard_move(&a, 0, 4, -1).unwrap(), (0, GuardCase::Stay));
        assert_eq!(guard_move(&a, 2, 4, 0).unwrap(), (2, GuardCase::StayZero));
        assert_eq!(guard_move(&a, 0, 1, -1).unwrap(), (1, GuardCase::Capture));
        assert!(guard_move(&a, 0, 4, 1).is_err());
    }
}
