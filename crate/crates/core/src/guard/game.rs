use serde::Serialize;

use crate::graph::{isometry_violation, DistanceMatrix, Graph, SubgraphView};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Turn {
    Cop,
    Robber,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Winner {
    Cop,
    Robber,
}

/// Solution of the one-cop guarding game on a region.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GuardGameResult {
    pub winner: Winner,
    /// Lowest start vertex from which the cop wins against every robber start.
    pub start: Option<usize>,
    /// Cop-to-move states `(c, r)` from which the cop wins.
    pub cop_winning_region: Vec<(usize, usize)>,
    /// For every cop start `c0`, the lowest robber start `r0` that beats it.
    pub robber_replies: Vec<(usize, usize)>,
    #[serde(skip)]
    region: Vec<usize>,
    #[serde(skip)]
    n: usize,
    #[serde(skip)]
    robber_wins: Vec<bool>,
}

impl GuardGameResult {
    /// Whether the robber wins from `(c, r)` with `turn` to move. `c` must be
    /// in the region and differ from `r`.
    pub fn robber_wins(&self, c: usize, r: usize, turn: Turn) -> bool {
        let i = self.region.binary_search(&c).expect("cop vertex in region");
        self.robber_wins[index(self.n, i, r, turn)]
    }
}

fn index(n: usize, i: usize, r: usize, turn: Turn) -> usize {
    (i * n + r) * 2 + usize::from(turn == Turn::Robber)
}

/// Decides the guarding game exactly. H must be isometric in G and `region`
/// a non-empty subset of V(H). The cop starts anywhere in `region`,
/// the robber then starts anywhere else, and the cop moves first. The cop
/// moves inside `region`, except that it may always step onto an adjacent
/// robber. The robber wins if it can stand in H outside N[c] with the cop to
/// move infinitely often without being captured.
pub fn solve_guard_game(g: &Graph, h: &[usize], region: &[usize]) -> Result<GuardGameResult> {
    let n = g.n();
    let mut region = region.to_vec();
    region.sort_unstable();
    region.dedup();
    if region.is_empty() {
        return Err(Error::InvalidParameters("region is empty".into()));
    }
    if let Some(&v) = region.iter().chain(h).find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange { u: v, v, n });
    }
    let view = SubgraphView::new(g, h)?;
    if let Some(w) = isometry_violation(&view, &DistanceMatrix::new(g)) {
        return Err(w.into());
    }
    let mut in_h = vec![false; n];
    h.iter().for_each(|&v| in_h[v] = true);
    if let Some(&v) = region.iter().find(|&&v| !in_h[v]) {
        return Err(Error::InvalidSubgraph(format!("region vertex {v} is not in H")));
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &c) in region.iter().enumerate() {
        pos[c] = i;
    }

    let total = region.len() * n * 2 + 1;
    let sink = total - 1;
    let exists = |s: usize| s == sink || (s / 2) % n != region[s / 2 / n];
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); total];
    let mut target = vec![false; total];
    for (i, &c) in region.iter().enumerate() {
        for r in (0..n).filter(|&r| r != c) {
            let cop = index(n, i, r, Turn::Cop);
            let near = g.closed_neighborhood(c).contains(r);
            target[cop] = in_h[r] && !near;
            if near {
                succ[cop].push(sink);
            }
            for c2 in g.closed_neighborhood(c).ones().filter(|&v| pos[v] != usize::MAX && v != r) {
                succ[cop].push(index(n, pos[c2], r, Turn::Robber));
            }
            let rob = index(n, i, r, Turn::Robber);
            for r2 in g.closed_neighborhood(r).ones() {
                succ[rob].push(if r2 == c { sink } else { index(n, i, r2, Turn::Cop) });
            }
        }
    }
    succ[sink].push(sink);
    let cop_owned = |s: usize| s == sink || s.is_multiple_of(2);

    // attractor of `goal` inside `w` for the robber or the cop
    let attractor = |w: &[bool], goal: &[bool], for_robber: bool| -> Vec<bool> {
        let mut attr: Vec<bool> = (0..total).map(|s| w[s] && goal[s]).collect();
        loop {
            let mut changed = false;
            for s in 0..total {
                if !w[s] || attr[s] || !exists(s) {
                    continue;
                }
                let mine = cop_owned(s) != for_robber;
                let pull = if mine {
                    // states outside w are already won by the cop
                    succ[s].iter().any(|&t| if for_robber { w[t] && attr[t] } else { !w[t] || attr[t] })
                } else {
                    // the opponent escapes via any successor in w outside attr;
                    // successors outside w are already lost for the robber
                    let escape = |t: usize| if for_robber { !w[t] || !attr[t] } else { w[t] && !attr[t] };
                    !succ[s].iter().any(|&t| escape(t))
                };
                if pull {
                    attr[s] = true;
                    changed = true;
                }
            }
            if !changed {
                return attr;
            }
        }
    };

    let mut w: Vec<bool> = (0..total).map(|s| s != sink && exists(s)).collect();
    loop {
        let goal: Vec<bool> = (0..total).map(|s| target[s] && w[s]).collect();
        let reach = attractor(&w, &goal, true);
        let trap: Vec<bool> = (0..total).map(|s| w[s] && !reach[s]).collect();
        if !trap.iter().any(|&b| b) {
            break;
        }
        let lost = attractor(&w, &trap, false);
        for s in 0..total {
            if lost[s] {
                w[s] = false;
            }
        }
    }

    let mut cop_winning_region = Vec::new();
    let mut robber_replies = Vec::new();
    let mut start = None;
    for (i, &c) in region.iter().enumerate() {
        let mut reply = None;
        for r in (0..n).filter(|&r| r != c) {
            if w[index(n, i, r, Turn::Cop)] {
                reply.get_or_insert(r);
            } else {
                cop_winning_region.push((c, r));
            }
        }
        match reply {
            Some(r) => robber_replies.push((c, r)),
            None => {
                start.get_or_insert(c);
            }
        }
    }
    Ok(GuardGameResult {
        winner: if start.is_some() { Winner::Cop } else { Winner::Robber },
        start,
        cop_winning_region,
        robber_replies,
        region,
        n,
        robber_wins: w,
    })
}
