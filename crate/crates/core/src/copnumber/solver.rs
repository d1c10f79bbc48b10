use std::collections::VecDeque;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::graph::{DistanceMatrix, Graph};
use crate::guard::Turn;
use crate::{Error, Result};

/// Default cap on the number of game states an exact solve may allocate.
pub const DEFAULT_STATE_BUDGET: usize = 50_000_000;

/// Ranks sorted cop multisets of size `k` over `n` vertices in colex order.
#[derive(Clone, Debug)]
struct ConfigIndex {
    k: usize,
    /// `binom[a][b] = C(a, b)` for `a < n + k`, `b <= k`.
    binom: Vec<Vec<usize>>,
    /// Flat `k`-tuples in rank order.
    configs: Vec<u16>,
}

impl ConfigIndex {
    fn count(n: usize, k: usize) -> Option<usize> {
        // C(n + k - 1, k) with overflow checks
        let mut c: usize = 1;
        for i in 0..k {
            c = c.checked_mul(n + i)? / (i + 1);
        }
        Some(c)
    }

    fn new(n: usize, k: usize) -> Self {
        let top = n + k;
        let mut binom = vec![vec![0usize; k + 1]; top];
        for a in 0..top {
            binom[a][0] = 1;
            for b in 1..=k.min(a) {
                binom[a][b] = binom[a - 1][b - 1] + if b < a { binom[a - 1][b] } else { 0 };
            }
        }
        let count = Self::count(n, k).expect("checked by caller");
        let mut index = ConfigIndex {
            k,
            binom,
            configs: vec![0; count * k],
        };
        let mut cur = vec![0usize; k];
        loop {
            let rank = index.rank(&cur);
            for (slot, &v) in index.configs[rank * k..(rank + 1) * k].iter_mut().zip(&cur) {
                *slot = v as u16;
            }
            // next non-decreasing tuple
            let Some(pos) = (0..k).rev().find(|&i| cur[i] + 1 < n) else { break };
            let v = cur[pos] + 1;
            cur[pos..].iter_mut().for_each(|x| *x = v);
        }
        index
    }

    fn len(&self) -> usize {
        self.configs.len() / self.k
    }

    /// Rank of a sorted multiset: `sum C(a_i + i, i + 1)`.
    fn rank(&self, sorted: &[usize]) -> usize {
        sorted.iter().enumerate().map(|(i, &a)| self.binom[a + i][i + 1]).sum()
    }

    fn config(&self, rank: usize) -> impl Iterator<Item = usize> + '_ {
        self.configs[rank * self.k..(rank + 1) * self.k].iter().map(|&v| v as usize)
    }

    fn contains(&self, rank: usize, v: usize) -> bool {
        self.config(rank).any(|c| c == v)
    }

    /// Ranks of all configurations reachable in one cop move, deduplicated.
    fn moves(&self, g: &Graph, rank: usize, out: &mut Vec<usize>, scratch: &mut Vec<usize>) {
        out.clear();
        let cops: Vec<usize> = self.config(rank).collect();
        let options: Vec<Vec<usize>> = cops.iter().map(|&c| g.closed_neighborhood(c).ones().collect()).collect();
        let mut idx = vec![0usize; self.k];
        loop {
            scratch.clear();
            scratch.extend(idx.iter().zip(&options).map(|(&i, o)| o[i]));
            scratch.sort_unstable();
            out.push(self.rank(scratch));
            let Some(pos) = (0..self.k).rev().find(|&i| idx[i] + 1 < options[i].len()) else { break };
            idx[pos] += 1;
            idx[pos + 1..].iter_mut().for_each(|x| *x = 0);
        }
        out.sort_unstable();
        out.dedup();
    }
}

/// Solved `k`-cop game on one graph.
///
/// Cops are interchangeable, so positions are sorted multisets. Every state
/// is labelled cop-win or robber-win; cop-win states with the cops to move
/// carry the move that first made them winning, so following the policy
/// always reaches a state labelled earlier and play ends in capture.
#[derive(Clone)]
pub struct GameTable {
    g: Graph,
    index: ConfigIndex,
    /// Indexed by `(config * n + robber) * 2 + turn`.
    won: Vec<bool>,
    /// Config rank chosen by the cops, per `config * n + robber`.
    policy: Vec<u32>,
    start: Option<usize>,
}

impl fmt::Debug for GameTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GameTable")
            .field("n", &self.g.n())
            .field("k", &self.index.k)
            .field("states", &self.state_count())
            .field("cop_win", &self.is_cop_win())
            .finish()
    }
}

fn state(n: usize, config: usize, robber: usize, turn: Turn) -> usize {
    (config * n + robber) * 2 + usize::from(turn == Turn::Robber)
}

/// Exact solve of the game with `k` cops. Cops are placed first, then the
/// robber; the cops move first; each side may pass; capture happens when a
/// cop and the robber share a vertex after either move.
pub fn solve_k_cops(g: &Graph, k: usize, budget: usize) -> Result<GameTable> {
    if k == 0 {
        return Err(Error::InvalidParameters("k must be at least 1".into()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    if n > u16::MAX as usize {
        return Err(Error::InvalidParameters(format!("graph with {n} vertices is too large")));
    }
    let states = ConfigIndex::count(n, k)
        .and_then(|c| c.checked_mul(2 * n))
        .unwrap_or(usize::MAX);
    if states > budget || states / (2 * n) > u32::MAX as usize {
        return Err(Error::BudgetExceeded {
            states: states as u64,
            budget: budget as u64,
        });
    }
    let index = ConfigIndex::new(n, k);
    let configs = index.len();
    let mut won = vec![false; states];
    let mut policy = vec![u32::MAX; configs * n];
    // robber-to-move states still needing this many losing replies
    let mut pending: Vec<u16> = (0..configs * n)
        .map(|s| g.closed_neighborhood(s % n).count_ones(..) as u16)
        .collect();
    let mut queue = VecDeque::new();
    for ci in 0..configs {
        for v in index.config(ci) {
            for turn in [Turn::Cop, Turn::Robber] {
                let s = state(n, ci, v, turn);
                if !won[s] {
                    won[s] = true;
                    queue.push_back(s);
                }
            }
        }
    }
    let mut moves = Vec::new();
    let mut scratch = Vec::new();
    while let Some(s) = queue.pop_front() {
        let pos = s / 2;
        let (ci, r) = (pos / n, pos % n);
        if s % 2 == 0 {
            // cops to move at (ci, r) is won: robber moves into it from N[r]
            for r0 in g.closed_neighborhood(r).ones() {
                let p = state(n, ci, r0, Turn::Robber);
                if won[p] {
                    continue;
                }
                pending[ci * n + r0] -= 1;
                if pending[ci * n + r0] == 0 {
                    won[p] = true;
                    queue.push_back(p);
                }
            }
        } else {
            // moves are symmetric, so predecessors are the successors
            index.moves(g, ci, &mut moves, &mut scratch);
            for &cj in &moves {
                let p = state(n, cj, r, Turn::Cop);
                if !won[p] {
                    won[p] = true;
                    policy[cj * n + r] = ci as u32;
                    queue.push_back(p);
                }
            }
        }
    }
    let start = (0..configs).find(|&ci| (0..n).all(|r| won[state(n, ci, r, Turn::Cop)]));
    Ok(GameTable {
        g: g.clone(),
        index,
        won,
        policy,
        start,
    })
}

impl GameTable {
    pub fn k(&self) -> usize {
        self.index.k
    }

    pub fn graph(&self) -> &Graph {
        &self.g
    }

    pub fn state_count(&self) -> usize {
        self.won.len()
    }

    /// Some placement of the cops beats every robber placement.
    pub fn is_cop_win(&self) -> bool {
        self.start.is_some()
    }

    /// Lowest-ranked winning cop placement, sorted.
    pub fn start(&self) -> Option<Vec<usize>> {
        self.start.map(|ci| self.index.config(ci).collect())
    }

    fn rank(&self, cops: &[usize]) -> usize {
        assert_eq!(cops.len(), self.index.k, "wrong number of cops");
        let mut sorted = cops.to_vec();
        sorted.sort_unstable();
        self.index.rank(&sorted)
    }

    /// Label of a position; `cops` need not be sorted.
    pub fn cop_wins(&self, cops: &[usize], robber: usize, turn: Turn) -> bool {
        self.won[state(self.g.n(), self.rank(cops), robber, turn)]
    }

    /// Winning cop move (sorted new positions) from a cop-win position with
    /// the cops to move. `None` if the position is lost or already a capture.
    pub fn policy_move(&self, cops: &[usize], robber: usize) -> Option<Vec<usize>> {
        let ci = self.rank(cops);
        let p = self.policy[ci * self.g.n() + robber];
        (p != u32::MAX && !self.index.contains(ci, robber)).then(|| self.index.config(p as usize).collect())
    }

    /// Robber move keeping a robber-win position with the robber to move
    /// lost for the cops; lowest id first.
    pub fn robber_escape(&self, cops: &[usize], robber: usize) -> Option<usize> {
        let ci = self.rank(cops);
        let n = self.g.n();
        self.g
            .closed_neighborhood(robber)
            .ones()
            .find(|&r| !self.won[state(n, ci, r, Turn::Cop)])
    }

    /// For a robber-win table: robber start beating the given placement.
    pub fn robber_start(&self, cops: &[usize]) -> Option<usize> {
        let ci = self.rank(cops);
        let n = self.g.n();
        (0..n).find(|&r| !self.won[state(n, ci, r, Turn::Cop)])
    }

    /// Every robber-win position has a robber move or cop reply staying
    /// robber-win, and every cop-win position with the cops to move has a
    /// policy move to a cop-win position. Used as a self-check of the
    /// fixpoint.
    pub fn verify_labels(&self) -> bool {
        let n = self.g.n();
        let mut moves = Vec::new();
        let mut scratch = Vec::new();
        for ci in 0..self.index.len() {
            self.index.moves(&self.g, ci, &mut moves, &mut scratch);
            for r in 0..n {
                if self.index.contains(ci, r) {
                    continue;
                }
                let cop = self.won[state(n, ci, r, Turn::Cop)];
                let best = moves.iter().any(|&cj| self.won[state(n, cj, r, Turn::Robber)]);
                if cop != best {
                    return false;
                }
                let rob = self.won[state(n, ci, r, Turn::Robber)];
                let all = self.g.closed_neighborhood(r).ones().all(|r2| self.won[state(n, ci, r2, Turn::Cop)]);
                if rob != all {
                    return false;
                }
            }
        }
        true
    }
}

/// Result of [`cop_number`]: exact value, or more than `k_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CopNumber {
    Exactly(usize),
    Above(usize),
}

impl fmt::Display for CopNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CopNumber::Exactly(k) => write!(f, "{k}"),
            CopNumber::Above(k) => write!(f, ">{k}"),
        }
    }
}

impl Serialize for CopNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CopNumber::Exactly(k) => s.serialize_u64(*k as u64),
            CopNumber::Above(_) => s.collect_str(self),
        }
    }
}

/// Least `k <= k_max` for which the cops win.
pub fn cop_number(g: &Graph, k_max: usize, budget: usize) -> Result<CopNumber> {
    DistanceMatrix::new(g).require_connected()?;
    for k in 1..=k_max {
        if solve_k_cops(g, k, budget)?.is_cop_win() {
            return Ok(CopNumber::Exactly(k));
        }
    }
    Ok(CopNumber::Above(k_max))
}
