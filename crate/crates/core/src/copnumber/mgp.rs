use std::collections::HashMap;

use serde::Serialize;

use super::solver::{solve_k_cops, CopNumber, GameTable};
use crate::characterize::is_block_graph;
use crate::families::{gen_mgp, MgpLabeling};
use crate::graph::{isometry_violation, DistanceMatrix, Graph, SubgraphView};
use crate::guard::{guard_move, GuardArena, GuardCase};
use crate::{Error, Result};

/// H = B_1 ∪ … ∪ B_k: the columns with indices 1..=k, sorted. Fails with
/// [`Error::NotIsometric`] (carrying a witness pair) or
/// [`Error::Precondition`] if H is not an isometric block graph, which the
/// three-cop strategy relies on.
pub fn mgp_guard_set(g: &Graph, lab: &MgpLabeling) -> Result<Vec<usize>> {
    let h = guard_columns(g, lab)?;
    let view = SubgraphView::new(g, &h)?;
    if let Some(w) = is_block_graph(view.graph())?.violation() {
        return Err(Error::Precondition(format!(
            "union of columns 1..=k is not a block graph: {}",
            w.map_ids(|v| view.parent_id(v))
        )));
    }
    if let Some(w) = isometry_violation(&view, &DistanceMatrix::new(g)) {
        return Err(w.into());
    }
    Ok(h)
}

fn guard_columns(g: &Graph, lab: &MgpLabeling) -> Result<Vec<usize>> {
    if !(2..=3).contains(&lab.k) {
        return Err(Error::InvalidParameters(format!("k = {} must be 2 or 3", lab.k)));
    }
    if g.n() != lab.vertex_count() {
        return Err(Error::InvalidParameters("labeling does not match the graph".into()));
    }
    let mut h: Vec<usize> = (1..=lab.k).flat_map(|i| lab.column(i)).collect();
    h.sort_unstable();
    Ok(h)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MgpPhase {
    /// Sweepers walk down to layer 0.
    Deploy,
    /// Sweepers rotate in opposite directions on layer 0 until one matches
    /// the robber's index modulo k.
    Align,
    /// One sweeper shadows the robber's layer and residue, the other closes
    /// in along layer 0.
    Chase,
}

/// Bookkeeping of the scripted strategy besides the positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MgpStrategyState {
    pub phase: MgpPhase,
    /// Index (0 or 1) of the sweeper shadowing the robber during the chase.
    pub chaser: Option<u8>,
}

/// Cop positions: the guard `c0` of H and the sweepers `c1`, `c2`.
pub type MgpCops = [usize; 3];

/// Deterministic three-cop strategy on MGP(n, k, t) for k ∈ {2, 3}.
///
/// `c0` guards H with [`guard_move`] (R = V(H)). The sweepers start on
/// layer 0, rotate in opposite directions until one of them has the robber's
/// index modulo k, then that one keeps the robber's layer and residue while
/// stepping towards it and the other walks along layer 0 towards the
/// robber's index. Any cop next to the robber captures.
#[derive(Clone, Debug)]
pub struct MgpStrategy {
    lab: MgpLabeling,
    arena: GuardArena,
}

impl MgpStrategy {
    pub fn new(n: usize, k: usize, t: usize) -> Result<Self> {
        let (g, lab) = gen_mgp(n, k, t)?;
        let h = mgp_guard_set(&g, &lab)?;
        let arena = GuardArena::new(g, &h, None)?;
        Ok(MgpStrategy { lab, arena })
    }

    pub fn graph(&self) -> &Graph {
        self.arena.graph()
    }

    pub fn labeling(&self) -> &MgpLabeling {
        &self.lab
    }

    pub fn guard_set(&self) -> &[usize] {
        self.arena.subgraph().vertices()
    }

    /// Starting cops: the guard on `v_1^0`, sweepers on layer 0 at indices 0
    /// and `n/2` shifted so their residues modulo k differ.
    pub fn start(&self) -> (MgpStrategyState, MgpCops) {
        let MgpLabeling { n, k, .. } = self.lab;
        let mut other = n / 2;
        if other % k == 0 {
            other += 1;
        }
        let cops = [self.lab.to_id(0, 1), self.lab.to_id(0, 0), self.lab.to_id(0, other % n)];
        (
            MgpStrategyState {
                phase: MgpPhase::Deploy,
                chaser: None,
            },
            cops,
        )
    }

    /// Position along the strip left over once H is sealed: index `i` maps
    /// to `i` for `i >= 1` and index 0 maps to `n`. Robber moves on layers
    /// above 0 never cross H without entering it, so they keep this
    /// coordinate modulo k.
    fn lin(&self, v: usize) -> usize {
        let (_, i) = self.lab.to_coord(v);
        if i == 0 {
            self.lab.n
        } else {
            i
        }
    }

    /// Best of `candidates` by `key`. Ties avoid steps across the wrap
    /// between index 0 and index 1, then go towards increasing index, then
    /// staying, then lowest id.
    fn pick(&self, from: usize, candidates: impl Iterator<Item = usize>, key: impl Fn(usize) -> u32) -> Option<usize> {
        let u0 = self.lin(from);
        candidates.min_by_key(|&v| {
            let u = self.lin(v);
            (key(v), u.abs_diff(u0) > self.lab.k, u <= u0, u == u0, v)
        })
    }

    /// Layer-0 step towards the robber's strip position.
    fn walk_layer0(&self, c: usize, robber: usize) -> usize {
        let (layer, i) = self.lab.to_coord(c);
        if layer != 0 {
            return self.lab.to_id(0, i);
        }
        let p = self.lin(robber);
        let g = self.graph();
        self.pick(
            c,
            g.closed_neighborhood(c).ones().filter(|&v| v < self.lab.n),
            |v| self.lin(v).abs_diff(p) as u32,
        )
        .expect("c itself is a candidate")
    }

    /// Chaser step: take the robber's layer and strip residue, moving closer
    /// when possible. If that is out of reach, keep the residue on another
    /// layer, else head for layer 0 where the residue can be corrected. The
    /// chaser never steps across the wrap between index 0 and index 1.
    fn shadow(&self, c: usize, robber: usize) -> usize {
        let k = self.lab.k;
        let (rj, _) = self.lab.to_coord(robber);
        let rp = self.lin(robber);
        let g = self.graph();
        let d = self.arena.distances();
        let u0 = self.lin(c);
        let tier = |v: usize| {
            let (j, _) = self.lab.to_coord(v);
            if self.lin(v).abs_diff(u0) > k {
                // never wrap around behind H
                return 4;
            }
            let residue = self.lin(v) % k == rp % k;
            match (j == rj, residue) {
                (true, true) => 0,
                (false, true) => 1,
                _ if j == 0 => 2,
                _ => 3,
            }
        };
        self.pick(c, g.closed_neighborhood(c).ones(), |v| {
            tier(v) * 1000 + self.lin(v).abs_diff(rp) as u32 * 4 + d.get(v, robber)
        })
            .expect("c itself is a candidate")
    }

    /// A sweeper on layer 0 can take the robber's layer and strip residue in
    /// one move.
    fn can_lock(&self, c: usize, robber: usize) -> bool {
        let k = self.lab.k;
        let (j, _) = self.lab.to_coord(c);
        let (rj, _) = self.lab.to_coord(robber);
        if j != 0 {
            return false;
        }
        let rp = self.lin(robber) % k;
        if rj == 0 {
            self.graph()
                .closed_neighborhood(c)
                .ones()
                .any(|v| v < self.lab.n && self.lin(v) % k == rp)
        } else {
            self.lin(c) % k == rp
        }
    }

    /// Cop reply after the robber moved from `r_old` to `r_new`. Returns the
    /// new state and positions; a cop on `r_new` means capture.
    pub fn respond(
        &self,
        state: MgpStrategyState,
        cops: MgpCops,
        r_old: usize,
        r_new: usize,
    ) -> Result<(MgpStrategyState, MgpCops)> {
        let g = self.graph();
        if let Some(i) = (0..3).find(|&i| g.closed_neighborhood(cops[i]).contains(r_new)) {
            let mut next = cops;
            next[i] = r_new;
            return Ok((state, next));
        }
        let f_old = self.arena.potential(cops[0], r_old).min(0);
        let (c0, case) = guard_move(&self.arena, cops[0], r_new, f_old)?;
        debug_assert_ne!(case, GuardCase::Capture);

        let mut state = state;
        let on_layer0 = |c: usize| c < self.lab.n;
        if state.phase == MgpPhase::Deploy && on_layer0(cops[1]) && on_layer0(cops[2]) {
            state.phase = MgpPhase::Align;
        }
        if state.phase == MgpPhase::Align {
            if let Some(s) = (0..2).find(|&s| self.can_lock(cops[1 + s], r_new)) {
                state = MgpStrategyState {
                    phase: MgpPhase::Chase,
                    chaser: Some(s as u8),
                };
            }
        }
        let n = self.lab.n;
        let sweepers = match state.phase {
            MgpPhase::Deploy => [self.walk_down(cops[1]), self.walk_down(cops[2])],
            MgpPhase::Align => [(cops[1] + 1) % n, (cops[2] + n - 1) % n],
            MgpPhase::Chase => {
                let s = state.chaser.expect("chase has a chaser") as usize;
                let mut out = [0; 2];
                out[s] = self.shadow(cops[1 + s], r_new);
                out[1 - s] = self.walk_layer0(cops[2 - s], r_new);
                out
            }
        };
        Ok((state, [c0, sweepers[0], sweepers[1]]))
    }

    fn walk_down(&self, c: usize) -> usize {
        let (_, i) = self.lab.to_coord(c);
        self.lab.to_id(0, i)
    }
}

/// One robber-to-move position in a scripted play.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ScriptedStep {
    pub cops: MgpCops,
    pub robber: usize,
    pub phase: MgpPhase,
    pub chaser: Option<u8>,
}

/// Result of searching all robber replies against [`MgpStrategy`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScriptedReport {
    /// Every robber start and every line of robber play ends in capture.
    pub certified: bool,
    /// Distinct robber-to-move positions explored.
    pub states: usize,
    /// Longest play until capture, in rounds (cop moves), if certified.
    pub capture_bound: Option<usize>,
    /// The bound asked for: `10 n (t + 1)` rounds.
    pub round_limit: usize,
    /// A play that loops without capture, or ends in a strategy error.
    pub failure: Option<Vec<ScriptedStep>>,
}

type Key = (MgpCops, usize, MgpStrategyState);

/// Exhaustive robber search against the scripted strategy. The cops are a
/// function of the position and strategy state, so this is a one-player
/// game: any reachable cycle is a robber escape.
pub fn certify_scripted(strategy: &MgpStrategy) -> Result<ScriptedReport> {
    let g = strategy.graph();
    let lab = strategy.labeling();
    let round_limit = 10 * lab.n * (lab.t + 1);
    let (s0, cops0) = strategy.start();
    // longest remaining play, or None while on the DFS stack
    let mut memo: HashMap<Key, Option<usize>> = HashMap::new();
    let mut worst = 0;
    let mut failure = None;

    'starts: for r0 in (0..g.n()).filter(|r| !cops0.contains(r)) {
        let (s, cops) = strategy.respond(s0, cops0, r0, r0)?;
        if cops.contains(&r0) {
            worst = worst.max(1);
            continue;
        }
        let root: Key = (cops, r0, s);
        // frames: key, robber options, next option, best so far
        let mut stack: Vec<(Key, Vec<usize>, usize, usize)> = Vec::new();
        if memo.contains_key(&root) {
            worst = worst.max(1 + memo[&root].unwrap_or(0));
            continue;
        }
        memo.insert(root, None);
        stack.push((root, g.closed_neighborhood(r0).ones().collect(), 0, 0));
        while let Some(frame) = stack.last_mut() {
            let ((cops, r, s), ref options, idx, best) = *frame;
            if idx == options.len() {
                memo.insert((cops, r, s), Some(best));
                stack.pop();
                if let Some(parent) = stack.last_mut() {
                    parent.3 = parent.3.max(best + 1);
                } else {
                    worst = worst.max(best + 1);
                }
                continue;
            }
            frame.2 += 1;
            let r_new = options[idx];
            // stepping onto a cop ends the play without adding a round
            if cops.contains(&r_new) {
                continue;
            }
            let trace = |stack: &[(Key, Vec<usize>, usize, usize)]| {
                stack
                    .iter()
                    .map(|((cops, robber, s), ..)| ScriptedStep {
                        cops: *cops,
                        robber: *robber,
                        phase: s.phase,
                        chaser: s.chaser,
                    })
                    .collect::<Vec<_>>()
            };
            let (s2, cops2) = match strategy.respond(s, cops, r, r_new) {
                Ok(x) => x,
                Err(_) => {
                    failure = Some(trace(&stack));
                    break 'starts;
                }
            };
            if cops2.contains(&r_new) {
                frame.3 = frame.3.max(1);
                continue;
            }
            let key = (cops2, r_new, s2);
            match memo.get(&key) {
                Some(Some(len)) => {
                    let len = *len;
                    let frame = stack.last_mut().expect("frame present");
                    frame.3 = frame.3.max(len + 1);
                }
                Some(None) => {
                    let mut t = trace(&stack);
                    t.push(ScriptedStep {
                        cops: cops2,
                        robber: r_new,
                        phase: s2.phase,
                        chaser: s2.chaser,
                    });
                    failure = Some(t);
                    break 'starts;
                }
                None => {
                    memo.insert(key, None);
                    stack.push((key, g.closed_neighborhood(r_new).ones().collect(), 0, 0));
                }
            }
        }
    }
    let certified = failure.is_none();
    Ok(ScriptedReport {
        certified,
        states: memo.len(),
        capture_bound: certified.then_some(worst),
        round_limit,
        failure,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MgpMethod {
    Exact,
    Scripted,
    Both,
}

/// Exact solves with two and three cops.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactReport {
    pub cop_number: CopNumber,
    pub two_cops_win: bool,
    pub three_cops_win: bool,
    pub states_two: usize,
    pub states_three: Option<usize>,
}

/// A verdict contradicting cop number 3, with a replayable play.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Falsification {
    pub claim: String,
    /// Alternating positions `(cops, robber)` after each move, starting from
    /// the placement.
    pub trace: Vec<(Vec<usize>, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MgpReport {
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub vertices: usize,
    pub edges: usize,
    /// Columns 1..=k.
    pub guard_set: Vec<usize>,
    /// Why the columns are not an isometric block graph, if they are not.
    /// The scripted strategy is skipped in that case.
    pub guard_set_failure: Option<String>,
    pub exact: Option<ExactReport>,
    pub scripted: Option<ScriptedReport>,
    pub falsification: Option<Falsification>,
}

impl MgpReport {
    /// Everything that was run agrees with cop number 3, and the guarded
    /// columns are an isometric block graph.
    pub fn consistent(&self) -> bool {
        self.falsification.is_none()
            && self.guard_set_failure.is_none()
            && self.exact.as_ref().is_none_or(|e| e.cop_number == CopNumber::Exactly(3))
            && self.scripted.as_ref().is_none_or(|s| s.certified && s.capture_bound <= Some(s.round_limit))
    }
}

/// Plays the stored cop policy against the robber reply with the lowest id
/// among those that avoid the cops, starting from the robber placement that
/// survives longest under that rule.
fn cop_win_trace(table: &GameTable) -> Vec<(Vec<usize>, usize)> {
    let g = table.graph();
    let start = table.start().expect("cop-win table");
    let play = |r0: usize| {
        let mut cops = start.clone();
        let mut r = r0;
        let mut trace = vec![(cops.clone(), r)];
        while !cops.contains(&r) && trace.len() <= 2 * table.state_count() {
            cops = table.policy_move(&cops, r).expect("cop-win state has a policy");
            trace.push((cops.clone(), r));
            if cops.contains(&r) {
                break;
            }
            r = g.closed_neighborhood(r).ones().find(|v| !cops.contains(v)).unwrap_or(r);
            trace.push((cops.clone(), r));
        }
        trace
    };
    (0..g.n())
        .filter(|r| !start.contains(r))
        .map(play)
        .max_by_key(Vec::len)
        .unwrap_or_default()
}

/// Robber escapes against cops that all start on vertex 0 and pass, for
/// `rounds` rounds. The table itself is the certificate; this only gives a
/// concrete line to replay.
fn robber_win_trace(table: &GameTable, rounds: usize) -> Vec<(Vec<usize>, usize)> {
    let cops: Vec<usize> = vec![0; table.k()];
    let Some(mut r) = table.robber_start(&cops) else { return Vec::new() };
    let mut trace = vec![(cops.clone(), r)];
    for _ in 0..rounds {
        match table.robber_escape(&cops, r) {
            Some(next) => r = next,
            None => break,
        }
        trace.push((cops.clone(), r));
    }
    trace
}

/// Checks cop number 3 on MGP(n, k, t) exactly, with the scripted strategy,
/// or both.
pub fn verify_mgp_theorem(n: usize, k: usize, t: usize, method: MgpMethod, budget: usize) -> Result<MgpReport> {
    let (g, lab) = gen_mgp(n, k, t)?;
    let guard_set = guard_columns(&g, &lab)?;
    let guard_set_failure = mgp_guard_set(&g, &lab).err().map(|e| e.to_string());
    let mut report = MgpReport {
        n,
        k,
        t,
        vertices: g.n(),
        edges: g.edge_count(),
        guard_set,
        guard_set_failure,
        exact: None,
        scripted: None,
        falsification: None,
    };
    if matches!(method, MgpMethod::Exact | MgpMethod::Both) {
        let two = solve_k_cops(&g, 2, budget)?;
        let states_two = two.state_count();
        let two_cops_win = two.is_cop_win();
        let (three_cops_win, states_three, cop_number) = if two_cops_win {
            let one = solve_k_cops(&g, 1, budget)?.is_cop_win();
            report.falsification = Some(Falsification {
                claim: "two cops capture the robber".into(),
                trace: cop_win_trace(&two),
            });
            (true, None, CopNumber::Exactly(if one { 1 } else { 2 }))
        } else {
            let three = solve_k_cops(&g, 3, budget)?;
            if !three.is_cop_win() {
                report.falsification = Some(Falsification {
                    claim: "the robber evades three cops".into(),
                    trace: robber_win_trace(&three, 2 * g.n()),
                });
            }
            let win = three.is_cop_win();
            (win, Some(three.state_count()), if win { CopNumber::Exactly(3) } else { CopNumber::Above(3) })
        };
        report.exact = Some(ExactReport {
            cop_number,
            two_cops_win,
            three_cops_win,
            states_two,
            states_three,
        });
    }
    if matches!(method, MgpMethod::Scripted | MgpMethod::Both) && report.guard_set_failure.is_none() {
        let strategy = MgpStrategy::new(n, k, t)?;
        report.scripted = Some(certify_scripted(&strategy)?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::copnumber::DEFAULT_STATE_BUDGET;

    #[test]
    fn guard_set_examples() {
        let (g, lab) = gen_mgp(14, 3, 2).unwrap();
        let h = mgp_guard_set(&g, &lab).unwrap();
        assert_eq!(h.len(), 9);
        let (g, lab) = gen_mgp(8, 2, 1).unwrap();
        assert_eq!(mgp_guard_set(&g, &lab).unwrap(), vec![1, 2, 9, 10]);
        // on the Petersen graph v_1^1 and v_2^1 share the neighbour v_4^1
        let (g, lab) = gen_mgp(5, 2, 1).unwrap();
        assert_eq!(
            mgp_guard_set(&g, &lab),
            Err(Error::NotIsometric {
                u: 6,
                v: 7,
                internal: 3,
                parent: 2
            })
        );
        assert!(gen_mgp(9, 4, 1).and_then(|(g, lab)| mgp_guard_set(&g, &lab)).is_err());
    }

    #[test]
    fn deploy_reaches_layer_zero() {
        let s = MgpStrategy::new(14, 3, 2).unwrap();
        let lab = *s.labeling();
        let cops = [lab.to_id(0, 1), lab.to_id(2, 6), lab.to_id(1, 9)];
        let state = MgpStrategyState {
            phase: MgpPhase::Deploy,
            chaser: None,
        };
        let robber = lab.to_id(2, 12);
        let (state, cops) = s.respond(state, cops, robber, robber).unwrap();
        assert!(cops[1] < 14 && cops[2] < 14);
        assert_eq!(state.phase, MgpPhase::Deploy);
        let (state, _) = s.respond(state, cops, robber, robber).unwrap();
        assert_ne!(state.phase, MgpPhase::Deploy);
    }

    #[test]
    fn scripted_strategy_captures_on_small_instance() {
        let s = MgpStrategy::new(8, 2, 1).unwrap();
        let report = certify_scripted(&s).unwrap();
        assert!(report.certified, "{report:?}");
        assert!(report.capture_bound.unwrap() <= report.round_limit);
    }

    #[test]
    fn reports_flag_contradictions() {
        let r = verify_mgp_theorem(8, 2, 1, MgpMethod::Both, DEFAULT_STATE_BUDGET).unwrap();
        let exact = r.exact.as_ref().unwrap();
        assert!(exact.two_cops_win);
        assert_eq!(exact.cop_number, CopNumber::Exactly(2));
        let f = r.falsification.as_ref().unwrap();
        let (last_cops, last_r) = f.trace.last().unwrap();
        assert!(last_cops.contains(last_r));
        assert!(!r.consistent());

        let r = verify_mgp_theorem(7, 2, 1, MgpMethod::Both, DEFAULT_STATE_BUDGET).unwrap();
        assert!(r.consistent(), "{r:?}");
        assert_eq!(r.exact.unwrap().cop_number, CopNumber::Exactly(3));

        let r = verify_mgp_theorem(5, 2, 1, MgpMethod::Both, DEFAULT_STATE_BUDGET).unwrap();
        assert_eq!(r.exact.as_ref().unwrap().cop_number, CopNumber::Exactly(3));
        assert!(r.guard_set_failure.is_some());
        assert!(r.scripted.is_none());
    }
}
