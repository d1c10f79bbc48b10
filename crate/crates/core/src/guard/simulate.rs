use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{guard_move, GuardArena, GuardCase};
use crate::{Error, Result};

/// How the robber is kept from sitting still forever.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Forcing {
    /// A second cop walks a shortest path towards the robber each round
    /// until `f >= 0` is first reached, then leaves the board.
    Helper,
    /// The robber must move every round; there is no second cop.
    Restless,
}

/// Positions at the start of a round.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GuardState {
    pub c: usize,
    pub r: usize,
    pub helper: Option<usize>,
    pub round: usize,
    pub f: i32,
}

/// One line of a trace: positions after `round` rounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RoundRecord {
    pub round: usize,
    pub robber: usize,
    pub cop: usize,
    pub helper: Option<usize>,
    /// Potential `f(cop, robber)` of the recorded positions.
    pub f: i32,
    /// `None` for the initial placement and when the robber walked onto a cop.
    pub case: Option<GuardCase>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GuardOutcome {
    /// `f >= 0` was reached and the robber never entered H afterwards.
    Guarded,
    Captured,
    /// The robber stood in H outside N[c] after `f >= 0`; this would refute
    /// the strategy.
    Breach,
    /// The round budget ran out before `f >= 0`.
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GuardRun {
    pub outcome: GuardOutcome,
    /// First round after which `f >= 0` held.
    pub guarded_at: Option<usize>,
    pub trace: Vec<RoundRecord>,
}

/// Chooses robber moves. `options` is never empty and lists legal targets in
/// increasing id order.
pub trait RobberPolicy {
    fn choose(&mut self, arena: &GuardArena, state: &GuardState, options: &[usize]) -> usize;
}

/// Stays put whenever allowed, otherwise takes the lowest-id move.
#[derive(Clone, Copy, Debug, Default)]
pub struct StayingRobber;

impl RobberPolicy for StayingRobber {
    fn choose(&mut self, _: &GuardArena, state: &GuardState, options: &[usize]) -> usize {
        if options.contains(&state.r) {
            state.r
        } else {
            options[0]
        }
    }
}

/// Uniform random moves from a seeded generator.
#[derive(Clone, Debug)]
pub struct RandomRobber {
    rng: ChaCha8Rng,
}

impl RandomRobber {
    pub fn new(seed: u64) -> Self {
        RandomRobber {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl RobberPolicy for RandomRobber {
    fn choose(&mut self, _: &GuardArena, _: &GuardState, options: &[usize]) -> usize {
        options[self.rng.gen_range(0..options.len() as u64) as usize]
    }
}

/// Avoids immediate capture and otherwise minimizes the cop's potential
/// from its current position; ties go to the lowest id.
#[derive(Clone, Copy, Debug, Default)]
pub struct GreedyRobber;

impl RobberPolicy for GreedyRobber {
    fn choose(&mut self, arena: &GuardArena, state: &GuardState, options: &[usize]) -> usize {
        let unsafe_at = |v: usize| {
            v == state.c
                || Some(v) == state.helper
                || (arena.in_h(v) && arena.graph().has_edge(state.c, v))
                || state.helper.is_some_and(|p| arena.graph().has_edge(p, v))
        };
        options
            .iter()
            .copied()
            .min_by_key(|&v| (unsafe_at(v), arena.potential(state.c, v), v))
            .expect("options are non-empty")
    }
}

/// Replays a fixed list of target vertices, staying (or taking the first
/// option) once the list is used up or a move is illegal.
#[derive(Clone, Debug, Default)]
pub struct ScriptedRobber {
    moves: Vec<usize>,
    next: usize,
}

impl ScriptedRobber {
    pub fn new(moves: Vec<usize>) -> Self {
        ScriptedRobber { moves, next: 0 }
    }
}

impl RobberPolicy for ScriptedRobber {
    fn choose(&mut self, _: &GuardArena, state: &GuardState, options: &[usize]) -> usize {
        let want = self.moves.get(self.next).copied();
        self.next += 1;
        match want {
            Some(v) if options.contains(&v) => v,
            _ if options.contains(&state.r) => state.r,
            _ => options[0],
        }
    }
}

fn robber_options(arena: &GuardArena, r: usize, forcing: Forcing) -> Vec<usize> {
    let g = arena.graph();
    match forcing {
        Forcing::Helper => g.closed_neighborhood(r).ones().collect(),
        Forcing::Restless if g.degree(r) > 0 => g.neighbors(r).to_vec(),
        Forcing::Restless => vec![r],
    }
}

/// Lowest-id neighbour of `p` on a shortest path to `target`.
fn helper_step(arena: &GuardArena, p: usize, target: usize) -> usize {
    let d = arena.distances();
    if p == target {
        return p;
    }
    *arena
        .graph()
        .neighbors(p)
        .iter()
        .find(|&&w| d.get(w, target) + 1 == d.get(p, target))
        .expect("host is connected")
}

/// What happens after the robber has chosen `r_new`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Reply {
    /// The robber walked onto a cop, or a cop moved onto the robber.
    Captured { cop: usize, helper: Option<usize>, case: Option<GuardCase> },
    Moved { cop: usize, helper: Option<usize>, case: GuardCase, f: i32 },
}

fn reply(arena: &GuardArena, c: usize, helper: Option<usize>, f: i32, r_new: usize) -> Result<Reply> {
    if r_new == c || Some(r_new) == helper {
        return Ok(Reply::Captured { cop: c, helper, case: None });
    }
    let (c2, case) = guard_move(arena, c, r_new, f.min(0))?;
    if case == GuardCase::Capture {
        return Ok(Reply::Captured { cop: c2, helper, case: Some(case) });
    }
    let f2 = arena.potential(c2, r_new);
    let helper = if f2 >= 0 { None } else { helper.map(|p| helper_step(arena, p, r_new)) };
    if helper == Some(r_new) {
        return Ok(Reply::Captured { cop: c2, helper, case: Some(case) });
    }
    Ok(Reply::Moved { cop: c2, helper, case, f: f2 })
}

/// Plays the guarding strategy against `policy` for at most `max_rounds`
/// rounds. Each round the robber moves, then the guard replies with
/// [`guard_move`], then the helper (if still present) steps towards the
/// robber. The helper leaves as soon as `f >= 0`.
pub fn simulate_guard(
    arena: &GuardArena,
    policy: &mut dyn RobberPolicy,
    forcing: Forcing,
    max_rounds: usize,
    cop: usize,
    robber: usize,
    helper: Option<usize>,
) -> Result<GuardRun> {
    if max_rounds == 0 {
        return Err(Error::InvalidParameters("max_rounds must be at least 1".into()));
    }
    if !arena.in_r(cop) {
        return Err(Error::Precondition(format!("cop start {cop} is not in R")));
    }
    let n = arena.graph().n();
    if robber >= n || helper.is_some_and(|p| p >= n) {
        return Err(Error::Precondition("start position outside the host".into()));
    }
    let helper = if forcing == Forcing::Helper { helper } else { None };
    let mut f = arena.potential(cop, robber);
    let mut state = GuardState {
        c: cop,
        r: robber,
        helper: if f >= 0 { None } else { helper },
        round: 0,
        f,
    };
    let mut trace = vec![RoundRecord {
        round: 0,
        robber,
        cop,
        helper: state.helper,
        f,
        case: None,
    }];
    let mut guarded_at = (f >= 0).then_some(0);
    if robber == cop || Some(robber) == state.helper {
        return Ok(GuardRun {
            outcome: GuardOutcome::Captured,
            guarded_at,
            trace,
        });
    }
    for round in 1..=max_rounds {
        let options = robber_options(arena, state.r, forcing);
        let r_new = policy.choose(arena, &state, &options);
        if !options.contains(&r_new) {
            return Err(Error::Precondition(format!("robber policy chose illegal move {r_new}")));
        }
        let breach = guarded_at.is_some() && arena.is_breach(state.c, r_new);
        match reply(arena, state.c, state.helper, f, r_new)? {
            Reply::Captured { cop, helper, case } => {
                trace.push(RoundRecord {
                    round,
                    robber: r_new,
                    cop,
                    helper,
                    f: arena.potential(cop, r_new),
                    case,
                });
                let outcome = if breach { GuardOutcome::Breach } else { GuardOutcome::Captured };
                return Ok(GuardRun {
                    outcome,
                    guarded_at,
                    trace,
                });
            }
            Reply::Moved { cop, helper, case, f: f2 } => {
                f = f2;
                state = GuardState {
                    c: cop,
                    r: r_new,
                    helper,
                    round,
                    f,
                };
                trace.push(RoundRecord {
                    round,
                    robber: r_new,
                    cop,
                    helper,
                    f,
                    case: Some(case),
                });
                if breach {
                    return Ok(GuardRun {
                        outcome: GuardOutcome::Breach,
                        guarded_at,
                        trace,
                    });
                }
                if guarded_at.is_none() && f >= 0 {
                    guarded_at = Some(round);
                }
            }
        }
    }
    let outcome = if guarded_at.is_some() {
        GuardOutcome::Guarded
    } else {
        GuardOutcome::BudgetExhausted
    };
    Ok(GuardRun {
        outcome,
        guarded_at,
        trace,
    })
}

/// A state and robber move after which the guard's reply lowered `f`, or
/// for which no reply exists (`reply = None`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MonotonicityFailure {
    pub c: usize,
    pub r: usize,
    pub r_new: usize,
    pub f_old: i32,
    pub reply: Option<(usize, i32)>,
}

/// Checks every `c ∈ R`, every robber vertex and every robber move: the
/// reply from [`guard_move`] (fed `min(f, 0)`) never yields a smaller
/// potential.
pub fn audit_monotonicity(arena: &GuardArena) -> Vec<MonotonicityFailure> {
    let g = arena.graph();
    let mut out = Vec::new();
    for &c in arena.guard_set() {
        for r in 0..g.n() {
            let f_old = arena.potential(c, r).min(0);
            for r_new in g.closed_neighborhood(r).ones() {
                match guard_move(arena, c, r_new, f_old) {
                    Ok((_, GuardCase::Capture)) => {}
                    Ok((c2, _)) => {
                        let f2 = arena.potential(c2, r_new);
                        if f2 < f_old {
                            out.push(MonotonicityFailure { c, r, r_new, f_old, reply: Some((c2, f2)) });
                        }
                    }
                    Err(_) => out.push(MonotonicityFailure { c, r, r_new, f_old, reply: None }),
                }
            }
        }
    }
    out
}

/// States `(c, r)` with `f >= 0` and robber moves that end in H outside N[c].
pub fn audit_post_guard(arena: &GuardArena) -> Vec<(usize, usize, usize)> {
    let g = arena.graph();
    let mut out = Vec::new();
    for &c in arena.guard_set() {
        for r in 0..g.n() {
            if arena.potential(c, r) < 0 {
                continue;
            }
            out.extend(
                g.closed_neighborhood(r)
                    .ones()
                    .filter(|&r_new| arena.is_breach(c, r_new))
                    .map(|r_new| (c, r, r_new)),
            );
        }
    }
    out
}

/// Worst case over all robber strategies of the number of rounds spent with
/// `f < 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EscapeBound {
    /// Every play reaches `f >= 0` or capture within `rounds` rounds.
    Bounded { rounds: usize },
    /// The robber can keep `f < 0` forever; `(c, r, helper)` lies on such a
    /// cycle.
    Unbounded {
        c: usize,
        r: usize,
        helper: Option<usize>,
    },
}

/// Exhaustive robber search over all states with `f < 0`: every cop vertex
/// in R, every robber vertex and (in helper mode) every helper vertex.
pub fn audit_escape(arena: &GuardArena, forcing: Forcing) -> Result<EscapeBound> {
    let n = arena.graph().n();
    let helpers = if forcing == Forcing::Helper { n } else { 1 };
    let encode = |c: usize, r: usize, p: Option<usize>| (c * n + r) * helpers + p.unwrap_or(0);
    let decode = |s: usize| {
        let p = s % helpers;
        let cr = s / helpers;
        let p = (forcing == Forcing::Helper).then_some(p);
        (cr / n, cr % n, p)
    };
    let total = n * n * helpers;
    let live = |c: usize, r: usize, p: Option<usize>| {
        arena.in_r(c) && r != c && Some(r) != p && arena.potential(c, r) < 0
    };

    // successors restricted to live states; None marks a round that ends the
    // negative phase
    let successors = |s: usize| -> Result<Vec<Option<usize>>> {
        let (c, r, p) = decode(s);
        let f = arena.potential(c, r);
        let mut out = Vec::new();
        for r_new in robber_options(arena, r, forcing) {
            match reply(arena, c, p, f, r_new)? {
                Reply::Captured { .. } => out.push(None),
                Reply::Moved { cop, helper, f, .. } => {
                    if f >= 0 {
                        out.push(None);
                    } else {
                        out.push(Some(encode(cop, r_new, helper)));
                    }
                }
            }
        }
        Ok(out)
    };

    const WHITE: u8 = 0;
    const GREY: u8 = 1;
    const BLACK: u8 = 2;
    let mut color = vec![WHITE; total];
    let mut longest = vec![0usize; total];
    let mut best = 0;
    for start in 0..total {
        let (c, r, p) = decode(start);
        if !live(c, r, p) || color[start] != WHITE {
            continue;
        }
        // iterative DFS: (state, successor list, next index)
        let mut stack: Vec<(usize, Vec<Option<usize>>, usize)> = vec![(start, successors(start)?, 0)];
        color[start] = GREY;
        while let Some(top) = stack.last_mut() {
            let (s, succ, idx) = (top.0, &top.1, top.2);
            if idx < succ.len() {
                top.2 += 1;
                if let Some(t) = succ[idx] {
                    match color[t] {
                        WHITE => {
                            color[t] = GREY;
                            let next = successors(t)?;
                            stack.push((t, next, 0));
                        }
                        GREY => {
                            let (c, r, p) = decode(t);
                            return Ok(EscapeBound::Unbounded { c, r, helper: p });
                        }
                        _ => {}
                    }
                }
            } else {
                let len = 1 + succ.iter().flatten().map(|&t| longest[t]).max().unwrap_or(0);
                longest[s] = len;
                color[s] = BLACK;
                best = best.max(len);
                stack.pop();
            }
        }
    }
    Ok(EscapeBound::Bounded { rounds: best })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cycle, path};

    fn c6_arena() -> GuardArena {
        GuardArena::new(cycle(6), &[0, 1, 2, 3], None).unwrap()
    }

    #[test]
    fn isometric_path_in_c6_is_guarded() {
        let a = c6_arena();
        assert!(audit_monotonicity(&a).is_empty());
        assert!(audit_post_guard(&a).is_empty());
        for forcing in [Forcing::Helper, Forcing::Restless] {
            match audit_escape(&a, forcing).unwrap() {
                EscapeBound::Bounded { rounds } => assert!(rounds <= 36),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn greedy_robber_on_c6() {
        let a = c6_arena();
        let run = simulate_guard(&a, &mut GreedyRobber, Forcing::Restless, 30, 0, 4, None).unwrap();
        assert_ne!(run.outcome, GuardOutcome::Breach);
        assert_ne!(run.outcome, GuardOutcome::BudgetExhausted);
        for w in run.trace.windows(2) {
            let g = a.graph();
            assert!(g.closed_neighborhood(w[0].cop).contains(w[1].cop));
            assert!(g.closed_neighborhood(w[0].robber).contains(w[1].robber));
        }
    }

    #[test]
    fn staying_robber_is_caught_or_guarded() {
        let g = path(7);
        let a = GuardArena::new(g, &[0, 1, 2], None).unwrap();
        let run = simulate_guard(&a, &mut StayingRobber, Forcing::Helper, 50, 0, 5, Some(6)).unwrap();
        assert!(matches!(run.outcome, GuardOutcome::Guarded | GuardOutcome::Captured));
        let d = a.distances();
        let bound = d.get(6, 5) as usize + d.diameter().unwrap() as usize;
        if let Some(t) = run.guarded_at {
            assert!(t <= bound);
        }
    }

    #[test]
    fn scripted_robber_replays() {
        let a = c6_arena();
        let mut robber = ScriptedRobber::new(vec![4, 5, 4]);
        let run = simulate_guard(&a, &mut robber, Forcing::Restless, 3, 0, 5, None).unwrap();
        let path: Vec<usize> = run.trace.iter().map(|rec| rec.robber).collect();
        assert_eq!(&path[..2], &[5, 4]);
        // cop advanced to 1 after the first move, so 5 is safe and f rises
        assert_eq!(run.trace[1].cop, 1);
        assert!(simulate_guard(&a, &mut StayingRobber, Forcing::Helper, 0, 0, 5, None).is_err());
    }
}
