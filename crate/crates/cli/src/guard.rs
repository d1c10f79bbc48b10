use anyhow::Result;
use clap::{Args, ValueEnum};
use copguard::characterize::DEFAULT_EXHAUSTIVE_LIMIT;
use copguard::guard::{
    simulate_guard, solve_guard_game, Forcing, GreedyRobber, GuardArena, RandomRobber, RobberPolicy,
    ScriptedRobber, StayingRobber,
};
use serde_json::json;

use crate::input::GraphInput;
use crate::report::Report;
use crate::UsageError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Decide the game exactly.
    Solve,
    /// Play the guarding strategy against a robber policy.
    Simulate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ForcingArg {
    Helper,
    Restless,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GuardRobber {
    Stay,
    Greedy,
    Random,
    /// Replays `--moves`.
    Scripted,
}

#[derive(Args, Debug)]
pub struct GuardArgs {
    #[command(flatten)]
    input: GraphInput,
    /// Vertex ids of H. Defaults to the fixture's subgraph.
    #[arg(long, value_delimiter = ',', value_name = "IDS")]
    subgraph: Option<Vec<usize>>,
    #[arg(long, value_enum, default_value_t = Mode::Solve)]
    mode: Mode,
    /// Solve: vertices the cop may use (default V(H)). Simulate: the guard
    /// set R (default: from a backbone certificate of H).
    #[arg(long, value_delimiter = ',', value_name = "IDS")]
    region: Option<Vec<usize>>,
    #[arg(long, value_enum, default_value_t = ForcingArg::Helper)]
    forcing: ForcingArg,
    /// Round budget for simulation (default 2 n^2).
    #[arg(long)]
    max_rounds: Option<usize>,
    #[arg(long, value_enum, default_value_t = GuardRobber::Greedy)]
    robber: GuardRobber,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_delimiter = ',', value_name = "IDS")]
    moves: Option<Vec<usize>>,
    /// Cop start (default: smallest vertex of R).
    #[arg(long)]
    cop: Option<usize>,
    /// Robber start (default: the vertex farthest from the cop, lowest id).
    #[arg(long)]
    robber_start: Option<usize>,
    /// Helper start in helper mode (default: the cop's start).
    #[arg(long)]
    helper_start: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_LIMIT)]
    limit: usize,
}

pub fn run(a: &GuardArgs) -> Result<Report> {
    let loaded = a.input.load()?;
    let h = loaded.subgraph(&a.subgraph)?;
    let mut input = a.input.echo();
    input["subgraph"] = json!(h);
    if let Some(r) = &a.region {
        input["region"] = json!(r);
    }
    input["mode"] = json!(match a.mode {
        Mode::Solve => "solve",
        Mode::Simulate => "simulate",
    });
    let g = loaded.graph;
    let n = g.n();
    let mut report = Report::new("guard", input);
    match a.mode {
        Mode::Solve => {
            let region = a.region.clone().unwrap_or_else(|| h.clone());
            let res = solve_guard_game(&g, &h, &region)?;
            report
                .set("verdict", res.winner)
                .set("winner", res.winner)
                .set("start", res.start)
                .set("robber_replies", &res.robber_replies)
                .set("cop_winning_states", res.cop_winning_region.len());
        }
        Mode::Simulate => {
            let arena = match &a.region {
                Some(r) => GuardArena::new(g, &h, Some(r))?,
                None => GuardArena::with_backbone(g, &h, a.limit)?.0,
            };
            let cop = a.cop.unwrap_or(arena.guard_set()[0]);
            let d = arena.distances();
            let robber = match a.robber_start {
                Some(r) => r,
                None => (0..n)
                    .filter(|&v| v != cop)
                    .max_by_key(|&v| (d.get(cop, v), std::cmp::Reverse(v)))
                    .ok_or_else(|| UsageError("graph needs at least two vertices".into()))?,
            };
            for (flag, v) in [("--cop", cop), ("--robber-start", robber)] {
                if v >= n {
                    return Err(UsageError(format!("{flag} {v} is not a vertex")).into());
                }
            }
            let forcing = match a.forcing {
                ForcingArg::Helper => Forcing::Helper,
                ForcingArg::Restless => Forcing::Restless,
            };
            let helper = match forcing {
                Forcing::Helper => Some(a.helper_start.unwrap_or(cop)),
                Forcing::Restless => None,
            };
            let mut policy: Box<dyn RobberPolicy> = match a.robber {
                GuardRobber::Stay => Box::new(StayingRobber),
                GuardRobber::Greedy => Box::new(GreedyRobber),
                GuardRobber::Random => Box::new(RandomRobber::new(a.seed)),
                GuardRobber::Scripted => Box::new(ScriptedRobber::new(
                    a.moves
                        .clone()
                        .ok_or_else(|| UsageError("--robber scripted needs --moves".into()))?,
                )),
            };
            let max_rounds = a.max_rounds.unwrap_or(2 * n * n);
            let run = simulate_guard(&arena, policy.as_mut(), forcing, max_rounds, cop, robber, helper)?;
            report
                .set("verdict", run.outcome)
                .set("guard_set", arena.guard_set())
                .set("forcing", forcing)
                .set("outcome", run.outcome)
                .set("guarded_at", run.guarded_at)
                .set("rounds", run.trace.len().saturating_sub(1))
                .set("trace", &run.trace);
        }
    }
    Ok(report)
}
