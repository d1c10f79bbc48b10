use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, ValueEnum};
use copguard::copnumber::{solve_k_cops, GameTable, MgpStrategy, DEFAULT_STATE_BUDGET};
use copguard::{DistanceMatrix, Graph};
use serde::Serialize;
use serde_json::json;

use crate::input::{parse_tuple, read_graph, write_file, Fixture};
use crate::report::Report;
use crate::UsageError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RobberArg {
    /// The exact table's escape move when there is one, otherwise greedy.
    Optimal,
    /// Avoid cop neighbourhoods, then maximize distance to the nearest cop.
    Greedy,
    Stay,
}

#[derive(Args, Debug)]
#[group(id = "source", required = true, multiple = false)]
pub struct Source {
    graph: Option<PathBuf>,
    #[arg(long, value_enum)]
    fixture: Option<Fixture>,
    /// Three cops follow the scripted MGP(n,k,t) strategy.
    #[arg(long, value_parser = parse_tuple::<3>, value_name = "N,K,T")]
    scripted: Option<[usize; 3]>,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[command(flatten)]
    source: Source,
    /// Number of cops for graph inputs. The cops follow the exact policy if
    /// they win, otherwise each steps along a shortest path to the robber.
    #[arg(long, default_value_t = 2)]
    cops: usize,
    #[arg(long, value_enum, default_value_t = RobberArg::Optimal)]
    robber: RobberArg,
    /// Default: 10 n (t+1) for scripted plays, 4 n^2 otherwise.
    #[arg(long)]
    max_rounds: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
    budget: usize,
    /// Write the play as JSON here.
    #[arg(long)]
    trace: Option<PathBuf>,
}

/// Positions after one move.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub round: usize,
    pub mover: &'static str,
    pub cops: Vec<usize>,
    pub robber: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Play {
    pub captured_at: Option<usize>,
    pub trace: Vec<Step>,
}

fn safe(g: &Graph, cops: &[usize], v: usize) -> bool {
    cops.iter().all(|&c| !g.closed_neighborhood(c).contains(v))
}

fn nearest_cop(d: &DistanceMatrix, cops: &[usize], v: usize) -> u32 {
    cops.iter().map(|&c| d.get(c, v)).min().unwrap_or(u32::MAX)
}

fn greedy_move(g: &Graph, d: &DistanceMatrix, cops: &[usize], r: usize) -> usize {
    g.closed_neighborhood(r)
        .ones()
        .filter(|v| !cops.contains(v))
        .max_by_key(|&v| (safe(g, cops, v), nearest_cop(d, cops, v), std::cmp::Reverse(v)))
        .unwrap_or(r)
}

fn robber_start(g: &Graph, d: &DistanceMatrix, cops: &[usize]) -> Option<usize> {
    (0..g.n())
        .filter(|v| !cops.contains(v))
        .max_by_key(|&v| (nearest_cop(d, cops, v), std::cmp::Reverse(v)))
}

struct Robber<'a> {
    kind: RobberArg,
    table: Option<&'a GameTable>,
}

impl Robber<'_> {
    fn start(&self, g: &Graph, d: &DistanceMatrix, cops: &[usize]) -> Option<usize> {
        let exact = match (self.kind, self.table) {
            (RobberArg::Optimal, Some(t)) => t.robber_start(cops),
            _ => None,
        };
        exact.or_else(|| robber_start(g, d, cops))
    }

    fn step(&self, g: &Graph, d: &DistanceMatrix, cops: &[usize], r: usize) -> usize {
        match self.kind {
            RobberArg::Stay => r,
            RobberArg::Greedy => greedy_move(g, d, cops, r),
            RobberArg::Optimal => self
                .table
                .and_then(|t| t.robber_escape(cops, r))
                .unwrap_or_else(|| greedy_move(g, d, cops, r)),
        }
    }
}

fn chase_step(g: &Graph, d: &DistanceMatrix, c: usize, r: usize) -> usize {
    g.closed_neighborhood(c)
        .ones()
        .min_by_key(|&v| (d.get(v, r), v))
        .expect("closed neighbourhood contains c")
}

/// Cops move first; capture ends the play after either move.
pub fn play_table(table: &GameTable, robber: RobberArg, max_rounds: usize) -> Play {
    let g = table.graph();
    let d = DistanceMatrix::new(g);
    let policy = table.is_cop_win();
    let mut cops = table.start().unwrap_or_else(|| vec![0; table.k()]);
    let rob = Robber {
        kind: robber,
        table: Some(table),
    };
    let Some(mut r) = rob.start(g, &d, &cops) else {
        return Play {
            captured_at: Some(0),
            trace: Vec::new(),
        };
    };
    let mut trace = vec![Step {
        round: 0,
        mover: "place",
        cops: cops.clone(),
        robber: r,
    }];
    for round in 1..=max_rounds {
        cops = match policy.then(|| table.policy_move(&cops, r)).flatten() {
            Some(next) => next,
            None => {
                let mut next: Vec<usize> = cops.iter().map(|&c| chase_step(g, &d, c, r)).collect();
                next.sort_unstable();
                next
            }
        };
        trace.push(Step {
            round,
            mover: "cops",
            cops: cops.clone(),
            robber: r,
        });
        if cops.contains(&r) {
            return Play {
                captured_at: Some(round),
                trace,
            };
        }
        r = rob.step(g, &d, &cops, r);
        trace.push(Step {
            round,
            mover: "robber",
            cops: cops.clone(),
            robber: r,
        });
        if cops.contains(&r) {
            return Play {
                captured_at: Some(round),
                trace,
            };
        }
    }
    Play {
        captured_at: None,
        trace,
    }
}

/// The scripted strategy places its cops, the robber places, and then the
/// robber moves first each round with the cops replying.
pub fn play_scripted(strategy: &MgpStrategy, robber: RobberArg, max_rounds: usize) -> Result<Play> {
    let g = strategy.graph();
    let d = DistanceMatrix::new(g);
    let (mut state, mut cops) = strategy.start();
    let rob = Robber { kind: robber, table: None };
    let mut r = rob.start(g, &d, &cops).expect("MGP has more than three vertices");
    let mut trace = vec![Step {
        round: 0,
        mover: "place",
        cops: cops.to_vec(),
        robber: r,
    }];
    for round in 1..=max_rounds {
        let r_new = rob.step(g, &d, &cops, r);
        trace.push(Step {
            round,
            mover: "robber",
            cops: cops.to_vec(),
            robber: r_new,
        });
        if cops.contains(&r_new) {
            return Ok(Play {
                captured_at: Some(round),
                trace,
            });
        }
        (state, cops) = strategy.respond(state, cops, r, r_new)?;
        r = r_new;
        trace.push(Step {
            round,
            mover: "cops",
            cops: cops.to_vec(),
            robber: r,
        });
        if cops.contains(&r) {
            return Ok(Play {
                captured_at: Some(round),
                trace,
            });
        }
    }
    Ok(Play {
        captured_at: None,
        trace,
    })
}

pub fn run(a: &SimulateArgs) -> Result<Report> {
    let s = &a.source;
    let (input, play) = if let Some([n, k, t]) = s.scripted {
        let strategy = MgpStrategy::new(n, k, t)?;
        let rounds = a.max_rounds.unwrap_or(10 * n * (t + 1));
        (json!({ "scripted": [n, k, t] }), play_scripted(&strategy, a.robber, rounds)?)
    } else {
        let (input, g) = match (s.fixture, &s.graph) {
            (Some(f), _) => (json!({ "fixture": f.name() }), f.graph()),
            (None, Some(p)) => (json!({ "graph": p.display().to_string() }), read_graph(p)?),
            (None, None) => unreachable!("clap requires one source"),
        };
        if a.cops == 0 {
            return Err(UsageError("--cops must be at least 1".into()).into());
        }
        let table = solve_k_cops(&g, a.cops, a.budget)?;
        let rounds = a.max_rounds.unwrap_or(4 * g.n() * g.n());
        let mut input = input;
        input["cops"] = json!(a.cops);
        (input, play_table(&table, a.robber, rounds))
    };
    let mut input = input;
    input["robber"] = json!(format!("{:?}", a.robber).to_lowercase());
    let mut report = Report::new("simulate", input);
    let verdict = if play.captured_at.is_some() { "captured" } else { "escaped" };
    report
        .set("verdict", verdict)
        .set("captured_at", play.captured_at)
        .set("moves", play.trace.len());
    if let Some(p) = &a.trace {
        write_file(p, &serde_json::to_string_pretty(&play.trace)?)?;
        report.set("trace_file", p.display().to_string());
    }
    Ok(report)
}
