use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, ValueEnum};
use copguard::copnumber::{solve_k_cops, verify_mgp_theorem, CopNumber, MgpMethod, DEFAULT_STATE_BUDGET};
use serde_json::json;

use crate::input::{write_file, GraphInput};
use crate::report::Report;
use crate::simulate::{play_table, RobberArg};
use crate::UsageError;

#[derive(Args, Debug)]
pub struct CopnumArgs {
    #[command(flatten)]
    input: GraphInput,
    #[arg(long, default_value_t = 3)]
    max_cops: usize,
    /// Largest state space to allocate for one solve.
    #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
    budget: usize,
    /// Write a play at the winning number of cops (policy cops against the
    /// optimal robber), or against the largest tried number when the robber
    /// always escapes.
    #[arg(long)]
    trace: Option<PathBuf>,
}

pub fn run(a: &CopnumArgs) -> Result<Report> {
    if a.max_cops == 0 {
        return Err(UsageError("--max-cops must be at least 1".into()).into());
    }
    let g = a.input.load()?.graph;
    if !g.is_connected() {
        return Err(copguard::Error::Disconnected.into());
    }
    let mut solves = Vec::new();
    let mut number = CopNumber::Above(a.max_cops);
    let mut last = None;
    for k in 1..=a.max_cops {
        let table = solve_k_cops(&g, k, a.budget)?;
        let win = table.is_cop_win();
        solves.push(json!({ "cops": k, "states": table.state_count(), "cop_win": win }));
        last = Some(table);
        if win {
            number = CopNumber::Exactly(k);
            break;
        }
    }
    let mut input = a.input.echo();
    input["max_cops"] = json!(a.max_cops);
    input["budget"] = json!(a.budget);
    let mut report = Report::new("copnum", input);
    report
        .set("verdict", number)
        .set("cop_number", number)
        .set("vertices", g.n())
        .set("edges", g.edge_count())
        .set("solves", solves);
    if let (Some(p), Some(table)) = (&a.trace, &last) {
        let play = play_table(table, RobberArg::Optimal, 4 * g.n() * g.n());
        write_file(p, &serde_json::to_string_pretty(&play)?)?;
        report.set("trace_file", p.display().to_string());
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Exact,
    Scripted,
    Both,
}

#[derive(Args, Debug)]
pub struct VerifyMgpArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    t: usize,
    #[arg(long, value_enum, default_value_t = MethodArg::Both)]
    method: MethodArg,
    #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
    budget: usize,
    /// Write the falsifying play or the scripted strategy's failing line,
    /// when there is one.
    #[arg(long)]
    trace: Option<PathBuf>,
}

/// Verdict `consistent` when every method run agrees with cop number 3 and
/// the guarded columns are an isometric block graph, else `inconsistent`.
pub fn run_verify(a: &VerifyMgpArgs) -> Result<Report> {
    let method = match a.method {
        MethodArg::Exact => MgpMethod::Exact,
        MethodArg::Scripted => MgpMethod::Scripted,
        MethodArg::Both => MgpMethod::Both,
    };
    let mut res = verify_mgp_theorem(a.n, a.k, a.t, method, a.budget)?;
    let verdict = if res.consistent() { "consistent" } else { "inconsistent" };
    let input = json!({ "n": a.n, "k": a.k, "t": a.t, "method": method, "budget": a.budget });
    let mut report = Report::new("verify-mgp", input);
    report.set("verdict", verdict);
    let trace = match (&res.falsification, res.scripted.as_ref().and_then(|s| s.failure.as_ref())) {
        (Some(f), _) => Some(serde_json::to_string_pretty(&f.trace)?),
        (None, Some(fail)) => Some(serde_json::to_string_pretty(fail)?),
        (None, None) => None,
    };
    if let (Some(p), Some(text)) = (&a.trace, trace) {
        write_file(p, &text)?;
        report.set("trace_file", p.display().to_string());
        // the report keeps only the claim and the trace length
        if let Some(f) = &mut res.falsification {
            report.set("trace_length", f.trace.len());
            f.trace.clear();
        }
        if let Some(s) = &mut res.scripted {
            s.failure = None;
        }
    }
    report.set("result", &res);
    Ok(report)
}
