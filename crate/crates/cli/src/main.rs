//! `copguard`: generators, property checks, guarding games and cop-number
//! solves from the command line. Every command except a bare `gen` prints a
//! JSON report on stdout.
//!
//! Exit codes: 0 success (and verdict matches `--expect`), 1 verdict
//! mismatch, 2 usage or input error, 3 state budget exhausted.

mod check;
mod copnum;
mod gen;
mod guard;
mod input;
mod report;
mod simulate;

use std::fmt;
use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use copguard::Error as CoreError;

use report::{verdict_text, Report};

#[derive(Parser, Debug)]
#[command(name = "copguard", version, about = "Guardable subgraphs and cops-and-robber solving")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Exit with status 1 unless the report's verdict equals this value.
    #[arg(long, global = true)]
    expect: Option<String>,
    /// Add wall-clock time to the report. Off by default so reports are
    /// reproducible byte for byte.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a graph in the text format.
    Gen(gen::GenArgs),
    /// Check a metric or structural property.
    Check(check::CheckArgs),
    /// Solve or simulate the one-cop guarding game on a subgraph.
    Guard(guard::GuardArgs),
    /// Compute the cop number exactly, up to `--max-cops`.
    Copnum(copnum::CopnumArgs),
    /// Check cop number 3 on a multi-layer generalized Petersen graph.
    VerifyMgp(copnum::VerifyMgpArgs),
    /// Play cops against a robber policy and record the play.
    Simulate(simulate::SimulateArgs),
}

/// Bad flag values or combinations that clap cannot catch.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn run(cli: &Cli) -> anyhow::Result<Option<Report>> {
    match &cli.command {
        Command::Gen(a) => gen::run(a),
        Command::Check(a) => check::run(a).map(Some),
        Command::Guard(a) => guard::run(a).map(Some),
        Command::Copnum(a) => copnum::run(a).map(Some),
        Command::VerifyMgp(a) => copnum::run_verify(a).map(Some),
        Command::Simulate(a) => simulate::run(a).map(Some),
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    let budget = err
        .chain()
        .any(|e| matches!(e.downcast_ref::<CoreError>(), Some(CoreError::BudgetExceeded { .. })));
    if budget {
        3
    } else {
        2
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let Some(mut report) = report else {
        if cli.expect.is_some() {
            eprintln!("error: --expect needs a command that reports a verdict");
            return ExitCode::from(2);
        }
        return ExitCode::SUCCESS;
    };
    let mut code = ExitCode::SUCCESS;
    if let Some(want) = &cli.expect {
        let got = report.verdict().map(verdict_text).unwrap_or_default();
        let matched = &got == want;
        report.set("expect", serde_json::json!({ "value": want, "matched": matched }));
        if !matched {
            code = ExitCode::from(1);
        }
    }
    if cli.timing {
        report.set("elapsed_ms", started.elapsed().as_millis() as u64);
    }
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let _ = writeln!(std::io::stdout().lock(), "{}", report.to_json());
    code
}
