use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};
use copguard::families::{figure1_instance, petersen};
use copguard::Graph;
use serde_json::{json, Value};

use crate::UsageError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Fixture {
    /// Cop-win H on vertices 0..=5 inside a 7-vertex host where one cop
    /// cannot guard it.
    Figure1,
    /// GP(5,2) with ids `a_i = i`, `b_i = 5 + i`.
    Petersen,
}

impl Fixture {
    pub fn name(self) -> &'static str {
        match self {
            Fixture::Figure1 => "figure1",
            Fixture::Petersen => "petersen",
        }
    }

    pub fn graph(self) -> Graph {
        match self {
            Fixture::Figure1 => figure1_instance().0,
            Fixture::Petersen => petersen(),
        }
    }

    /// The subgraph the fixture comes with, if any.
    pub fn subgraph(self) -> Option<Vec<usize>> {
        match self {
            Fixture::Figure1 => Some(figure1_instance().1.vertices().to_vec()),
            Fixture::Petersen => None,
        }
    }
}

/// A graph file or a built-in fixture, exactly one of the two.
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct GraphInput {
    /// Graph in the `p <n> <m>` / `e <u> <v>` text format.
    pub graph: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub fixture: Option<Fixture>,
}

pub struct Loaded {
    pub graph: Graph,
    pub fixture: Option<Fixture>,
}

impl GraphInput {
    pub fn load(&self) -> Result<Loaded> {
        if let Some(f) = self.fixture {
            return Ok(Loaded {
                graph: f.graph(),
                fixture: Some(f),
            });
        }
        let path = self.graph.as_deref().expect("clap requires one input");
        Ok(Loaded {
            graph: read_graph(path)?,
            fixture: None,
        })
    }

    pub fn echo(&self) -> Value {
        match (self.fixture, &self.graph) {
            (Some(f), _) => json!({ "fixture": f.name() }),
            (None, Some(p)) => json!({ "graph": p.display().to_string() }),
            (None, None) => Value::Null,
        }
    }
}

impl Loaded {
    /// `--subgraph` if given, otherwise the fixture's own subgraph.
    pub fn subgraph(&self, flag: &Option<Vec<usize>>) -> Result<Vec<usize>> {
        match (flag, self.fixture.and_then(Fixture::subgraph)) {
            (Some(s), _) => Ok(s.clone()),
            (None, Some(s)) => Ok(s),
            (None, None) => Err(UsageError("--subgraph is required for this input".into()).into()),
        }
    }
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    Graph::parse(&text).with_context(|| format!("cannot parse {}", path.display()))
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}

/// Parses `a,b,c` into numbers.
fn parse_list<T: std::str::FromStr>(s: &str) -> std::result::Result<Vec<T>, String> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<T>().map_err(|_| format!("{t:?} is not a number")))
        .collect()
}

/// Parses exactly `N` comma-separated integers.
pub fn parse_tuple<const N: usize>(s: &str) -> std::result::Result<[usize; N], String> {
    let v: Vec<usize> = parse_list(s)?;
    v.try_into().map_err(|v: Vec<usize>| format!("expected {N} comma-separated values, got {}", v.len()))
}
