use std::io::Write;
use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use copguard::families::{
    complete, cycle, gen_gp, gen_mgp, path, random_block_graph, random_connected_graph, random_isometric_host,
    random_vertebrate_graph, star, MgpLabeling, VertebrateParams,
};
use copguard::Graph;
use serde_json::{json, Value};

use crate::input::{parse_tuple, write_file, Fixture};
use crate::report::Report;

#[derive(Args, Debug)]
#[group(id = "family", required = true, multiple = false)]
pub struct Family {
    /// MGP(n,k,t) as `n,k,t`.
    #[arg(long, value_parser = parse_tuple::<3>, value_name = "N,K,T")]
    mgp: Option<[usize; 3]>,
    /// GP(n,k) as `n,k`.
    #[arg(long, value_parser = parse_tuple::<2>, value_name = "N,K")]
    gp: Option<[usize; 2]>,
    #[arg(long, value_enum)]
    fixture: Option<Fixture>,
    #[arg(long, value_name = "N")]
    path: Option<usize>,
    #[arg(long, value_name = "N")]
    cycle: Option<usize>,
    #[arg(long, value_name = "N")]
    complete: Option<usize>,
    /// Star with this many leaves.
    #[arg(long, value_name = "LEAVES")]
    star: Option<usize>,
    /// Random block graph as `seed,vertices,max_clique`.
    #[arg(long, value_parser = parse_tuple::<3>, value_name = "SEED,N,CLIQUE")]
    random_block: Option<[usize; 3]>,
    /// Random vertebrate graph with default knobs; the backbone is reported.
    #[arg(long, value_name = "SEED")]
    random_vertebrate: Option<u64>,
    /// Random connected graph: a random tree plus each other edge with
    /// probability `--edge-prob`.
    #[arg(long, value_parser = parse_tuple::<2>, value_name = "SEED,N")]
    random_connected: Option<[usize; 2]>,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[command(flatten)]
    family: Family,
    #[arg(long, default_value_t = 0.2, requires = "random_connected")]
    edge_prob: f64,
    /// Embed the generated graph isometrically (ids kept) into a random
    /// host on N vertices; the report lists the embedded ids as `subgraph`.
    #[arg(long, value_parser = parse_tuple::<2>, value_name = "SEED,N")]
    embed: Option<[usize; 2]>,
    /// Extra host edges proposed by `--embed`.
    #[arg(long, default_value_t = 4, requires = "embed")]
    extra_edges: usize,
    /// Write the graph here and print a JSON report; without it the graph
    /// text goes to stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Side file mapping MGP coordinates: lines `v <id> <layer> <index>`.
    #[arg(long)]
    coords: Option<PathBuf>,
}

pub fn run(a: &GenArgs) -> Result<Option<Report>> {
    let f = &a.family;
    let mut labeling: Option<MgpLabeling> = None;
    let mut extra = Value::Null;
    let (name, graph): (Value, Graph) = if let Some([n, k, t]) = f.mgp {
        let (g, lab) = gen_mgp(n, k, t)?;
        labeling = Some(lab);
        (json!({ "mgp": [n, k, t] }), g)
    } else if let Some([n, k]) = f.gp {
        let (g, lab) = gen_gp(n, k)?;
        labeling = Some(lab);
        (json!({ "gp": [n, k] }), g)
    } else if let Some(fx) = f.fixture {
        if fx == Fixture::Petersen {
            labeling = Some(gen_gp(5, 2)?.1);
        }
        extra = json!({ "subgraph": fx.subgraph() });
        (json!({ "fixture": fx.name() }), fx.graph())
    } else if let Some(n) = f.path {
        (json!({ "path": n }), path(n))
    } else if let Some(n) = f.cycle {
        if n < 3 {
            return Err(crate::UsageError(format!("--cycle {n}: a cycle needs at least 3 vertices")).into());
        }
        (json!({ "cycle": n }), cycle(n))
    } else if let Some(n) = f.complete {
        (json!({ "complete": n }), complete(n))
    } else if let Some(l) = f.star {
        (json!({ "star": l }), star(l))
    } else if let Some([seed, n, c]) = f.random_block {
        (json!({ "random_block": [seed, n, c] }), random_block_graph(seed as u64, n, c)?)
    } else if let Some(seed) = f.random_vertebrate {
        let (g, backbone) = random_vertebrate_graph(seed, &VertebrateParams::default())?;
        extra = json!({ "backbone": backbone });
        (json!({ "random_vertebrate": seed }), g)
    } else if let Some([seed, n]) = f.random_connected {
        (
            json!({ "random_connected": [seed, n], "edge_prob": a.edge_prob }),
            random_connected_graph(seed as u64, n, a.edge_prob)?,
        )
    } else {
        unreachable!("clap requires one family")
    };

    let mut graph = graph;
    if let Some([seed, n]) = a.embed {
        extra = json!({ "subgraph": (0..graph.n()).collect::<Vec<_>>(), "host": [seed, n], "backbone": extra.get("backbone") });
        graph = random_isometric_host(seed as u64, &graph, n, a.extra_edges)?;
    }
    if let Some(p) = &a.coords {
        let Some(lab) = labeling else {
            return Err(crate::UsageError("--coords only applies to --mgp, --gp and --fixture petersen".into()).into());
        };
        write_file(p, &lab.coords_text())?;
    }
    let Some(out) = &a.output else {
        let _ = std::io::stdout().lock().write_all(graph.to_text().as_bytes());
        return Ok(None);
    };
    write_file(out, &graph.to_text())?;
    let mut report = Report::new("gen", name);
    report
        .set("output", out.display().to_string())
        .set("coords", a.coords.as_ref().map(|p| p.display().to_string()))
        .set("vertices", graph.n())
        .set("edges", graph.edge_count());
    if let Value::Object(m) = extra {
        for (k, v) in m {
            report.set(&k, v);
        }
    }
    Ok(Some(report))
}
