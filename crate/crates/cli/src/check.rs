use anyhow::Result;
use clap::{Args, ValueEnum};
use copguard::characterize::{
    check_p1, check_p2, check_p3_with_r, exhaustive_p3_guard_set, find_backbone, is_block_graph,
    is_extended_block_graph, verify_backbone, BackboneSearch, Verdict, DEFAULT_EXHAUSTIVE_LIMIT,
};
use copguard::graph::{is_dismantlable, isometry_violation};
use copguard::{DistanceMatrix, SubgraphView};
use serde::Serialize;
use serde_json::{json, Value};

use crate::input::GraphInput;
use crate::report::Report;
use crate::UsageError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PropertyArg {
    /// Four-point condition (block graphs).
    P1,
    /// Gate condition (extended block graphs).
    P2,
    /// Guard-set condition; uses `--guard-set`, or searches all subsets.
    P3,
    Block,
    ExtendedBlock,
    /// Searches for a backbone certificate.
    Vertebrate,
    /// Verifies the backbone given by `--backbone`.
    Backbone,
    Dismantlable,
    /// `--subgraph` is isometric in the graph.
    Isometric,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[command(flatten)]
    input: GraphInput,
    #[arg(long, value_enum)]
    property: PropertyArg,
    #[arg(long, value_delimiter = ',', value_name = "IDS")]
    guard_set: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',', value_name = "IDS")]
    backbone: Option<Vec<usize>>,
    /// For `isometric`, the subgraph to test. For every other property,
    /// check the induced subgraph instead of the whole graph; ids in the
    /// witness and certificate are then positions in this list.
    #[arg(long, value_delimiter = ',', value_name = "IDS")]
    subgraph: Option<Vec<usize>>,
    /// Largest graph for exhaustive subset searches.
    #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_LIMIT)]
    limit: usize,
}

struct Outcome {
    holds: Option<bool>,
    witness: Value,
    certificate: Value,
}

fn from_verdict<T: Serialize>(v: Verdict<T>) -> Outcome {
    match v {
        Verdict::Holds(t) => {
            let cert = serde_json::to_value(t).expect("certificate serializes");
            Outcome {
                holds: Some(true),
                witness: Value::Null,
                certificate: cert,
            }
        }
        Verdict::Fails(w) => Outcome {
            holds: Some(false),
            witness: serde_json::to_value(w).expect("witness serializes"),
            certificate: Value::Null,
        },
    }
}

fn name(p: PropertyArg) -> &'static str {
    match p {
        PropertyArg::P1 => "p1",
        PropertyArg::P2 => "p2",
        PropertyArg::P3 => "p3",
        PropertyArg::Block => "block",
        PropertyArg::ExtendedBlock => "extended-block",
        PropertyArg::Vertebrate => "vertebrate",
        PropertyArg::Backbone => "backbone",
        PropertyArg::Dismantlable => "dismantlable",
        PropertyArg::Isometric => "isometric",
    }
}

pub fn run(a: &CheckArgs) -> Result<Report> {
    let loaded = a.input.load()?;
    // other properties are checked on the induced subgraph when one is given
    let induced = match (a.property, &a.subgraph) {
        (PropertyArg::Isometric, _) | (_, None) => None,
        (_, Some(h)) => Some(SubgraphView::new(&loaded.graph, h)?),
    };
    let g = induced.as_ref().map_or(&loaded.graph, SubgraphView::graph);
    let d = DistanceMatrix::new(g);
    let out = match a.property {
        PropertyArg::P1 => from_verdict(check_p1(g, &d)?),
        PropertyArg::P2 => from_verdict(check_p2(g, &d)?),
        PropertyArg::P3 => match &a.guard_set {
            Some(r) => from_verdict(check_p3_with_r(g, &d, r)?),
            None => {
                let found = exhaustive_p3_guard_set(g, &d, a.limit)?;
                Outcome {
                    holds: Some(found.is_some()),
                    witness: Value::Null,
                    certificate: found.map_or(Value::Null, |r| json!({ "guard_set": r })),
                }
            }
        },
        PropertyArg::Block => from_verdict(is_block_graph(g)?),
        PropertyArg::ExtendedBlock => from_verdict(is_extended_block_graph(g)?),
        PropertyArg::Vertebrate => match find_backbone(g, &d, a.limit)? {
            BackboneSearch::Found(cert) => Outcome {
                holds: Some(true),
                witness: Value::Null,
                certificate: serde_json::to_value(cert)?,
            },
            BackboneSearch::NotVertebrate => Outcome {
                holds: Some(false),
                witness: Value::Null,
                certificate: Value::Null,
            },
            BackboneSearch::Unknown => Outcome {
                holds: None,
                witness: Value::Null,
                certificate: Value::Null,
            },
        },
        PropertyArg::Backbone => {
            let b = a
                .backbone
                .as_ref()
                .ok_or_else(|| UsageError("--property backbone needs --backbone".into()))?;
            from_verdict(verify_backbone(g, &d, b)?)
        }
        PropertyArg::Dismantlable => match is_dismantlable(g) {
            Some(order) => Outcome {
                holds: Some(true),
                witness: Value::Null,
                certificate: json!({ "elimination_order": order }),
            },
            None => Outcome {
                holds: Some(false),
                witness: Value::Null,
                certificate: Value::Null,
            },
        },
        PropertyArg::Isometric => {
            let h = loaded.subgraph(&a.subgraph)?;
            let view = SubgraphView::new(g, &h)?;
            match isometry_violation(&view, &d) {
                None => Outcome {
                    holds: Some(true),
                    witness: Value::Null,
                    certificate: Value::Null,
                },
                Some(w) => Outcome {
                    holds: Some(false),
                    witness: serde_json::to_value(w)?,
                    certificate: Value::Null,
                },
            }
        }
    };
    let mut input = a.input.echo();
    for (key, list) in [("guard_set", &a.guard_set), ("backbone", &a.backbone), ("subgraph", &a.subgraph)] {
        if let Some(l) = list {
            input[key] = json!(l);
        }
    }
    let mut report = Report::new("check", input);
    let verdict = match out.holds {
        Some(h) => json!(h),
        None => json!("unknown"),
    };
    report
        .set("property", name(a.property))
        .set("holds", out.holds)
        .set("witness", out.witness)
        .set("certificate", out.certificate)
        .set("verdict", verdict);
    Ok(report)
}
