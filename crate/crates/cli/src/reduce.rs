use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use orisearch::graph::PartiteGraph;
use orisearch::io::{
    expect_cnf, expect_coloring, expect_partite, CnfDoc, Document, Envelope, LineInstanceDoc, PartiteDoc,
};
use orisearch::reductions::{
    clique_gap_weights, coloring_to_partite, msat_to_line_instance, mw2sat_to_mwclique, mwclique_to_mw2sat,
    partite2_to_2sat, partite_to_line_instance, sat2_to_partite,
};
use serde_json::{json, Value};

use crate::{emit, load, CmdResult, Failure, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    Coloring,
    Partite,
    #[value(name = "2sat")]
    TwoSat,
    Sat,
    Wpartite,
    W2sat,
    Lines,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    /// Source instance document (`-` for standard input).
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub from: Problem,
    #[arg(long, value_enum)]
    pub to: Problem,
    /// Exponent for the gap weights of partite -> wpartite, heavy weight 2^(n^k).
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub k: u32,
}

fn name(p: Problem) -> String {
    p.to_possible_value().map(|v| v.get_name().to_owned()).unwrap_or_default()
}

fn groups_json(g: &PartiteGraph) -> Value {
    json!(g.groups())
}

/// The reduced document and its mapping section.
pub fn reduce(env: &Envelope, from: Problem, to: Problem, k: u32) -> Result<(Document, Value), Failure> {
    use Problem::*;
    let partite = || -> Result<PartiteGraph, Failure> {
        let doc = expect_partite(env).map_err(Failure::input)?;
        doc.to_graph().map_err(Failure::input)
    };
    let formula = || expect_cnf(env).map_err(Failure::input).and_then(|d| d.to_formula().map_err(Failure::input));
    let (doc, mapping) = match (from, to) {
        (Coloring, Partite) => {
            let c = expect_coloring(env).map_err(Failure::input)?.to_instance().map_err(Failure::input)?;
            let g = coloring_to_partite(&c).map_err(Failure::input)?;
            // vertex i*k + c colors vertex i with c
            (Document::Partite(PartiteDoc::from_graph(&g)), json!({ "rule": "vertex_color", "k": c.k() }))
        }
        (Partite, TwoSat) => {
            let g = partite()?;
            let f = partite2_to_2sat(&g).map_err(Failure::input)?;
            (Document::Cnf(CnfDoc::from_formula(&f)), json!({ "rule": "slot_by_truth", "groups": groups_json(&g) }))
        }
        (TwoSat, Partite) => {
            let f = formula()?;
            let g = sat2_to_partite(&f).map_err(Failure::input)?;
            (
                Document::Partite(PartiteDoc::from_graph(&g)),
                json!({ "rule": "truth_by_pick", "num_vars": f.num_vars() }),
            )
        }
        (W2sat, Wpartite) => {
            let f = formula()?;
            let g = mw2sat_to_mwclique(&f).map_err(Failure::input)?;
            (
                Document::Partite(PartiteDoc::from_weighted(&g)),
                json!({ "rule": "truth_by_pick", "num_vars": f.num_vars() }),
            )
        }
        (Wpartite, W2sat) => {
            let doc = expect_partite(env).map_err(Failure::input)?;
            if !doc.is_weighted() {
                return Err(Failure::input("wpartite source needs a weights section"));
            }
            let g = doc.to_weighted().map_err(Failure::input)?;
            let f = mwclique_to_mw2sat(&g).map_err(Failure::input)?;
            (
                Document::Cnf(CnfDoc::from_formula(&f)),
                json!({ "rule": "slot_by_truth", "groups": groups_json(g.base()) }),
            )
        }
        (Partite, Wpartite) => {
            let g = partite()?;
            let w = clique_gap_weights(&g, k).map_err(Failure::input)?;
            let heavy = (g.n() as u128).pow(k);
            (
                Document::Partite(PartiteDoc::from_weighted(&w)),
                json!({ "rule": "identity", "k": k, "heavy_exponent": heavy }),
            )
        }
        (Partite, Lines) => {
            let g = partite()?;
            let r = partite_to_line_instance(&g).map_err(Failure::input)?;
            (
                Document::LineInstance(LineInstanceDoc::from_reduction(&r)),
                json!({ "rule": "slot_by_line", "groups": groups_json(&g) }),
            )
        }
        (Sat, Lines) => {
            let f = formula()?;
            let r = msat_to_line_instance(&f).map_err(Failure::input)?;
            (
                Document::LineInstance(LineInstanceDoc::from_reduction(&r)),
                json!({ "rule": "truth_by_line", "num_vars": f.num_vars() }),
            )
        }
        (a, b) => return Err(Failure::input(format!("unsupported reduction {} -> {}", name(a), name(b)))),
    };
    let mut mapping = mapping;
    mapping["from"] = json!(name(from));
    mapping["to"] = json!(name(to));
    Ok((doc, mapping))
}

pub fn run(args: &ReduceArgs, out: Option<&Path>) -> CmdResult {
    let env = load(&args.input)?;
    let (doc, mapping) = reduce(&env, args.from, args.to, args.k)?;
    emit(out, &Envelope::new(doc).with_mapping(mapping).to_json())?;
    Ok(Verdict::Yes)
}
