use std::path::Path;

use clap::{Args, ValueEnum};
use orisearch::instance_gen::{
    metric_weighted_instance, planted_common_line_instance, planted_partite_clique, random_cnf, random_coloring,
    random_orientations, random_partite, random_weighted_cnf, random_weighted_partite, Provenance,
};
use orisearch::io::{CircleInstanceDoc, CnfDoc, ColoringDoc, Document, Envelope, OrientationsDoc, PartiteDoc};
use serde_json::json;

use crate::{emit, CmdResult, Failure, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Generator {
    /// Partite graph with a planted n-clique (uses --n --m --edge-prob).
    PlantedClique,
    /// Common-line instance with planted orientations (--n --l --noise).
    PlantedCircle,
    /// Weighted graph from random points (--n --m --dim --power).
    Metric,
    /// Random partite graph (--n --m --edge-prob).
    Partite,
    /// Complete partite graph with random weights (--n --m --max-weight).
    Wpartite,
    /// Random formula with m literals per clause (--vars --clauses --m, optional --max-weight).
    Cnf,
    /// Random coloring instance (--n vertices, --edge-prob, --k colors).
    Coloring,
    /// Random orientations (--n).
    Orientations,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(value_enum)]
    pub generator: Generator,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    #[arg(long, default_value_t = 3)]
    pub m: usize,
    #[arg(long, default_value_t = 0.5)]
    pub edge_prob: f64,
    /// Allowed pairs per constrained pair of circles.
    #[arg(long, default_value_t = 3)]
    pub l: usize,
    /// Half-width of the uniform angle noise, in radians.
    #[arg(long, default_value_t = 0.0)]
    pub noise: f64,
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[arg(long, default_value_t = 1)]
    pub power: u32,
    #[arg(long, default_value_t = 8)]
    pub vars: usize,
    #[arg(long, default_value_t = 12)]
    pub clauses: usize,
    #[arg(long)]
    pub max_weight: Option<u64>,
    #[arg(long, default_value_t = 3)]
    pub k: usize,
}

pub fn generate(a: &GenerateArgs) -> Result<Envelope, Failure> {
    let seed = a.seed;
    let env = match a.generator {
        Generator::PlantedClique => {
            let p = planted_partite_clique(a.n, a.m, a.edge_prob, seed).map_err(Failure::input)?;
            Envelope::new(Document::Partite(PartiteDoc::from_graph(&p.instance).with_ground_truth(&p.ground_truth)))
                .with_provenance(p.provenance)
        }
        Generator::PlantedCircle => {
            let p = planted_common_line_instance(a.n, a.l, a.noise, seed).map_err(Failure::input)?;
            let doc = CircleInstanceDoc::from_instance(&p.instance).with_ground_truth(&p.ground_truth);
            Envelope::new(Document::CircleInstance(doc)).with_provenance(p.provenance)
        }
        Generator::Metric => {
            let inst = metric_weighted_instance(a.n, a.m, a.dim, a.power, seed).map_err(Failure::input)?;
            let mut prov = inst.provenance;
            prov.params.insert("beta".into(), json!(inst.beta));
            Envelope::new(Document::Partite(PartiteDoc::from_weighted(&inst.graph))).with_provenance(prov)
        }
        Generator::Partite => {
            let g = random_partite(a.n, a.m, a.edge_prob, seed).map_err(Failure::input)?;
            let prov = Provenance::new("random_partite", seed, json!({ "n": a.n, "m": a.m, "edge_prob": a.edge_prob }));
            Envelope::new(Document::Partite(PartiteDoc::from_graph(&g))).with_provenance(prov)
        }
        Generator::Wpartite => {
            let max = a.max_weight.unwrap_or(100);
            let g = random_weighted_partite(a.n, a.m, max, seed).map_err(Failure::input)?;
            let prov =
                Provenance::new("random_weighted_partite", seed, json!({ "n": a.n, "m": a.m, "max_weight": max }));
            Envelope::new(Document::Partite(PartiteDoc::from_weighted(&g))).with_provenance(prov)
        }
        Generator::Cnf => {
            let f = match a.max_weight {
                Some(w) => random_weighted_cnf(a.vars, a.clauses, a.m, w, seed),
                None => random_cnf(a.vars, a.clauses, a.m, seed),
            }
            .map_err(Failure::input)?;
            let params = json!({ "vars": a.vars, "clauses": a.clauses, "m": a.m, "max_weight": a.max_weight });
            Envelope::new(Document::Cnf(CnfDoc::from_formula(&f))).with_provenance(Provenance::new(
                "random_cnf",
                seed,
                params,
            ))
        }
        Generator::Coloring => {
            let c = random_coloring(a.n, a.edge_prob, a.k, seed).map_err(Failure::input)?;
            let prov = Provenance::new(
                "random_coloring",
                seed,
                json!({ "vertices": a.n, "edge_prob": a.edge_prob, "k": a.k }),
            );
            Envelope::new(Document::Coloring(ColoringDoc::from_instance(&c))).with_provenance(prov)
        }
        Generator::Orientations => {
            let os = random_orientations(a.n, seed);
            let prov = Provenance::new("random_orientations", seed, json!({ "n": a.n }));
            Envelope::new(Document::Orientations(OrientationsDoc::from_orientations(&os))).with_provenance(prov)
        }
    };
    Ok(env)
}

pub fn run(args: &GenerateArgs, out: Option<&Path>) -> CmdResult {
    emit(out, &generate(args)?.to_json())?;
    Ok(Verdict::Yes)
}
