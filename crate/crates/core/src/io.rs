//! JSON document formats.
//!
//! Every document is an object with a `"version"` (`"major.minor"`) and a
//! `"kind"` field, plus optional `"provenance"` and `"mapping"` sections.
//! Big integers are decimal strings and exact rationals are `"p/q"` strings.
//! Literals use the DIMACS convention: variable `i` is `i + 1`, negated `-(i + 1)`.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::geometry::{
    ExactLine, ExactLineInstance, ExactPoint, GeometryError, Line, LineArrangementInstance, LocalCircleInstance,
    Orientation, Point,
};
use crate::graph::{Assignment, GraphError, PartiteGraph, VertexId, Weight, WeightedPartiteGraph};
use crate::instance_gen::Provenance;
use crate::reductions::{ColoringInstance, LineReduction};
use crate::solvers::{Clause, CnfError, CnfFormula, Literal, SolveOutcome, Status, Witness};

pub const FORMAT_VERSION: &str = "1.0";
const FORMAT_MAJOR: u64 = 1;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("document has no string \"version\" field")]
    MissingVersion,
    #[error("unsupported format version {0:?} (this build reads major version {FORMAT_MAJOR})")]
    Version(String),
    #[error("expected a {expected} document, found {found}")]
    Kind { expected: &'static str, found: &'static str },
    #[error("invalid number {0:?}")]
    Number(String),
    #[error("invalid pair key {0:?}, expected \"i,j\"")]
    PairKey(String),
    #[error("{0}")]
    Malformed(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Cnf(#[from] CnfError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// A coordinate: a JSON number or an exact `"p/q"` string.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Float(f64),
    Exact(String),
}

impl Num {
    fn exact(v: &BigRational) -> Self {
        Num::Exact(v.to_string())
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Num::Exact(_))
    }

    pub fn to_rational(&self) -> Result<BigRational, IoError> {
        match self {
            Num::Float(f) => BigRational::from_float(*f).ok_or_else(|| IoError::Number(f.to_string())),
            Num::Exact(s) => {
                let r = BigRational::from_str(s.trim()).map_err(|_| IoError::Number(s.clone()))?;
                Ok(r)
            }
        }
    }

    pub fn to_f64(&self) -> Result<f64, IoError> {
        match self {
            Num::Float(f) => Ok(*f),
            Num::Exact(_) => {
                let r = self.to_rational()?;
                r.to_f64().filter(|f| f.is_finite()).ok_or_else(|| IoError::Number(r.to_string()))
            }
        }
    }
}

fn pair_key(i: usize, j: usize) -> String {
    format!("{i},{j}")
}

fn parse_pair_key(k: &str) -> Result<(usize, usize), IoError> {
    let bad = || IoError::PairKey(k.to_owned());
    let (a, b) = k.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn parse_weight(s: &str) -> Result<Weight, IoError> {
    Weight::from_str(s.trim()).map_err(|_| IoError::Number(s.to_owned()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartiteDoc {
    pub groups: Vec<Vec<VertexId>>,
    pub edges: Vec<[VertexId; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<(VertexId, VertexId, String)>>,
    /// Planted picks per group, `null` for an empty group pick.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ground_truth: Option<Vec<Option<VertexId>>>,
}

impl PartiteDoc {
    pub fn from_graph(g: &PartiteGraph) -> Self {
        Self {
            groups: g.groups().to_vec(),
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
            weights: None,
            ground_truth: None,
        }
    }

    pub fn from_weighted(g: &WeightedPartiteGraph) -> Self {
        let mut doc = Self::from_graph(g.base());
        doc.weights = Some(g.weighted_pairs().map(|(u, v, w)| (u, v, w.to_string())).collect());
        doc
    }

    pub fn with_ground_truth(mut self, a: &Assignment) -> Self {
        self.ground_truth = Some(a.picks().to_vec());
        self
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    pub fn to_graph(&self) -> Result<PartiteGraph, IoError> {
        let edges: Vec<_> = self.edges.iter().map(|&[u, v]| (u, v)).collect();
        Ok(PartiteGraph::new(self.groups.clone(), &edges)?)
    }

    pub fn to_weighted(&self) -> Result<WeightedPartiteGraph, IoError> {
        let ws = self.weights.as_ref().ok_or_else(|| IoError::Malformed("graph has no \"weights\"".into()))?;
        let parsed = ws.iter().map(|(u, v, w)| Ok((*u, *v, parse_weight(w)?))).collect::<Result<Vec<_>, IoError>>()?;
        Ok(WeightedPartiteGraph::from_weights(self.groups.clone(), parsed)?)
    }

    pub fn ground_truth(&self) -> Option<Assignment> {
        self.ground_truth.clone().map(Assignment::from_picks)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClauseDoc {
    pub literals: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CnfDoc {
    pub num_vars: usize,
    pub max_clause_len: usize,
    pub clauses: Vec<ClauseDoc>,
}

impl CnfDoc {
    pub fn from_formula(f: &CnfFormula) -> Self {
        let clauses = f
            .clauses()
            .iter()
            .map(|c| ClauseDoc {
                literals: c
                    .literals
                    .iter()
                    .map(|l| if l.positive { l.var as i64 + 1 } else { -(l.var as i64 + 1) })
                    .collect(),
                weight: c.weight.as_ref().map(Weight::to_string),
            })
            .collect();
        Self { num_vars: f.num_vars(), max_clause_len: f.max_clause_len(), clauses }
    }

    pub fn to_formula(&self) -> Result<CnfFormula, IoError> {
        let mut clauses = Vec::with_capacity(self.clauses.len());
        for c in &self.clauses {
            let mut lits = Vec::with_capacity(c.literals.len());
            for &l in &c.literals {
                let var = u32::try_from(l.unsigned_abs().wrapping_sub(1))
                    .ok()
                    .filter(|_| l != 0)
                    .ok_or_else(|| IoError::Malformed(format!("literal {l} out of range")))?;
                lits.push(Literal { var, positive: l > 0 });
            }
            clauses.push(match &c.weight {
                Some(w) => Clause::weighted(lits, parse_weight(w)?),
                None => Clause::new(lits),
            });
        }
        Ok(CnfFormula::new(self.num_vars, self.max_clause_len, clauses)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColoringDoc {
    pub vertex_count: usize,
    pub k: usize,
    pub edges: Vec<[usize; 2]>,
}

impl ColoringDoc {
    pub fn from_instance(c: &ColoringInstance) -> Self {
        Self { vertex_count: c.vertex_count(), k: c.k(), edges: c.edges().map(|(u, v)| [u, v]).collect() }
    }

    pub fn to_instance(&self) -> Result<ColoringInstance, IoError> {
        let edges: Vec<_> = self.edges.iter().map(|&[u, v]| (u, v)).collect();
        ColoringInstance::new(self.vertex_count, &edges, self.k).map_err(|e| IoError::Malformed(e.to_string()))
    }
}

fn line_nums(l: &ExactLine) -> [Num; 3] {
    l.coefficients().map(Num::exact)
}

fn exact_line(c: &[Num; 3]) -> Result<ExactLine, IoError> {
    Ok(Line::new(c[0].to_rational()?, c[1].to_rational()?, c[2].to_rational()?)?)
}

fn float_line(c: &[Num; 3]) -> Result<Line<f64>, IoError> {
    Ok(Line::from_array([c[0].to_f64()?, c[1].to_f64()?, c[2].to_f64()?])?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LineInstanceDoc {
    pub n: usize,
    pub allowed: BTreeMap<String, Vec<[Num; 2]>>,
    /// Candidate lines per line index, present on reduction outputs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub candidates: Option<Vec<Vec<[Num; 3]>>>,
}

impl LineInstanceDoc {
    pub fn from_exact(inst: &ExactLineInstance) -> Self {
        let allowed = inst
            .allowed()
            .iter()
            .map(|(&(i, j), pts)| (pair_key(i, j), pts.iter().map(|p| [Num::exact(&p.x), Num::exact(&p.y)]).collect()))
            .collect();
        Self { n: inst.n(), allowed, candidates: None }
    }

    pub fn from_reduction(r: &LineReduction) -> Self {
        let mut doc = Self::from_exact(&r.instance);
        doc.candidates = Some(r.candidates.iter().map(|c| c.iter().map(line_nums).collect()).collect());
        doc
    }

    /// True when every coordinate is a `"p/q"` string.
    pub fn is_exact(&self) -> bool {
        self.allowed.values().flatten().flatten().all(Num::is_exact)
    }

    pub fn to_exact(&self) -> Result<ExactLineInstance, IoError> {
        let mut allowed = BTreeMap::new();
        for (k, pts) in &self.allowed {
            let pts = pts
                .iter()
                .map(|[x, y]| Ok(ExactPoint::new(x.to_rational()?, y.to_rational()?)))
                .collect::<Result<Vec<_>, IoError>>()?;
            allowed.insert(parse_pair_key(k)?, pts);
        }
        Ok(LineArrangementInstance::new(self.n, allowed)?)
    }

    pub fn to_f64(&self) -> Result<LineArrangementInstance<f64>, IoError> {
        let mut allowed = BTreeMap::new();
        for (k, pts) in &self.allowed {
            let pts = pts
                .iter()
                .map(|[x, y]| Ok(Point::new(x.to_f64()?, y.to_f64()?)))
                .collect::<Result<Vec<_>, IoError>>()?;
            allowed.insert(parse_pair_key(k)?, pts);
        }
        Ok(LineArrangementInstance::new(self.n, allowed)?)
    }

    pub fn to_reduction(&self) -> Result<LineReduction, IoError> {
        let cands =
            self.candidates.as_ref().ok_or_else(|| IoError::Malformed("instance has no \"candidates\"".into()))?;
        let candidates = cands
            .iter()
            .map(|c| c.iter().map(exact_line).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LineReduction { candidates, instance: self.to_exact()? })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinesDoc {
    pub lines: Vec<[Num; 3]>,
}

impl LinesDoc {
    pub fn from_exact(lines: &[ExactLine]) -> Self {
        Self { lines: lines.iter().map(line_nums).collect() }
    }

    pub fn from_f64(lines: &[Line<f64>]) -> Self {
        Self { lines: lines.iter().map(|l| l.to_array().map(Num::Float)).collect() }
    }

    pub fn is_exact(&self) -> bool {
        self.lines.iter().flatten().all(Num::is_exact)
    }

    pub fn to_exact(&self) -> Result<Vec<ExactLine>, IoError> {
        self.lines.iter().map(exact_line).collect()
    }

    pub fn to_f64(&self) -> Result<Vec<Line<f64>>, IoError> {
        self.lines.iter().map(float_line).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircleInstanceDoc {
    pub n: usize,
    pub allowed: BTreeMap<String, Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ground_truth: Option<Vec<[f64; 9]>>,
}

impl CircleInstanceDoc {
    pub fn from_instance(inst: &LocalCircleInstance) -> Self {
        let allowed = inst
            .allowed()
            .iter()
            .map(|(&(i, j), ps)| (pair_key(i, j), ps.iter().map(|&(a, b)| [a, b]).collect()))
            .collect();
        Self { n: inst.n(), allowed, ground_truth: None }
    }

    pub fn with_ground_truth(mut self, orients: &[Orientation]) -> Self {
        self.ground_truth = Some(orients.iter().map(Orientation::to_row_major).collect());
        self
    }

    pub fn to_instance(&self) -> Result<LocalCircleInstance, IoError> {
        let mut allowed = BTreeMap::new();
        for (k, ps) in &self.allowed {
            allowed.insert(parse_pair_key(k)?, ps.iter().map(|&[a, b]| (a, b)).collect());
        }
        Ok(LocalCircleInstance::new(self.n, allowed)?)
    }

    pub fn ground_truth(&self) -> Result<Option<Vec<Orientation>>, IoError> {
        self.ground_truth.as_deref().map(orientations_from_rows).transpose()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrientationsDoc {
    pub orientations: Vec<[f64; 9]>,
}

impl OrientationsDoc {
    pub fn from_orientations(os: &[Orientation]) -> Self {
        Self { orientations: os.iter().map(Orientation::to_row_major).collect() }
    }

    pub fn to_orientations(&self) -> Result<Vec<Orientation>, IoError> {
        orientations_from_rows(&self.orientations)
    }
}

fn orientations_from_rows(rows: &[[f64; 9]]) -> Result<Vec<Orientation>, IoError> {
    rows.iter().map(|r| Ok(Orientation::from_row_major(*r)?)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessDoc {
    Clique(Vec<Option<VertexId>>),
    Truth(Vec<bool>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutcomeDoc {
    pub status: String,
    pub witness: Option<WitnessDoc>,
    pub objective: Option<String>,
}

impl OutcomeDoc {
    pub fn from_outcome(o: &SolveOutcome) -> Self {
        let status = match o.status {
            Status::Feasible => "feasible",
            Status::Infeasible => "infeasible",
        };
        let witness = o.witness.as_ref().map(|w| match w {
            Witness::Clique(a) => WitnessDoc::Clique(a.picks().to_vec()),
            Witness::Truth(t) => WitnessDoc::Truth(t.clone()),
        });
        Self { status: status.into(), witness, objective: o.objective.as_ref().map(Weight::to_string) }
    }

    pub fn to_outcome(&self) -> Result<SolveOutcome, IoError> {
        let status = match self.status.as_str() {
            "feasible" => Status::Feasible,
            "infeasible" => Status::Infeasible,
            s => return Err(IoError::Malformed(format!("unknown status {s:?}"))),
        };
        let witness = self.witness.clone().map(|w| match w {
            WitnessDoc::Clique(p) => Witness::Clique(Assignment::from_picks(p)),
            WitnessDoc::Truth(t) => Witness::Truth(t),
        });
        let objective = self.objective.as_deref().map(parse_weight).transpose()?;
        Ok(SolveOutcome { status, witness, objective })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Document {
    Partite(PartiteDoc),
    Cnf(CnfDoc),
    Coloring(ColoringDoc),
    LineInstance(LineInstanceDoc),
    Lines(LinesDoc),
    CircleInstance(CircleInstanceDoc),
    Orientations(OrientationsDoc),
    Outcome(OutcomeDoc),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Partite(_) => "partite",
            Document::Cnf(_) => "cnf",
            Document::Coloring(_) => "coloring",
            Document::LineInstance(_) => "line_instance",
            Document::Lines(_) => "lines",
            Document::CircleInstance(_) => "circle_instance",
            Document::Orientations(_) => "orientations",
            Document::Outcome(_) => "outcome",
        }
    }
}

/// A document with its version and optional side sections.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub version: String,
    #[serde(flatten)]
    pub doc: Document,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
    /// How to pull a witness of this document back to the source of a reduction.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mapping: Option<Value>,
}

impl Envelope {
    pub fn new(doc: Document) -> Self {
        Self { version: FORMAT_VERSION.to_owned(), doc, provenance: None, mapping: None }
    }

    pub fn with_provenance(mut self, p: Provenance) -> Self {
        self.provenance = Some(p);
        self
    }

    pub fn with_mapping(mut self, m: Value) -> Self {
        self.mapping = Some(m);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }
}

impl From<Document> for Envelope {
    fn from(doc: Document) -> Self {
        Envelope::new(doc)
    }
}

/// Parses any document, rejecting unknown major versions before looking at
/// the rest of the content.
pub fn parse_document(text: &str) -> Result<Envelope, IoError> {
    let value: Value = serde_json::from_str(text)?;
    let version = value.get("version").and_then(Value::as_str).ok_or(IoError::MissingVersion)?;
    let major = version.split('.').next().and_then(|m| m.parse::<u64>().ok());
    if major != Some(FORMAT_MAJOR) {
        return Err(IoError::Version(version.to_owned()));
    }
    Ok(serde_json::from_value(value)?)
}

macro_rules! expect_kind {
    ($name:ident, $variant:ident, $ty:ty, $label:literal) => {
        pub fn $name(env: &Envelope) -> Result<&$ty, IoError> {
            match &env.doc {
                Document::$variant(d) => Ok(d),
                other => Err(IoError::Kind { expected: $label, found: other.kind() }),
            }
        }
    };
}

expect_kind!(expect_partite, Partite, PartiteDoc, "partite");
expect_kind!(expect_cnf, Cnf, CnfDoc, "cnf");
expect_kind!(expect_coloring, Coloring, ColoringDoc, "coloring");
expect_kind!(expect_line_instance, LineInstance, LineInstanceDoc, "line_instance");
expect_kind!(expect_lines, Lines, LinesDoc, "lines");
expect_kind!(expect_circle_instance, CircleInstance, CircleInstanceDoc, "circle_instance");
expect_kind!(expect_orientations, Orientations, OrientationsDoc, "orientations");
expect_kind!(expect_outcome, Outcome, OutcomeDoc, "outcome");

/// `"p/q"` form of an integer ratio, for callers building exact documents.
pub fn exact_num(p: i64, q: i64) -> Num {
    Num::exact(&BigRational::new(BigInt::from(p), BigInt::from(q)))
}
