//! Constructive reductions between the clique, satisfiability, coloring and
//! line-arrangement problems. Each one preserves the yes/no answer (or the
//! optimum, for the weighted pair), which makes them usable as cross-checks.

mod coloring;
mod lines;
mod points;
mod sat;

use thiserror::Error;

use crate::geometry::GeometryError;
use crate::graph::GraphError;
use crate::solvers::CnfError;

pub use coloring::{coloring_to_partite, ColoringInstance};
pub use lines::{msat_to_line_instance, partite_to_line_instance, LineReduction};
pub use points::{column_scan_bound, generate_general_position_points, GeneralPositionPoints};
pub use sat::{
    clique_gap_weights, mw2sat_to_mwclique, mwclique_to_mw2sat, partite2_to_2sat, sat2_to_partite, GAP_EXPONENT_CAP,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReductionError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Cnf(#[from] CnfError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("group {group} has {size} vertices, reduction accepts at most {limit}")]
    GroupTooLarge { group: usize, size: usize, limit: usize },
    #[error("clause {clause} has {len} literals, reduction accepts at most 2")]
    ClauseTooLong { clause: usize, len: usize },
    #[error("line gadget needs more variables than the clause limit and more than two clauses (got |U| = {vars}, |C| = {clauses}, m = {m})")]
    GadgetTooSmall { vars: usize, clauses: usize, m: usize },
    #[error("gap exponent n^k = {exponent} exceeds the cap of {cap}")]
    GapTooLarge { exponent: u128, cap: u32 },
    #[error("coloring instance: {0}")]
    Coloring(&'static str),
}
