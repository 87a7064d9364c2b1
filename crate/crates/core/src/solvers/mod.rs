//! Exact and approximate solvers for the partite clique problems and 2-SAT.

mod clique;
mod cnf;
mod two_sat;
mod weighted;

use thiserror::Error;

use crate::graph::{Assignment, GraphError, Weight};

pub use clique::{exact_clique_decision, max_partial_clique, solve_partite_m2};
pub use cnf::{Clause, CnfError, CnfFormula, Literal};
pub use two_sat::two_sat_solve;
pub use weighted::{exact_min_weight_clique, minimum_weight_star, star_solution, StarSolution};

/// Default cap on the number of assignments an exponential solver may consider.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Feasible,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Clique(Assignment),
    Truth(Vec<bool>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub status: Status,
    pub witness: Option<Witness>,
    pub objective: Option<Weight>,
}

impl SolveOutcome {
    pub fn feasible(witness: Witness, objective: Option<Weight>) -> Self {
        Self { status: Status::Feasible, witness: Some(witness), objective }
    }

    pub fn infeasible() -> Self {
        Self { status: Status::Infeasible, witness: None, objective: None }
    }

    pub fn is_feasible(&self) -> bool {
        self.status == Status::Feasible
    }

    pub fn assignment(&self) -> Option<&Assignment> {
        match &self.witness {
            Some(Witness::Clique(a)) => Some(a),
            _ => None,
        }
    }

    pub fn truth(&self) -> Option<&[bool]> {
        match &self.witness {
            Some(Witness::Truth(t)) => Some(t),
            _ => None,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Cnf(#[from] CnfError),
    #[error("group {group} has {size} vertices, solver accepts at most {limit}")]
    GroupTooLarge { group: usize, size: usize, limit: usize },
    #[error("clause {clause} has {len} literals, solver accepts at most 2")]
    ClauseTooLong { clause: usize, len: usize },
    #[error("search space exceeds the budget of {budget} assignments")]
    BudgetExceeded { budget: u64 },
}
