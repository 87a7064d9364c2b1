use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use orisearch::io::{Document, Envelope, OutcomeDoc};
use orisearch::solvers::{
    exact_clique_decision, exact_min_weight_clique, max_partial_clique, minimum_weight_star, solve_partite_m2,
    two_sat_solve, SolveError, SolveOutcome, DEFAULT_BUDGET,
};

use crate::{emit, load, CmdResult, Failure, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolverName {
    /// Exact decision, or exact minimum weight on weighted graphs.
    Exact,
    /// Minimum-weight star approximation (weighted graphs).
    Star,
    /// Polynomial path for groups of at most two, and 2-SAT formulas.
    M2,
    /// Largest pairwise adjacent partial assignment.
    Partial,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Instance document (`-` for standard input).
    pub input: PathBuf,
    /// Defaults to `exact` for partite graphs and `m2` for formulas.
    #[arg(long, value_enum)]
    pub solver: Option<SolverName>,
    /// Search node limit for the branch-and-bound solvers.
    #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
}

fn solve_error(e: SolveError) -> Failure {
    match e {
        SolveError::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
        other => Failure::input(other),
    }
}

fn unsupported(solver: SolverName, what: &str) -> Failure {
    let name = solver.to_possible_value().map(|v| v.get_name().to_owned()).unwrap_or_default();
    Failure::input(format!("solver {name} does not apply to {what}"))
}

pub fn dispatch(env: &Envelope, solver: Option<SolverName>, budget: u64) -> Result<SolveOutcome, Failure> {
    use SolverName::*;
    match &env.doc {
        Document::Partite(doc) if doc.is_weighted() => {
            let g = doc.to_weighted().map_err(Failure::input)?;
            match solver.unwrap_or(Exact) {
                Exact => exact_min_weight_clique(&g, budget).map_err(solve_error),
                Star => Ok(minimum_weight_star(&g)),
                s => Err(unsupported(s, "a weighted partite graph")),
            }
        }
        Document::Partite(doc) => {
            let g = doc.to_graph().map_err(Failure::input)?;
            match solver.unwrap_or(Exact) {
                Exact => Ok(exact_clique_decision(&g)),
                M2 => solve_partite_m2(&g).map_err(solve_error),
                Partial => max_partial_clique(&g, budget).map_err(solve_error),
                s => Err(unsupported(s, "an unweighted partite graph")),
            }
        }
        Document::Cnf(doc) => {
            let f = doc.to_formula().map_err(Failure::input)?;
            match solver.unwrap_or(M2) {
                M2 => two_sat_solve(&f).map_err(solve_error),
                s => Err(unsupported(s, "a formula")),
            }
        }
        other => Err(Failure::input(format!("cannot solve a {} document", other.kind()))),
    }
}

pub fn run(args: &SolveArgs, out: Option<&Path>) -> CmdResult {
    let env = load(&args.input)?;
    let outcome = dispatch(&env, args.solver, args.budget)?;
    emit(out, &Envelope::new(Document::Outcome(OutcomeDoc::from_outcome(&outcome))).to_json())?;
    Ok(Verdict::from_bool(outcome.is_feasible()))
}
