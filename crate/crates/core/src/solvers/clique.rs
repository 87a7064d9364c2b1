use num_bigint::BigUint;

use super::{two_sat_solve, SolveError, SolveOutcome, Witness};
use crate::graph::{Assignment, PartiteGraph, VertexId};
use crate::reductions::{partite2_to_2sat, ReductionError};

/// Decides whether `g` has an n-clique.
///
/// Backtracks group by group in vertex order and drops, from every later
/// group, the vertices not adjacent to the new pick. The first clique found
/// is therefore the lexicographically least one.
pub fn exact_clique_decision(g: &PartiteGraph) -> SolveOutcome {
    let mut picks = Vec::with_capacity(g.n());
    if extend(g, g.groups(), &mut picks) {
        SolveOutcome::feasible(Witness::Clique(Assignment::full(picks)), None)
    } else {
        SolveOutcome::infeasible()
    }
}

fn extend(g: &PartiteGraph, domains: &[Vec<VertexId>], picks: &mut Vec<VertexId>) -> bool {
    let Some((current, rest)) = domains.split_first() else {
        return true;
    };
    'candidates: for &v in current {
        let mut next = Vec::with_capacity(rest.len());
        for d in rest {
            let kept: Vec<VertexId> = d.iter().copied().filter(|&u| g.has_edge(u, v)).collect();
            if kept.is_empty() {
                continue 'candidates;
            }
            next.push(kept);
        }
        picks.push(v);
        if extend(g, &next, picks) {
            return true;
        }
        picks.pop();
    }
    false
}

/// n-clique decision for groups of size at most two, through 2-SAT.
pub fn solve_partite_m2(g: &PartiteGraph) -> Result<SolveOutcome, SolveError> {
    let formula = partite2_to_2sat(g).map_err(|e| match e {
        ReductionError::GroupTooLarge { group, size, limit } => SolveError::GroupTooLarge { group, size, limit },
        other => unreachable!("partite2_to_2sat only rejects oversized groups: {other}"),
    })?;
    let out = two_sat_solve(&formula)?;
    let Some(values) = out.truth() else {
        return Ok(SolveOutcome::infeasible());
    };
    let picks = g.groups().iter().zip(values).map(|(group, &bit)| group[usize::from(bit)]);
    Ok(SolveOutcome::feasible(Witness::Clique(Assignment::full(picks)), None))
}

/// Largest partial assignment whose picks are pairwise adjacent.
///
/// Exact search that tries each compatible vertex before skipping a group and
/// prunes when the picks so far plus the groups still pickable cannot beat
/// the incumbent. `budget` caps the number of search nodes.
pub fn max_partial_clique(g: &PartiteGraph, budget: u64) -> Result<SolveOutcome, SolveError> {
    let mut search = PartialSearch { g, budget, nodes: 0, picks: vec![None; g.n()], best: Vec::new(), best_count: 0 };
    let domains: Vec<Vec<VertexId>> = g.groups().to_vec();
    search.visit(0, &domains, 0)?;
    let objective = BigUint::from(search.best_count);
    Ok(SolveOutcome::feasible(Witness::Clique(Assignment::from_picks(search.best)), Some(objective)))
}

struct PartialSearch<'a> {
    g: &'a PartiteGraph,
    budget: u64,
    nodes: u64,
    picks: Vec<Option<VertexId>>,
    best: Vec<Option<VertexId>>,
    best_count: usize,
}

impl PartialSearch<'_> {
    // `domains[k]` holds the vertices of group `depth + k` adjacent to every pick so far.
    fn visit(&mut self, depth: usize, domains: &[Vec<VertexId>], count: usize) -> Result<(), SolveError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(SolveError::BudgetExceeded { budget: self.budget });
        }
        let open = domains.iter().filter(|d| !d.is_empty()).count();
        if count + open <= self.best_count && !self.best.is_empty() {
            return Ok(());
        }
        let Some((current, rest)) = domains.split_first() else {
            if count > self.best_count || self.best.is_empty() {
                self.best_count = count;
                self.best = self.picks.clone();
            }
            return Ok(());
        };
        for &v in current {
            let next: Vec<Vec<VertexId>> =
                rest.iter().map(|d| d.iter().copied().filter(|&u| self.g.has_edge(u, v)).collect()).collect();
            self.picks[depth] = Some(v);
            self.visit(depth + 1, &next, count + 1)?;
            self.picks[depth] = None;
        }
        self.visit(depth + 1, rest, count)
    }
}
