//! Minimum-weight n-clique in a complete weighted partite graph.

use std::ops::AddAssign;

use num_traits::{ToPrimitive, Zero};

use super::{SolveError, SolveOutcome, Witness};
use crate::graph::{clique_weight, Assignment, VertexId, Weight, WeightedPartiteGraph};

/// Full result of the minimum-weight star approximation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarSolution {
    pub center: VertexId,
    /// Sum over the other groups of the lightest edge from the center.
    pub star_weight: Weight,
    pub assignment: Assignment,
    /// Weight of the clique induced by `assignment`.
    pub clique_weight: Weight,
}

/// Minimum-weight star approximation.
///
/// Every vertex is tried as a center; its star weight is the sum, over the
/// other groups, of its lightest edge into that group. The lightest star
/// wins, and the returned clique takes the center plus each group's lightest
/// neighbour of the center. Ties go to the lowest (group, slot) position.
pub fn star_solution(g: &WeightedPartiteGraph) -> StarSolution {
    let base = g.base();
    let nearest = |center: VertexId, group: usize| -> VertexId {
        let mut best = base.group(group)[0];
        for &u in &base.group(group)[1..] {
            if g.w(center, u) < g.w(center, best) {
                best = u;
            }
        }
        best
    };

    let mut best: Option<(Weight, VertexId)> = None;
    for (gi, members) in base.groups().iter().enumerate() {
        for &v in members {
            let mut star = Weight::zero();
            for gj in (0..base.n()).filter(|&gj| gj != gi) {
                star += g.w(v, nearest(v, gj));
            }
            if best.as_ref().is_none_or(|(w, _)| star < *w) {
                best = Some((star, v));
            }
        }
    }
    let (star_weight, center) = best.expect("graph has at least one vertex");
    let home = base.group_of(center);
    let assignment = Assignment::full((0..base.n()).map(|gj| if gj == home { center } else { nearest(center, gj) }));
    let clique_weight = clique_weight(g, &assignment).expect("star assignment is complete");
    StarSolution { center, star_weight, assignment, clique_weight }
}

/// Minimum-weight star approximation; the objective is the induced clique
/// weight, not the star weight.
pub fn minimum_weight_star(g: &WeightedPartiteGraph) -> SolveOutcome {
    let s = star_solution(g);
    SolveOutcome::feasible(Witness::Clique(s.assignment), Some(s.clique_weight))
}

/// Exact minimum-weight n-clique by branch and bound.
///
/// Groups are fixed in order; the lower bound adds, for every open group, the
/// cheapest connection of one of its vertices to the picks so far. The star
/// approximation seeds the bound, and equal-weight leaves found later never
/// replace an earlier one, so the witness is the lexicographically least optimum.
/// Fails with [`SolveError::BudgetExceeded`] when the product of group sizes
/// exceeds `budget`.
pub fn exact_min_weight_clique(g: &WeightedPartiteGraph, budget: u64) -> Result<SolveOutcome, SolveError> {
    let space =
        g.base().groups().iter().try_fold(1u64, |acc, grp| acc.checked_mul(grp.len() as u64)).unwrap_or(u64::MAX);
    if space > budget {
        return Err(SolveError::BudgetExceeded { budget });
    }
    let seed = star_solution(g).clique_weight;
    let total = g.base().vertex_count();
    let pairs = (g.n() * g.n().saturating_sub(1) / 2) as u128;

    // Machine-width search when no partial sum can overflow.
    let max = g.weighted_pairs().map(|(_, _, w)| w).max().cloned().unwrap_or_default();
    let picks = match max.to_u128().and_then(|m| m.checked_mul(pairs.max(1) * 2)) {
        Some(_) => {
            let matrix: Vec<u128> = (0..total * total)
                .map(|i| g.w((i / total) as VertexId, (i % total) as VertexId).to_u128().unwrap_or(0))
                .collect();
            branch_and_bound(g, &matrix, seed.to_u128().expect("seed fits"))
        }
        None => {
            let matrix: Vec<Weight> =
                (0..total * total).map(|i| g.w((i / total) as VertexId, (i % total) as VertexId).clone()).collect();
            branch_and_bound(g, &matrix, seed)
        }
    };
    let assignment = Assignment::full(picks);
    let objective = clique_weight(g, &assignment)?;
    Ok(SolveOutcome::feasible(Witness::Clique(assignment), Some(objective)))
}

fn branch_and_bound<T>(g: &WeightedPartiteGraph, matrix: &[T], seed: T) -> Vec<VertexId>
where
    T: Clone + Ord + Zero + for<'a> AddAssign<&'a T>,
{
    let total = g.base().vertex_count();
    let mut bb =
        BranchAndBound { groups: g.base().groups(), matrix, total, seed, best: None, picks: Vec::with_capacity(g.n()) };
    let link = vec![T::zero(); total];
    bb.descend(0, T::zero(), &link);
    bb.best.map(|(_, p)| p).expect("seed bound admits at least one optimum")
}

struct BranchAndBound<'a, T> {
    groups: &'a [Vec<VertexId>],
    matrix: &'a [T],
    total: usize,
    seed: T,
    best: Option<(T, Vec<VertexId>)>,
    picks: Vec<VertexId>,
}

impl<T> BranchAndBound<'_, T>
where
    T: Clone + Ord + Zero + for<'a> AddAssign<&'a T>,
{
    fn pruned(&self, bound: &T) -> bool {
        match &self.best {
            None => *bound > self.seed,
            Some((w, _)) => bound >= w,
        }
    }

    // `link[u]` is the total weight from `u` to the current picks.
    fn descend(&mut self, depth: usize, partial: T, link: &[T]) {
        if depth == self.groups.len() {
            if !self.pruned(&partial) {
                self.best = Some((partial, self.picks.clone()));
            }
            return;
        }
        let mut bound = partial.clone();
        for grp in &self.groups[depth..] {
            bound += grp.iter().map(|&u| &link[u as usize]).min().expect("non-empty group");
        }
        if self.pruned(&bound) {
            return;
        }
        for &v in &self.groups[depth] {
            let mut next_partial = partial.clone();
            next_partial += &link[v as usize];
            let mut next_link = link.to_vec();
            for grp in &self.groups[depth + 1..] {
                for &u in grp {
                    next_link[u as usize] += &self.matrix[v as usize * self.total + u as usize];
                }
            }
            self.picks.push(v);
            self.descend(depth + 1, next_partial, &next_link);
            self.picks.pop();
        }
    }
}
