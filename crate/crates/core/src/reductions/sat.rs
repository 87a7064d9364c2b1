//! Gadgets between partite cliques (groups of at most two) and 2-SAT, plus
//! the weighted versions and the gap weighting.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::ReductionError;
use crate::graph::{PartiteGraph, VertexId, Weight, WeightedPartiteGraph};
use crate::solvers::{Clause, CnfFormula, Literal};

/// Largest `n^k` accepted by [`clique_gap_weights`].
pub const GAP_EXPONENT_CAP: u32 = 64;

fn require_m2(g: &PartiteGraph) -> Result<(), ReductionError> {
    match g.groups().iter().position(|grp| grp.len() > 2) {
        Some(group) => Err(ReductionError::GroupTooLarge { group, size: g.group(group).len(), limit: 2 }),
        None => Ok(()),
    }
}

/// One variable per group, `u_i = a` meaning "pick slot `a` of group `i`".
///
/// Every missing cross edge `{v_i^a, v_j^b}` becomes the clause
/// `(u_i = 1-a) ∨ (u_j = 1-b)`; a singleton group becomes the unit clause
/// `u_i = 0`. The formula is satisfiable iff `g` has an n-clique.
pub fn partite2_to_2sat(g: &PartiteGraph) -> Result<CnfFormula, ReductionError> {
    require_m2(g)?;
    let mut clauses = Vec::new();
    for (i, grp) in g.groups().iter().enumerate() {
        if grp.len() == 1 {
            clauses.push(Clause::new([Literal::neg(i as u32)]));
        }
    }
    for (i, gi) in g.groups().iter().enumerate() {
        for (j, gj) in g.groups().iter().enumerate().skip(i + 1) {
            for (a, &u) in gi.iter().enumerate() {
                for (b, &v) in gj.iter().enumerate() {
                    if !g.has_edge(u, v) {
                        clauses.push(Clause::new([
                            Literal::with_value(i as u32, a == 0),
                            Literal::with_value(j as u32, b == 0),
                        ]));
                    }
                }
            }
        }
    }
    Ok(CnfFormula::new(g.n(), 2, clauses)?)
}

/// How one clause restricts the values of the (at most two) variables it mentions.
enum Restriction {
    Always,
    Single { var: usize, values: Vec<bool> },
    Pair { vars: (usize, usize), values: Vec<(bool, bool)> },
}

fn restriction(clause: &Clause, index: usize) -> Result<Restriction, ReductionError> {
    let vars: BTreeSet<usize> = clause.literals.iter().map(|l| l.var as usize).collect();
    let falsified = |assign: &dyn Fn(usize) -> bool| clause.literals.iter().all(|l| !l.holds(assign(l.var as usize)));
    match vars.len() {
        0 => Ok(Restriction::Always),
        1 => {
            let var = *vars.first().expect("one var");
            let values = [false, true].into_iter().filter(|&a| falsified(&|_| a)).collect();
            Ok(Restriction::Single { var, values })
        }
        2 => {
            let (i, j) = (*vars.first().expect("two vars"), *vars.last().expect("two vars"));
            let mut values = Vec::new();
            for a in [false, true] {
                for b in [false, true] {
                    if falsified(&|v| if v == i { a } else { b }) {
                        values.push((a, b));
                    }
                }
            }
            Ok(Restriction::Pair { vars: (i, j), values })
        }
        len => Err(ReductionError::ClauseTooLong { clause: index, len }),
    }
}

// Formulas with fewer than two variables get unconstrained padding variables
// so that every single-variable restriction can be expressed through edges.
fn padded_vars(f: &CnfFormula) -> usize {
    f.num_vars().max(2)
}

fn vertex(var: usize, value: bool) -> VertexId {
    (2 * var + usize::from(value)) as VertexId
}

/// One two-vertex group per variable (`2i` is `u_i = 0`, `2i+1` is `u_i = 1`).
///
/// A cross edge is absent iff some clause is falsified by that pair of values;
/// a value falsifying a clause on its own loses all its edges, and an empty
/// clause removes every edge. The graph has an n-clique iff `f` is
/// satisfiable. Formulas with fewer than two variables are padded to two.
pub fn sat2_to_partite(f: &CnfFormula) -> Result<PartiteGraph, ReductionError> {
    let n = padded_vars(f);
    let mut dead_vertex = vec![false; 2 * n];
    let mut dead_pair = BTreeSet::new();
    let mut dead_all = false;
    for (idx, clause) in f.clauses().iter().enumerate() {
        match restriction(clause, idx)? {
            Restriction::Always => dead_all = true,
            Restriction::Single { var, values } => {
                for a in values {
                    dead_vertex[vertex(var, a) as usize] = true;
                }
            }
            Restriction::Pair { vars: (i, j), values } => {
                for (a, b) in values {
                    dead_pair.insert((vertex(i, a), vertex(j, b)));
                }
            }
        }
    }
    Ok(PartiteGraph::from_fn(&vec![2; n], |u, v| {
        !dead_all && !dead_vertex[u as usize] && !dead_vertex[v as usize] && !dead_pair.contains(&(u, v))
    })?)
}

/// Weighted clauses to a complete weighted partite graph whose clique weight
/// equals the weight of the clauses the corresponding assignment leaves unsatisfied.
///
/// A pair clause charges the edge of each falsifying value pair. A
/// single-variable clause charges both edges from the falsifying vertex into
/// one anchor group, and an empty clause charges all four edges between
/// groups 0 and 1, so each is counted exactly once per clique. Unweighted
/// clauses cost 1.
pub fn mw2sat_to_mwclique(f: &CnfFormula) -> Result<WeightedPartiteGraph, ReductionError> {
    let n = padded_vars(f);
    let total = 2 * n;
    let mut cost = vec![Weight::zero(); total * total];
    let mut charge = |u: VertexId, v: VertexId, w: &Weight| {
        cost[u as usize * total + v as usize] += w;
        cost[v as usize * total + u as usize] += w;
    };
    for (idx, clause) in f.clauses().iter().enumerate() {
        let w = clause.cost();
        match restriction(clause, idx)? {
            Restriction::Always => {
                for a in [false, true] {
                    for b in [false, true] {
                        charge(vertex(0, a), vertex(1, b), &w);
                    }
                }
            }
            Restriction::Single { var, values } => {
                let anchor = usize::from(var == 0);
                for a in values {
                    for b in [false, true] {
                        charge(vertex(var, a), vertex(anchor, b), &w);
                    }
                }
            }
            Restriction::Pair { vars: (i, j), values } => {
                for (a, b) in values {
                    charge(vertex(i, a), vertex(j, b), &w);
                }
            }
        }
    }
    Ok(WeightedPartiteGraph::from_fn(&vec![2; n], |u, v| cost[u as usize * total + v as usize].clone())?)
}

/// Complete weighted graph with groups of at most two to weighted 2-SAT.
///
/// Each cross pair `{v_i^a, v_j^b}` becomes `(u_i = 1-a) ∨ (u_j = 1-b)` with
/// weight `w(e)`, violated exactly when both endpoints are picked. A
/// singleton group gets the unit clause `u_i = 0` weighted one more than
/// all edges together, so no optimal assignment violates it.
pub fn mwclique_to_mw2sat(g: &WeightedPartiteGraph) -> Result<CnfFormula, ReductionError> {
    let base = g.base();
    require_m2(base)?;
    let mut clauses = Vec::new();
    let heavy = g.weighted_pairs().fold(Weight::one(), |acc, (_, _, w)| acc + w);
    for (i, grp) in base.groups().iter().enumerate() {
        if grp.len() == 1 {
            clauses.push(Clause::weighted([Literal::neg(i as u32)], heavy.clone()));
        }
    }
    for (u, v, w) in g.weighted_pairs() {
        let (i, a) = (base.group_of(u), base.slot_of(u));
        let (j, b) = (base.group_of(v), base.slot_of(v));
        clauses.push(Clause::weighted(
            [Literal::with_value(i as u32, a == 0), Literal::with_value(j as u32, b == 0)],
            w.clone(),
        ));
    }
    Ok(CnfFormula::new(base.n(), 2, clauses)?)
}

/// Completes `g` with weight 0 on its edges and `2^(n^k)` on its non-edges,
/// so the optimum clique weight is 0 iff `g` has an n-clique.
pub fn clique_gap_weights(g: &PartiteGraph, k: u32) -> Result<WeightedPartiteGraph, ReductionError> {
    let exponent = (g.n() as u128).checked_pow(k).unwrap_or(u128::MAX);
    if exponent > GAP_EXPONENT_CAP as u128 {
        return Err(ReductionError::GapTooLarge { exponent, cap: GAP_EXPONENT_CAP });
    }
    let heavy = Weight::one() << exponent as usize;
    let groups = g.groups().to_vec();
    let weights: Vec<_> =
        g.cross_pairs().map(|(u, v)| (u, v, if g.has_edge(u, v) { Weight::zero() } else { heavy.clone() })).collect();
    Ok(WeightedPartiteGraph::from_weights(groups, weights)?)
}
