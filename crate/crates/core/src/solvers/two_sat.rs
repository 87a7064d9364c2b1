//! 2-satisfiability through strongly connected components of the implication graph.

use super::{CnfFormula, SolveError, SolveOutcome, Witness};

// Node 2v is "x_v true", node 2v+1 is "x_v false".
fn node(var: u32, positive: bool) -> usize {
    2 * var as usize + usize::from(!positive)
}

/// Decides satisfiability of a formula whose clauses have at most two literals.
///
/// Runs in time linear in variables plus clauses. The witness sets `x` true
/// iff the component of `x` comes after the component of `¬x` in topological
/// order, which is fixed by the clause order, so equal inputs give equal witnesses.
pub fn two_sat_solve(f: &CnfFormula) -> Result<SolveOutcome, SolveError> {
    let nodes = 2 * f.num_vars();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    for (i, clause) in f.clauses().iter().enumerate() {
        match clause.literals.as_slice() {
            [] => return Ok(SolveOutcome::infeasible()),
            [a] => adj[node(a.var, !a.positive)].push(node(a.var, a.positive)),
            [a, b] => {
                adj[node(a.var, !a.positive)].push(node(b.var, b.positive));
                adj[node(b.var, !b.positive)].push(node(a.var, a.positive));
            }
            longer => return Err(SolveError::ClauseTooLong { clause: i, len: longer.len() }),
        }
    }
    let comp = tarjan(&adj);
    let mut values = Vec::with_capacity(f.num_vars());
    for v in 0..f.num_vars() {
        let (t, fl) = (comp[2 * v], comp[2 * v + 1]);
        if t == fl {
            return Ok(SolveOutcome::infeasible());
        }
        // Tarjan numbers components in reverse topological order.
        values.push(t < fl);
    }
    Ok(SolveOutcome::feasible(Witness::Truth(values), None))
}

/// Iterative Tarjan; returns the component index of every node.
fn tarjan(adj: &[Vec<usize>]) -> Vec<usize> {
    const UNSEEN: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut call: Vec<(usize, usize)> = Vec::new();
    let mut counter = 0;
    let mut n_comp = 0;

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        while let Some(&mut (v, ref mut next)) = call.last_mut() {
            if *next == 0 && index[v] == UNSEEN {
                index[v] = counter;
                low[v] = counter;
                counter += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if let Some(&w) = adj[v].get(*next) {
                *next += 1;
                if index[w] == UNSEEN {
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp[w] = n_comp;
                    if w == v {
                        break;
                    }
                }
                n_comp += 1;
            }
        }
    }
    comp
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::{Clause, Literal, Status};

    fn formula(vars: usize, clauses: &[&[(u32, bool)]]) -> CnfFormula {
        let clauses =
            clauses.iter().map(|c| Clause::new(c.iter().map(|&(v, p)| Literal { var: v, positive: p }))).collect();
        CnfFormula::new(vars, 3, clauses).unwrap()
    }

    fn truth(out: &SolveOutcome) -> &[bool] {
        match &out.witness {
            Some(Witness::Truth(t)) => t,
            other => panic!("expected truth witness, got {other:?}"),
        }
    }

    #[test]
    fn single_clause_is_feasible() {
        let f = formula(2, &[&[(0, true), (1, true)]]);
        let out = two_sat_solve(&f).unwrap();
        assert_eq!(out.status, Status::Feasible);
        assert!(f.is_satisfied_by(truth(&out)));
    }

    #[test]
    fn contradicting_units_are_infeasible() {
        let f = formula(1, &[&[(0, true)], &[(0, false)]]);
        assert_eq!(two_sat_solve(&f).unwrap().status, Status::Infeasible);
    }

    #[test]
    fn empty_clause_is_infeasible() {
        let f = formula(1, &[&[]]);
        assert_eq!(two_sat_solve(&f).unwrap().status, Status::Infeasible);
    }

    #[test]
    fn three_literal_clause_is_rejected() {
        let f = formula(3, &[&[(0, true), (1, true), (2, true)]]);
        assert!(matches!(two_sat_solve(&f), Err(SolveError::ClauseTooLong { clause: 0, len: 3 })));
    }

    #[test]
    fn implication_chain_forces_values() {
        // x0, x0 -> x1, x1 -> ¬x2
        let f = formula(3, &[&[(0, true)], &[(0, false), (1, true)], &[(1, false), (2, false)]]);
        let out = two_sat_solve(&f).unwrap();
        assert_eq!(truth(&out), &[true, true, false]);
    }

    #[test]
    fn deep_chain_does_not_overflow_the_stack() {
        let n = 200_000u32;
        let clauses: Vec<Clause> = (0..n - 1)
            .map(|v| Clause::new([Literal::neg(v), Literal::pos(v + 1)]))
            .chain([Clause::new([Literal::pos(0)])])
            .collect();
        let f = CnfFormula::new(n as usize, 2, clauses).unwrap();
        let out = two_sat_solve(&f).unwrap();
        assert!(truth(&out).iter().all(|&b| b));
    }
}
