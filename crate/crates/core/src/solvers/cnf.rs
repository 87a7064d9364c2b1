use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::graph::Weight;

/// `var = positive`, i.e. `x` when `positive` and `¬x` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: u32,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: u32) -> Self {
        Self { var, positive: true }
    }

    pub fn neg(var: u32) -> Self {
        Self { var, positive: false }
    }

    /// The literal `var = value`.
    pub fn with_value(var: u32, value: bool) -> Self {
        Self { var, positive: value }
    }

    pub fn negate(self) -> Self {
        Self { var: self.var, positive: !self.positive }
    }

    pub fn holds(self, value: bool) -> bool {
        value == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "x{}", self.var)
        } else {
            write!(f, "¬x{}", self.var)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    pub literals: Vec<Literal>,
    pub weight: Option<Weight>,
}

impl Clause {
    pub fn new(literals: impl IntoIterator<Item = Literal>) -> Self {
        Self { literals: literals.into_iter().collect(), weight: None }
    }

    pub fn weighted(literals: impl IntoIterator<Item = Literal>, weight: impl Into<Weight>) -> Self {
        Self { literals: literals.into_iter().collect(), weight: Some(weight.into()) }
    }

    pub fn is_satisfied_by(&self, values: &[bool]) -> bool {
        self.literals.iter().any(|l| l.holds(values[l.var as usize]))
    }

    /// Weight used by the weighted objective; unweighted clauses count as 1.
    pub fn cost(&self) -> Weight {
        self.weight.clone().unwrap_or_else(Weight::one)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CnfError {
    #[error("clause {clause} references variable {var}, formula has {num_vars}")]
    UnknownVariable { clause: usize, var: u32, num_vars: usize },
    #[error("clause {clause} has {len} literals, limit is {limit}")]
    ClauseTooLong { clause: usize, len: usize, limit: usize },
}

/// CNF formula over variables `0..num_vars` with clauses of at most `max_clause_len` literals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    max_clause_len: usize,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, max_clause_len: usize, clauses: Vec<Clause>) -> Result<Self, CnfError> {
        for (i, c) in clauses.iter().enumerate() {
            if c.literals.len() > max_clause_len {
                return Err(CnfError::ClauseTooLong { clause: i, len: c.literals.len(), limit: max_clause_len });
            }
            if let Some(l) = c.literals.iter().find(|l| l.var as usize >= num_vars) {
                return Err(CnfError::UnknownVariable { clause: i, var: l.var, num_vars });
            }
        }
        Ok(Self { num_vars, max_clause_len, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Declared clause-size limit `m`.
    pub fn max_clause_len(&self) -> usize {
        self.max_clause_len
    }

    /// Longest clause actually present.
    pub fn longest_clause(&self) -> usize {
        self.clauses.iter().map(|c| c.literals.len()).max().unwrap_or(0)
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn is_weighted(&self) -> bool {
        self.clauses.iter().any(|c| c.weight.is_some())
    }

    pub fn is_satisfied_by(&self, values: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.is_satisfied_by(values))
    }

    /// Total cost of the clauses that `values` leaves unsatisfied.
    pub fn unsatisfied_weight(&self, values: &[bool]) -> Weight {
        self.clauses.iter().filter(|c| !c.is_satisfied_by(values)).fold(Weight::zero(), |acc, c| acc + c.cost())
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clauses.is_empty() {
            return write!(f, "⊤");
        }
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                write!(f, " ∧ ")?;
            }
            write!(f, "(")?;
            for (j, l) in c.literals.iter().enumerate() {
                if j > 0 {
                    write!(f, " ∨ ")?;
                }
                write!(f, "{l}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range_and_oversized() {
        assert_eq!(
            CnfFormula::new(2, 2, vec![Clause::new([Literal::pos(2)])]),
            Err(CnfError::UnknownVariable { clause: 0, var: 2, num_vars: 2 })
        );
        assert!(matches!(
            CnfFormula::new(3, 2, vec![Clause::new([Literal::pos(0), Literal::pos(1), Literal::pos(2)])]),
            Err(CnfError::ClauseTooLong { .. })
        ));
    }

    #[test]
    fn unsatisfied_weight_counts_violated_clauses() {
        let f = CnfFormula::new(
            1,
            1,
            vec![Clause::weighted([Literal::pos(0)], 3u32), Clause::weighted([Literal::neg(0)], 4u32)],
        )
        .unwrap();
        assert_eq!(f.unsatisfied_weight(&[true]), Weight::from(4u32));
        assert_eq!(f.unsatisfied_weight(&[false]), Weight::from(3u32));
        assert_eq!(f.to_string(), "(x0) ∧ (¬x0)");
    }
}
