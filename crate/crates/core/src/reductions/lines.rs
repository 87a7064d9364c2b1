use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{generate_general_position_points, ReductionError};
use crate::geometry::{
    line_intersection, verify_line_arrangement, ExactLine, ExactLineInstance, ExactPoint, Intersection,
    LineArrangementInstance, Point,
};
use crate::graph::PartiteGraph;
use crate::solvers::CnfFormula;

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// An exact line-arrangement instance together with the finite set of
/// candidate lines the gadget offers for each of its lines.
#[derive(Debug, Clone, PartialEq)]
pub struct LineReduction {
    pub candidates: Vec<Vec<ExactLine>>,
    pub instance: ExactLineInstance,
}

impl LineReduction {
    /// Lines picked by `choice[i]`-th candidate of each line.
    pub fn lines_for(&self, choice: &[usize]) -> Vec<ExactLine> {
        self.candidates.iter().zip(choice).map(|(c, &k)| c[k].clone()).collect()
    }

    pub fn choice_count(&self) -> u128 {
        self.candidates.iter().map(|c| c.len() as u128).product()
    }

    /// Exact check of one candidate choice at zero tolerance.
    pub fn realizes(&self, choice: &[usize]) -> bool {
        verify_line_arrangement(&self.lines_for(choice), &self.instance, 0.0)
            .expect("candidate count matches instance")
            .accepted()
    }

    /// First realizing choice in lexicographic order over candidate indices.
    ///
    /// Backtracks line by line, checking each constrained pair as soon as
    /// both of its lines are fixed.
    pub fn find_realization(&self) -> Option<Vec<usize>> {
        let mut choice = Vec::with_capacity(self.candidates.len());
        self.extend(&mut choice).then_some(choice)
    }

    fn extend(&self, choice: &mut Vec<usize>) -> bool {
        let j = choice.len();
        if j == self.candidates.len() {
            return true;
        }
        for (k, line) in self.candidates[j].iter().enumerate() {
            let consistent = (0..j).all(|i| match self.instance.allowed().get(&(i, j)) {
                None => true,
                Some(pts) => match line_intersection(&self.candidates[i][choice[i]], line) {
                    Intersection::Point(p) => pts.contains(&p),
                    Intersection::Parallel { .. } => false,
                },
            });
            if consistent {
                choice.push(k);
                if self.extend(choice) {
                    return true;
                }
                choice.pop();
            }
        }
        false
    }
}

/// Lines in general position, one per vertex; `P_ij` holds the crossings of
/// adjacent vertex pairs between groups `i` and `j`.
///
/// Choosing slot `s_i` in every group realizes the instance iff the picked
/// vertices form an n-clique.
pub fn partite_to_line_instance(g: &PartiteGraph) -> Result<LineReduction, ReductionError> {
    let duals = generate_general_position_points(g.vertex_count()).points;
    let line_of = |v: u32| {
        let (slope, intercept) = duals[v as usize];
        ExactLine::slope_intercept(rat(slope), rat(intercept))
    };
    let candidates: Vec<Vec<ExactLine>> =
        g.groups().iter().map(|grp| grp.iter().map(|&v| line_of(v)).collect()).collect();
    let mut allowed: BTreeMap<(usize, usize), Vec<ExactPoint>> = BTreeMap::new();
    for i in 0..g.n() {
        for j in i + 1..g.n() {
            let mut pts = Vec::new();
            for &u in g.group(i) {
                for &v in g.group(j) {
                    if !g.has_edge(u, v) {
                        continue;
                    }
                    match line_intersection(&line_of(u), &line_of(v)) {
                        Intersection::Point(p) => pts.push(p),
                        Intersection::Parallel { .. } => unreachable!("dual points have distinct slopes"),
                    }
                }
            }
            allowed.insert((i, j), pts);
        }
    }
    let instance = LineArrangementInstance::new(g.n(), allowed)?;
    Ok(LineReduction { candidates, instance })
}

/// Vertical/horizontal gadget for a CNF formula.
///
/// Line `i < |U|` is variable `i` with candidates `x = 2i` (false) and
/// `x = 2i + 1` (true). Line `|U| + j` is clause `j` with one horizontal
/// candidate per literal, at heights `0, 1, 2, …` counted over all
/// (clause, literal) pairs. The crossing of variable `i` at value `a` with
/// literal `b` of clause `j` is allowed iff `u_i = a` does not falsify that
/// literal. Variable pairs and clause pairs are unconstrained (parallel).
/// Requires `|U| > m` and `|C| > 2`.
pub fn msat_to_line_instance(f: &CnfFormula) -> Result<LineReduction, ReductionError> {
    let (vars, clauses, m) = (f.num_vars(), f.clauses().len(), f.max_clause_len());
    if vars <= m || clauses <= 2 {
        return Err(ReductionError::GadgetTooSmall { vars, clauses, m });
    }
    let mut candidates: Vec<Vec<ExactLine>> =
        (0..vars as i64).map(|i| vec![ExactLine::vertical(rat(2 * i)), ExactLine::vertical(rat(2 * i + 1))]).collect();
    let mut heights = Vec::with_capacity(clauses);
    let mut next = 0i64;
    for clause in f.clauses() {
        let hs: Vec<i64> = (next..next + clause.literals.len() as i64).collect();
        next += hs.len() as i64;
        candidates.push(hs.iter().map(|&y| ExactLine::horizontal(rat(y))).collect());
        heights.push(hs);
    }
    let mut allowed = BTreeMap::new();
    for i in 0..vars {
        for (j, clause) in f.clauses().iter().enumerate() {
            let mut pts = Vec::new();
            for a in [false, true] {
                for (lit, &y) in clause.literals.iter().zip(&heights[j]) {
                    let falsifies = lit.var as usize == i && !lit.holds(a);
                    if !falsifies {
                        pts.push(Point::new(rat(2 * i as i64 + i64::from(a)), rat(y)));
                    }
                }
            }
            allowed.insert((i, vars + j), pts);
        }
    }
    let instance = LineArrangementInstance::with_limit(vars + clauses, allowed, 2 * m)?;
    Ok(LineReduction { candidates, instance })
}
