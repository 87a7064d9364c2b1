use std::path::PathBuf;

use clap::Args;
use orisearch::geometry::{arrangement_error, verify_line_arrangement, verify_local_circle_arrangement};
use orisearch::graph::{are_pairwise_adjacent, clique_weight, is_clique, Assignment, PartiteGraph};
use orisearch::io::{
    expect_lines, expect_orientations, expect_outcome, CircleInstanceDoc, CnfDoc, Document, Envelope, LineInstanceDoc,
    PartiteDoc,
};
use orisearch::solvers::{exact_clique_decision, two_sat_solve, CnfFormula, SolveOutcome, Witness};

use crate::{load, CmdResult, Failure, Verdict};

// brute-force confirmation of an unsatisfiability claim stops here
const MAX_BRUTE_VARS: usize = 24;

fn non_negative(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v >= 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err("must be a finite number >= 0".into())
    }
}

fn positive(s: &str) -> Result<f64, String> {
    match non_negative(s)? {
        v if v > 0.0 => Ok(v),
        _ => Err("must be > 0".into()),
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Instance document.
    pub instance: PathBuf,
    /// Witness document: an outcome, lines or orientations document.
    /// Without it the instance's embedded ground truth is checked.
    #[arg(long)]
    pub witness: Option<PathBuf>,
    /// Matching tolerance. Defaults to 0 for exact line data, 1e-9 for
    /// floating-point lines and 1e-6 radians for circle instances.
    #[arg(long, value_parser = non_negative)]
    pub tol: Option<f64>,
    /// Exponent of the arrangement error reported for line witnesses.
    #[arg(long, default_value_t = 2.0, value_parser = positive)]
    pub q: f64,
}

fn reject(reason: impl std::fmt::Display) -> CmdResult {
    eprintln!("rejected: {reason}");
    Ok(Verdict::No)
}

fn accept(detail: impl std::fmt::Display) -> CmdResult {
    eprintln!("accepted: {detail}");
    Ok(Verdict::Yes)
}

fn outcome_of(w: &Envelope) -> Result<SolveOutcome, Failure> {
    expect_outcome(w).map_err(Failure::input)?.to_outcome().map_err(Failure::input)
}

fn verify_partite(doc: &PartiteDoc, witness: Option<&Envelope>) -> CmdResult {
    let (assignment, objective) = match witness {
        Some(w) => {
            let out = outcome_of(w)?;
            match out.witness {
                Some(Witness::Clique(a)) => (a, out.objective),
                Some(Witness::Truth(_)) => return Err(Failure::input("truth witness for a partite instance")),
                None if !out.is_feasible() => return confirm_no_clique(doc),
                None => return Err(Failure::input("feasible outcome without a witness")),
            }
        }
        None => match doc.ground_truth() {
            Some(a) => (a, None),
            None => return Err(Failure::input("no witness given and the instance has no ground truth")),
        },
    };
    if doc.is_weighted() {
        let g = doc.to_weighted().map_err(Failure::input)?;
        if let Some(problem) = check_clique(&assignment, g.base())? {
            return reject(problem);
        }
        if !assignment.is_complete() {
            return reject("weighted witness must pick every group");
        }
        let w = clique_weight(&g, &assignment).map_err(Failure::input)?;
        match objective {
            Some(o) if o != w => reject(format!("claimed weight {o}, actual {w}")),
            _ => accept(format!("clique of weight {w}")),
        }
    } else {
        let g = doc.to_graph().map_err(Failure::input)?;
        if let Some(problem) = check_clique(&assignment, &g)? {
            return reject(problem);
        }
        let count = assignment.picked_count();
        match objective {
            Some(o) if o != count.into() => reject(format!("claimed size {o}, actual {count}")),
            _ if assignment.is_complete() => accept(format!("{count}-clique")),
            _ => accept(format!("partial clique of size {count}")),
        }
    }
}

fn check_clique(a: &Assignment, g: &PartiteGraph) -> Result<Option<String>, Failure> {
    if let Err(e) = a.check(g) {
        return Ok(Some(e.to_string()));
    }
    let ok = if a.is_complete() { is_clique(g, a).map_err(Failure::input)? } else { are_pairwise_adjacent(g, a) };
    Ok((!ok).then(|| "picked vertices are not pairwise adjacent".to_owned()))
}

fn confirm_no_clique(doc: &PartiteDoc) -> CmdResult {
    if doc.is_weighted() {
        return reject("complete weighted graphs always have a clique");
    }
    let g = doc.to_graph().map_err(Failure::input)?;
    match exact_clique_decision(&g).assignment() {
        Some(a) => reject(format!("claimed infeasible, but {:?} is a clique", a.picks())),
        None => accept("no n-clique exists"),
    }
}

fn brute_satisfiable(f: &CnfFormula) -> bool {
    let n = f.num_vars();
    (0..1u64 << n).any(|code| {
        let values: Vec<bool> = (0..n).map(|i| code >> i & 1 == 1).collect();
        f.is_satisfied_by(&values)
    })
}

fn verify_cnf(doc: &CnfDoc, witness: Option<&Envelope>) -> CmdResult {
    let f = doc.to_formula().map_err(Failure::input)?;
    let Some(w) = witness else {
        return Err(Failure::input("formulas carry no ground truth; pass --witness"));
    };
    let out = outcome_of(w)?;
    match out.witness {
        Some(Witness::Truth(t)) if t.len() != f.num_vars() => {
            reject(format!("{} values for {} variables", t.len(), f.num_vars()))
        }
        Some(Witness::Truth(t)) if f.is_satisfied_by(&t) => accept("satisfying assignment"),
        Some(Witness::Truth(_)) => reject("assignment leaves a clause unsatisfied"),
        Some(Witness::Clique(_)) => Err(Failure::input("clique witness for a formula")),
        None if out.is_feasible() => Err(Failure::input("feasible outcome without a witness")),
        None => {
            let sat = if f.longest_clause() <= 2 {
                two_sat_solve(&f).map_err(Failure::input)?.is_feasible()
            } else if f.num_vars() <= MAX_BRUTE_VARS {
                brute_satisfiable(&f)
            } else {
                return Err(Failure::input("cannot confirm unsatisfiability of a large formula"));
            };
            if sat {
                reject("claimed unsatisfiable, but the formula is satisfiable")
            } else {
                accept("formula is unsatisfiable")
            }
        }
    }
}

fn verify_lines(doc: &LineInstanceDoc, witness: Option<&Envelope>, tol: Option<f64>, q: f64) -> CmdResult {
    let Some(w) = witness else {
        return Err(Failure::input("line instances carry no ground truth; pass --witness"));
    };
    let lines = expect_lines(w).map_err(Failure::input)?;
    let inst = doc.to_f64().map_err(Failure::input)?;
    let fl = lines.to_f64().map_err(Failure::input)?;
    match arrangement_error(&fl, &inst, q) {
        Ok(err) => eprintln!("arrangement error (q = {q}): {err:e}"),
        Err(e) => eprintln!("arrangement error unavailable: {e}"),
    }
    let report = if doc.is_exact() && lines.is_exact() {
        let (inst, ls) = (doc.to_exact().map_err(Failure::input)?, lines.to_exact().map_err(Failure::input)?);
        verify_line_arrangement(&ls, &inst, tol.unwrap_or(0.0)).map_err(Failure::input)?
    } else {
        verify_line_arrangement(&fl, &inst, tol.unwrap_or(1e-9)).map_err(Failure::input)?
    };
    if report.accepted() {
        accept("every constrained pair crosses at an allowed point")
    } else {
        reject(format!("{:?}", report.violations))
    }
}

fn verify_circles(doc: &CircleInstanceDoc, witness: Option<&Envelope>, tol: Option<f64>) -> CmdResult {
    let inst = doc.to_instance().map_err(Failure::input)?;
    let orients = match witness {
        Some(w) => expect_orientations(w).map_err(Failure::input)?.to_orientations().map_err(Failure::input)?,
        None => doc
            .ground_truth()
            .map_err(Failure::input)?
            .ok_or_else(|| Failure::input("no witness given and the instance has no ground truth"))?,
    };
    let report = verify_local_circle_arrangement(&orients, &inst, tol.unwrap_or(1e-6)).map_err(Failure::input)?;
    if report.accepted() {
        accept("every constrained pair matches an allowed angle pair")
    } else {
        reject(format!("{:?}", report.violations))
    }
}

pub fn run(args: &VerifyArgs) -> CmdResult {
    let env = load(&args.instance)?;
    let witness = args.witness.as_deref().map(load).transpose()?;
    let w = witness.as_ref();
    match &env.doc {
        Document::Partite(d) => verify_partite(d, w),
        Document::Cnf(d) => verify_cnf(d, w),
        Document::LineInstance(d) => verify_lines(d, w, args.tol, args.q),
        Document::CircleInstance(d) => verify_circles(d, w, args.tol),
        other => Err(Failure::input(format!("cannot verify against a {} document", other.kind()))),
    }
}
