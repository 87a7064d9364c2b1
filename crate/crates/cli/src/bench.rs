use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use clap::Args;
use num_bigint::BigUint;
use orisearch::instance_gen::metric_weighted_instance;
use orisearch::solvers::{exact_min_weight_clique, minimum_weight_star, SolveError, DEFAULT_BUDGET};
use rayon::prelude::*;

use crate::{emit, CmdResult, Failure, Verdict};

pub const HEADER: &str = "n,m,beta,seed,opt,star,ratio,bound,micros";

/// Integer list written as `3-8`, `1,2,4` or a single value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Span(pub Vec<u32>);

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut out = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            let num = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("{t:?}: {e}"));
            match part.split_once('-') {
                Some((a, b)) => {
                    let (a, b) = (num(a)?, num(b)?);
                    if a > b {
                        return Err(format!("empty range {part:?}"));
                    }
                    out.extend(a..=b);
                }
                None => out.push(num(part)?),
            }
        }
        Ok(Span(out))
    }
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Group counts.
    #[arg(long, default_value = "3-8")]
    pub n: Span,
    /// Group sizes.
    #[arg(long, default_value = "2-4")]
    pub m: Span,
    /// Distance exponents; beta = 2^(power-1).
    #[arg(long, default_value = "1")]
    pub power: Span,
    /// Instances per (n, m, power) cell.
    #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
    pub seeds: u64,
    /// First instance seed; cell seeds are seed, seed+1, ...
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    pub dim: u64,
    #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
}

#[derive(Debug, Clone)]
pub struct Row {
    pub n: usize,
    pub m: usize,
    pub beta: u64,
    pub seed: u64,
    pub opt: BigUint,
    pub star: BigUint,
    pub micros: u128,
}

impl Row {
    fn as_f64(w: &BigUint) -> f64 {
        u64::try_from(w).map(|v| v as f64).unwrap_or(f64::INFINITY)
    }

    pub fn ratio(&self) -> f64 {
        if self.opt == BigUint::ZERO {
            return if self.star == BigUint::ZERO { 1.0 } else { f64::INFINITY };
        }
        Self::as_f64(&self.star) / Self::as_f64(&self.opt)
    }

    /// `(1/n)·OPT + 2β(1 − 1/n)·OPT`
    pub fn bound(&self) -> f64 {
        let n = self.n as f64;
        let opt = Self::as_f64(&self.opt);
        opt / n + 2.0 * self.beta as f64 * (1.0 - 1.0 / n) * opt
    }

    /// Within the bound up to `2n²` weight units of rounding slack.
    pub fn within_bound(&self) -> bool {
        let n = self.n as u64;
        let lhs = &self.star * n;
        let rhs = &self.opt * (1 + 2 * self.beta * (n - 1)) + BigUint::from(2 * n * n * n);
        lhs <= rhs
    }

    fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{:.6},{:.1},{}",
            self.n,
            self.m,
            self.beta,
            self.seed,
            self.opt,
            self.star,
            self.ratio(),
            self.bound(),
            self.micros
        )
    }
}

fn run_cell(n: u32, m: u32, power: u32, seed: u64, dim: usize, budget: u64) -> Result<Row, Failure> {
    let inst = metric_weighted_instance(n as usize, m as usize, dim, power, seed).map_err(Failure::input)?;
    let start = Instant::now();
    let star = minimum_weight_star(&inst.graph).objective.expect("star always has an objective");
    let opt = match exact_min_weight_clique(&inst.graph, budget) {
        Ok(o) => o.objective.expect("exact solver reports its optimum"),
        Err(e @ SolveError::BudgetExceeded { .. }) => {
            return Err(Failure::Budget(format!("n={n} m={m} power={power} seed={seed}: {e}")))
        }
        Err(e) => return Err(Failure::input(e)),
    };
    let micros = start.elapsed().as_micros();
    Ok(Row { n: n as usize, m: m as usize, beta: inst.beta, seed, opt, star, micros })
}

pub fn sweep(a: &BenchArgs) -> Result<Vec<Row>, Failure> {
    let mut cells = Vec::new();
    for &n in &a.n.0 {
        for &m in &a.m.0 {
            for &power in &a.power.0 {
                for s in 0..a.seeds {
                    cells.push((n, m, power, a.seed.wrapping_add(s)));
                }
            }
        }
    }
    let dim = a.dim as usize;
    // collect keeps the input order whatever the schedule
    cells.par_iter().map(|&(n, m, p, s)| run_cell(n, m, p, s, dim, a.budget)).collect()
}

pub fn run(args: &BenchArgs, out: Option<&Path>) -> CmdResult {
    let rows = sweep(args)?;
    let mut csv = String::from(HEADER);
    csv.push('\n');
    for r in &rows {
        writeln!(csv, "{}", r.csv()).expect("writing to a string");
    }
    emit(out, &csv)?;

    let mut cells: Vec<(usize, usize, u64)> = rows.iter().map(|r| (r.n, r.m, r.beta)).collect();
    cells.dedup();
    for (n, m, beta) in cells {
        let max = rows.iter().filter(|r| (r.n, r.m, r.beta) == (n, m, beta)).map(Row::ratio).fold(0.0, f64::max);
        let limit = 2.0 * beta as f64 * (1.0 - 1.0 / n as f64);
        eprintln!("n={n} m={m} beta={beta}: max ratio {max:.4}, 2β(1−1/n) = {limit:.4}");
    }
    let violations = rows.iter().filter(|r| !r.within_bound()).count();
    if violations > 0 {
        eprintln!("{violations} of {} instances exceed the bound", rows.len());
    }
    Ok(Verdict::from_bool(violations == 0))
}
