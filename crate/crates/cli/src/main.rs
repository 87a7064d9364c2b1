//! `orisearch`: solve, reduce, generate, verify and benchmark partite clique
//! and common-line instances.
//!
//! Exit codes: 0 feasible / accepted, 1 infeasible / rejected, 2 input error,
//! 3 search budget exceeded.

mod bench;
mod generate;
mod reduce;
mod solve;
mod verify;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use orisearch::io::{parse_document, Envelope};

#[derive(Debug, Parser)]
#[command(name = "orisearch", version, about = "Partite clique solvers, reductions and common-line instance tools")]
struct Cli {
    /// Write the main output to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a solver on an instance and print the outcome document.
    Solve(solve::SolveArgs),
    /// Translate an instance into another problem, with a witness mapping.
    Reduce(reduce::ReduceArgs),
    /// Write a seeded random or planted instance.
    Generate(generate::GenerateArgs),
    /// Check a witness against an instance.
    Verify(verify::VerifyArgs),
    /// Compare the star approximation with the exact optimum on metric instances.
    Bench(bench::BenchArgs),
}

/// Successful run: the answer is yes (exit 0) or no (exit 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

#[derive(Debug)]
pub enum Failure {
    Input(String),
    Budget(String),
}

impl Failure {
    pub fn input(msg: impl std::fmt::Display) -> Self {
        Failure::Input(msg.to_string())
    }
}

pub type CmdResult = Result<Verdict, Failure>;

pub fn load(path: &Path) -> Result<Envelope, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::input(format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?
    };
    parse_document(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

pub fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    let mut text = text.to_owned();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::input(format!("{}: {e}", p.display()))),
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| Failure::input(format!("stdout: {e}"))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.as_deref();
    let result = match cli.command {
        Command::Solve(a) => solve::run(&a, out),
        Command::Reduce(a) => reduce::run(&a, out),
        Command::Generate(a) => generate::run(&a, out),
        Command::Verify(a) => verify::run(&a),
        Command::Bench(a) => bench::run(&a, out),
    };
    match result {
        Ok(Verdict::Yes) => ExitCode::from(0),
        Ok(Verdict::No) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("orisearch: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("orisearch: {msg}");
            ExitCode::from(3)
        }
    }
}
