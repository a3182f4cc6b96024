//! `wdl`: batch front end for the finite-model workbench.
//!
//! Exit codes: 0 success (all pass / Boolean / exhausted), 1 a requested
//! check failed or the lattice is not Boolean, 2 input or flag errors,
//! 3 internal cross-check failure, 4 budget exceeded, 10 the search found a
//! counterexample.

mod input;
mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use wdl_core::concept::{build_concept_algebra, FormalContext, DEFAULT_CONCEPT_BUDGET};
use wdl_core::dicomp::{check_axiom, full_report, recognize_boolean, DEFAULT_RECOGNIZE_BOUND};
use wdl_core::enumeration::{
    enumerate_lattices, enumerate_ops_satisfying, search_open_question, AxiomSubset, SearchConfig, SearchOutcome, Slot,
    TableChoice, DEFAULT_BUDGET, DEFAULT_LATTICE_BOUND,
};
use wdl_core::{Axiom, AxiomReport, Error};

#[derive(Parser, Debug)]
#[command(name = "wdl", version, about = "Finite-model workbench for weakly dicomplemented lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check axioms on an algebra JSON file.
    Check {
        algebra: PathBuf,
        /// Comma-separated axiom identifiers; all applicable ones by default.
        #[arg(long, value_delimiter = ',')]
        axioms: Option<Vec<Axiom>>,
        #[command(flatten)]
        out: Output,
    },
    /// Decide whether a lattice JSON file is Boolean via the single-axiom table search.
    Recognize {
        lattice: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Enumerate lattices up to isomorphism, or tables satisfying chosen axioms.
    Enumerate {
        #[command(subcommand)]
        what: EnumerateWhat,
    },
    /// Search for pairs satisfying A3 and A3' but not A1, A2, A1', A2'.
    Search {
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value_t = 1)]
        min_n: usize,
        /// Add WDN (equal tables) to the hypotheses.
        #[arg(long)]
        require_wdn: bool,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        workers: u64,
        #[command(flatten)]
        budget: Budget,
        /// Omit the elapsed time so reports are byte-identical between runs.
        #[arg(long)]
        no_timing: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Build the concept algebra of a Burmeister .cxt context.
    Fca {
        context: PathBuf,
        /// Write the algebra JSON here.
        #[arg(long)]
        algebra_out: Option<PathBuf>,
        /// Write the concepts JSON here.
        #[arg(long)]
        concepts_out: Option<PathBuf>,
        /// Maximum number of concepts.
        #[arg(long, default_value_t = DEFAULT_CONCEPT_BUDGET)]
        max_concepts: usize,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand, Debug)]
enum EnumerateWhat {
    /// All lattices on `n` elements, pairwise non-isomorphic.
    Lattices {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Tables (or pairs) on a lattice satisfying every chosen axiom.
    Ops {
        lattice: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        axioms: Vec<Axiom>,
        #[arg(long, default_value = "pair")]
        slot: Slot,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct Budget {
    /// Table-scan budget.
    #[arg(long, env = "WDL_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u128,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

mod code {
    pub const OK: u8 = 0;
    pub const FAILED: u8 = 1;
    pub const INPUT: u8 = 2;
    pub const INTERNAL: u8 = 3;
    pub const BUDGET: u8 = 4;
    pub const COUNTEREXAMPLE: u8 = 10;
}

/// An error with the exit code it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Internal(_) => code::INTERNAL,
            Error::BudgetExceeded { .. } => code::BUDGET,
            _ => code::INPUT,
        };
        Failure { code, error: e.into() }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Failure {
        let code = match error.downcast_ref::<Error>() {
            Some(Error::Internal(_)) => code::INTERNAL,
            Some(Error::BudgetExceeded { .. }) => code::BUDGET,
            _ => code::INPUT,
        };
        Failure { code, error }
    }
}

type Run = Result<u8, Failure>;

fn emit(out: &Output, text: impl FnOnce() -> String, value: impl FnOnce() -> Value) {
    match out.format {
        Format::Text => print!("{}", text()),
        Format::Json => println!("{}", serde_json::to_string_pretty(&value()).expect("report serializes")),
    }
}

fn run_check(path: &Path, axioms: Option<&[Axiom]>, out: &Output) -> Run {
    let (algebra, numbering) = input::read_algebra(path)?;
    let report = match axioms {
        None => full_report(&algebra)?,
        Some(list) => {
            let mut verdicts = Vec::new();
            for &a in list {
                if !verdicts.iter().any(|(b, _)| *b == a) {
                    verdicts.push((a, check_axiom(&algebra, a)?));
                }
            }
            AxiomReport { verdicts, degenerate: algebra.lattice().is_degenerate() }
        }
    };
    let report = numbering.report(&report);
    emit(
        out,
        || render::report(&report, numbering.labels()),
        || serde_json::to_value(&report).expect("report serializes"),
    );
    Ok(if report.all_pass() { code::OK } else { code::FAILED })
}

fn run_recognize(path: &Path, out: &Output) -> Run {
    let (lattice, numbering) = input::read_lattice(path)?;
    let rec = recognize_boolean(&lattice, DEFAULT_RECOGNIZE_BOUND)?;
    let certificate = rec.certificate.as_ref().map(|t| numbering.table(t.table()));
    emit(
        out,
        || render::recognition(certificate.as_deref(), rec.satisfying_tables, numbering.labels()),
        || {
            json!({
                "boolean": certificate.is_some(),
                "certificate": certificate,
                "satisfying_tables": rec.satisfying_tables,
                "degenerate": rec.degenerate,
            })
        },
    );
    Ok(if rec.is_boolean() { code::OK } else { code::FAILED })
}

fn run_enumerate_lattices(n: usize, out: &Output) -> Run {
    let lattices = enumerate_lattices(n, DEFAULT_LATTICE_BOUND)?;
    emit(
        out,
        || render::lattices(n, &lattices),
        || json!({ "n": n, "count": lattices.len(), "lattices": lattices.iter().map(|l| l.to_json()).collect::<Vec<_>>() }),
    );
    Ok(code::OK)
}

fn run_enumerate_ops(path: &Path, axioms: &[Axiom], slot: Slot, budget: u128, out: &Output) -> Run {
    let (lattice, numbering) = input::read_lattice(path)?;
    let subset = AxiomSubset::new(axioms.iter().copied())?;
    let choices = enumerate_ops_satisfying(&lattice, &subset, slot, budget)?;
    let rows: Vec<Value> = choices
        .iter()
        .map(|c| match c {
            TableChoice::Weak(t) => json!({ "weak": numbering.table(t.table()) }),
            TableChoice::Dual(t) => json!({ "dual": numbering.table(t.table()) }),
            TableChoice::Pair { weak, dual } => {
                json!({ "weak": numbering.table(weak.table()), "dual": numbering.table(dual.table()) })
            }
        })
        .collect();
    emit(
        out,
        || render::tables(&rows),
        || json!({ "axioms": subset.iter().map(Axiom::id).collect::<Vec<_>>(), "count": rows.len(), "tables": rows }),
    );
    Ok(code::OK)
}

fn run_search(config: &SearchConfig, with_timing: bool, out: &Output) -> Run {
    let report = search_open_question(config)?;
    emit(out, || render::search(&report, with_timing), || report.to_json(with_timing));
    Ok(match report.outcome {
        SearchOutcome::Exhausted(_) => code::OK,
        SearchOutcome::Counterexample(_) => code::COUNTEREXAMPLE,
        SearchOutcome::BudgetExceeded { .. } => code::BUDGET,
    })
}

fn run_fca(path: &Path, algebra_out: Option<&PathBuf>, concepts_out: Option<&PathBuf>, max_concepts: usize, out: &Output) -> Run {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let ctx = FormalContext::parse_cxt(&text).with_context(|| format!("{}", path.display()))?;
    let ca = build_concept_algebra(&ctx, max_concepts)?;
    let report = full_report(&ca.algebra)?;
    let algebra_json = serde_json::to_string(&ca.algebra.to_json()).expect("algebra serializes");
    let concepts_json = ca.concepts_json(&ctx);
    for (target, body) in [(algebra_out, &algebra_json), (concepts_out, &concepts_json)] {
        if let Some(p) = target {
            std::fs::write(p, format!("{body}\n")).with_context(|| format!("cannot write {}", p.display()))?;
        }
    }
    let labels: Vec<String> = ca.algebra.lattice().elements().map(|x| ca.algebra.lattice().label(x)).collect();
    emit(
        out,
        || render::fca(&ca, &ctx, &report),
        || {
            json!({
                "algebra": serde_json::from_str::<Value>(&algebra_json).expect("valid json"),
                "concepts": serde_json::from_str::<Value>(&concepts_json).expect("valid json")["concepts"],
                "report": serde_json::to_value(&report).expect("report serializes"),
                "labels": labels,
            })
        },
    );
    let defining = Axiom::DEFINING.iter().all(|&a| report.passes(a));
    Ok(if defining { code::OK } else { code::FAILED })
}

fn dispatch(cli: Cli) -> Run {
    match cli.command {
        Command::Check { algebra, axioms, out } => run_check(&algebra, axioms.as_deref(), &out),
        Command::Recognize { lattice, out } => run_recognize(&lattice, &out),
        Command::Enumerate { what: EnumerateWhat::Lattices { n, out } } => run_enumerate_lattices(n, &out),
        Command::Enumerate { what: EnumerateWhat::Ops { lattice, axioms, slot, budget, out } } => {
            run_enumerate_ops(&lattice, &axioms, slot, budget.budget, &out)
        }
        Command::Search { max_n, min_n, require_wdn, workers, budget, no_timing, out } => {
            let config = SearchConfig {
                min_n,
                max_n,
                require_wdn,
                budget: budget.budget,
                workers: workers as usize,
                lattice_bound: DEFAULT_LATTICE_BOUND,
            };
            run_search(&config, !no_timing, &out)
        }
        Command::Fca { context, algebra_out, concepts_out, max_concepts, out } => {
            run_fca(&context, algebra_out.as_ref(), concepts_out.as_ref(), max_concepts, &out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure { code, error }) => {
            eprintln!("error: {error:#}");
            ExitCode::from(code)
        }
    }
}
