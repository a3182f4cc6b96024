//! Plain-text reports.

use std::fmt::Write as _;

use serde_json::Value;
use wdl_core::concept::{ConceptAlgebra, FormalContext};
use wdl_core::enumeration::{SearchOutcome, SearchReport, SizeCounts};
use wdl_core::{AxiomReport, Lattice, Verdict};

fn element(x: usize, labels: Option<&[String]>) -> String {
    labels.and_then(|l| l.get(x)).cloned().unwrap_or_else(|| x.to_string())
}

fn tuple(xs: &[usize], labels: Option<&[String]>) -> String {
    let names = ["x", "y", "z"];
    xs.iter()
        .enumerate()
        .map(|(i, &x)| format!("{}={}", names.get(i).copied().unwrap_or("w"), element(x, labels)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn table(t: &[usize], labels: Option<&[String]>) -> String {
    let cells: Vec<String> = t.iter().enumerate().map(|(x, &v)| format!("{}↦{}", element(x, labels), element(v, labels))).collect();
    format!("{{{}}}", cells.join(", "))
}

pub fn report(report: &AxiomReport, labels: Option<&[String]>) -> String {
    let mut out = String::new();
    let width = report.verdicts.iter().map(|(a, _)| a.id().len()).max().unwrap_or(0);
    for (a, v) in &report.verdicts {
        match v {
            Verdict::Pass => writeln!(out, "{:width$}  pass  {}", a.id(), a.statement()),
            Verdict::Fail(w) => writeln!(
                out,
                "{:width$}  FAIL  {} at {}: {} ≠ {}",
                a.id(),
                w.clause,
                tuple(&w.tuple, labels),
                element(w.lhs, labels),
                element(w.rhs, labels)
            ),
        }
        .expect("string write");
    }
    if report.degenerate {
        out.push_str("note: one-element carrier, every equation holds vacuously\n");
    }
    let failed = report.verdicts.iter().filter(|(_, v)| !v.passed()).count();
    writeln!(out, "{} of {} pass", report.verdicts.len() - failed, report.verdicts.len()).expect("string write");
    out
}

pub fn recognition(certificate: Option<&[usize]>, satisfying: u128, labels: Option<&[String]>) -> String {
    match certificate {
        Some(t) => format!("Boolean: the complementation {} satisfies (x∧y) ∨ (x∧y^△) = (x∨y) ∧ (x∨y^△)\n", table(t, labels)),
        None => {
            debug_assert_eq!(satisfying, 0);
            "not Boolean: no table satisfies (x∧y) ∨ (x∧y^△) = (x∨y) ∧ (x∨y^△)\n".to_string()
        }
    }
}

pub fn lattices(n: usize, lattices: &[Lattice]) -> String {
    let mut out = format!("{} lattices on {n} elements\n", lattices.len());
    for l in lattices {
        let covers: Vec<String> = l.covers().iter().map(|(a, b)| format!("{a}<{b}")).collect();
        writeln!(out, "  {}", if covers.is_empty() { "(no covers)".to_string() } else { covers.join(" ") }).expect("string write");
    }
    out
}

pub fn tables(rows: &[Value]) -> String {
    let mut out = format!("{} tables\n", rows.len());
    for row in rows {
        let cells: Vec<String> = ["weak", "dual"]
            .iter()
            .filter_map(|k| row.get(*k).map(|t| format!("{k} {t}")))
            .collect();
        writeln!(out, "  {}", cells.join("  ")).expect("string write");
    }
    out
}

fn counts(out: &mut String, counts: &std::collections::BTreeMap<usize, SizeCounts>) {
    writeln!(out, "  {:>2}  {:>8}  {:>16}  {:>16}  {:>14}", "n", "lattices", "pairs", "hypothesis pairs", "tables scanned").expect("string write");
    for (n, c) in counts {
        writeln!(out, "  {n:>2}  {:>8}  {:>16}  {:>16}  {:>14}", c.lattices, c.pairs, c.hypothesis_pairs, c.tables_scanned)
            .expect("string write");
    }
}

pub fn search(report: &SearchReport, with_timing: bool) -> String {
    let hypotheses = if report.require_wdn { "A3, A3', WDN" } else { "A3, A3'" };
    let mut out = format!("search n = {}..={} under {hypotheses}\n", report.min_n, report.max_n);
    match &report.outcome {
        SearchOutcome::Counterexample(cx) => {
            let covers: Vec<String> = cx.lattice.covers().iter().map(|(a, b)| format!("{a}<{b}")).collect();
            writeln!(out, "counterexample on {} elements, covers {}", cx.lattice.len(), covers.join(" ")).expect("string write");
            writeln!(out, "  weak {}", table(cx.weak.table(), None)).expect("string write");
            writeln!(out, "  dual {}", table(cx.dual.table(), None)).expect("string write");
            writeln!(
                out,
                "  violates {} ({}) at {}: {} ≠ {}",
                cx.violated.id(),
                cx.witness.clause,
                tuple(&cx.witness.tuple, None),
                cx.witness.lhs,
                cx.witness.rhs
            )
            .expect("string write");
        }
        SearchOutcome::Exhausted(c) => {
            out.push_str("exhausted: no counterexample\n");
            counts(&mut out, c);
        }
        SearchOutcome::BudgetExceeded { budget, needed, partial } => {
            writeln!(out, "budget exceeded: {needed} tables needed, budget {budget}; completed sizes:").expect("string write");
            counts(&mut out, partial);
        }
    }
    if with_timing {
        writeln!(out, "elapsed {} ms", report.elapsed.as_millis()).expect("string write");
    }
    out
}

pub fn fca(ca: &ConceptAlgebra, ctx: &FormalContext, verdicts: &AxiomReport) -> String {
    let l = ca.algebra.lattice();
    let names = |idx: &[usize], all: &[String]| idx.iter().map(|&i| all[i].as_str()).collect::<Vec<_>>().join(",");
    let mut out = format!("{} objects, {} attributes, {} concepts\n", ctx.objects().len(), ctx.attributes().len(), ca.concepts.len());
    for (i, c) in ca.concepts.iter().enumerate() {
        let w = ca.algebra.weak().apply(i);
        let d = ca.algebra.dual().expect("concept algebras carry both tables").apply(i);
        writeln!(
            out,
            "  {i:>3}  ({{{}}}, {{{}}})  △ {w}  ▽ {d}",
            names(&c.extent, ctx.objects()),
            names(&c.intent, ctx.attributes())
        )
        .expect("string write");
    }
    let labels: Vec<String> = l.elements().map(|x| x.to_string()).collect();
    out.push_str(&report(verdicts, Some(&labels)));
    out
}
