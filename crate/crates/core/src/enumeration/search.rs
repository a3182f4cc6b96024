//! Exhaustive search: do A3 and A3' imply A1, A2, A1', A2' when the two
//! tables are allowed to differ?

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::{json, Value};

use super::lattices::{enumerate_lattices, DEFAULT_LATTICE_BOUND};
use super::tables::{table_count, tables_satisfying, Role, DEFAULT_BUDGET};
use crate::dicomp::{check_axiom, check_clauses, replay_witness, Axiom, DicompAlgebra, UnaryOp, Verdict, Witness};
use crate::error::{Error, Result};
use crate::lattice::Lattice;

/// Conclusions checked on every hypothesis pair, in reporting order.
pub const CONCLUSIONS: [Axiom; 4] = [Axiom::A1, Axiom::A2, Axiom::A1Dual, Axiom::A2Dual];

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub min_n: usize,
    pub max_n: usize,
    /// Add WDN to the hypotheses: only equal tables are considered.
    pub require_wdn: bool,
    pub budget: u128,
    pub workers: usize,
    pub lattice_bound: usize,
}

impl SearchConfig {
    pub fn new(max_n: usize) -> SearchConfig {
        SearchConfig {
            min_n: 1,
            max_n,
            require_wdn: false,
            budget: DEFAULT_BUDGET,
            workers: 1,
            lattice_bound: DEFAULT_LATTICE_BOUND,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SizeCounts {
    pub lattices: usize,
    /// Candidate pairs covered, `lattices × n^(2n)` (or `× n^n` under WDN).
    pub pairs: u128,
    /// Pairs satisfying the hypotheses.
    pub hypothesis_pairs: u128,
    /// Tables actually scanned.
    pub tables_scanned: u128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub lattice: Lattice,
    pub weak: UnaryOp,
    pub dual: UnaryOp,
    pub violated: Axiom,
    pub witness: Witness,
}

impl Counterexample {
    pub fn algebra(&self) -> DicompAlgebra {
        DicompAlgebra::from_ops(self.lattice.clone(), self.weak.clone(), Some(self.dual.clone())).expect("tables fit the lattice")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Counterexample(Box<Counterexample>),
    Exhausted(BTreeMap<usize, SizeCounts>),
    /// Sizes completed before the budget ran out.
    BudgetExceeded { budget: u128, needed: u128, partial: BTreeMap<usize, SizeCounts> },
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub min_n: usize,
    pub max_n: usize,
    pub require_wdn: bool,
    pub outcome: SearchOutcome,
    pub elapsed: Duration,
}

impl SearchReport {
    /// Replay the outcome: a counterexample must satisfy the hypotheses and
    /// fail the named axiom at the reported witness.
    pub fn verify(&self) -> Result<()> {
        let SearchOutcome::Counterexample(cx) = &self.outcome else {
            return Ok(());
        };
        let algebra = cx.algebra();
        let mut hypotheses = vec![Axiom::A3, Axiom::A3Dual];
        if self.require_wdn {
            hypotheses.push(Axiom::Wdn);
        }
        for h in hypotheses {
            if !check_axiom(&algebra, h)?.passed() {
                return Err(Error::Internal(format!("counterexample violates hypothesis {h}")));
            }
        }
        match check_axiom(&algebra, cx.violated)? {
            Verdict::Fail(w) if w == cx.witness && replay_witness(&algebra, cx.violated, &w) => Ok(()),
            _ => Err(Error::Internal(format!("counterexample does not replay against {}", cx.violated))),
        }
    }

    pub fn to_json(&self, with_timing: bool) -> Value {
        let counts = |m: &BTreeMap<usize, SizeCounts>| -> Value {
            m.iter()
                .map(|(n, c)| {
                    (
                        n.to_string(),
                        json!({
                            "lattices": c.lattices,
                            "pairs": c.pairs,
                            "hypothesis_pairs": c.hypothesis_pairs,
                            "tables_scanned": c.tables_scanned,
                        }),
                    )
                })
                .collect::<serde_json::Map<_, _>>()
                .into()
        };
        let outcome = match &self.outcome {
            SearchOutcome::Counterexample(cx) => json!({
                "counterexample": {
                    "lattice": cx.lattice.to_json(),
                    "weak": cx.weak.table(),
                    "dual": cx.dual.table(),
                    "violated": cx.violated.id(),
                    "witness": cx.witness.tuple,
                    "lhs": cx.witness.lhs,
                    "rhs": cx.witness.rhs,
                }
            }),
            SearchOutcome::Exhausted(m) => json!({ "exhausted": counts(m) }),
            SearchOutcome::BudgetExceeded { budget, needed, partial } => json!({
                "budget_exceeded": { "budget": budget, "needed": needed, "partial": counts(partial) }
            }),
        };
        let mut report = json!({
            "max_n": self.max_n,
            "min_n": self.min_n,
            "require_wdn": self.require_wdn,
            "outcome": outcome,
        });
        if with_timing {
            report["elapsed_ms"] = json!(self.elapsed.as_millis() as u64);
        }
        report
    }
}

struct LatticeResult {
    hypothesis_pairs: u128,
    counterexample: Option<Counterexample>,
}

fn first_violation(algebra: &DicompAlgebra, axioms: &[Axiom]) -> Option<(Axiom, Witness)> {
    let env = algebra.env();
    axioms.iter().find_map(|&a| match check_clauses(&env, a, true) {
        Verdict::Pass => None,
        Verdict::Fail(w) => Some((a, w)),
    })
}

fn scan_lattice(lattice: &Lattice, require_wdn: bool) -> LatticeResult {
    let make = |w: &UnaryOp, d: &UnaryOp| DicompAlgebra::from_ops(lattice.clone(), w.clone(), Some(d.clone())).expect("tables fit");
    let counterexample_at = |w: &UnaryOp, d: &UnaryOp| {
        let algebra = make(w, d);
        first_violation(&algebra, &CONCLUSIONS).map(|(violated, witness)| Counterexample {
            lattice: lattice.clone(),
            weak: w.clone(),
            dual: d.clone(),
            violated,
            witness,
        })
    };

    if require_wdn {
        let tables = tables_satisfying(lattice, &[Axiom::A3, Axiom::A3Dual], Role::Both);
        return LatticeResult {
            hypothesis_pairs: tables.len() as u128,
            counterexample: tables.iter().find_map(|t| counterexample_at(t, t)),
        };
    }

    // A3 constrains only the weak table and A3' only the dual, so the
    // hypothesis pairs are a product; walk it weak-major without expanding it.
    let weak = tables_satisfying(lattice, &[Axiom::A3], Role::Weak);
    let dual = tables_satisfying(lattice, &[Axiom::A3Dual], Role::Dual);
    let hypothesis_pairs = weak.len() as u128 * dual.len() as u128;
    let dual_ok = |d: &UnaryOp| first_violation(&make(d, d), &[Axiom::A1Dual, Axiom::A2Dual]).is_none();
    let first_bad_dual = dual.iter().find(|d| !dual_ok(d));
    let mut counterexample = None;
    if let Some(d0) = dual.first() {
        for w in &weak {
            let weak_ok = first_violation(&make(w, w), &[Axiom::A1, Axiom::A2]).is_none();
            let partner = if weak_ok { first_bad_dual } else { Some(d0) };
            if let Some(d) = partner {
                counterexample = counterexample_at(w, d);
                debug_assert!(counterexample.is_some());
                break;
            }
        }
    }
    LatticeResult { hypothesis_pairs, counterexample }
}

/// Search sizes `min_n..=max_n` in order and return the first counterexample
/// or an exhaustion certificate. The result does not depend on `workers`.
pub fn search_open_question(config: &SearchConfig) -> Result<SearchReport> {
    let start = Instant::now();
    if config.min_n == 0 || config.max_n == 0 {
        return Err(Error::EmptyCarrier);
    }
    if config.max_n > config.lattice_bound {
        return Err(Error::CarrierTooLarge { n: config.max_n, bound: config.lattice_bound });
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.max(1))
        .build()
        .map_err(|e| Error::Internal(e.to_string()))?;

    let mut counts = BTreeMap::new();
    let mut spent: u128 = 0;
    let mut outcome = None;
    for n in config.min_n..=config.max_n {
        let lattices = enumerate_lattices(n, config.lattice_bound)?;
        let per_lattice = if config.require_wdn { table_count(n) } else { table_count(n).saturating_mul(2) };
        let cost = per_lattice.saturating_mul(lattices.len() as u128);
        let needed = spent.saturating_add(cost);
        if needed > config.budget {
            outcome = Some(SearchOutcome::BudgetExceeded { budget: config.budget, needed, partial: counts.clone() });
            break;
        }
        spent = needed;
        let results: Vec<LatticeResult> = pool.install(|| lattices.par_iter().map(|l| scan_lattice(l, config.require_wdn)).collect());

        let pairs_per = if config.require_wdn { table_count(n) } else { table_count(n).saturating_mul(table_count(n)) };
        counts.insert(
            n,
            SizeCounts {
                lattices: lattices.len(),
                pairs: pairs_per.saturating_mul(lattices.len() as u128),
                hypothesis_pairs: results.iter().map(|r| r.hypothesis_pairs).sum(),
                tables_scanned: cost,
            },
        );
        if let Some(cx) = results.into_iter().find_map(|r| r.counterexample) {
            outcome = Some(SearchOutcome::Counterexample(Box::new(cx)));
            break;
        }
    }
    let report = SearchReport {
        min_n: config.min_n,
        max_n: config.max_n,
        require_wdn: config.require_wdn,
        outcome: outcome.unwrap_or(SearchOutcome::Exhausted(counts)),
        elapsed: start.elapsed(),
    };
    report.verify()?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singleton_is_exhausted() {
        let report = search_open_question(&SearchConfig::new(1)).unwrap();
        let SearchOutcome::Exhausted(counts) = report.outcome else { panic!("expected exhaustion") };
        assert_eq!(counts[&1].pairs, 1);
        assert_eq!(counts[&1].hypothesis_pairs, 1);
    }

    #[test]
    fn two_chain_has_a_counterexample() {
        let report = search_open_question(&SearchConfig::new(2)).unwrap();
        let SearchOutcome::Counterexample(cx) = &report.outcome else { panic!("expected counterexample") };
        assert_eq!(cx.weak.table(), &[1, 0]);
        assert_eq!(cx.dual.table(), &[0, 0]);
        assert_eq!(cx.violated, Axiom::A1Dual);
        assert_eq!(cx.witness.tuple, vec![1]);
    }

    #[test]
    fn negation_closes_the_gap() {
        let mut config = SearchConfig::new(4);
        config.require_wdn = true;
        let report = search_open_question(&config).unwrap();
        assert!(matches!(report.outcome, SearchOutcome::Exhausted(_)));
    }

    #[test]
    fn budget_exhaustion_keeps_partial_counts() {
        let mut config = SearchConfig::new(3);
        config.require_wdn = true;
        config.budget = 10;
        let report = search_open_question(&config).unwrap();
        match report.outcome {
            SearchOutcome::BudgetExceeded { partial, needed, .. } => {
                assert_eq!(partial.keys().copied().collect::<Vec<_>>(), vec![1, 2]);
                assert_eq!(needed, 1 + 4 + 27);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
