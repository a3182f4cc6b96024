//! Unary tables satisfying chosen axioms, by depth-first search over table prefixes.

use std::collections::BTreeSet;

use crate::dicomp::{Axiom, Clause, DicompAlgebra, Env, UnaryOp, UNSET};
use crate::error::{Error, Result};
use crate::lattice::Lattice;

/// Default cap on the number of tables a single invocation may scan.
pub const DEFAULT_BUDGET: u128 = 1_000_000_000;

/// Which table(s) the enumeration produces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slot {
    Weak,
    Dual,
    Pair,
}

impl Slot {
    fn name(self) -> &'static str {
        match self {
            Slot::Weak => "weak-only",
            Slot::Dual => "dual-only",
            Slot::Pair => "pair",
        }
    }
}

impl std::str::FromStr for Slot {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "weak" | "weak-only" => Ok(Slot::Weak),
            "dual" | "dual-only" => Ok(Slot::Dual),
            "pair" => Ok(Slot::Pair),
            other => Err(format!("unknown slot `{other}` (expected weak, dual or pair)")),
        }
    }
}

/// A non-empty set of axioms admissible as enumeration constraints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomSubset(BTreeSet<Axiom>);

impl AxiomSubset {
    pub const ADMISSIBLE: [Axiom; 8] = [
        Axiom::A1,
        Axiom::A1Dual,
        Axiom::A2,
        Axiom::A2Dual,
        Axiom::A3,
        Axiom::A3Dual,
        Axiom::Ddag,
        Axiom::Wdn,
    ];

    pub fn new(axioms: impl IntoIterator<Item = Axiom>) -> Result<AxiomSubset> {
        let chosen: BTreeSet<Axiom> = axioms.into_iter().collect();
        if chosen.is_empty() {
            return Err(Error::EmptyAxiomSubset);
        }
        if let Some(&bad) = chosen.iter().find(|a| !Self::ADMISSIBLE.contains(a)) {
            return Err(Error::AxiomNotApplicable { axiom: bad, slot: "any" });
        }
        Ok(AxiomSubset(chosen))
    }

    pub fn contains(&self, axiom: Axiom) -> bool {
        self.0.contains(&axiom)
    }

    pub fn iter(&self) -> impl Iterator<Item = Axiom> + '_ {
        self.0.iter().copied()
    }

    fn weak_side(&self) -> Vec<Axiom> {
        self.iter().filter(|a| matches!(a, Axiom::A1 | Axiom::A2 | Axiom::A3 | Axiom::Ddag)).collect()
    }

    fn dual_side(&self) -> Vec<Axiom> {
        self.iter().filter(|a| matches!(a, Axiom::A1Dual | Axiom::A2Dual | Axiom::A3Dual)).collect()
    }
}

/// How a single table under construction is read by the clauses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Role {
    Weak,
    Dual,
    /// One table serving as both operations.
    Both,
}

/// One enumerated item.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableChoice {
    Weak(UnaryOp),
    Dual(UnaryOp),
    Pair { weak: UnaryOp, dual: UnaryOp },
}

/// Number of tables of one kind on an `n`-element carrier, saturating.
pub fn table_count(n: usize) -> u128 {
    (n as u128).checked_pow(n as u32).unwrap_or(u128::MAX)
}

pub(crate) fn charge(budget: u128, needed: u128) -> Result<()> {
    if needed > budget {
        Err(Error::BudgetExceeded { budget, needed })
    } else {
        Ok(())
    }
}

/// Tables satisfying every listed axiom, ascending lexicographically.
pub(crate) fn tables_satisfying(lattice: &Lattice, axioms: &[Axiom], role: Role) -> Vec<UnaryOp> {
    let clauses: Vec<&Clause> = axioms.iter().flat_map(|a| a.clauses()).collect();
    let n = lattice.len();
    let mut table = vec![UNSET; n];
    let mut out = Vec::new();
    descend(lattice, &clauses, role, &mut table, 0, &mut out);
    out
}

fn descend(lattice: &Lattice, clauses: &[&Clause], role: Role, table: &mut [usize], pos: usize, out: &mut Vec<UnaryOp>) {
    let n = lattice.len();
    if pos == n {
        out.push(UnaryOp::from_vec_unchecked(table.to_vec()));
        return;
    }
    for v in 0..n {
        table[pos] = v;
        if !violated(lattice, clauses, role, table) {
            descend(lattice, clauses, role, table, pos + 1, out);
        }
    }
    table[pos] = UNSET;
}

fn violated(lattice: &Lattice, clauses: &[&Clause], role: Role, table: &[usize]) -> bool {
    let env = match role {
        Role::Weak => Env { lat: lattice, weak: table, dual: &[] },
        Role::Dual => Env { lat: lattice, weak: &[], dual: table },
        Role::Both => Env { lat: lattice, weak: table, dual: table },
    };
    clauses.iter().any(|c| env.first_failure(c).is_some())
}

/// Scan cost of an enumeration, in tables.
pub fn enumeration_cost(n: usize, subset: &AxiomSubset, slot: Slot) -> u128 {
    let one = table_count(n);
    match slot {
        Slot::Pair if !subset.contains(Axiom::Wdn) => one.saturating_mul(2),
        _ => one,
    }
}

/// Every table (or pair) on `lattice` satisfying all chosen axioms.
///
/// Weak-side axioms (A1, A2, A3, DDAG) constrain the weak table and dual-side
/// ones the dual table. With `Slot::Pair`, pairs are ordered weak-major;
/// choosing WDN restricts them to equal tables that satisfy every axiom.
pub fn enumerate_ops_satisfying(lattice: &Lattice, subset: &AxiomSubset, slot: Slot, budget: u128) -> Result<Vec<TableChoice>> {
    let (weak_side, dual_side) = (subset.weak_side(), subset.dual_side());
    let misplaced = match slot {
        Slot::Weak => dual_side.first().copied().or(subset.contains(Axiom::Wdn).then_some(Axiom::Wdn)),
        Slot::Dual => weak_side.first().copied().or(subset.contains(Axiom::Wdn).then_some(Axiom::Wdn)),
        Slot::Pair => None,
    };
    if let Some(axiom) = misplaced {
        return Err(Error::AxiomNotApplicable { axiom, slot: slot.name() });
    }
    charge(budget, enumeration_cost(lattice.len(), subset, slot))?;

    let all: Vec<Axiom> = subset.iter().filter(|&a| a != Axiom::Wdn).collect();
    Ok(match slot {
        Slot::Weak => tables_satisfying(lattice, &all, Role::Weak).into_iter().map(TableChoice::Weak).collect(),
        Slot::Dual => tables_satisfying(lattice, &all, Role::Dual).into_iter().map(TableChoice::Dual).collect(),
        Slot::Pair if subset.contains(Axiom::Wdn) => tables_satisfying(lattice, &all, Role::Both)
            .into_iter()
            .map(|t| TableChoice::Pair { weak: t.clone(), dual: t })
            .collect(),
        Slot::Pair => {
            let weak = tables_satisfying(lattice, &weak_side, Role::Weak);
            let dual = tables_satisfying(lattice, &dual_side, Role::Dual);
            weak.iter()
                .flat_map(|w| dual.iter().map(move |d| TableChoice::Pair { weak: w.clone(), dual: d.clone() }))
                .collect()
        }
    })
}

/// Every weak dicomplementation of `lattice`, weak-major.
pub fn enumerate_dicomplementations(lattice: &Lattice, budget: u128) -> Result<Vec<DicompAlgebra>> {
    let subset = AxiomSubset::new(Axiom::DEFINING)?;
    enumerate_ops_satisfying(lattice, &subset, Slot::Pair, budget)?
        .into_iter()
        .map(|choice| match choice {
            TableChoice::Pair { weak, dual } => DicompAlgebra::from_ops(lattice.clone(), weak, Some(dual)),
            _ => unreachable!("pair slot yields pairs"),
        })
        .collect()
}

/// Weak tables satisfying the given weak-side axioms.
pub fn weak_tables(lattice: &Lattice, axioms: &[Axiom], budget: u128) -> Result<Vec<UnaryOp>> {
    let subset = AxiomSubset::new(axioms.iter().copied())?;
    Ok(enumerate_ops_satisfying(lattice, &subset, Slot::Weak, budget)?
        .into_iter()
        .filter_map(|c| match c {
            TableChoice::Weak(t) => Some(t),
            _ => None,
        })
        .collect())
}

/// Single tables that serve as both operations and satisfy all the axioms.
pub fn wdn_tables(lattice: &Lattice, axioms: &[Axiom], budget: u128) -> Result<Vec<UnaryOp>> {
    let subset = AxiomSubset::new(axioms.iter().copied().chain([Axiom::Wdn]))?;
    Ok(enumerate_ops_satisfying(lattice, &subset, Slot::Pair, budget)?
        .into_iter()
        .filter_map(|c| match c {
            TableChoice::Pair { weak, .. } => Some(weak),
            _ => None,
        })
        .collect())
}
