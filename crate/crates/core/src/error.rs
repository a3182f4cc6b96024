use thiserror::Error;

use crate::dicomp::Axiom;

/// Which binary bound is missing for a pair of elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MissingBound {
    Meet,
    Join,
}

impl std::fmt::Display for MissingBound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MissingBound::Meet => f.write_str("meet"),
            MissingBound::Join => f.write_str("join"),
        }
    }
}

/// Why a lattice failed to be Boolean.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotBooleanReason {
    /// `x ∧ (y ∨ z) ≠ (x ∧ y) ∨ (x ∧ z)` at this triple.
    NotDistributive { x: usize, y: usize, z: usize },
    /// The element has no complement.
    NoComplement { element: usize },
}

impl std::fmt::Display for NotBooleanReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NotBooleanReason::NotDistributive { x, y, z } => {
                write!(f, "not distributive at ({x}, {y}, {z})")
            }
            NotBooleanReason::NoComplement { element } => {
                write!(f, "element {element} has no complement")
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("lattice carrier must be non-empty")]
    EmptyCarrier,
    #[error("element {element} out of range for a carrier of size {n}")]
    ElementOutOfRange { element: usize, n: usize },
    #[error("not a partial order: {0}")]
    NotAPoset(String),
    #[error("not a lattice: elements {x} and {y} have no {missing}")]
    NotALattice { x: usize, y: usize, missing: MissingBound },
    #[error("{lo} is not below {hi}")]
    NotComparable { lo: usize, hi: usize },
    #[error("table has length {got}, expected {expected}")]
    TableLength { got: usize, expected: usize },
    #[error("label count {got} does not match carrier size {expected}")]
    LabelCount { got: usize, expected: usize },
    #[error("unknown axiom identifier `{0}`")]
    UnknownAxiom(String),
    #[error("axiom {0} needs a dual weak complementation table")]
    MissingDual(Axiom),
    #[error("axiom {axiom} cannot constrain the {slot} slot")]
    AxiomNotApplicable { axiom: Axiom, slot: &'static str },
    #[error("axiom subset must be non-empty")]
    EmptyAxiomSubset,
    #[error("not a Boolean lattice: {0}")]
    NotBoolean(NotBooleanReason),
    #[error("carrier of size {n} exceeds the configured bound {bound}")]
    CarrierTooLarge { n: usize, bound: usize },
    #[error("search needs {needed} table evaluations, budget is {budget}")]
    BudgetExceeded { budget: u128, needed: u128 },
    #[error("preconditions violated: {}", list_axioms(.0))]
    PreconditionViolated(Vec<Axiom>),
    #[error("algebra is not with negation: weak and dual tables differ at {element}")]
    NotWdn { element: usize },
    #[error("element {0} is a bound; an interior element is required")]
    BoundaryElement(usize),
    #[error("map is not a lattice homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("congruences live on carriers of different size ({left} vs {right})")]
    CarrierMismatch { left: usize, right: usize },
    #[error("concept count exceeds the budget of {budget}")]
    ConceptExplosion { budget: usize },
    #[error("malformed cxt header: {0}")]
    MalformedHeader(String),
    #[error("cxt dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("illegal cxt cell {cell:?} at row {row}, column {column}")]
    IllegalCell { row: usize, column: usize, cell: char },
    #[error("{0} index out of range")]
    OutOfRange(&'static str),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

fn list_axioms(axioms: &[Axiom]) -> String {
    axioms
        .iter()
        .map(|a| a.id())
        .collect::<Vec<_>>()
        .join(", ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
