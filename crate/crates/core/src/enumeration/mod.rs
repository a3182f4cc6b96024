//! Exhaustive generation of finite models.

mod lattices;
mod search;
mod tables;

pub use lattices::{canonical_form, enumerate_lattices, enumerate_posets, Poset, DEFAULT_LATTICE_BOUND, MAX_LATTICE_BOUND};
pub use search::{search_open_question, Counterexample, SearchConfig, SearchOutcome, SearchReport, SizeCounts, CONCLUSIONS};
pub use tables::{
    enumerate_dicomplementations, enumerate_ops_satisfying, enumeration_cost, table_count, wdn_tables, weak_tables, AxiomSubset,
    Slot, TableChoice, DEFAULT_BUDGET,
};
