//! Executable weakly dicomplemented lattices on finite carriers.
//!
//! The crate builds finite lattices, equips them with weak complementation
//! tables, checks the defining axioms and their consequences, computes
//! congruences, enumerates models exhaustively and constructs concept
//! algebras from formal contexts.

pub mod concept;
pub mod congruence;
pub mod dicomp;
pub mod enumeration;
pub mod error;
pub mod lattice;

pub use dicomp::{Axiom, AxiomReport, DicompAlgebra, UnaryOp, Verdict, Witness};
pub use error::{Error, Result};
pub use lattice::{build_lattice, find_isomorphism, FiniteLattice, IntervalView, Lattice};
