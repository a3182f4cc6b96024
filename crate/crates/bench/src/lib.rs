//! Benchmarks live in `benches/`; this crate exposes shared fixtures.

use wdl_core::lattice::{build_lattice, Lattice};

pub fn pentagon() -> Lattice {
    build_lattice(5, &[(0, 1), (0, 2), (1, 4), (2, 3), (3, 4)]).expect("N5 is a lattice")
}
