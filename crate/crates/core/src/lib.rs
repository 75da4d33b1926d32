//! Zeros of wheel tree polynomials of the complete graph over small prime
//! fields, and the combinatorial objects they are equinumerous with:
//! labeled cographs, switching classes without an induced 5-cycle, and
//! labeled series-parallel networks (counted through cotrees).
//!
//! Everything here is a pure function of immutable values and works without
//! `std`; parallel counting, caching and the command-line front-end live in
//! the `slopecount` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
pub mod graphs;
pub mod pointcount;
pub mod spseries;
pub mod switching;
pub mod treepoly;
pub mod weights;

pub use error::Error;
pub use graphs::{LabeledGraph, VertexSet, Wheel, WheelEdgeSet};
pub use spseries::Cotree;
pub use switching::SwitchingClass;
pub use treepoly::{IdealSpec, ZeroTester};
pub use weights::{EdgeWeighting, FieldElement, TypePartition};

pub type Result<T, E = Error> = core::result::Result<T, E>;
