//! Exact core of the Seabed rhomb tiling engine.
//!
//! Everything here works in `no_std` with `alloc`. Geometry is carried in
//! the cyclotomic lattice `Z[ζ]`, `ζ = exp(iπ/5)`; floats appear only in the
//! pentagrid construction, the Perron analysis and SVG emission.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod builtin;
pub mod pentagrid;
pub mod recognizability;
pub mod render;
pub mod substitution;
pub mod tiles;

pub use algebra::{ArithmeticOverflow, GoldenNumber, LatticePoint};
pub use tiles::{
    CornerMark, Direction, EdgeLabel, Patch, PlacedTile, ProtoId, Prototile, PrototileSet, Shape,
};
