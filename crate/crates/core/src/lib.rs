//! Exact combinatorics of the face semilattice `L_n` of the n-cube.
//!
//! Faces, signed-permutation automorphisms, MR-subalgebras and their
//! locator pairs, Möbius functions of the associated posets, and the
//! orbit/stabilizer/derangement census built on top of them.

pub mod aut;
pub mod census;
pub mod error;
pub mod face;
pub mod mobius;
pub mod numbers;
pub mod poset;
pub mod subalgebra;

pub use aut::SignedPerm;
pub use error::{Error, Result};
pub use face::{Coord, CoordMask, Face, IntervalPair, SignedSet};
pub use poset::PosetTable;
pub use subalgebra::locator::{ImpSublattice, LocatorPair};
pub use subalgebra::{Block, MRSubalgebra, TypeVector};
