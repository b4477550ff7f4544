//! Intersection graphs of ideals in finite commutative rings.
//!
//! A ring is modelled as an ordered product of local blocks (fields, chain
//! rings and local rings whose maximal ideal squares to zero). Its ideal
//! lattice is enumerated exactly, the intersection graph on the nontrivial
//! ideals is built from it, and the structural classification results for
//! these graphs are available both as predicates on the ring and as
//! brute-force graph oracles so the two can be compared.
//!
//! Hamiltonian cycles are constructed explicitly (grid snakes with boundary
//! splicing, path lifting over a field factor) and shortened into cycles of
//! every length.

pub mod caps;
pub mod classify;
pub mod error;
pub mod graph;
pub mod hamcycle;
pub mod rings;
pub mod sweep;

pub use caps::Caps;
pub use error::{Error, Result};
pub use graph::{CycleWitness, IntersectionGraph, PropertyRecord};

pub use rings::{BlockIdeal, BlockSpec, Ideal, IndependentFamily, RingSpec};
