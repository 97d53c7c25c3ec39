//! Finite frames, spectral spaces, and smashing support theories.

pub mod cases;
pub mod dot;
pub mod enumerate;
pub mod error;
pub mod galois;
pub mod label;
pub mod lattice;
pub mod model;
pub mod order;
pub mod set;
pub mod text;

pub use error::{Error, Result};
pub use lattice::FiniteLattice;
pub use order::{FiniteSpace, Poset};
pub use set::PointSet;
