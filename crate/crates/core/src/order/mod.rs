//! Finite posets and finite topological spaces.
//!
//! Specialization convention used throughout: `x <= y` iff `x` lies in the
//! closure of `{y}`. Opens are then exactly the up-sets of this order.

mod poset;
mod space;

pub use poset::Poset;
pub use space::{
    topology_from_sets, topology_from_subbasis, FiniteSpace, Generate, LocallyClosed, Relation,
    SeparationReport, SoberViolation,
};
