//! Finite simplicial sets and finite posets: Kan subdivision, Barratt nerve,
//! desingularization and mapping cylinders, with the machinery to check the
//! comparison `t_X : DSd X -> BX` mechanically on small inputs.

pub mod cylinder;
pub mod delta;
pub mod desing;
pub mod harness;
pub mod poset;
pub mod sset;
pub mod subdivision;

pub use delta::{compose, join_faces, DeltaError, Operator};
pub use sset::{CellId, Simplex, SimplicialMap, SimplicialSet, SsetError};
