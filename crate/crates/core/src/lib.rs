//! Combinatorial layered models of 3-manifolds.
//!
//! Pants decompositions are trivalent multigraphs ([`pants_graph`]); paths in
//! the pants complex ([`moves`]) drive the layering of pants blocks into model
//! complexes ([`model`]). Fat spines and layered models of compression bodies
//! live in [`spines`], the gluing of compression-body models along a
//! generalized Heegaard splitting in [`assembly`], and the disk-bounding
//! decision layer in [`disk_oracle`].

pub mod assembly;
pub mod disk_oracle;
pub mod error;
pub mod io;
pub mod model;
pub mod moves;
pub mod pants_graph;
pub mod spines;

pub use error::{Error, Result};
