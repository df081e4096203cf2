//! Subspace partitions and partial t-spreads of V(n, q): finite fields,
//! subspace geometry, closed-form extremal sizes, explicit constructions,
//! hyperplane-type identities and exact searches.

pub mod cli;
pub mod construct;
pub mod error;
pub mod formulas;
pub mod geometry;
pub mod gf;
pub mod io;
pub mod partition;
pub mod search;
pub mod spreadlab;
pub mod suite;

pub use error::{Error, Result};
pub use geometry::{gaussian_binomial, PointSet, Space, Subspace, Vector};
pub use gf::{FieldElement, FieldSpec};
pub use partition::SubspacePartition;
pub use spreadlab::PartialSpread;
