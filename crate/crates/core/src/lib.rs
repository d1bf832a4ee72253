//! Exact computation with Schur rings over finite groups.

pub mod algebra;
pub mod constructions;
pub mod error;
pub mod groups;
pub mod lattice;
pub mod limits;
pub mod perm;
pub mod ptuple;
pub mod report;
pub mod sring_aut;

pub use error::{Error, Result};
