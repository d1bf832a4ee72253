//! Finite posets and lattices, Birkhoff duality, lattice automorphisms and
//! the realisation of finite groups as lattice automorphism groups.

mod automorphisms;
mod finite;
mod io;
mod poset;
mod realize;

pub use automorphisms::{lattice_automorphisms, lattice_automorphisms_with};
pub use finite::{BirkhoffEmbedding, FiniteLattice};
pub use io::LatticeJson;
pub use poset::{FinitePoset, PosetJson};
pub use realize::{cayley_gadget_poset, realize_group_as_lattice, LatticeRealization, RealizationKind};
