//! Automorphisms and isomorphisms of Schur rings, and the pipeline
//! realising a finite group as the automorphism group of a rational S-ring.

mod realize;
mod search;

pub use realize::{
    aut_symbolic_lattice_sring, concrete_crosscheck, concrete_sring_automorphisms, realize_group, IsoPair,
    LatticeReport, RealizationReport,
};
pub use search::{are_isomorphic, aut_sring, sring_isomorphisms, SRingMorphism, MORPHISM_CAP};
