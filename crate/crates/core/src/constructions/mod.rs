//! Ways of building Schur rings: subgroup lattices, the cyclotomic, dot and
//! wedge constructions, exhaustive search and the symbolic lattice S-rings.

mod conv;
mod cyclic;
mod exhaustive;
mod lattice;
mod leung_man;
mod symbolic;

pub use conv::{conv_pair, ConvPair, ConvPairReport};
pub use cyclic::{cyclic_cyclotomic, cyclotomic_blocks, enumerate_cyclic_srings, is_cyclotomic, unit_subgroups, units};
pub use exhaustive::{
    divisor_sublattice_srings, exhaustive_srings, normal_sublattice_srings, rational_srings, srings_from_atoms,
};
pub use lattice::{lattice_sring, sublattices, verify_lattice_properties, LatticeSRing, SubgroupLattice};
pub use leung_man::{cyclic_embedding, cyclotomic, dot_product, wedge_product, Embedded};
pub use symbolic::{symbolic_lattice_sring, SymbolicLatticeSRing};
