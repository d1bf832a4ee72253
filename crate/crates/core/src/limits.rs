//! Default size caps for the exhaustive searches.

/// Maximum order of a group materialised element by element.
pub const MAX_GROUP_ORDER: usize = 1 << 20;
/// Cayley tables above this order are rejected (associativity is checked eagerly).
pub const MAX_CAYLEY_ORDER: usize = 512;
pub const SUBGROUP_CAP: usize = 4096;
pub const ISOMORPHISM_CAP: usize = 1024;
pub const LATTICE_AUT_CAP: usize = 64;
/// Largest lattice for which meet/join tables are materialised.
pub const LATTICE_TABLE_CAP: usize = 4096;
pub const DOWNSET_CAP: usize = 4096;
pub const BOOLEAN_LATTICE_MAX_RANK: usize = 12;
pub const REALIZE_GROUP_CAP: usize = 24;
pub const BLOCK_CAP: usize = 40;
pub const CYCLIC_ENUMERATION_CAP: usize = 36;
pub const EXHAUSTIVE_CAP: usize = 10;
/// Largest `|supp x| * |supp y|` accepted by a convolution.
pub const MULTIPLY_CAP: usize = 1 << 28;
/// Full `O(|G|^2)` product-closure check is run up to this order.
pub const CONVOLUTION_CAP: usize = 1 << 16;
/// Symbolic groups are instantiated concretely when `|P| <= 2^16`.
pub const CONCRETE_CROSSCHECK_CAP: u128 = 1 << 16;
