//! Exponent tuples of abelian p-groups: types, automorphism classes,
//! regular subgroups and the lattice of canonical tuples.

mod concrete;
mod tuple;

pub use concrete::{
    automorphism_class, automorphism_classes, concrete_group, regular_subgroup, type_of, type_set,
};
pub(crate) use tuple::canonical_lattice;
pub use tuple::{
    all_tuples, canonical_tuples, canonicalize, char_lattice, count_classes, is_canonical,
    psi_embed, CanonicalTuple, CharLattice, LambdaSignature, Tuple,
};
