use thiserror::Error;

/// Errors raised by the group, lattice and Schur-ring machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("{what} exceeds cap ({size} > {cap})")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("group is not abelian")]
    NonAbelian,

    #[error("group is cyclic: {0}")]
    Cyclic(String),

    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),

    #[error("polynomial is not primitive: {0}")]
    NotPrimitive(String),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("not a lattice: elements {0} and {1} have no unique {2}")]
    NotALattice(usize, usize, &'static str),

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("lattice is not distributive")]
    NotDistributive,

    #[error("invalid tuple: {0}")]
    InvalidTuple(String),

    #[error("unsupported prime {0}: this operation requires an odd prime")]
    EvenPrime(u64),

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("operands live over different groups")]
    GroupMismatch,

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("not invertible in the coefficient field: {0}")]
    NotInvertible(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("not an S-ring: {0}")]
    NotSchur(String),

    #[error("construction precondition failed: {0}")]
    Precondition(String),

    #[error("incompatible wedge factors: dim pi(S_K) = {projected}, dim F(K/H) cap S_quot = {intersection}")]
    IncompatibleWedge { projected: usize, intersection: usize },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn cap_check(what: &'static str, size: usize, cap: usize) -> Result<()> {
    if size > cap {
        Err(Error::CapExceeded { what, size, cap })
    } else {
        Ok(())
    }
}
