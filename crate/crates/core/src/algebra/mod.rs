//! Exact group-algebra arithmetic, Schur partitions, S-rings and their
//! structure constants, quotient maps and the symbolic algebra `W(G)`.

mod element;
mod field;
mod partition;
mod quotient;
mod span;
mod sring;
mod symbolic;

pub use element::AlgebraElement;
pub use field::CoefficientField;
pub use partition::SchurPartition;
pub use quotient::{lift_pi_prime, project_pi, Quotient};
pub use span::Span;
pub use sring::{
    basic_sets_of_span, check_span_closure, is_psring, is_sring, is_sring_span, ClosureWitness,
    SchurRing,
};
pub use symbolic::{
    check_symbolic_closure, symbolic_basic_sets, symbolic_s_sets, w_algebra, SymVec,
    SymbolicClosure, SymbolicRationalAlgebra,
};
