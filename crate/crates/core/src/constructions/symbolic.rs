use crate::algebra::{check_symbolic_closure, symbolic_basic_sets, SymVec, SymbolicClosure, SymbolicRationalAlgebra};
use crate::error::{Error, Result};
use crate::ptuple::{CanonicalTuple, LambdaSignature};

/// `Q L̄` for a lattice `L` of characteristic subgroups `R(â)` of the
/// abelian `p`-group of signature `λ`, held symbolically.
#[derive(Clone, Debug)]
pub struct SymbolicLatticeSRing {
    algebra: SymbolicRationalAlgebra,
    closure: SymbolicClosure,
}

impl SymbolicLatticeSRing {
    pub fn algebra(&self) -> &SymbolicRationalAlgebra {
        &self.algebra
    }

    pub fn nodes(&self) -> &[CanonicalTuple] {
        self.algebra.tuples()
    }

    pub fn dimension(&self) -> usize {
        self.closure.dimension
    }

    pub fn basis(&self) -> Vec<SymVec> {
        (0..self.algebra.dim()).map(|k| self.algebra.unit(k)).collect()
    }

    /// Basic sets as groups of `O`-classes.
    pub fn basic_sets(&self) -> Result<Vec<Vec<usize>>> {
        symbolic_basic_sets(&self.algebra, &self.basis())
    }
}

/// Adds `0̂` and `λ̂` to `nodes`, checks the result is a sublattice of the
/// canonical tuples and that its span is an S-ring.
pub fn symbolic_lattice_sring(sig: &LambdaSignature, nodes: &[CanonicalTuple]) -> Result<SymbolicLatticeSRing> {
    let mut all = nodes.to_vec();
    all.push(CanonicalTuple::new(sig.zero(), sig)?);
    all.push(CanonicalTuple::new(sig.top(), sig)?);
    let algebra = SymbolicRationalAlgebra::on_nodes(sig, all)?;
    let basis: Vec<SymVec> = (0..algebra.dim()).map(|k| algebra.unit(k)).collect();
    let closure = check_symbolic_closure(&algebra, &basis);
    if !closure.closed {
        return Err(Error::Verification(format!(
            "lattice span is not closed: {:?}",
            closure.witness
        )));
    }
    Ok(SymbolicLatticeSRing { algebra, closure })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ptuple::{canonical_tuples, Tuple};

    #[test]
    fn full_table_one_lattice() {
        let sig = LambdaSignature::new(3, vec![1, 3]).unwrap();
        let s = symbolic_lattice_sring(&sig, &canonical_tuples(&sig)).unwrap();
        assert_eq!(s.dimension(), 6);
        assert_eq!(s.basic_sets().unwrap().len(), 6);
    }

    #[test]
    fn bounds_are_added() {
        let sig = LambdaSignature::new(5, vec![1, 3]).unwrap();
        let mid = CanonicalTuple::new(Tuple(vec![1, 2]), &sig).unwrap();
        let s = symbolic_lattice_sring(&sig, &[mid]).unwrap();
        assert_eq!(s.dimension(), 3);
    }

    #[test]
    fn non_sublattice_rejected() {
        let sig = LambdaSignature::new(3, vec![1, 3]).unwrap();
        let a = CanonicalTuple::new(Tuple(vec![0, 2]), &sig).unwrap();
        let b = CanonicalTuple::new(Tuple(vec![1, 1]), &sig).unwrap();
        assert!(symbolic_lattice_sring(&sig, &[a, b]).is_err());
    }
}
