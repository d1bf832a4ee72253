use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use super::{AlgebraElement, ClosureWitness, CoefficientField, Span};
use crate::error::{cap_check, Error, Result};
use crate::groups::Group;
use crate::lattice::FiniteLattice;
use crate::limits::LATTICE_TABLE_CAP;
use crate::ptuple::{canonical_lattice, canonical_tuples, count_classes, regular_subgroup, CanonicalTuple, LambdaSignature};

/// Coordinates in the basis `{R̄(â)}`.
pub type SymVec = Vec<BigRational>;

/// The span of `{R̄(â)}` over a set of canonical tuples closed under `∧, ∨`,
/// for an odd prime. Over all of `𝒞(G)` this is `W(G)`.
///
/// Products follow `R̄(â)R̄(b̂) = p^{Σ(â∧b̂)} R̄(â∨b̂)` and
/// `R̄(â)∘R̄(b̂) = R̄(â∧b̂)`; the basic elements are the Möbius transforms
/// `Ō(â) = Σ_{b̂ ≤ â} μ(b̂, â) R̄(b̂)` within the node lattice.
#[derive(Clone, Debug)]
pub struct SymbolicRationalAlgebra {
    sig: LambdaSignature,
    tuples: Vec<CanonicalTuple>,
    lattice: FiniteLattice,
    p: BigInt,
}

/// `W(G)` on all canonical tuples.
pub fn w_algebra(sig: &LambdaSignature) -> Result<SymbolicRationalAlgebra> {
    let n = count_classes(sig);
    cap_check("canonical tuples", n.min(usize::MAX as u128) as usize, LATTICE_TABLE_CAP)?;
    SymbolicRationalAlgebra::on_nodes(sig, canonical_tuples(sig))
}

impl SymbolicRationalAlgebra {
    pub fn on_nodes(sig: &LambdaSignature, mut nodes: Vec<CanonicalTuple>) -> Result<Self> {
        if sig.p() == 2 {
            return Err(Error::EvenPrime(2));
        }
        for t in &nodes {
            CanonicalTuple::new(t.tuple().clone(), sig)?;
        }
        nodes.sort();
        nodes.dedup();
        let lattice = canonical_lattice(&nodes)?;
        Ok(SymbolicRationalAlgebra {
            sig: sig.clone(),
            tuples: nodes,
            lattice,
            p: BigInt::from(sig.p()),
        })
    }

    pub fn signature(&self) -> &LambdaSignature {
        &self.sig
    }

    pub fn tuples(&self) -> &[CanonicalTuple] {
        &self.tuples
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn dim(&self) -> usize {
        self.tuples.len()
    }

    pub fn index_of(&self, t: &CanonicalTuple) -> Option<usize> {
        self.tuples.binary_search(t).ok()
    }

    /// `Σ a_i`, so that `|R(â)| = p^{Σ a_i}`.
    pub fn size_exponent(&self, a: usize) -> u32 {
        self.tuples[a].sum()
    }

    pub fn unit(&self, a: usize) -> SymVec {
        let mut v = vec![BigRational::zero(); self.dim()];
        v[a] = BigRational::one();
        v
    }

    /// Builds a vector from `(index, coefficient)` pairs in the R-basis.
    pub fn vector(&self, terms: &[(usize, i64)]) -> Result<SymVec> {
        let mut v = vec![BigRational::zero(); self.dim()];
        for &(a, c) in terms {
            if a >= self.dim() {
                return Err(Error::InvalidTuple(format!("basis index {a} out of range")));
            }
            v[a] += BigRational::from_integer(c.into());
        }
        Ok(v)
    }

    pub fn one(&self) -> SymVec {
        self.unit(self.lattice.bottom())
    }

    pub fn top(&self) -> SymVec {
        self.unit(self.lattice.top())
    }

    /// `R̄(â)R̄(b̂) = coefficient · R̄(index)`.
    pub fn product_rule(&self, a: usize, b: usize) -> (usize, BigInt) {
        let m = self.lattice.meet(a, b);
        (self.lattice.join(a, b), Pow::pow(&self.p, self.size_exponent(m)))
    }

    pub fn mul(&self, x: &SymVec, y: &SymVec) -> SymVec {
        let mut out = vec![BigRational::zero(); self.dim()];
        for (a, xa) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let (k, c) = self.product_rule(a, b);
                out[k] += xa * yb * BigRational::from_integer(c);
            }
        }
        out
    }

    pub fn hadamard(&self, x: &SymVec, y: &SymVec) -> SymVec {
        let mut out = vec![BigRational::zero(); self.dim()];
        for (a, xa) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                out[self.lattice.meet(a, b)] += xa * yb;
            }
        }
        out
    }

    /// O-coordinates: `R̄(â) = Σ_{b̂ ≤ â} Ō(b̂)`, so `y_b = Σ_{a ≥ b} x_a`.
    pub fn to_o_coords(&self, x: &SymVec) -> SymVec {
        (0..self.dim())
            .map(|b| {
                (0..self.dim())
                    .filter(|&a| self.lattice.leq(b, a))
                    .fold(BigRational::zero(), |acc, a| acc + &x[a])
            })
            .collect()
    }

    /// Inverse of [`Self::to_o_coords`]; tuples are in a linear extension, so
    /// this is back substitution from the top.
    pub fn from_o_coords(&self, y: &SymVec) -> SymVec {
        let d = self.dim();
        let mut x = vec![BigRational::zero(); d];
        for b in (0..d).rev() {
            let above = (b + 1..d)
                .filter(|&a| self.lattice.lt(b, a))
                .fold(BigRational::zero(), |acc, a| acc + &x[a]);
            x[b] = &y[b] - above;
        }
        x
    }

    /// `Ō(â)` in R-coordinates.
    pub fn o_element(&self, a: usize) -> SymVec {
        self.from_o_coords(&self.unit(a))
    }

    /// `Σ_a x_a p^{Σa}`: the coefficient sum of the concrete element.
    pub fn augmentation(&self, x: &SymVec) -> BigRational {
        x.iter()
            .enumerate()
            .fold(BigRational::zero(), |acc, (a, c)| {
                acc + c * BigRational::from_integer(Pow::pow(&self.p, self.size_exponent(a)))
            })
    }

    /// `|O(â)|` for the basic set at node `a`.
    pub fn o_size(&self, a: usize) -> BigInt {
        self.augmentation(&self.o_element(a)).to_integer()
    }

    /// Zeta matrix `Z[a][b] = [b ≤ a]` (rows: R in terms of O) and its inverse.
    pub fn change_of_basis(&self) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
        let d = self.dim();
        let zeta = (0..d)
            .map(|a| (0..d).map(|b| i64::from(self.lattice.leq(b, a))).collect())
            .collect();
        let mobius = (0..d)
            .map(|a| {
                self.o_element(a)
                    .iter()
                    .map(|c| i64::try_from(c.to_integer()).expect("Möbius values are small"))
                    .collect()
            })
            .collect();
        (zeta, mobius)
    }

    /// `Σ x_a R̄(â)` in `Q G` for the concrete group of the signature.
    pub fn instantiate(&self, x: &SymVec, group: &Arc<Group>) -> Result<AlgebraElement> {
        let q = CoefficientField::Rationals;
        let mut out = AlgebraElement::zero(group.clone(), q);
        for (a, c) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let h = regular_subgroup(self.tuples[a].tuple(), group)?;
            out = out.add(&AlgebraElement::simple(group.clone(), q, h.elements()).scale(c))?;
        }
        Ok(out)
    }

    fn span(&self, vectors: &[SymVec]) -> Span {
        Span::from_vectors(CoefficientField::Rationals, self.dim(), vectors.iter().map(Vec::as_slice))
    }
}

/// Result of a symbolic closure test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicClosure {
    pub closed: bool,
    pub dimension: usize,
    pub witness: Option<ClosureWitness>,
}

/// Whether `span(vectors)` contains `1` and `Ḡ` and is closed under both
/// products. Inversion is automatic: every `R(â)` is a subgroup.
pub fn check_symbolic_closure(a: &SymbolicRationalAlgebra, vectors: &[SymVec]) -> SymbolicClosure {
    let s = a.span(vectors);
    let fail = |w| SymbolicClosure {
        closed: false,
        dimension: s.dim(),
        witness: Some(w),
    };
    if !s.contains(&a.one()) {
        return fail(ClosureWitness::MissingIdentity);
    }
    if !s.contains(&a.top()) {
        return fail(ClosureWitness::MissingGroupSum);
    }
    for (i, x) in vectors.iter().enumerate() {
        for (j, y) in vectors.iter().enumerate().skip(i) {
            if !s.contains(&a.hadamard(x, y)) {
                return fail(ClosureWitness::Hadamard { i, j });
            }
            if !s.contains(&a.mul(x, y)) {
                return fail(ClosureWitness::Product { i, j });
            }
        }
    }
    SymbolicClosure {
        closed: true,
        dimension: s.dim(),
        witness: None,
    }
}

/// Nodes `â` with `R̄(â)` in the span: the characteristic S-subgroups.
pub fn symbolic_s_sets(a: &SymbolicRationalAlgebra, vectors: &[SymVec]) -> Vec<usize> {
    let s = a.span(vectors);
    (0..a.dim()).filter(|&k| s.contains(&a.unit(k))).collect()
}

/// Basic sets of a closed span as groups of O-basis indices.
pub fn symbolic_basic_sets(a: &SymbolicRationalAlgebra, vectors: &[SymVec]) -> Result<Vec<Vec<usize>>> {
    let o: Vec<SymVec> = vectors.iter().map(|v| a.to_o_coords(v)).collect();
    let mut keyed: Vec<(Vec<BigRational>, usize)> = (0..a.dim())
        .map(|b| (o.iter().map(|v| v[b].clone()).collect(), b))
        .collect();
    keyed.sort();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (i, (key, b)) in keyed.iter().enumerate() {
        if i > 0 && keyed[i - 1].0 == *key {
            blocks.last_mut().expect("open block").push(*b);
        } else {
            blocks.push(vec![*b]);
        }
    }
    let s = a.span(vectors);
    if blocks.len() != s.dim() {
        return Err(Error::NotSchur(format!(
            "span has dimension {} but {} basic sets",
            s.dim(),
            blocks.len()
        )));
    }
    for b in &mut blocks {
        b.sort_unstable();
    }
    blocks.sort();
    Ok(blocks)
}
