use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::{AlgebraElement, CoefficientField, SchurPartition, Span};
use crate::error::{Error, Result};
use crate::groups::{all_subgroups, automorphism_generators, orbits_of_perms, Group, Subgroup};
use crate::limits::SUBGROUP_CAP;
use crate::perm::Perm;

/// An S-ring given by its Schur partition, with the structure constants
/// `T̄_i T̄_j = Σ_k λ_{ijk} T̄_k` reduced into the coefficient field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurRing {
    partition: SchurPartition,
    field: CoefficientField,
    /// Nonzero `(k, λ_{ijk})` for the pair `(i, j)` at index `i * d + j`.
    terms: Vec<Vec<(usize, u64)>>,
}

impl SchurRing {
    /// Verifies closure of the span of block sums and records the
    /// structure constants.
    pub fn new(partition: SchurPartition, field: CoefficientField) -> Result<Self> {
        let terms = structure_terms(&partition, field)?;
        Ok(SchurRing {
            partition,
            field,
            terms,
        })
    }

    pub fn from_blocks(group: Arc<Group>, field: CoefficientField, blocks: Vec<Vec<usize>>) -> Result<Self> {
        Self::new(SchurPartition::new(group, blocks)?, field)
    }

    pub fn trivial(group: Arc<Group>, field: CoefficientField) -> Self {
        Self::new(SchurPartition::trivial(group), field).expect("trivial S-ring")
    }

    pub fn full(group: Arc<Group>, field: CoefficientField) -> Self {
        Self::new(SchurPartition::discrete(group), field).expect("full group algebra")
    }

    /// The S-ring spanned by `basis`, which must be an S-ring.
    pub fn from_span(basis: &[AlgebraElement]) -> Result<Self> {
        let p = basic_sets_of_span(basis)?;
        let field = basis[0].field();
        Self::new(p, field)
    }

    pub fn group(&self) -> &Arc<Group> {
        self.partition.group()
    }

    pub fn field(&self) -> CoefficientField {
        self.field
    }

    pub fn partition(&self) -> &SchurPartition {
        &self.partition
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        self.partition.blocks()
    }

    pub fn dimension(&self) -> usize {
        self.partition.len()
    }

    pub fn product_terms(&self, i: usize, j: usize) -> &[(usize, u64)] {
        &self.terms[i * self.dimension() + j]
    }

    pub fn lambda(&self, i: usize, j: usize, k: usize) -> u64 {
        let t = self.product_terms(i, j);
        t.binary_search_by_key(&k, |&(kk, _)| kk)
            .map(|p| t[p].1)
            .unwrap_or(0)
    }

    /// Sparse `(i, j, k, λ_{ijk})` with `λ ≠ 0`.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, u64)> {
        let d = self.dimension();
        let mut out = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for &(k, l) in self.product_terms(i, j) {
                    out.push((i, j, k, l));
                }
            }
        }
        out
    }

    /// Dense `d × d × d` tensor.
    pub fn tensor(&self) -> Vec<u64> {
        let d = self.dimension();
        let mut t = vec![0u64; d * d * d];
        for (i, j, k, l) in self.structure_constants() {
            t[(i * d + j) * d + k] = l;
        }
        t
    }

    pub fn block_sum(&self, i: usize) -> AlgebraElement {
        AlgebraElement::simple(self.group().clone(), self.field, self.partition.block(i))
    }

    pub fn block_sums(&self) -> Vec<AlgebraElement> {
        (0..self.dimension()).map(|i| self.block_sum(i)).collect()
    }

    /// Membership of `x`: its coefficients are constant on every block.
    pub fn contains(&self, x: &AlgebraElement) -> bool {
        x.field() == self.field
            && self
                .blocks()
                .iter()
                .all(|b| b.iter().all(|&g| x.coeff(g) == x.coeff(b[0])))
    }

    /// Every block is a union of `Aut(G)`-orbits.
    pub fn is_rational(&self) -> Result<bool> {
        let auts = automorphism_generators(self.group())?;
        Ok(auts.iter().all(|a| self.preserves_blocks(a.perm())))
    }

    /// Every block is a union of conjugacy classes.
    pub fn is_central(&self) -> bool {
        let g = self.group();
        if g.is_abelian() {
            return true;
        }
        g.generators().iter().all(|&s| {
            let si = g.inv(s);
            (0..g.order()).all(|x| {
                let c = g.mul(g.mul(s, x), si);
                self.partition.block_of(c) == self.partition.block_of(x)
            })
        })
    }

    fn preserves_blocks(&self, p: &Perm) -> bool {
        (0..self.group().order()).all(|x| self.partition.block_of(p.apply(x)) == self.partition.block_of(x))
    }

    /// The subgroups that are unions of blocks.
    pub fn s_subgroups(&self) -> Result<Vec<Subgroup>> {
        let d = self.dimension();
        let g = self.group();
        let mut out = Vec::new();
        if d <= 17 {
            for mask in 0u32..(1u32 << (d - 1)) {
                let mut set: Vec<usize> = self.partition.block(0).to_vec();
                for b in 1..d {
                    if mask >> (b - 1) & 1 == 1 {
                        set.extend_from_slice(self.partition.block(b));
                    }
                }
                if is_closed(g, &set) {
                    set.sort_unstable();
                    out.push(Subgroup::from_elements(g.clone(), set)?);
                }
            }
        } else {
            for h in all_subgroups(g, SUBGROUP_CAP)? {
                if self.partition.is_union_of_blocks(h.elements()) {
                    out.push(h);
                }
            }
        }
        out.sort_by(|a, b| (a.order(), a.elements()).cmp(&(b.order(), b.elements())));
        Ok(out)
    }

    /// Index of the block `T_i^{(m)}` for each `i`, or `None` if some
    /// `T_i^{(m)}` is not a block.
    pub fn power_block_map(&self, m: i64) -> Option<Vec<usize>> {
        let g = self.group();
        self.blocks()
            .iter()
            .map(|b| {
                let mut img: Vec<usize> = b.iter().map(|&x| g.pow(x, m)).collect();
                img.sort_unstable();
                img.dedup();
                let j = self.partition.block_of(img[0]);
                (img == self.partition.block(j)).then_some(j)
            })
            .collect()
    }

    /// Only `1` and `G` are S-subgroups.
    pub fn is_primitive(&self) -> Result<bool> {
        Ok(self.s_subgroups()?.len() <= 2)
    }
}

fn is_closed(g: &Group, set: &[usize]) -> bool {
    let mut mask = vec![false; g.order()];
    for &x in set {
        mask[x] = true;
    }
    set.iter().all(|&x| set.iter().all(|&y| mask[g.mul(x, y)]))
}

/// Orbits of the block-preserving part of the automorphism generators; the
/// coefficient of `z` in `T̄_i T̄_j` is constant on each of them.
fn symmetry_orbits(p: &SchurPartition) -> Vec<Vec<usize>> {
    let g = p.group();
    let n = g.order();
    let gens: Vec<Perm> = match g.as_product() {
        Some(_) => automorphism_generators(g)
            .unwrap_or_default()
            .into_iter()
            .map(|a| a.perm().clone())
            .filter(|a| (0..n).all(|x| p.block_of(a.apply(x)) == p.block_of(x)))
            .collect(),
        None => Vec::new(),
    };
    orbits_of_perms(n, &gens)
}

fn structure_terms(p: &SchurPartition, field: CoefficientField) -> Result<Vec<Vec<(usize, u64)>>> {
    let g = p.group();
    let d = p.len();
    let mut reps: Vec<Vec<usize>> = vec![Vec::new(); d];
    for o in symmetry_orbits(p) {
        reps[p.block_of(o[0])].push(o[0]);
    }
    let rows: Vec<Vec<Vec<(usize, u64)>>> = (0..d)
        .into_par_iter()
        .map(|i| {
            // by_k[k][j] = coefficient of a representative of T_k in T̄_i T̄_j
            let mut by_k: Vec<Vec<u64>> = Vec::with_capacity(d);
            for (k, rk) in reps.iter().enumerate() {
                let mut first: Option<Vec<u64>> = None;
                for &z in rk {
                    let mut c = vec![0u64; d];
                    for &x in p.block(i) {
                        c[p.block_of(g.div_left(x, z))] += 1;
                    }
                    for v in c.iter_mut() {
                        *v = field.reduce_count(*v);
                    }
                    match &first {
                        None => first = Some(c),
                        Some(f) => {
                            if let Some(j) = (0..d).find(|&j| f[j] != c[j]) {
                                return Err(Error::NotSchur(format!(
                                    "coefficients of T{i}*T{j} are not constant on block {k}"
                                )));
                            }
                        }
                    }
                }
                by_k.push(first.expect("every block has a representative"));
            }
            Ok((0..d)
                .map(|j| {
                    (0..d)
                        .filter(|&k| by_k[k][j] != 0)
                        .map(|k| (k, by_k[k][j]))
                        .collect()
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}

/// Whether the block sums of `p` span an S-ring over `field`.
pub fn is_sring(p: &SchurPartition, field: CoefficientField) -> bool {
    structure_terms(p, field).is_ok()
}

/// First failed closure condition of a spanning set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ClosureWitness {
    Product { i: usize, j: usize },
    Hadamard { i: usize, j: usize },
    Inverse { i: usize },
    MissingIdentity,
    MissingGroupSum,
}

impl fmt::Display for ClosureWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosureWitness::Product { i, j } => write!(f, "product of vectors {i} and {j} leaves the span"),
            ClosureWitness::Hadamard { i, j } => write!(f, "Hadamard product of vectors {i} and {j} leaves the span"),
            ClosureWitness::Inverse { i } => write!(f, "inverse image of vector {i} leaves the span"),
            ClosureWitness::MissingIdentity => write!(f, "the identity is not in the span"),
            ClosureWitness::MissingGroupSum => write!(f, "the group sum is not in the span"),
        }
    }
}

fn span_of(basis: &[AlgebraElement]) -> Result<Span> {
    let first = basis
        .first()
        .ok_or_else(|| Error::Precondition("empty spanning set".into()))?;
    let n = first.group().order();
    let mut s = Span::new(first.field(), n);
    for b in basis {
        if b.field() != first.field() {
            return Err(Error::FieldMismatch(format!("{} vs {}", b.field(), first.field())));
        }
        if **b.group() != **first.group() {
            return Err(Error::GroupMismatch);
        }
        s.insert(&b.to_dense());
    }
    Ok(s)
}

/// Checks closure of `span(basis)` under `∘`, `^{(-1)}` and multiplication,
/// and when `unital` also membership of `1` and `Ḡ`.
pub fn check_span_closure(basis: &[AlgebraElement], unital: bool) -> Result<Option<ClosureWitness>> {
    let s = span_of(basis)?;
    let g = basis[0].group().clone();
    let f = basis[0].field();
    if unital {
        if !s.contains(&AlgebraElement::one(g.clone(), f).to_dense()) {
            return Ok(Some(ClosureWitness::MissingIdentity));
        }
        if !s.contains(&AlgebraElement::group_sum(g.clone(), f).to_dense()) {
            return Ok(Some(ClosureWitness::MissingGroupSum));
        }
    }
    for (i, x) in basis.iter().enumerate() {
        if !s.contains(&x.inverse_map().to_dense()) {
            return Ok(Some(ClosureWitness::Inverse { i }));
        }
    }
    let abelian = g.is_abelian();
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            if j < i && abelian {
                continue;
            }
            if j >= i && !s.contains(&x.hadamard(y)?.to_dense()) {
                return Ok(Some(ClosureWitness::Hadamard { i, j }));
            }
            if !s.contains(&x.mul(y)?.to_dense()) {
                return Ok(Some(ClosureWitness::Product { i, j }));
            }
        }
    }
    Ok(None)
}

/// Closed under `∘`, `^{(-1)}` and multiplication.
pub fn is_psring(basis: &[AlgebraElement]) -> Result<bool> {
    Ok(check_span_closure(basis, false)?.is_none())
}

/// A PS-ring containing `1` and `Ḡ`.
pub fn is_sring_span(basis: &[AlgebraElement]) -> Result<bool> {
    Ok(check_span_closure(basis, true)?.is_none())
}

/// The partition into classes on which every spanning vector is constant;
/// errors unless the block sums span exactly `span(basis)`.
pub fn basic_sets_of_span(basis: &[AlgebraElement]) -> Result<SchurPartition> {
    let s = span_of(basis)?;
    let g = basis[0].group().clone();
    let f = basis[0].field();
    let mut keyed: Vec<(Vec<num_rational::BigRational>, usize)> = (0..g.order())
        .map(|x| (basis.iter().map(|b| b.coeff(x)).collect(), x))
        .collect();
    keyed.sort();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (i, (key, x)) in keyed.iter().enumerate() {
        if i > 0 && keyed[i - 1].0 == *key {
            blocks.last_mut().expect("open block").push(*x);
        } else {
            blocks.push(vec![*x]);
        }
    }
    let p = SchurPartition::new(g.clone(), blocks).map_err(|e| Error::NotSchur(e.to_string()))?;
    if p.len() != s.dim() {
        return Err(Error::NotSchur(format!(
            "span has dimension {} but {} basic sets",
            s.dim(),
            p.len()
        )));
    }
    for b in p.blocks() {
        if !s.contains(&AlgebraElement::simple(g.clone(), f, b).to_dense()) {
            return Err(Error::NotSchur("a basic set is not in the span".into()));
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn z(n: u64) -> Arc<Group> {
        Arc::new(Group::cyclic(n).unwrap())
    }

    const Q: CoefficientField = CoefficientField::Rationals;

    #[test]
    fn trivial_z5_constants() {
        let s = SchurRing::trivial(z(5), Q);
        assert_eq!(s.product_terms(1, 1), &[(0, 4), (1, 3)]);
        for j in 0..2 {
            assert_eq!(s.product_terms(0, j), &[(j, 1)]);
        }
    }

    #[test]
    fn integral_identity_holds() {
        let g = z(8);
        let s = SchurRing::from_blocks(g, Q, vec![vec![0], vec![4], vec![1, 7], vec![3, 5], vec![2, 6]]).unwrap();
        let sz = s.partition().sizes();
        for i in 0..s.dimension() {
            for j in 0..s.dimension() {
                let total: u64 = s.product_terms(i, j).iter().map(|&(k, l)| l * sz[k] as u64).sum();
                assert_eq!(total, (sz[i] * sz[j]) as u64);
            }
        }
    }

    #[test]
    fn rejects_non_schur() {
        let g = z(7);
        assert!(SchurRing::from_blocks(g.clone(), Q, vec![vec![0], vec![1, 6], vec![2, 3, 4, 5]]).is_err());
        assert!(SchurRing::from_blocks(g, Q, vec![vec![0], vec![1, 2, 4], vec![3, 5, 6]]).is_ok());
    }

    #[test]
    fn nonzero_characteristic_partition() {
        let g = z(12);
        let blocks = vec![vec![0], vec![4, 8], vec![1, 5, 9], vec![2, 6, 10], vec![3, 7, 11]];
        let s = SchurRing::from_blocks(g, CoefficientField::PrimeField(3), blocks).unwrap();
        for i in 2..5 {
            for j in 2..5 {
                assert!(s.product_terms(i, j).is_empty());
            }
            assert_eq!(s.product_terms(1, i), &[(i, 2)]);
        }
    }

    #[test]
    fn flags() {
        let g = z(5);
        assert!(SchurRing::trivial(g.clone(), Q).is_rational().unwrap());
        assert!(!SchurRing::full(g.clone(), Q).is_rational().unwrap());
        assert!(SchurRing::full(g, Q).is_central());
        let s3 = Arc::new(Group::Table(crate::groups::CayleyGroup::symmetric(3).unwrap()));
        assert!(!SchurRing::full(s3.clone(), Q).is_central());
        assert!(SchurRing::trivial(s3, Q).is_central());
    }

    #[test]
    fn s_subgroups_of_full_algebra() {
        let g = z(12);
        assert_eq!(SchurRing::full(g.clone(), Q).s_subgroups().unwrap().len(), 6);
        assert!(SchurRing::trivial(g, Q).is_primitive().unwrap());
    }

    #[test]
    fn span_checks() {
        let g = z(7);
        let one = AlgebraElement::one(g.clone(), Q);
        let all = AlgebraElement::group_sum(g.clone(), Q);
        assert!(is_sring_span(&[one.clone(), all.clone()]).unwrap());
        let x = AlgebraElement::simple(g.clone(), Q, &[1, 2]);
        let w = check_span_closure(&[one.clone(), all.clone(), x], true).unwrap();
        assert!(w.is_some());
        let p = basic_sets_of_span(&[one, all]).unwrap();
        assert_eq!(p.sizes(), vec![1, 6]);
    }

    #[test]
    fn basic_sets_of_full_basis() {
        let g = z(4);
        let basis: Vec<AlgebraElement> = (0..4).map(|x| AlgebraElement::basis(g.clone(), Q, x)).collect();
        assert_eq!(basic_sets_of_span(&basis).unwrap().len(), 4);
        let h = AlgebraElement::simple(g.clone(), Q, &[0, 2]);
        let mixed = h.scale(&BigRational::from_integer(2.into()));
        assert!(basic_sets_of_span(&[mixed]).is_err());
    }
}
