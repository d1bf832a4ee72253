use std::sync::Arc;

use num_rational::BigRational;

use crate::algebra::{
    check_span_closure, AlgebraElement, CoefficientField, SchurPartition, SchurRing,
};
use crate::error::{Error, Result};
use crate::groups::{all_subgroups, automorphism_generators, is_characteristic, orbits, Group, Subgroup};
use crate::lattice::FiniteLattice;
use crate::limits::SUBGROUP_CAP;

/// Normal subgroups closed under `H ∩ K` and `HK`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupLattice {
    group: Arc<Group>,
    members: Vec<Subgroup>,
}

impl SubgroupLattice {
    pub fn new(group: Arc<Group>, mut members: Vec<Subgroup>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::Precondition("empty subgroup lattice".into()));
        }
        for h in &members {
            if **h.parent() != *group {
                return Err(Error::GroupMismatch);
            }
            if !h.is_normal() {
                return Err(Error::Precondition(format!("{h:?} is not normal")));
            }
        }
        members.sort_by(|a, b| (a.order(), a.elements()).cmp(&(b.order(), b.elements())));
        members.dedup();
        for a in &members {
            for b in &members {
                if !members.contains(&a.intersection(b)) {
                    return Err(Error::Precondition("not closed under intersection".into()));
                }
                if !members.contains(&a.join(b)) {
                    return Err(Error::Precondition("not closed under products".into()));
                }
            }
        }
        Ok(SubgroupLattice { group, members })
    }

    /// All normal subgroups.
    pub fn all_normal(group: &Arc<Group>) -> Result<Self> {
        let members = all_subgroups(group, SUBGROUP_CAP)?
            .into_iter()
            .filter(Subgroup::is_normal)
            .collect();
        Self::new(group.clone(), members)
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn members(&self) -> &[Subgroup] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn has_trivial_and_full(&self) -> bool {
        self.members.iter().any(Subgroup::is_trivial) && self.members.iter().any(Subgroup::is_full)
    }

    /// The inclusion order as an abstract lattice.
    pub fn to_lattice(&self) -> Result<FiniteLattice> {
        let labels = self
            .members
            .iter()
            .enumerate()
            .map(|(i, h)| format!("H{}[{}]", i + 1, h.order()))
            .collect();
        let find = |h: Subgroup| self.members.iter().position(|m| *m == h).expect("closed");
        FiniteLattice::from_fns(
            labels,
            |a, b| find(self.members[a].intersection(&self.members[b])),
            |a, b| find(self.members[a].join(&self.members[b])),
        )
    }
}

/// `F L̄`: an S-ring when `1, G ∈ L`, otherwise only a PS-ring.
#[derive(Clone, Debug)]
pub struct LatticeSRing {
    pub lattice: SubgroupLattice,
    pub field: CoefficientField,
    pub basis: Vec<AlgebraElement>,
    pub sring: Option<SchurRing>,
}

impl LatticeSRing {
    /// Dimension of the span of the `H̄`, which is the number of basic sets.
    pub fn dimension(&self) -> usize {
        membership_partition(&self.lattice).len()
    }

    pub fn is_sring(&self) -> bool {
        self.sring.is_some()
    }
}

/// Classes of elements by the set of members containing them.
fn membership_partition(l: &SubgroupLattice) -> Vec<Vec<usize>> {
    let n = l.group.order();
    let mut keyed: Vec<(Vec<bool>, usize)> = (0..n)
        .map(|x| (l.members.iter().map(|h| h.contains(x)).collect(), x))
        .collect();
    keyed.sort();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (i, (k, x)) in keyed.iter().enumerate() {
        if i > 0 && keyed[i - 1].0 == *k {
            blocks.last_mut().expect("open block").push(*x);
        } else {
            blocks.push(vec![*x]);
        }
    }
    blocks
}

pub fn lattice_sring(l: &SubgroupLattice, field: CoefficientField) -> Result<LatticeSRing> {
    let g = l.group.clone();
    let basis: Vec<AlgebraElement> = l
        .members
        .iter()
        .map(|h| AlgebraElement::simple(g.clone(), field, h.elements()))
        .collect();
    let sring = if l.has_trivial_and_full() {
        // A member covered by smaller members contributes no basic set of
        // its own, so the dimension may be less than |L|.
        let blocks = membership_partition(l);
        Some(SchurRing::new(SchurPartition::new(g, blocks)?, field)?)
    } else {
        None
    };
    Ok(LatticeSRing {
        lattice: l.clone(),
        field,
        basis,
        sring,
    })
}

/// Checks, by direct computation in the group algebra:
/// `H̄^{(-1)} = H̄`, `H̄∘K̄ = (H∩K)‾`, `H̄K̄ = |H∩K|(HK)‾`, closure of the span,
/// the S-ring criterion `1, G ∈ L`, centrality, and rationality against
/// characteristic members.
pub fn verify_lattice_properties(s: &LatticeSRing) -> Result<()> {
    let l = &s.lattice;
    let g = l.group.clone();
    let f = s.field;
    let fail = |m: String| Err(Error::Verification(m));
    let simple = |h: &Subgroup| AlgebraElement::simple(g.clone(), f, h.elements());
    for (i, h) in l.members.iter().enumerate() {
        let x = &s.basis[i];
        if x.inverse_map() != *x {
            return fail(format!("H{i} is not inverse-closed"));
        }
        for s_gen in g.generators() {
            let e = AlgebraElement::basis(g.clone(), f, s_gen);
            if e.mul(x)? != x.mul(&e)? {
                return fail(format!("H{i} is not central"));
            }
        }
        for (j, k) in l.members.iter().enumerate() {
            let y = &s.basis[j];
            let meet = h.intersection(k);
            if x.hadamard(y)? != simple(&meet) {
                return fail(format!("H{i} o H{j} differs from the intersection"));
            }
            let c = BigRational::from_integer(meet.order().into());
            if x.mul(y)? != simple(&h.join(k)).scale(&c) {
                return fail(format!("H{i} H{j} differs from |H cap K| HK"));
            }
        }
    }
    if check_span_closure(&s.basis, false)?.is_some() {
        return fail("span is not a PS-ring".into());
    }
    let unital = check_span_closure(&s.basis, true)?.is_none();
    if unital != l.has_trivial_and_full() || unital != s.sring.is_some() {
        return fail("S-ring criterion 1, G in L violated".into());
    }
    let auts = automorphism_generators(&g)?;
    let classes = orbits(&g, &auts);
    let blocks = membership_partition(l);
    let mut block_of = vec![0; g.order()];
    for (b, blk) in blocks.iter().enumerate() {
        for &x in blk {
            block_of[x] = b;
        }
    }
    let rational = classes
        .iter()
        .all(|c| c.iter().all(|&x| block_of[x] == block_of[c[0]]));
    let mut characteristic = true;
    for h in &l.members {
        characteristic &= is_characteristic(h)?;
    }
    if rational != characteristic {
        return fail("rationality disagrees with characteristic members".into());
    }
    if let Some(sr) = &s.sring {
        if sr.is_rational()? != rational {
            return fail("block-level rationality disagrees".into());
        }
    }
    Ok(())
}

/// Every subset of `subgroups` closed under `∩` and products.
pub fn sublattices(group: &Arc<Group>, subgroups: &[Subgroup]) -> Result<Vec<SubgroupLattice>> {
    let n = subgroups.len();
    if n > 20 {
        return Err(Error::CapExceeded {
            what: "subgroups for sublattice enumeration",
            size: n,
            cap: 20,
        });
    }
    let index = |h: &Subgroup| subgroups.iter().position(|m| m == h);
    let mut meet = vec![vec![None; n]; n];
    let mut join = vec![vec![None; n]; n];
    for a in 0..n {
        for b in 0..n {
            meet[a][b] = index(&subgroups[a].intersection(&subgroups[b]));
            join[a][b] = index(&subgroups[a].join(&subgroups[b]));
        }
    }
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << n) {
        let inside = |i: Option<usize>| i.is_some_and(|i| mask >> i & 1 == 1);
        let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let closed = members
            .iter()
            .all(|&a| members.iter().all(|&b| inside(meet[a][b]) && inside(join[a][b])));
        if closed {
            let ms = members.iter().map(|&i| subgroups[i].clone()).collect();
            out.push(SubgroupLattice::new(group.clone(), ms)?);
        }
    }
    Ok(out)
}
