use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use super::AlgebraElement;
use crate::error::{Error, Result};
use crate::groups::{CayleyGroup, Group, Subgroup};

/// `G/H` with the projection `g ↦ gH` on elements.
#[derive(Clone, Debug)]
pub struct Quotient {
    subgroup: Subgroup,
    group: Arc<Group>,
    coset: Vec<usize>,
}

impl Quotient {
    /// Cyclic `Z_n / H` is again `Z_m` with `x + H ↦ x mod m`; other
    /// quotients are built as Cayley tables on cosets ordered by least element.
    pub fn new(h: &Subgroup) -> Result<Self> {
        if !h.is_normal() {
            return Err(Error::Precondition("quotient by a non-normal subgroup".into()));
        }
        let parent = h.parent();
        let n = parent.order();
        let m = n / h.order();
        if let Some(prod) = parent.as_product() {
            if prod.rank() <= 1 {
                let coset = (0..n).map(|x| x % m).collect();
                return Ok(Quotient {
                    subgroup: h.clone(),
                    group: Arc::new(Group::cyclic(m as u64)?),
                    coset,
                });
            }
        }
        let mut coset = vec![usize::MAX; n];
        let mut reps = Vec::with_capacity(m);
        for x in 0..n {
            if coset[x] != usize::MAX {
                continue;
            }
            for &y in h.elements() {
                coset[parent.mul(x, y)] = reps.len();
            }
            reps.push(x);
        }
        let rows = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| coset[parent.mul(a, b)]).collect())
            .collect();
        Ok(Quotient {
            subgroup: h.clone(),
            group: Arc::new(Group::Table(CayleyGroup::new(rows)?)),
            coset,
        })
    }

    pub fn parent(&self) -> &Arc<Group> {
        self.subgroup.parent()
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn coset_of(&self, x: usize) -> usize {
        self.coset[x]
    }

    /// `π^{-1}(D)`.
    pub fn preimage(&self, set: &[usize]) -> Vec<usize> {
        let mut mark = vec![false; self.group.order()];
        for &c in set {
            mark[c] = true;
        }
        (0..self.coset.len()).filter(|&x| mark[self.coset[x]]).collect()
    }

    /// `π(D)` for a subset of `G`, without multiplicity.
    pub fn image(&self, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&x| self.coset[x]).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// `π: Σ a_g g ↦ Σ a_g gH`.
pub fn project_pi(x: &AlgebraElement, q: &Quotient) -> Result<AlgebraElement> {
    if **x.group() != **q.parent() {
        return Err(Error::GroupMismatch);
    }
    AlgebraElement::from_coeffs(
        q.group().clone(),
        x.field(),
        x.iter().map(|(g, c)| (q.coset_of(g), c.clone())),
    )
}

/// `π': gH ↦ g H̄`.
pub fn lift_pi_prime(y: &AlgebraElement, q: &Quotient) -> Result<AlgebraElement> {
    if **y.group() != **q.group() {
        return Err(Error::GroupMismatch);
    }
    let coeffs: Vec<(usize, BigRational)> = (0..q.parent().order())
        .map(|g| (g, y.coeff(q.coset_of(g))))
        .filter(|(_, c)| !c.is_zero())
        .collect();
    AlgebraElement::from_coeffs(q.parent().clone(), y.field(), coeffs)
}
