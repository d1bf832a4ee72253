//! Permutations and permutation groups given by generators.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{cap_check, Error, Result};
use crate::groups::CayleyGroup;

/// A bijection of `{0, .., n-1}` stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidAutomorphism(format!(
                    "image list {images:?} is not a bijection"
                )));
            }
            seen[x] = true;
        }
        Ok(Perm(images))
    }

    pub(crate) fn from_vec_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Perm::new(images.clone()).is_ok());
        Perm(images)
    }

    pub fn identity(degree: usize) -> Self {
        Perm((0..degree).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn order(&self) -> usize {
        let mut seen = vec![false; self.0.len()];
        let mut order = 1usize;
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x];
                len += 1;
            }
            order = num_integer::lcm(order, len);
        }
        order
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "()");
        }
        let mut seen = vec![false; self.0.len()];
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
                first = false;
                x = self.0[x];
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// A permutation group on `{0, .., degree-1}`.
///
/// The full element list is computed lazily by closure and cached; it is
/// only meant for the small groups that arise as automorphism groups of
/// lattices and S-rings.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: OnceLock<Vec<Perm>>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let elements = OnceLock::new();
        if let Some(e) = self.elements.get() {
            let _ = elements.set(e.clone());
        }
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            elements,
        }
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::InvalidAutomorphism(format!(
                    "generator of degree {} in a group of degree {degree}",
                    g.degree()
                )));
            }
        }
        let mut gens: Vec<Perm> = Vec::new();
        for g in generators {
            if !g.is_identity() && !gens.contains(&g) {
                gens.push(g);
            }
        }
        Ok(PermGroup {
            degree,
            generators: gens,
            elements: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            elements: OnceLock::new(),
        }
    }

    /// Builds the group from a complete, closed element list. Generators are
    /// picked greedily in lexicographic order.
    pub fn from_elements(degree: usize, mut elements: Vec<Perm>) -> Result<Self> {
        elements.sort();
        elements.dedup();
        if elements.is_empty() {
            elements.push(Perm::identity(degree));
        }
        let set: HashSet<&Perm> = elements.iter().collect();
        for a in &elements {
            if a.degree() != degree {
                return Err(Error::InvalidAutomorphism("mixed degrees".into()));
            }
            for b in &elements {
                if !set.contains(&a.compose(b)) {
                    return Err(Error::Verification(
                        "element list is not closed under composition".into(),
                    ));
                }
            }
        }
        let generators = greedy_generators(degree, &elements);
        let group = PermGroup {
            degree,
            generators,
            elements: OnceLock::new(),
        };
        let _ = group.elements.set(elements);
        Ok(group)
    }

    /// Like [`PermGroup::from_elements`] without the closure check, for
    /// element lists produced by an exhaustive search.
    pub(crate) fn from_elements_trusted(degree: usize, mut elements: Vec<Perm>) -> Self {
        elements.sort();
        elements.dedup();
        if elements.is_empty() {
            elements.push(Perm::identity(degree));
        }
        let generators = greedy_generators(degree, &elements);
        let group = PermGroup {
            degree,
            generators,
            elements: OnceLock::new(),
        };
        let _ = group.elements.set(elements);
        group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> &[Perm] {
        self.elements
            .get_or_init(|| closure(self.degree, &self.generators, usize::MAX).unwrap())
    }

    /// Like [`PermGroup::elements`] but refuses to enumerate more than `cap` elements.
    pub fn try_elements(&self, cap: usize) -> Result<&[Perm]> {
        if let Some(e) = self.elements.get() {
            cap_check("permutation group order", e.len(), cap)?;
            return Ok(e);
        }
        let e = closure(self.degree, &self.generators, cap)?;
        Ok(self.elements.get_or_init(|| e))
    }

    pub fn order(&self) -> usize {
        self.elements().len()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements().binary_search(p).is_ok()
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| {
            self.generators[i + 1..]
                .iter()
                .all(|b| a.compose(b) == b.compose(a))
        })
    }

    /// Orbits of the group on `{0, .., degree-1}`, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        crate::groups::orbits_of_perms(self.degree, &self.generators)
    }

    pub fn to_cayley(&self, cap: usize) -> Result<CayleyGroup> {
        let elements = self.try_elements(cap)?;
        let n = elements.len();
        let index: std::collections::HashMap<&Perm, usize> =
            elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut table = vec![0usize; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                // row-major product a·b acting as "first b then a"
                table[i * n + j] = index[&a.compose(b)];
            }
        }
        Ok(CayleyGroup::from_flat_table_unchecked(n, table))
    }
}

fn closure(degree: usize, generators: &[Perm], cap: usize) -> Result<Vec<Perm>> {
    let id = Perm::identity(degree);
    let mut seen: HashSet<Perm> = HashSet::new();
    seen.insert(id.clone());
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in generators {
            let y = g.compose(&x);
            if !seen.contains(&y) {
                cap_check("permutation group order", seen.len() + 1, cap)?;
                seen.insert(y.clone());
                frontier.push(y);
            }
        }
    }
    let mut v: Vec<Perm> = seen.into_iter().collect();
    v.sort();
    Ok(v)
}

fn greedy_generators(degree: usize, elements: &[Perm]) -> Vec<Perm> {
    let mut gens: Vec<Perm> = Vec::new();
    let mut span: HashSet<Perm> = HashSet::new();
    span.insert(Perm::identity(degree));
    for e in elements {
        if span.contains(e) {
            continue;
        }
        gens.push(e.clone());
        span = closure(degree, &gens, usize::MAX)
            .unwrap()
            .into_iter()
            .collect();
        if span.len() == elements.len() {
            break;
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Perm {
        Perm::new(v.to_vec()).unwrap()
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Perm::new(vec![0, 0, 1]).is_err());
        assert!(Perm::new(vec![0, 3]).is_err());
    }

    #[test]
    fn compose_and_inverse() {
        let a = p(&[1, 2, 0]);
        let b = p(&[1, 0, 2]);
        assert_eq!(a.compose(&b).images(), &[2, 1, 0]);
        assert!(a.compose(&a.inverse()).is_identity());
        assert_eq!(a.order(), 3);
        assert_eq!(b.order(), 2);
    }

    #[test]
    fn symmetric_group_closure() {
        let g = PermGroup::new(3, vec![p(&[1, 2, 0]), p(&[1, 0, 2])]).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        let again = PermGroup::from_elements(3, g.elements().to_vec()).unwrap();
        assert_eq!(again.order(), 6);
        assert!(again.generators().len() <= 2);
    }

    #[test]
    fn from_elements_rejects_non_closed() {
        assert!(PermGroup::from_elements(3, vec![Perm::identity(3), p(&[1, 2, 0])]).is_err());
    }

    #[test]
    fn try_elements_caps() {
        let g = PermGroup::new(4, vec![p(&[1, 2, 3, 0]), p(&[1, 0, 2, 3])]).unwrap();
        assert!(g.try_elements(10).is_err());
        assert_eq!(g.try_elements(24).unwrap().len(), 24);
    }
}
