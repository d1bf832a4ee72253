use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use super::Group;
use crate::error::{cap_check, Error, Result};

/// A subgroup stored as the sorted list of its elements.
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<Group>,
    elements: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && *self.parent == *other.parent
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {}, {:?})", self.order(), self.elements)
    }
}

/// Closure of `start` under right multiplication by `gens`, as a membership mask.
fn close(parent: &Group, start: &[usize], gens: &[usize]) -> Vec<bool> {
    let n = parent.order();
    let mut seen = vec![false; n];
    let mut stack = Vec::new();
    seen[parent.identity()] = true;
    stack.push(parent.identity());
    for &s in start {
        if !seen[s] {
            seen[s] = true;
            stack.push(s);
        }
    }
    while let Some(x) = stack.pop() {
        for &g in gens {
            let y = parent.mul(x, g);
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen
}

fn mask_to_vec(mask: &[bool]) -> Vec<usize> {
    mask.iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i))
        .collect()
}

impl Subgroup {
    pub fn generated(parent: Arc<Group>, gens: &[usize]) -> Result<Self> {
        if let Some(&g) = gens.iter().find(|&&g| g >= parent.order()) {
            return Err(Error::NotSubgroup(format!("element {g} out of range")));
        }
        let elements = mask_to_vec(&close(&parent, &[], gens));
        Ok(Subgroup { parent, elements })
    }

    pub fn trivial(parent: Arc<Group>) -> Self {
        let e = parent.identity();
        Subgroup {
            parent,
            elements: vec![e],
        }
    }

    pub fn full(parent: Arc<Group>) -> Self {
        let elements = (0..parent.order()).collect();
        Subgroup { parent, elements }
    }

    /// Validates that `elements` form a subgroup.
    pub fn from_elements(parent: Arc<Group>, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if elements.iter().any(|&x| x >= parent.order()) {
            return Err(Error::NotSubgroup("element out of range".into()));
        }
        if elements.binary_search(&parent.identity()).is_err() {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        let candidate = Subgroup {
            parent: parent.clone(),
            elements,
        };
        let gens = candidate.generators();
        let closed = Subgroup::generated(parent, &gens)?;
        if closed.elements != candidate.elements {
            return Err(Error::NotSubgroup(format!(
                "set of size {} generates a subgroup of order {}",
                candidate.order(),
                closed.order()
            )));
        }
        Ok(candidate)
    }

    pub fn parent(&self) -> &Arc<Group> {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_full(&self) -> bool {
        self.elements.len() == self.parent.order()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// Generators picked greedily in increasing element order.
    pub fn generators(&self) -> Vec<usize> {
        let n = self.parent.order();
        let mut gens = Vec::new();
        let mut span = vec![false; n];
        span[self.parent.identity()] = true;
        for &x in &self.elements {
            if span[x] {
                continue;
            }
            gens.push(x);
            span = close(&self.parent, &[], &gens);
            if span.iter().filter(|&&b| b).count() >= self.elements.len() {
                break;
            }
        }
        gens
    }

    pub fn is_normal(&self) -> bool {
        let g = &self.parent;
        if g.is_abelian() {
            return true;
        }
        let hg = self.generators();
        g.generators().iter().all(|&c| {
            hg.iter()
                .all(|&h| self.contains(g.mul(g.mul(c, h), g.inv(c))))
        })
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let elements = self
            .elements
            .iter()
            .copied()
            .filter(|&x| other.contains(x))
            .collect();
        Subgroup {
            parent: self.parent.clone(),
            elements,
        }
    }

    /// The subgroup generated by both.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let mut gens = self.generators();
        gens.extend(other.generators());
        let elements = mask_to_vec(&close(&self.parent, &[], &gens));
        Subgroup {
            parent: self.parent.clone(),
            elements,
        }
    }

    /// The product set `HK`, which is a subgroup when either factor is normal.
    pub fn product_set(&self, other: &Subgroup) -> Vec<usize> {
        let mut mask = vec![false; self.parent.order()];
        for &h in &self.elements {
            for &k in &other.elements {
                mask[self.parent.mul(h, k)] = true;
            }
        }
        mask_to_vec(&mask)
    }

    /// Image under an element map, e.g. an automorphism.
    pub fn map(&self, f: impl Fn(usize) -> usize) -> Subgroup {
        let mut elements: Vec<usize> = self.elements.iter().map(|&x| f(x)).collect();
        elements.sort_unstable();
        elements.dedup();
        Subgroup {
            parent: self.parent.clone(),
            elements,
        }
    }
}

/// Every subgroup of `g`, sorted by order and then elementwise.
///
/// Built by cyclic extension: start from the cyclic subgroups and repeatedly
/// join a known subgroup with a cyclic one until nothing new appears.
pub fn all_subgroups(g: &Arc<Group>, cap: usize) -> Result<Vec<Subgroup>> {
    cap_check("group order for subgroup enumeration", g.order(), cap)?;
    let n = g.order();
    let mut cyclic_seen: HashSet<Vec<usize>> = HashSet::new();
    let mut cyclic: Vec<(usize, Vec<bool>)> = Vec::new();
    for x in 0..n {
        let mask = close(g, &[], &[x]);
        let v = mask_to_vec(&mask);
        if cyclic_seen.insert(v) {
            cyclic.push((x, mask));
        }
    }
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut all: Vec<Vec<usize>> = Vec::new();
    let mut all_gens: Vec<Vec<usize>> = Vec::new();
    for (x, mask) in &cyclic {
        let v = mask_to_vec(mask);
        if seen.insert(v.clone()) {
            all.push(v);
            all_gens.push(vec![*x]);
        }
    }
    let mut cursor = 0;
    while cursor < all.len() {
        let h = all[cursor].clone();
        let hgens = all_gens[cursor].clone();
        cursor += 1;
        let mut hmask = vec![false; n];
        for &x in &h {
            hmask[x] = true;
        }
        for (c, _) in &cyclic {
            if hmask[*c] {
                continue;
            }
            let mut gens = hgens.clone();
            gens.push(*c);
            let v = mask_to_vec(&close(g, &h, &gens));
            if seen.insert(v.clone()) {
                cap_check("number of subgroups", all.len() + 1, crate::limits::SUBGROUP_CAP * 16)?;
                all.push(v);
                all_gens.push(gens);
            }
        }
    }
    all.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    Ok(all
        .into_iter()
        .map(|elements| Subgroup {
            parent: g.clone(),
            elements,
        })
        .collect())
}
