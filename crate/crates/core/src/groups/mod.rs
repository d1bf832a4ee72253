//! Finite groups: cyclic products, explicit multiplication tables, subgroups,
//! automorphisms and isomorphism testing.

mod automorphism;
mod cayley;
mod cyclic;
mod gf2m;
mod iso;
mod parse;
mod subgroup;

use std::collections::BTreeMap;

pub use automorphism::{
    aut_generators, automorphism_generators, automorphisms_brute_force, is_characteristic, noncharacteristic_subgroup,
    orbits, GroupAutomorphism,
};
pub use cayley::CayleyGroup;
pub use cyclic::{factorize, is_prime, prime_power, CyclicProductGroup};
pub use gf2m::{gf2m_additive_group, Gf2m};
pub use iso::{extend_hom, is_isomorphic, is_isomorphic_perm, search_isomorphisms};
pub use parse::{parse_group, parse_signature};
pub use subgroup::{all_subgroups, Subgroup};

use crate::error::Result;
use crate::perm::{Perm, PermGroup};

/// A finite group on the element indices `0..order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Group {
    Product(CyclicProductGroup),
    Table(CayleyGroup),
}

impl From<CyclicProductGroup> for Group {
    fn from(g: CyclicProductGroup) -> Self {
        Group::Product(g)
    }
}

impl From<CayleyGroup> for Group {
    fn from(g: CayleyGroup) -> Self {
        Group::Table(g)
    }
}

impl Group {
    pub fn cyclic(n: u64) -> Result<Self> {
        Ok(Group::Product(CyclicProductGroup::cyclic(n)?))
    }

    pub fn product(moduli: Vec<u64>) -> Result<Self> {
        Ok(Group::Product(CyclicProductGroup::new(moduli)?))
    }

    pub fn from_perm_group(g: &PermGroup, cap: usize) -> Result<Self> {
        Ok(Group::Table(g.to_cayley(cap)?))
    }

    pub fn order(&self) -> usize {
        match self {
            Group::Product(g) => g.order(),
            Group::Table(g) => g.order(),
        }
    }

    pub fn identity(&self) -> usize {
        match self {
            Group::Product(_) => 0,
            Group::Table(g) => g.identity(),
        }
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match self {
            Group::Product(g) => g.add(a, b),
            Group::Table(g) => g.mul(a, b),
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        match self {
            Group::Product(g) => g.neg(a),
            Group::Table(g) => g.inv(a),
        }
    }

    /// `a^{-1} b`.
    #[inline]
    pub fn div_left(&self, a: usize, b: usize) -> usize {
        match self {
            Group::Product(g) => g.sub(b, a),
            Group::Table(g) => g.mul(g.inv(a), b),
        }
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        match self {
            Group::Product(g) => g.scale(a, k),
            Group::Table(g) => {
                let n = self.element_order(a) as i64;
                let mut e = k.rem_euclid(n);
                let mut base = a;
                let mut acc = g.identity();
                while e > 0 {
                    if e & 1 == 1 {
                        acc = g.mul(acc, base);
                    }
                    base = g.mul(base, base);
                    e >>= 1;
                }
                acc
            }
        }
    }

    pub fn element_order(&self, a: usize) -> usize {
        match self {
            Group::Product(g) => g.element_order(a),
            Group::Table(g) => {
                let mut x = a;
                let mut k = 1;
                while x != g.identity() {
                    x = g.mul(x, a);
                    k += 1;
                }
                k
            }
        }
    }

    pub fn is_abelian(&self) -> bool {
        match self {
            Group::Product(_) => true,
            Group::Table(g) => {
                let gens = g.generators();
                gens.iter()
                    .all(|&a| gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
            }
        }
    }

    pub fn is_cyclic(&self) -> bool {
        match self {
            Group::Product(g) => {
                let l = g
                    .moduli()
                    .iter()
                    .fold(1u64, |acc, &m| num_integer::lcm(acc, m));
                l as usize == g.order()
            }
            Group::Table(_) => (0..self.order()).any(|a| self.element_order(a) == self.order()),
        }
    }

    /// Generators: the standard basis for products, a smallest generating set for tables.
    pub fn generators(&self) -> Vec<usize> {
        match self {
            Group::Product(g) => (0..g.rank())
                .filter(|&i| g.moduli()[i] > 1)
                .map(|i| g.generator(i))
                .collect(),
            Group::Table(g) => g.generators().to_vec(),
        }
    }

    pub fn as_product(&self) -> Option<&CyclicProductGroup> {
        match self {
            Group::Product(g) => Some(g),
            Group::Table(_) => None,
        }
    }

    pub fn label(&self, a: usize) -> String {
        match self {
            Group::Product(g) => g.label(a),
            Group::Table(_) => a.to_string(),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Group::Product(g) => {
                if g.rank() == 0 {
                    "trivial".to_string()
                } else {
                    g.moduli()
                        .iter()
                        .map(|m| format!("Z{m}"))
                        .collect::<Vec<_>>()
                        .join("x")
                }
            }
            Group::Table(g) => format!("table of order {}", g.order()),
        }
    }

    /// Histogram of element orders, a cheap isomorphism invariant.
    pub fn order_profile(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for a in 0..self.order() {
            *h.entry(self.element_order(a)).or_insert(0) += 1;
        }
        h
    }

    pub fn to_cayley(&self) -> Result<CayleyGroup> {
        match self {
            Group::Table(g) => Ok(g.clone()),
            Group::Product(g) => {
                crate::error::cap_check("Cayley table order", g.order(), crate::limits::MAX_CAYLEY_ORDER)?;
                let n = g.order();
                let table = (0..n * n).map(|k| g.add(k / n, k % n)).collect();
                Ok(CayleyGroup::from_flat_table_unchecked(n, table))
            }
        }
    }

    /// The right-regular permutation `x ↦ x·g`.
    pub fn right_regular(&self, g: usize) -> Perm {
        Perm::from_vec_unchecked((0..self.order()).map(|x| self.mul(x, g)).collect())
    }
}

/// Orbits of a set of permutations on `{0, .., degree-1}`, normalised.
pub fn orbits_of_perms(degree: usize, gens: &[Perm]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..degree).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for g in gens {
        for x in 0..degree {
            let a = find(&mut parent, x);
            let b = find(&mut parent, g.apply(x));
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo;
            }
        }
    }
    let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..degree {
        let r = find(&mut parent, x);
        blocks.entry(r).or_default().push(x);
    }
    normalize_blocks(blocks.into_values().collect())
}

/// Sorts each block and orders blocks by `(size, least element)`.
pub fn normalize_blocks(mut blocks: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for b in &mut blocks {
        b.sort_unstable();
    }
    blocks.retain(|b| !b.is_empty());
    blocks.sort_by(|a, b| (a.len(), a[0]).cmp(&(b.len(), b[0])));
    blocks
}

/// Budget (number of closure computations) for the exact minimum-size search.
const GENSET_BUDGET: usize = 20_000;

/// A smallest generating set; lexicographically least among the minimum-size
/// sets while the search budget lasts, otherwise greedy.
pub(crate) fn minimal_generating_set(
    n: usize,
    identity: usize,
    mul: impl Fn(usize, usize) -> usize,
) -> Vec<usize> {
    if n == 1 {
        return Vec::new();
    }
    let span_size = |gens: &[usize]| -> usize {
        let mut seen = vec![false; n];
        seen[identity] = true;
        let mut stack = vec![identity];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count
    };
    let greedy = {
        let mut gens: Vec<usize> = Vec::new();
        let mut seen = vec![false; n];
        seen[identity] = true;
        for e in 0..n {
            if seen[e] {
                continue;
            }
            gens.push(e);
            let mut s = vec![false; n];
            s[identity] = true;
            let mut stack = vec![identity];
            while let Some(x) = stack.pop() {
                for &g in &gens {
                    let y = mul(x, g);
                    if !s[y] {
                        s[y] = true;
                        stack.push(y);
                    }
                }
            }
            seen = s;
            if seen.iter().all(|&b| b) {
                break;
            }
        }
        gens
    };
    let candidates: Vec<usize> = (0..n).filter(|&x| x != identity).collect();
    let mut budget = GENSET_BUDGET;
    for k in 1..greedy.len() {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            if budget == 0 {
                return greedy;
            }
            budget -= 1;
            let gens: Vec<usize> = idx.iter().map(|&i| candidates[i]).collect();
            if span_size(&gens) == n {
                return gens;
            }
            if !next_combination(&mut idx, candidates.len()) {
                break;
            }
        }
    }
    greedy
}

/// Advances `idx` to the next `k`-combination of `0..m` in lex order.
pub(crate) fn next_combination(idx: &mut [usize], m: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < m - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
