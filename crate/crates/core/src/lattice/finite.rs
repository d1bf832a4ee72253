use std::collections::{BTreeSet, HashMap};
use std::sync::OnceLock;

use super::FinitePoset;
use crate::error::{cap_check, Error, Result};
use crate::limits::{BOOLEAN_LATTICE_MAX_RANK, DOWNSET_CAP, LATTICE_TABLE_CAP};

/// A finite lattice with materialised meet and join tables.
///
/// The order is recovered from the tables: `a ≤ b` iff `a ∧ b = a`.
#[derive(Debug)]
pub struct FiniteLattice {
    labels: Vec<String>,
    meet: Vec<u16>,
    join: Vec<u16>,
    bottom: usize,
    top: usize,
    lower_covers: OnceLock<Vec<Vec<usize>>>,
}

impl Clone for FiniteLattice {
    fn clone(&self) -> Self {
        FiniteLattice {
            labels: self.labels.clone(),
            meet: self.meet.clone(),
            join: self.join.clone(),
            bottom: self.bottom,
            top: self.top,
            lower_covers: OnceLock::new(),
        }
    }
}

impl PartialEq for FiniteLattice {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.meet == other.meet && self.join == other.join
    }
}

impl Eq for FiniteLattice {}

impl FiniteLattice {
    /// Builds tables from trusted meet and join functions.
    pub(crate) fn from_fns(
        labels: Vec<String>,
        meet: impl Fn(usize, usize) -> usize,
        join: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidPoset("a lattice needs at least one element".into()));
        }
        cap_check("lattice size", n, LATTICE_TABLE_CAP)?;
        let mut mt = vec![0u16; n * n];
        let mut jt = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                mt[a * n + b] = meet(a, b) as u16;
                jt[a * n + b] = join(a, b) as u16;
            }
        }
        let bottom = (0..n).fold(0, |acc, x| mt[acc * n + x] as usize);
        let top = (0..n).fold(0, |acc, x| jt[acc * n + x] as usize);
        Ok(FiniteLattice {
            labels,
            meet: mt,
            join: jt,
            bottom,
            top,
            lower_covers: OnceLock::new(),
        })
    }

    /// Computes greatest lower and least upper bounds exhaustively.
    pub fn from_poset(p: &FinitePoset) -> Result<Self> {
        let n = p.len();
        if n == 0 {
            return Err(Error::InvalidPoset("empty poset".into()));
        }
        cap_check("lattice size", n, LATTICE_TABLE_CAP)?;
        let mut meet = vec![0usize; n * n];
        let mut join = vec![0usize; n * n];
        for a in 0..n {
            for b in a..n {
                let lower: Vec<usize> = (0..n).filter(|&x| p.leq(x, a) && p.leq(x, b)).collect();
                let glb = lower
                    .iter()
                    .copied()
                    .find(|&x| lower.iter().all(|&y| p.leq(y, x)))
                    .ok_or(Error::NotALattice(a, b, "meet"))?;
                let upper: Vec<usize> = (0..n).filter(|&x| p.leq(a, x) && p.leq(b, x)).collect();
                let lub = upper
                    .iter()
                    .copied()
                    .find(|&x| upper.iter().all(|&y| p.leq(x, y)))
                    .ok_or(Error::NotALattice(a, b, "join"))?;
                meet[a * n + b] = glb;
                meet[b * n + a] = glb;
                join[a * n + b] = lub;
                join[b * n + a] = lub;
            }
        }
        Self::from_fns(p.labels().to_vec(), |a, b| meet[a * n + b], |a, b| join[a * n + b])
    }

    /// The chain `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> Result<Self> {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::from_fns(labels, |a, b| a.min(b), |a, b| a.max(b))
    }

    /// Subsets of `{1..n}`, element index = bit mask.
    pub fn boolean(n: usize) -> Result<Self> {
        cap_check("boolean lattice rank", n, BOOLEAN_LATTICE_MAX_RANK)?;
        let labels = (0..1usize << n).map(|m| subset_label(m, n)).collect();
        Self::from_fns(labels, |a, b| a & b, |a, b| a | b)
    }

    /// Lattice of down-sets of `p`, ordered by (size, sorted element list).
    pub fn downsets(p: &FinitePoset) -> Result<Self> {
        Ok(Self::downsets_with_sets(p)?.0)
    }

    /// Like [`FiniteLattice::downsets`], also returning each down-set's members.
    pub fn downsets_with_sets(p: &FinitePoset) -> Result<(Self, Vec<Vec<usize>>)> {
        let sets = enumerate_downsets(p, DOWNSET_CAP)?;
        let index: HashMap<&Vec<u64>, usize> = sets.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let labels = sets
            .iter()
            .map(|s| {
                let names: Vec<&str> = members(s).iter().map(|&x| p.labels()[x].as_str()).collect();
                format!("{{{}}}", names.join(","))
            })
            .collect();
        let op = |a: usize, b: usize, f: fn(u64, u64) -> u64| -> usize {
            let s: Vec<u64> = sets[a].iter().zip(&sets[b]).map(|(&x, &y)| f(x, y)).collect();
            index[&s]
        };
        let lattice = Self::from_fns(labels, |a, b| op(a, b, |x, y| x & y), |a, b| op(a, b, |x, y| x | y))?;
        let member_lists = sets.iter().map(|s| members(s)).collect();
        Ok((lattice, member_lists))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b] as usize
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b] as usize
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.meet(a, b) == a
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn to_poset(&self) -> FinitePoset {
        let n = self.len();
        let m = (0..n)
            .map(|a| (0..n).map(|b| self.leq(a, b)).collect())
            .collect();
        FinitePoset::from_matrix(self.labels.clone(), m).expect("lattice order is a partial order")
    }

    /// For each element, the elements it covers, in increasing index order.
    pub fn lower_covers(&self) -> &[Vec<usize>] {
        self.lower_covers.get_or_init(|| {
            let n = self.len();
            let height: Vec<usize> = (0..n)
                .map(|x| (0..n).filter(|&y| self.leq(y, x)).count())
                .collect();
            (0..n)
                .map(|x| {
                    let mut below: Vec<usize> = (0..n).filter(|&y| self.lt(y, x)).collect();
                    below.sort_by_key(|&y| std::cmp::Reverse((height[y], y)));
                    let mut covers: Vec<usize> = Vec::new();
                    for y in below {
                        if !covers.iter().any(|&c| self.lt(y, c)) {
                            covers.push(y);
                        }
                    }
                    covers.sort_unstable();
                    covers
                })
                .collect()
        })
    }

    pub fn upper_covers(&self) -> Vec<Vec<usize>> {
        let mut up = vec![Vec::new(); self.len()];
        for (x, lows) in self.lower_covers().iter().enumerate() {
            for &y in lows {
                up[y].push(x);
            }
        }
        up
    }

    /// Covering pairs `(lower, upper)`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .lower_covers()
            .iter()
            .enumerate()
            .flat_map(|(x, lows)| lows.iter().map(move |&y| (y, x)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Length of the longest chain from the bottom.
    pub fn rank(&self) -> Vec<usize> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        let height: Vec<usize> = (0..n)
            .map(|x| (0..n).filter(|&y| self.leq(y, x)).count())
            .collect();
        order.sort_by_key(|&x| height[x]);
        let mut rank = vec![0usize; n];
        for x in order {
            rank[x] = self.lower_covers()[x]
                .iter()
                .map(|&y| rank[y] + 1)
                .max()
                .unwrap_or(0);
        }
        rank
    }

    /// Checks that the tables are the glb/lub of the order they induce, and
    /// that both operations are associative and absorptive.
    pub fn verify(&self) -> Result<()> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                let m = self.meet(a, b);
                let j = self.join(a, b);
                if m != self.meet(b, a) || j != self.join(b, a) {
                    return Err(Error::NotALattice(a, b, "commutative bound"));
                }
                if self.meet(a, j) != a || self.join(a, m) != a {
                    return Err(Error::NotALattice(a, b, "absorptive bound"));
                }
                for c in 0..n {
                    if self.meet(self.meet(a, b), c) != self.meet(a, self.meet(b, c))
                        || self.join(self.join(a, b), c) != self.join(a, self.join(b, c))
                    {
                        return Err(Error::NotALattice(a, b, "associative bound"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_distributive(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    self.meet(x, self.join(y, z)) == self.join(self.meet(x, y), self.meet(x, z))
                })
            })
        })
    }

    /// Elements with exactly one lower cover.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.lower_covers()[x].len() == 1)
            .collect()
    }

    /// `φ(x) = {j ∈ J : j ≤ x}`, with `J` listed by element index.
    pub fn birkhoff_embed(&self) -> Result<BirkhoffEmbedding> {
        if !self.is_distributive() {
            return Err(Error::NotDistributive);
        }
        let j = self.join_irreducibles();
        let images = (0..self.len())
            .map(|x| {
                j.iter()
                    .enumerate()
                    .filter(|&(_, &e)| self.leq(e, x))
                    .map(|(k, _)| k)
                    .collect()
            })
            .collect();
        Ok(BirkhoffEmbedding {
            join_irreducibles: j,
            images,
        })
    }

    /// Smallest sublattice containing `s`. Returns it with the parent index of
    /// each of its elements (sorted).
    pub fn sublattice_generated(&self, s: &[usize]) -> Result<(FiniteLattice, Vec<usize>)> {
        if s.is_empty() {
            return Err(Error::InvalidPoset("generating set is empty".into()));
        }
        let mut set: BTreeSet<usize> = s.iter().copied().collect();
        loop {
            let items: Vec<usize> = set.iter().copied().collect();
            let before = set.len();
            for &a in &items {
                for &b in &items {
                    set.insert(self.meet(a, b));
                    set.insert(self.join(a, b));
                }
            }
            if set.len() == before {
                break;
            }
        }
        let elems: Vec<usize> = set.into_iter().collect();
        Ok((self.induced(&elems)?, elems))
    }

    /// Induced structure on a subset closed under meet and join.
    pub fn induced(&self, elems: &[usize]) -> Result<FiniteLattice> {
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        for &a in elems {
            for &b in elems {
                if !pos.contains_key(&self.meet(a, b)) || !pos.contains_key(&self.join(a, b)) {
                    return Err(Error::NotALattice(a, b, "bound inside the subset"));
                }
            }
        }
        let labels = elems.iter().map(|&e| self.labels[e].clone()).collect();
        FiniteLattice::from_fns(
            labels,
            |a, b| pos[&self.meet(elems[a], elems[b])],
            |a, b| pos[&self.join(elems[a], elems[b])],
        )
    }
}

/// The Birkhoff representation of a distributive lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BirkhoffEmbedding {
    pub join_irreducibles: Vec<usize>,
    /// `images[x]` lists positions in `join_irreducibles`.
    pub images: Vec<Vec<usize>>,
}

fn subset_label(mask: usize, n: usize) -> String {
    let items: Vec<String> = (0..n)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", items.join(","))
}

fn members(bits: &[u64]) -> Vec<usize> {
    let mut out = Vec::new();
    for (w, &word) in bits.iter().enumerate() {
        for b in 0..64 {
            if word >> b & 1 == 1 {
                out.push(w * 64 + b);
            }
        }
    }
    out
}

/// All down-sets as bit sets, sorted by (size, member list).
fn enumerate_downsets(p: &FinitePoset, cap: usize) -> Result<Vec<Vec<u64>>> {
    let n = p.len();
    let words = n.div_ceil(64).max(1);
    let order = p.linear_extension();
    let below: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).filter(|&y| p.lt(y, x)).collect())
        .collect();
    let mut out = Vec::new();
    let mut current = vec![0u64; words];
    fn rec(
        k: usize,
        order: &[usize],
        below: &[Vec<usize>],
        current: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
        cap: usize,
    ) -> Result<()> {
        if k == order.len() {
            cap_check("number of down-sets", out.len() + 1, cap)?;
            out.push(current.clone());
            return Ok(());
        }
        let x = order[k];
        rec(k + 1, order, below, current, out, cap)?;
        if below[x].iter().all(|&y| current[y / 64] >> (y % 64) & 1 == 1) {
            current[x / 64] |= 1 << (x % 64);
            rec(k + 1, order, below, current, out, cap)?;
            current[x / 64] &= !(1 << (x % 64));
        }
        Ok(())
    }
    rec(0, &order, &below, &mut current, &mut out, cap)?;
    out.sort_by_key(|s| {
        let m = members(s);
        (m.len(), m)
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_and_divisors() {
        let c = FiniteLattice::from_poset(&FinitePoset::chain(2)).unwrap();
        assert_eq!(c.meet(0, 1), 0);
        assert_eq!(c.join(0, 1), 1);
        let d = FiniteLattice::from_poset(&FinitePoset::divisors(12)).unwrap();
        assert_eq!(d.len(), 6);
        let idx = |v: &str| d.index_of(v).unwrap();
        assert_eq!(d.meet(idx("4"), idx("6")), idx("2"));
        assert_eq!(d.join(idx("4"), idx("6")), idx("12"));
        d.verify().unwrap();
    }

    #[test]
    fn n_poset_is_not_a_lattice() {
        let labels = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        // a < c, b < c, b < d: c and d have no join, a and b no meet.
        let p = FinitePoset::from_relations(labels, &[(0, 2), (1, 2), (1, 3)]).unwrap();
        assert!(matches!(FiniteLattice::from_poset(&p), Err(Error::NotALattice(_, _, _))));
    }

    #[test]
    fn distributivity() {
        assert!(FiniteLattice::boolean(3).unwrap().is_distributive());
        let labels = ["0", "a", "b", "c", "1"].iter().map(|s| s.to_string()).collect();
        let m3 = FinitePoset::from_relations(labels, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])
            .unwrap();
        assert!(!FiniteLattice::from_poset(&m3).unwrap().is_distributive());
        assert!(FiniteLattice::from_poset(&FinitePoset::divisors(60))
            .unwrap()
            .is_distributive());
    }

    #[test]
    fn join_irreducible_examples() {
        let b = FiniteLattice::boolean(3).unwrap();
        assert_eq!(b.join_irreducibles(), vec![1, 2, 4]);
        let c = FiniteLattice::chain(5).unwrap();
        assert_eq!(c.join_irreducibles(), vec![1, 2, 3, 4]);
        let d = FiniteLattice::from_poset(&FinitePoset::divisors(12)).unwrap();
        let names: Vec<&str> = d.join_irreducibles().iter().map(|&x| d.label(x)).collect();
        assert_eq!(names, vec!["2", "3", "4"]);
    }

    #[test]
    fn birkhoff_on_divisors() {
        let d = FiniteLattice::from_poset(&FinitePoset::divisors(12)).unwrap();
        let e = d.birkhoff_embed().unwrap();
        let six = d.index_of("6").unwrap();
        let names = |x: usize| -> Vec<&str> {
            e.images[x].iter().map(|&k| d.label(e.join_irreducibles[k])).collect()
        };
        assert_eq!(names(six), vec!["2", "3"]);
        assert_eq!(names(d.index_of("12").unwrap()), vec!["2", "3", "4"]);
    }

    #[test]
    fn downset_examples() {
        let a2 = FiniteLattice::downsets(&FinitePoset::antichain(2)).unwrap();
        assert_eq!(a2.len(), 4);
        assert_eq!(a2.join_irreducibles().len(), 2);
        let c3 = FiniteLattice::downsets(&FinitePoset::chain(3)).unwrap();
        assert_eq!(c3.len(), 4);
        assert_eq!(c3.covers().len(), 3);
        let labels = ["b", "t1", "t2"].iter().map(|s| s.to_string()).collect();
        let v = FinitePoset::from_relations(labels, &[(0, 1), (0, 2)]).unwrap();
        let dv = FiniteLattice::downsets(&v).unwrap();
        assert_eq!(dv.len(), 5);
        assert!(dv.is_distributive());
        dv.verify().unwrap();
    }

    #[test]
    fn sublattice_examples() {
        let b = FiniteLattice::boolean(2).unwrap();
        let (s, elems) = b.sublattice_generated(&[0, 3]).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(elems, vec![0, 3]);
        let (s, _) = b.sublattice_generated(&[1, 2]).unwrap();
        assert_eq!(s.len(), 4);
    }

    #[test]
    fn boolean_sizes() {
        assert_eq!(FiniteLattice::boolean(0).unwrap().len(), 1);
        let b2 = FiniteLattice::boolean(2).unwrap();
        assert_eq!(b2.len(), 4);
        assert_eq!(b2.join_irreducibles().len(), 2);
        assert!(FiniteLattice::boolean(BOOLEAN_LATTICE_MAX_RANK + 1).is_err());
    }
}
