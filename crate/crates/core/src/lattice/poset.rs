use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite partial order stored as a reflexive, transitive relation matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    leq: Vec<bool>,
}

/// Serialised form: labels plus the covering pairs `(lower, upper)`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub covers: Vec<(usize, usize)>,
}

impl FinitePoset {
    /// Builds the order generated by the strict relations `a < b` in `relations`.
    pub fn from_relations(labels: Vec<String>, relations: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(Error::InvalidPoset(format!("relation ({a},{b}) out of range")));
            }
            leq[a * n + b] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if !leq[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(Error::InvalidPoset(format!(
                        "relation has a cycle through {} and {}",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        Ok(FinitePoset { labels, leq })
    }

    /// Accepts a full relation matrix after checking the poset axioms.
    pub fn from_matrix(labels: Vec<String>, matrix: Vec<Vec<bool>>) -> Result<Self> {
        let n = labels.len();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidPoset("matrix shape does not match labels".into()));
        }
        let leq: Vec<bool> = matrix.into_iter().flatten().collect();
        for i in 0..n {
            if !leq[i * n + i] {
                return Err(Error::InvalidPoset("relation is not reflexive".into()));
            }
            for j in 0..n {
                if i != j && leq[i * n + j] && leq[j * n + i] {
                    return Err(Error::InvalidPoset("relation is not antisymmetric".into()));
                }
                for k in 0..n {
                    if leq[i * n + j] && leq[j * n + k] && !leq[i * n + k] {
                        return Err(Error::InvalidPoset("relation is not transitive".into()));
                    }
                }
            }
        }
        Ok(FinitePoset { labels, leq })
    }

    pub fn chain(n: usize) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let rel: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_relations(labels, &rel).unwrap()
    }

    pub fn antichain(n: usize) -> Self {
        let labels = (1..=n).map(|i| format!("x{i}")).collect();
        Self::from_relations(labels, &[]).unwrap()
    }

    /// Divisors of `n` ordered by divisibility.
    pub fn divisors(n: u64) -> Self {
        let divs: Vec<u64> = (1..=n).filter(|&d| n.is_multiple_of(d)).collect();
        let labels = divs.iter().map(|d| d.to_string()).collect();
        let mut rel = Vec::new();
        for (i, &a) in divs.iter().enumerate() {
            for (j, &b) in divs.iter().enumerate() {
                if i != j && b % a == 0 {
                    rel.push((i, j));
                }
            }
        }
        Self::from_relations(labels, &rel).unwrap()
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

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    /// Covering pairs `(a, b)`: `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) && !(0..n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Elements in an order compatible with `≤` (by number of predecessors).
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        let below: Vec<usize> = (0..n)
            .map(|x| (0..n).filter(|&y| self.leq(y, x)).count())
            .collect();
        order.sort_by_key(|&x| (below[x], x));
        order
    }

    /// All order automorphisms, by brute force over label permutations that
    /// respect the (down, up) degree profile.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let profile: Vec<(usize, usize)> = (0..n)
            .map(|x| {
                (
                    (0..n).filter(|&y| self.leq(y, x)).count(),
                    (0..n).filter(|&y| self.leq(x, y)).count(),
                )
            })
            .collect();
        let mut out = Vec::new();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn rec(
            p: &FinitePoset,
            profile: &[(usize, usize)],
            k: usize,
            map: &mut [usize],
            used: &mut [bool],
            out: &mut Vec<Vec<usize>>,
        ) {
            let n = p.len();
            if k == n {
                out.push(map.to_vec());
                return;
            }
            for c in 0..n {
                if used[c] || profile[c] != profile[k] {
                    continue;
                }
                if (0..k).all(|y| p.leq(y, k) == p.leq(map[y], c) && p.leq(k, y) == p.leq(c, map[y])) {
                    map[k] = c;
                    used[c] = true;
                    rec(p, profile, k + 1, map, used, out);
                    used[c] = false;
                }
            }
        }
        rec(self, &profile, 0, &mut map, &mut used, &mut out);
        out
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            elements: self.labels.clone(),
            covers: self.covers(),
        }
    }

    pub fn from_json(j: &PosetJson) -> Result<Self> {
        Self::from_relations(j.elements.clone(), &j.covers)
    }
}
