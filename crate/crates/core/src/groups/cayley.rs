use std::sync::OnceLock;

use crate::error::{cap_check, Error, Result};
use crate::limits::MAX_CAYLEY_ORDER;
use crate::perm::{Perm, PermGroup};

/// A finite group given by its full multiplication table.
#[derive(Debug, Clone)]
pub struct CayleyGroup {
    n: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    generators: OnceLock<Vec<usize>>,
}

impl PartialEq for CayleyGroup {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.table == other.table
    }
}

impl Eq for CayleyGroup {}

impl CayleyGroup {
    /// Validates the table: square, Latin, with identity, associative.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty multiplication table".into()));
        }
        cap_check("Cayley table order", n, MAX_CAYLEY_ORDER)?;
        let mut table = Vec::with_capacity(n * n);
        for row in &rows {
            if row.len() != n {
                return Err(Error::InvalidGroup("table is not square".into()));
            }
            table.extend_from_slice(row);
        }
        if table.iter().any(|&x| x >= n) {
            return Err(Error::InvalidGroup("table entry out of range".into()));
        }
        for i in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for j in 0..n {
                let r = table[i * n + j];
                let c = table[j * n + i];
                if row_seen[r] || col_seen[c] {
                    return Err(Error::InvalidGroup("table is not a Latin square".into()));
                }
                row_seen[r] = true;
                col_seen[c] = true;
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] == x && table[x * n + e] == x))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| table[a * n + b] == identity).unwrap())
            .collect();
        Ok(CayleyGroup {
            n,
            table,
            identity,
            inverse,
            generators: OnceLock::new(),
        })
    }

    /// Trusted constructor for tables built internally (quotients, permutation groups).
    pub(crate) fn from_flat_table_unchecked(n: usize, table: Vec<usize>) -> Self {
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] == x))
            .expect("table has an identity");
        let mut inverse = vec![0; n];
        for a in 0..n {
            for b in 0..n {
                if table[a * n + b] == identity {
                    inverse[a] = b;
                    break;
                }
            }
        }
        CayleyGroup {
            n,
            table,
            identity,
            inverse,
            generators: OnceLock::new(),
        }
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        Self::from_flat_table_unchecked(n, table)
    }

    /// Dihedral group of order `2n`: index `k` is `r^k`, index `n + k` is `s·r^k`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidGroup("dihedral group needs n >= 1".into()));
        }
        cap_check("Cayley table order", 2 * n, MAX_CAYLEY_ORDER)?;
        let order = 2 * n;
        let mut table = vec![0; order * order];
        for a in 0..order {
            let (f1, k1) = (a / n, a % n);
            for b in 0..order {
                let (f2, k2) = (b / n, b % n);
                // s^f1 r^k1 s^f2 r^k2 = s^(f1+f2) r^((-1)^f2 k1 + k2)
                let f = (f1 + f2) % 2;
                let k = if f2 == 0 { (k1 + k2) % n } else { (n - k1 + k2) % n };
                table[a * order + b] = f * n + k;
            }
        }
        Ok(Self::from_flat_table_unchecked(order, table))
    }

    /// Symmetric group on `n ≤ 5` points.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n > 5 {
            return Err(Error::CapExceeded {
                what: "symmetric group degree",
                size: n,
                cap: 5,
            });
        }
        let mut gens = Vec::new();
        if n >= 2 {
            let mut cycle: Vec<usize> = (1..n).collect();
            cycle.push(0);
            gens.push(Perm::new(cycle)?);
            let mut swap: Vec<usize> = (0..n).collect();
            swap.swap(0, 1);
            gens.push(Perm::new(swap)?);
        }
        PermGroup::new(n.max(1), gens)?.to_cayley(120)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// A smallest generating set, lexicographically least among those of
    /// minimum size when the search is affordable, greedy otherwise.
    pub fn generators(&self) -> &[usize] {
        self.generators
            .get_or_init(|| super::minimal_generating_set(self.n, self.identity, |a, b| self.mul(a, b)))
    }
}
