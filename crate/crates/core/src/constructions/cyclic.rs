use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;

use super::leung_man::{cyclic_embedding, dot_product, wedge_product, Embedded};
use crate::algebra::{CoefficientField, Quotient, SchurRing};
use crate::error::{cap_check, Error, Result};
use crate::groups::{all_subgroups, CayleyGroup, Group, Subgroup};
use crate::limits::{CYCLIC_ENUMERATION_CAP, SUBGROUP_CAP};

const Q: CoefficientField = CoefficientField::Rationals;

/// Units of `Z_n` in increasing order.
pub fn units(n: usize) -> Vec<usize> {
    (1..=n.max(1)).filter(|&u| u.gcd(&n) == 1).map(|u| u % n.max(1)).collect()
}

/// Every subgroup of `U(n)`, each listed by its elements.
pub fn unit_subgroups(n: usize) -> Result<Vec<Vec<usize>>> {
    let us = units(n);
    if us.len() <= 1 {
        return Ok(vec![us]);
    }
    let pos: HashMap<usize, usize> = us.iter().enumerate().map(|(i, &u)| (u, i)).collect();
    let rows = us
        .iter()
        .map(|&a| us.iter().map(|&b| pos[&(a * b % n)]).collect())
        .collect();
    let ug = Arc::new(Group::Table(CayleyGroup::new(rows)?));
    Ok(all_subgroups(&ug, SUBGROUP_CAP)?
        .into_iter()
        .map(|h| h.elements().iter().map(|&i| us[i]).collect())
        .collect())
}

/// Orbits of `x ↦ ux`, `u ∈ Ω`, on `Z_n`.
pub fn cyclotomic_blocks(n: usize, omega: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut blocks = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let mut b: Vec<usize> = omega.iter().map(|&u| u * x % n).collect();
        b.sort_unstable();
        b.dedup();
        for &y in &b {
            seen[y] = true;
        }
        blocks.push(b);
    }
    blocks
}

/// The cyclotomic S-ring over `Z_n` for `Ω ≤ U(n)`.
pub fn cyclic_cyclotomic(n: usize, omega: &[usize], field: CoefficientField) -> Result<SchurRing> {
    let g = Arc::new(Group::cyclic(n as u64)?);
    SchurRing::from_blocks(g, field, cyclotomic_blocks(n, omega))
}

/// Whether the S-ring over `Z_n` is the orbit partition of its stabilizer
/// in `U(n)`.
pub fn is_cyclotomic(s: &SchurRing) -> bool {
    let n = s.group().order();
    let p = s.partition();
    let stab: Vec<usize> = units(n)
        .into_iter()
        .filter(|&u| (0..n).all(|x| p.block_of(u * x % n) == p.block_of(x)))
        .collect();
    let mut orb = cyclotomic_blocks(n, &stab);
    orb.sort();
    orb == p.fingerprint()
}

fn memo() -> &'static Mutex<BTreeMap<usize, Arc<Vec<SchurRing>>>> {
    static M: OnceLock<Mutex<BTreeMap<usize, Arc<Vec<SchurRing>>>>> = OnceLock::new();
    M.get_or_init(|| Mutex::new(BTreeMap::new()))
}

/// All S-rings over `Z_n` with rational coefficients, closed under the
/// trivial, cyclotomic, dot and wedge constructions, sorted by fingerprint.
pub fn enumerate_cyclic_srings(n: usize) -> Result<Arc<Vec<SchurRing>>> {
    if n == 0 {
        return Err(Error::InvalidGroup("Z_0".into()));
    }
    cap_check("cyclic group order", n, CYCLIC_ENUMERATION_CAP)?;
    if let Some(v) = memo().lock().expect("memo").get(&n) {
        return Ok(v.clone());
    }
    let g = Arc::new(Group::cyclic(n as u64)?);
    let mut found: BTreeMap<Vec<Vec<usize>>, SchurRing> = BTreeMap::new();
    let mut add = |s: SchurRing| {
        found.entry(s.partition().fingerprint()).or_insert(s);
    };
    add(SchurRing::trivial(g.clone(), Q));
    for omega in unit_subgroups(n)? {
        add(cyclic_cyclotomic(n, &omega, Q)?);
    }
    let divisors: Vec<usize> = (1..=n).filter(|&d| n.is_multiple_of(d)).collect();
    for &a in &divisors {
        let b = n / a;
        if a == 1 || b <= a || a.gcd(&b) != 1 {
            continue;
        }
        let (ea, eb) = (cyclic_embedding(a, n), cyclic_embedding(b, n));
        let (ra, rb) = (enumerate_cyclic_srings(a)?, enumerate_cyclic_srings(b)?);
        for sa in ra.iter() {
            for sb in rb.iter() {
                let s = dot_product(g.clone(), Embedded { sring: sa, map: &ea }, Embedded { sring: sb, map: &eb }, Q)?;
                add(s);
            }
        }
    }
    for &h in &divisors {
        if h == 1 || h == n {
            continue;
        }
        let hs = Subgroup::generated(g.clone(), &[n / h])?;
        let q = Quotient::new(&hs)?;
        let rq = enumerate_cyclic_srings(n / h)?;
        for &k in divisors.iter().filter(|&&k| k % h == 0 && k < n) {
            let ek = cyclic_embedding(k, n);
            for sk in enumerate_cyclic_srings(k)?.iter() {
                for sq in rq.iter() {
                    match wedge_product(Embedded { sring: sk, map: &ek }, sq, &q) {
                        Ok(s) => add(s),
                        Err(Error::IncompatibleWedge { .. } | Error::Precondition(_)) => {}
                        Err(e) => return Err(e),
                    }
                }
            }
        }
    }
    let out = Arc::new(found.into_values().collect::<Vec<_>>());
    memo().lock().expect("memo").insert(n, out.clone());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_groups() {
        assert_eq!(units(12), vec![1, 5, 7, 11]);
        assert_eq!(unit_subgroups(12).unwrap().len(), 5);
        assert_eq!(unit_subgroups(7).unwrap().len(), 4);
        assert_eq!(units(1), vec![0]);
    }

    #[test]
    fn small_counts() {
        // Z_p: one S-ring per divisor of p - 1
        assert_eq!(enumerate_cyclic_srings(7).unwrap().len(), 4);
        assert_eq!(enumerate_cyclic_srings(1).unwrap().len(), 1);
        assert_eq!(enumerate_cyclic_srings(2).unwrap().len(), 1);
        assert_eq!(enumerate_cyclic_srings(4).unwrap().len(), 3);
    }

    #[test]
    fn everything_found_is_schur_and_distinct() {
        let all = enumerate_cyclic_srings(12).unwrap();
        for (a, b) in all.iter().zip(all.iter().skip(1)) {
            assert!(a.partition().fingerprint() < b.partition().fingerprint());
        }
    }

    #[test]
    fn recognizes_cyclotomic() {
        let s = cyclic_cyclotomic(9, &[1, 8], Q).unwrap();
        assert!(is_cyclotomic(&s));
        let g = Arc::new(Group::cyclic(8).unwrap());
        let w = SchurRing::from_blocks(g, Q, vec![vec![0], vec![4], vec![1, 2, 3, 5, 6, 7]]).unwrap();
        assert!(!is_cyclotomic(&w));
    }

    #[test]
    fn matches_exhaustive_search() {
        for n in 1..=9usize {
            let g = Arc::new(Group::cyclic(n as u64).unwrap());
            let a: Vec<_> = enumerate_cyclic_srings(n).unwrap().iter().map(|s| s.partition().fingerprint()).collect();
            let b: Vec<_> = super::super::exhaustive_srings(&g, Q)
                .unwrap()
                .iter()
                .map(|s| s.partition().fingerprint())
                .collect();
            assert_eq!(a, b, "n = {n}");
        }
    }

    #[test]
    fn over_cap() {
        assert!(enumerate_cyclic_srings(37).is_err());
    }
}
