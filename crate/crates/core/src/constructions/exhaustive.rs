use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::lattice::{lattice_sring, sublattices};
use crate::algebra::{is_sring, CoefficientField, SchurPartition, SchurRing};
use crate::error::{cap_check, Result};
use crate::groups::{all_subgroups, automorphism_generators, orbits, Group, Subgroup};
use crate::limits::{EXHAUSTIVE_CAP, SUBGROUP_CAP};

/// Set partitions of `0..n` as restricted growth strings.
fn set_partitions(n: usize, mut visit: impl FnMut(&[usize])) {
    fn rec(i: usize, n: usize, max: usize, a: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if i == n {
            visit(a);
            return;
        }
        for b in 0..=max {
            a.push(b);
            rec(i + 1, n, if b == max { max + 1 } else { max }, a, visit);
            a.pop();
        }
    }
    rec(0, n, 0, &mut Vec::with_capacity(n), &mut visit);
}

/// Every S-ring whose blocks are unions of `atoms` (which must cover
/// `G ∖ {1}`), sorted by fingerprint.
pub fn srings_from_atoms(group: &Arc<Group>, atoms: &[Vec<usize>], field: CoefficientField) -> Result<Vec<SchurRing>> {
    let e = group.identity();
    let mut candidates: Vec<Vec<Vec<usize>>> = Vec::new();
    set_partitions(atoms.len(), |rgs| {
        let nb = rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); nb];
        for (a, &b) in rgs.iter().enumerate() {
            blocks[b].extend_from_slice(&atoms[a]);
        }
        blocks.push(vec![e]);
        candidates.push(blocks);
    });
    let found: Vec<SchurPartition> = candidates
        .into_par_iter()
        .filter_map(|blocks| SchurPartition::new(group.clone(), blocks).ok())
        .filter(|p| is_sring(p, field))
        .collect();
    let mut out: BTreeMap<Vec<Vec<usize>>, SchurRing> = BTreeMap::new();
    for p in found {
        out.insert(p.fingerprint(), SchurRing::new(p, field)?);
    }
    Ok(out.into_values().collect())
}

/// All S-rings over `G` by search over set partitions, `|G| <= 10`.
pub fn exhaustive_srings(group: &Arc<Group>, field: CoefficientField) -> Result<Vec<SchurRing>> {
    cap_check("exhaustive search group order", group.order(), EXHAUSTIVE_CAP)?;
    let e = group.identity();
    let atoms: Vec<Vec<usize>> = (0..group.order()).filter(|&x| x != e).map(|x| vec![x]).collect();
    srings_from_atoms(group, &atoms, field)
}

/// All rational S-rings: partitions of the nontrivial `Aut(G)`-classes.
pub fn rational_srings(group: &Arc<Group>, field: CoefficientField) -> Result<Vec<SchurRing>> {
    let auts = automorphism_generators(group)?;
    let e = group.identity();
    let atoms: Vec<Vec<usize>> = orbits(group, &auts).into_iter().filter(|o| o[0] != e).collect();
    srings_from_atoms(group, &atoms, field)
}

/// The S-rings `F L̄` for sublattices `L` of the normal subgroups with
/// `1, G ∈ L`; with `characteristic_only` the members are restricted to
/// characteristic subgroups.
pub fn normal_sublattice_srings(
    group: &Arc<Group>,
    field: CoefficientField,
    characteristic_only: bool,
) -> Result<Vec<SchurRing>> {
    let mut normals: Vec<Subgroup> = Vec::new();
    for h in all_subgroups(group, SUBGROUP_CAP)? {
        if h.is_normal() && (!characteristic_only || crate::groups::is_characteristic(&h)?) {
            normals.push(h);
        }
    }
    let mut out: BTreeMap<Vec<Vec<usize>>, SchurRing> = BTreeMap::new();
    for l in sublattices(group, &normals)? {
        if l.has_trivial_and_full() {
            let s = lattice_sring(&l, field)?.sring.expect("bounded sublattice");
            out.insert(s.partition().fingerprint(), s);
        }
    }
    Ok(out.into_values().collect())
}

/// Sublattices of the divisor lattice of `n`, as subgroups of `Z_n`.
pub fn divisor_sublattice_srings(n: usize, field: CoefficientField) -> Result<Vec<SchurRing>> {
    let g = Arc::new(Group::cyclic(n as u64)?);
    normal_sublattice_srings(&g, field, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::CayleyGroup;

    const Q: CoefficientField = CoefficientField::Rationals;

    #[test]
    fn bell_numbers() {
        let mut c = 0;
        set_partitions(5, |_| c += 1);
        assert_eq!(c, 52);
    }

    #[test]
    fn z4_and_z5() {
        let z4 = Arc::new(Group::cyclic(4).unwrap());
        assert_eq!(exhaustive_srings(&z4, Q).unwrap().len(), 3);
        let z5 = Arc::new(Group::cyclic(5).unwrap());
        assert_eq!(exhaustive_srings(&z5, Q).unwrap().len(), 3);
    }

    #[test]
    fn klein_four() {
        // trivial, full, and {1},{a},{b,c} for each involution a
        let v4 = Arc::new(Group::product(vec![2, 2]).unwrap());
        assert_eq!(exhaustive_srings(&v4, Q).unwrap().len(), 5);
    }

    #[test]
    fn rational_cyclic_are_lattice() {
        for n in [6usize, 8, 12] {
            let g = Arc::new(Group::cyclic(n as u64).unwrap());
            let a: Vec<_> = rational_srings(&g, Q).unwrap().iter().map(|s| s.partition().fingerprint()).collect();
            let b: Vec<_> = divisor_sublattice_srings(n, Q).unwrap().iter().map(|s| s.partition().fingerprint()).collect();
            assert_eq!(a, b, "n = {n}");
        }
    }

    #[test]
    fn s3_rational() {
        let s3 = Arc::new(Group::Table(CayleyGroup::symmetric(3).unwrap()));
        assert_eq!(rational_srings(&s3, Q).unwrap().len(), 2);
    }

    #[test]
    fn too_large() {
        let g = Arc::new(Group::cyclic(11).unwrap());
        assert!(exhaustive_srings(&g, Q).is_err());
    }
}
