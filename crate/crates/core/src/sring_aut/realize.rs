use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use super::search::aut_sring;
use crate::algebra::CoefficientField;
use crate::constructions::{lattice_sring, symbolic_lattice_sring, SubgroupLattice, SymbolicLatticeSRing};
use crate::error::{Error, Result};
use crate::groups::{is_prime, search_isomorphisms, Group, Subgroup};
use crate::lattice::{lattice_automorphisms_with, realize_group_as_lattice, LatticeJson, RealizationKind};
use crate::limits::{CONCRETE_CROSSCHECK_CAP, ISOMORPHISM_CAP, LATTICE_AUT_CAP};
use crate::perm::PermGroup;
use crate::ptuple::{concrete_group, psi_embed, regular_subgroup, CanonicalTuple, LambdaSignature};

/// Size-preserving automorphisms of the node lattice, acting on nodes.
pub fn aut_symbolic_lattice_sring(s: &SymbolicLatticeSRing) -> Result<PermGroup> {
    let a = s.algebra();
    let colors: Vec<u64> = (0..a.dim()).map(|k| u64::from(a.size_exponent(k))).collect();
    lattice_automorphisms_with(a.lattice(), a.dim().max(LATTICE_AUT_CAP), Some(&colors))
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeReport {
    pub kind: RealizationKind,
    pub dot: String,
    pub json: LatticeJson,
    pub join_irreducibles: Vec<String>,
}

/// An element of `Aut(S)` (as a permutation of the nodes) and its image in `G`.
#[derive(Clone, Debug, Serialize)]
pub struct IsoPair {
    pub automorphism: Vec<usize>,
    pub group_element: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RealizationReport {
    pub input_group: String,
    pub lattice: LatticeReport,
    pub signature: String,
    pub nodes: Vec<String>,
    pub sring_dimension: usize,
    pub aut_order: usize,
    pub aut_generators: Vec<Vec<usize>>,
    pub iso_witness: Vec<IsoPair>,
    /// `None` when the concrete group is too large to instantiate.
    pub concrete_crosscheck: Option<bool>,
}

/// The full pipeline `G ↦ D ↦ L ↦ Q L̄`, verifying `Aut(Q L̄) ≅ G`.
pub fn realize_group(g: &Group, p: u64) -> Result<RealizationReport> {
    if p == 2 || !is_prime(p) {
        return Err(Error::EvenPrime(p));
    }
    let real = realize_group_as_lattice(g)?;
    let d = &real.lattice;
    let birk = d.birkhoff_embed()?;
    let n = birk.join_irreducibles.len();
    let sig = LambdaSignature::odd_staircase(p, n)?;
    let nodes: Vec<CanonicalTuple> = birk
        .images
        .iter()
        .map(|y| psi_embed(&sig, y))
        .collect::<Result<_>>()?;
    let sring = symbolic_lattice_sring(&sig, &nodes)?;
    let aut = aut_symbolic_lattice_sring(&sring)?;
    let table = Group::from_perm_group(&aut, ISOMORPHISM_CAP)?;
    let witness = search_isomorphisms(&table, g, true, 1)?;
    let Some(iso) = witness.into_iter().next() else {
        return Err(Error::Verification(format!(
            "Aut(S) has order {} and is not isomorphic to {}",
            aut.order(),
            g.describe()
        )));
    };
    let iso_witness = aut
        .elements()
        .iter()
        .zip(&iso)
        .map(|(a, &x)| IsoPair {
            automorphism: a.images().to_vec(),
            group_element: g.label(x),
        })
        .collect();
    let order = sig.order().unwrap_or(u128::MAX);
    let concrete_crosscheck = if order <= CONCRETE_CROSSCHECK_CAP {
        Some(concrete_crosscheck(&sring, &aut)?)
    } else {
        None
    };
    let lattice = LatticeReport {
        kind: real.kind,
        dot: d.to_dot("D"),
        json: d.to_json(),
        join_irreducibles: birk.join_irreducibles.iter().map(|&j| d.label(j).to_string()).collect(),
    };
    Ok(RealizationReport {
        input_group: g.describe(),
        lattice,
        signature: sig.to_string(),
        nodes: sring.nodes().iter().map(|t| format!("R{}", t.tuple())).collect(),
        sring_dimension: sring.dimension(),
        aut_order: aut.order(),
        aut_generators: aut.generators().iter().map(|p| p.images().to_vec()).collect(),
        iso_witness,
        concrete_crosscheck,
    })
}

/// Instantiates `Q L̄` over the concrete group, computes its automorphisms
/// on blocks and compares their action on nodes with the symbolic group.
pub fn concrete_crosscheck(s: &SymbolicLatticeSRing, symbolic: &PermGroup) -> Result<bool> {
    let sig = s.algebra().signature();
    let g = concrete_group(sig)?;
    let subs: Vec<Subgroup> = s
        .nodes()
        .iter()
        .map(|t| regular_subgroup(t.tuple(), &g))
        .collect::<Result<_>>()?;
    let concrete = concrete_sring_automorphisms(&g, &subs)?;
    let sym: BTreeSet<Vec<usize>> = symbolic.elements().iter().map(|p| p.images().to_vec()).collect();
    Ok(concrete == sym)
}

/// Block automorphisms of `F L̄` for the given subgroups, transported to
/// permutations of `subs` (block `i` corresponds to the least member
/// containing its elements).
pub fn concrete_sring_automorphisms(g: &Arc<Group>, subs: &[Subgroup]) -> Result<BTreeSet<Vec<usize>>> {
    let l = SubgroupLattice::new(g.clone(), subs.to_vec())?;
    let lat = lattice_sring(&l, CoefficientField::Rationals)?;
    let sr = lat
        .sring
        .ok_or_else(|| Error::Verification("node lattice lacks 1 or G".into()))?;
    let node_of_block: Vec<usize> = sr
        .blocks()
        .iter()
        .map(|b| {
            (0..subs.len())
                .filter(|&k| subs[k].contains(b[0]))
                .min_by_key(|&k| subs[k].order())
                .expect("G contains every block")
        })
        .collect();
    let aut = aut_sring(&sr)?;
    let mut out = BTreeSet::new();
    for p in aut.elements() {
        let mut m = vec![0; subs.len()];
        for (i, &t) in p.images().iter().enumerate() {
            m[node_of_block[i]] = node_of_block[t];
        }
        out.insert(m);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::CayleyGroup;
    use crate::ptuple::canonical_tuples;

    #[test]
    fn table_one_has_a_swap() {
        let sig = LambdaSignature::new(3, vec![1, 3]).unwrap();
        let s = symbolic_lattice_sring(&sig, &canonical_tuples(&sig)).unwrap();
        let a = aut_symbolic_lattice_sring(&s).unwrap();
        assert_eq!(a.order(), 2);
        assert!(concrete_crosscheck(&s, &a).unwrap());
    }

    #[test]
    fn chain_is_rigid() {
        let sig = LambdaSignature::new(5, vec![1, 3]).unwrap();
        let mid = CanonicalTuple::new(crate::ptuple::Tuple(vec![1, 2]), &sig).unwrap();
        let s = symbolic_lattice_sring(&sig, &[mid]).unwrap();
        assert_eq!(aut_symbolic_lattice_sring(&s).unwrap().order(), 1);
    }

    #[test]
    fn realize_z2() {
        let r = realize_group(&Group::cyclic(2).unwrap(), 3).unwrap();
        assert_eq!(r.aut_order, 2);
        assert_eq!(r.nodes.len(), 6);
        assert_eq!(r.concrete_crosscheck, Some(true));
    }

    #[test]
    fn realize_trivial() {
        let g = Group::Table(CayleyGroup::cyclic(1));
        let r = realize_group(&g, 3).unwrap();
        assert_eq!(r.aut_order, 1);
    }

    #[test]
    fn even_prime_rejected() {
        assert!(realize_group(&Group::cyclic(2).unwrap(), 2).is_err());
    }
}
