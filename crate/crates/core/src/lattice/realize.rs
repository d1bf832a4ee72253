use serde::Serialize;

use super::{lattice_automorphisms_with, FiniteLattice, FinitePoset};
use crate::error::{cap_check, Error, Result};
use crate::groups::{is_isomorphic, is_isomorphic_perm, CayleyGroup, Group};
use crate::limits::REALIZE_GROUP_CAP;

/// How the poset underlying a realisation was built.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RealizationKind {
    /// `G ≅ S_k`: the antichain on `k` points, whose down-set lattice is boolean.
    Antichain,
    /// Coloured Cayley digraph encoded by chains of length `c + 2`.
    CayleyGadget,
}

/// A distributive lattice whose automorphism group is isomorphic to a given group.
#[derive(Clone, Debug)]
pub struct LatticeRealization {
    pub kind: RealizationKind,
    pub poset: FinitePoset,
    pub lattice: FiniteLattice,
    /// Generating set used for the Cayley digraph (empty for the antichain).
    pub generators: Vec<usize>,
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

/// Poset encoding of the Cayley digraph of `g` on `gens`.
///
/// Vertices are the group elements (the minimal elements). Each edge
/// `x → x·s_c` becomes a chain `e_1 < … < e_{c+2}` with `x < e_1` and
/// `x·s_c < e_{c+2}`, so chain length records the colour and the attachment
/// points record the direction.
pub fn cayley_gadget_poset(g: &CayleyGroup, gens: &[usize]) -> Result<FinitePoset> {
    let n = g.order();
    let mut labels: Vec<String> = (0..n).map(|x| format!("g{x}")).collect();
    let mut rel = Vec::new();
    for (c, &s) in gens.iter().enumerate() {
        for x in 0..n {
            let y = g.mul(x, s);
            let start = labels.len();
            for t in 0..c + 2 {
                labels.push(format!("e{x}.{c}.{t}"));
                if t > 0 {
                    rel.push((start + t - 1, start + t));
                }
            }
            rel.push((x, start));
            rel.push((y, start + c + 1));
        }
    }
    FinitePoset::from_relations(labels, &rel)
}

/// Realises `g` as the automorphism group of a finite distributive lattice,
/// verifying `Aut(D) ≅ G` before returning.
pub fn realize_group_as_lattice(g: &Group) -> Result<LatticeRealization> {
    cap_check("group order for lattice realisation", g.order(), REALIZE_GROUP_CAP)?;
    let table = g.to_cayley()?;
    let symmetric_degree = (1..=4).find(|&k| {
        factorial(k) == g.order()
            && CayleyGroup::symmetric(k)
                .ok()
                .map(|s| is_isomorphic(g, &Group::Table(s)).unwrap_or(false))
                .unwrap_or(false)
    });
    let (kind, poset, generators) = match symmetric_degree {
        Some(k) => (RealizationKind::Antichain, FinitePoset::antichain(k), Vec::new()),
        None => {
            let gens = table.generators().to_vec();
            let poset = cayley_gadget_poset(&table, &gens)?;
            (RealizationKind::CayleyGadget, poset, gens)
        }
    };
    let lattice = FiniteLattice::downsets(&poset)?;
    if !lattice.is_distributive() {
        return Err(Error::Verification("down-set lattice is not distributive".into()));
    }
    let aut = lattice_automorphisms_with(&lattice, lattice.len(), None)?;
    if !is_isomorphic_perm(&aut, g)? {
        return Err(Error::Verification(format!(
            "Aut(D) has order {} and is not isomorphic to the input group of order {}",
            aut.order(),
            g.order()
        )));
    }
    Ok(LatticeRealization {
        kind,
        poset,
        lattice,
        generators,
    })
}
