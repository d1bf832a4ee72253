use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{CoefficientField, SchurRing};
use crate::error::{Error, Result};
use crate::groups::{automorphism_generators, noncharacteristic_subgroup, Group, GroupAutomorphism, Subgroup};

/// Two Cayley-isomorphic S-rings `{1, H∖1, G∖H}` and `{1, φ(H)∖1, G∖φ(H)}`
/// that differ as sets of block sums.
#[derive(Clone, Debug)]
pub struct ConvPair {
    pub s1: SchurRing,
    pub s2: SchurRing,
    pub subgroup: Subgroup,
    pub image: Subgroup,
    pub automorphism: GroupAutomorphism,
    /// `φ(T_i) = T'_{block_map[i]}`.
    pub block_map: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvPairReport {
    pub group: String,
    pub subgroup: Vec<String>,
    pub image: Vec<String>,
    pub automorphism: Vec<usize>,
    pub s1_blocks: Vec<Vec<usize>>,
    pub s2_blocks: Vec<Vec<usize>>,
    pub block_map: Vec<usize>,
}

fn three_blocks(g: &Arc<Group>, h: &Subgroup, field: CoefficientField) -> Result<SchurRing> {
    let e = g.identity();
    let inner: Vec<usize> = h.elements().iter().copied().filter(|&x| x != e).collect();
    let outer: Vec<usize> = (0..g.order()).filter(|&x| !h.contains(x)).collect();
    SchurRing::from_blocks(g.clone(), field, vec![vec![e], inner, outer])
}

pub fn conv_pair(g: &Arc<Group>, field: CoefficientField) -> Result<ConvPair> {
    if g.is_cyclic() {
        return Err(Error::Cyclic(g.describe()));
    }
    let h = noncharacteristic_subgroup(g)?;
    let phi = automorphism_generators(g)?
        .into_iter()
        .find(|a| h.map(|x| a.apply(x)) != h)
        .ok_or_else(|| Error::Verification("no generator moves the subgroup".into()))?;
    let image = h.map(|x| phi.apply(x));
    let s1 = three_blocks(g, &h, field)?;
    let s2 = three_blocks(g, &image, field)?;
    if s1.partition().fingerprint() == s2.partition().fingerprint() {
        return Err(Error::Verification("the two S-rings coincide".into()));
    }
    let block_map: Vec<usize> = s1
        .blocks()
        .iter()
        .map(|b| s2.partition().block_of(phi.apply(b[0])))
        .collect();
    for (i, b) in s1.blocks().iter().enumerate() {
        let mut img: Vec<usize> = b.iter().map(|&x| phi.apply(x)).collect();
        img.sort_unstable();
        if img != s2.blocks()[block_map[i]] {
            return Err(Error::Verification(format!("phi does not carry block {i} onto a block")));
        }
    }
    Ok(ConvPair {
        s1,
        s2,
        subgroup: h,
        image,
        automorphism: phi,
        block_map,
    })
}

impl ConvPair {
    pub fn report(&self) -> ConvPairReport {
        let g = self.s1.group();
        let labels = |h: &Subgroup| h.elements().iter().map(|&x| g.label(x)).collect();
        ConvPairReport {
            group: g.describe(),
            subgroup: labels(&self.subgroup),
            image: labels(&self.image),
            automorphism: self.automorphism.images().to_vec(),
            s1_blocks: self.s1.blocks().to_vec(),
            s2_blocks: self.s2.blocks().to_vec(),
            block_map: self.block_map.clone(),
        }
    }
}
