use serde::Serialize;

use crate::algebra::SchurRing;
use crate::error::{cap_check, Error, Result};
use crate::limits::BLOCK_CAP;
use crate::perm::{Perm, PermGroup};

/// Most morphisms a single search will collect.
pub const MORPHISM_CAP: usize = 200_000;

/// A block bijection `T_i ↦ T'_{σ(i)}` carrying structure constants across.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SRingMorphism {
    pub sigma: Vec<usize>,
}

impl SRingMorphism {
    pub fn is_identity(&self) -> bool {
        self.sigma.iter().enumerate().all(|(i, &s)| i == s)
    }
}

struct Tensor {
    d: usize,
    lam: Vec<u64>,
}

impl Tensor {
    fn of(s: &SchurRing) -> Self {
        Tensor {
            d: s.dimension(),
            lam: s.tensor(),
        }
    }

    #[inline]
    fn at(&self, i: usize, j: usize, k: usize) -> u64 {
        self.lam[(i * self.d + j) * self.d + k]
    }

    /// Isomorphism-invariant data attached to each block.
    fn profiles(&self) -> Vec<Vec<u64>> {
        let d = self.d;
        (0..d)
            .map(|i| {
                let mut rows = Vec::with_capacity(3 * d * d);
                let mut part = |f: &dyn Fn(usize, usize) -> u64| {
                    let mut v: Vec<u64> = (0..d * d).map(|x| f(x / d, x % d)).collect();
                    v.sort_unstable();
                    rows.extend(v);
                };
                part(&|j, k| self.at(i, j, k));
                part(&|j, k| self.at(j, i, k));
                part(&|j, k| self.at(j, k, i));
                rows.push(self.at(i, i, i));
                rows
            })
            .collect()
    }
}

/// Every structure-constant-preserving bijection from the blocks of `a` to
/// those of `b`, fixing the identity block, in lexicographic order.
fn block_bijections(a: &SchurRing, b: &SchurRing, first_only: bool) -> Result<Vec<Vec<usize>>> {
    let d = a.dimension();
    cap_check("S-ring dimension", d, BLOCK_CAP)?;
    cap_check("S-ring dimension", b.dimension(), BLOCK_CAP)?;
    if d != b.dimension() || a.field() != b.field() || a.group().order() != b.group().order() {
        return Ok(Vec::new());
    }
    let (ta, tb) = (Tensor::of(a), Tensor::of(b));
    let (pa, pb) = (ta.profiles(), tb.profiles());
    let mut sa = pa.clone();
    let mut sb = pb.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return Ok(Vec::new());
    }
    let candidates: Vec<Vec<usize>> = (0..d)
        .map(|i| (0..d).filter(|&j| pa[i] == pb[j] && (i == 0) == (j == 0)).collect())
        .collect();
    let mut out = Vec::new();
    let mut sigma = vec![usize::MAX; d];
    let mut used = vec![false; d];
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by_key(|&i| (candidates[i].len(), i));
    extend(&ta, &tb, &candidates, &order, 0, &mut sigma, &mut used, &mut out, first_only)?;
    out.sort();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    ta: &Tensor,
    tb: &Tensor,
    candidates: &[Vec<usize>],
    order: &[usize],
    depth: usize,
    sigma: &mut [usize],
    used: &mut [bool],
    out: &mut Vec<Vec<usize>>,
    first_only: bool,
) -> Result<()> {
    if depth == order.len() {
        cap_check("S-ring morphisms", out.len() + 1, MORPHISM_CAP)?;
        out.push(sigma.to_vec());
        return Ok(());
    }
    let i = order[depth];
    for &t in &candidates[i] {
        if used[t] {
            continue;
        }
        sigma[i] = t;
        if consistent(ta, tb, &order[..=depth], sigma, i) {
            used[t] = true;
            extend(ta, tb, candidates, order, depth + 1, sigma, used, out, first_only)?;
            used[t] = false;
            if first_only && !out.is_empty() {
                sigma[i] = usize::MAX;
                return Ok(());
            }
        }
    }
    sigma[i] = usize::MAX;
    Ok(())
}

/// Checks every triple among the assigned blocks that involves `i`.
fn consistent(ta: &Tensor, tb: &Tensor, assigned: &[usize], sigma: &[usize], i: usize) -> bool {
    for &j in assigned {
        for &k in assigned {
            let triples = [(i, j, k), (j, i, k), (j, k, i)];
            for (x, y, z) in triples {
                if ta.at(x, y, z) != tb.at(sigma[x], sigma[y], sigma[z]) {
                    return false;
                }
            }
        }
    }
    true
}

fn check_sizes(a: &SchurRing, b: &SchurRing, sigma: &[usize]) -> Result<()> {
    for (i, &s) in sigma.iter().enumerate() {
        if a.blocks()[i].len() != b.blocks()[s].len() {
            return Err(Error::Verification(format!(
                "morphism maps block {i} of size {} to one of size {}",
                a.blocks()[i].len(),
                b.blocks()[s].len()
            )));
        }
    }
    Ok(())
}

/// `Aut(S)` as a permutation group on the blocks.
pub fn aut_sring(s: &SchurRing) -> Result<PermGroup> {
    let maps = block_bijections(s, s, false)?;
    for m in &maps {
        check_sizes(s, s, m)?;
    }
    let perms = maps.into_iter().map(Perm::from_vec_unchecked).collect();
    Ok(PermGroup::from_elements_trusted(s.dimension(), perms))
}

/// All S-ring isomorphisms `a → b`; empty when they are not isomorphic.
pub fn sring_isomorphisms(a: &SchurRing, b: &SchurRing) -> Result<Vec<SRingMorphism>> {
    let maps = block_bijections(a, b, false)?;
    for m in &maps {
        check_sizes(a, b, m)?;
    }
    Ok(maps.into_iter().map(|sigma| SRingMorphism { sigma }).collect())
}

/// Whether some isomorphism `a → b` exists.
pub fn are_isomorphic(a: &SchurRing, b: &SchurRing) -> Result<bool> {
    Ok(!block_bijections(a, b, true)?.is_empty())
}
