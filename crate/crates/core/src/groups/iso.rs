use super::Group;
use crate::error::{cap_check, Error, Result};
use crate::limits::ISOMORPHISM_CAP;
use crate::perm::PermGroup;

/// Extends `gens[i] ↦ images[i]` to a homomorphism on `⟨gens⟩`.
///
/// Returns the element map (entries outside `⟨gens⟩` are `usize::MAX`), or
/// `None` if the assignment is inconsistent.
pub fn extend_hom(src: &Group, dst: &Group, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    debug_assert_eq!(gens.len(), images.len());
    let mut map = vec![usize::MAX; src.order()];
    map[src.identity()] = dst.identity();
    let mut stack = vec![src.identity()];
    while let Some(x) = stack.pop() {
        let fx = map[x];
        for (&g, &img) in gens.iter().zip(images) {
            let y = src.mul(x, g);
            let fy = dst.mul(fx, img);
            if map[y] == usize::MAX {
                map[y] = fy;
                stack.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    Some(map)
}

fn injective_on_domain(map: &[usize], target_order: usize) -> bool {
    let mut seen = vec![false; target_order];
    for &y in map.iter().filter(|&&y| y != usize::MAX) {
        if seen[y] {
            return false;
        }
        seen[y] = true;
    }
    true
}

/// All isomorphisms `src → dst` as element maps (or the first one only).
///
/// Backtracks over images of the generators of `src`, candidates restricted
/// to elements of the same order; each prefix is checked for consistency
/// and injectivity on the subgroup it generates.
pub fn search_isomorphisms(
    src: &Group,
    dst: &Group,
    first_only: bool,
    cap: usize,
) -> Result<Vec<Vec<usize>>> {
    if src.order() != dst.order() {
        return Ok(Vec::new());
    }
    let gens = src.generators();
    let dst_orders: Vec<usize> = (0..dst.order()).map(|x| dst.element_order(x)).collect();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let o = src.element_order(g);
            (0..dst.order()).filter(|&y| dst_orders[y] == o).collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut images = Vec::with_capacity(gens.len());
    search(
        src,
        dst,
        &gens,
        &candidates,
        &mut images,
        first_only,
        cap,
        &mut out,
    )?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    src: &Group,
    dst: &Group,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
    first_only: bool,
    cap: usize,
    out: &mut Vec<Vec<usize>>,
) -> Result<bool> {
    let k = images.len();
    if k == gens.len() {
        let map = extend_hom(src, dst, gens, images).expect("prefix already checked");
        if map.iter().all(|&y| y != usize::MAX) && injective_on_domain(&map, dst.order()) {
            cap_check("number of isomorphisms", out.len() + 1, cap)?;
            out.push(map);
            return Ok(first_only);
        }
        return Ok(false);
    }
    for &c in &candidates[k] {
        images.push(c);
        let ok = match extend_hom(src, dst, &gens[..=k], images) {
            Some(map) => injective_on_domain(&map, dst.order()),
            None => false,
        };
        if ok && search(src, dst, gens, candidates, images, first_only, cap, out)? {
            images.pop();
            return Ok(true);
        }
        images.pop();
    }
    Ok(false)
}

/// Isomorphism test with order, abelianness and order-profile pruning.
pub fn is_isomorphic(a: &Group, b: &Group) -> Result<bool> {
    cap_check("group order for isomorphism", a.order(), ISOMORPHISM_CAP)?;
    cap_check("group order for isomorphism", b.order(), ISOMORPHISM_CAP)?;
    if a.order() != b.order() || a.is_abelian() != b.is_abelian() {
        return Ok(false);
    }
    if a.order_profile() != b.order_profile() {
        return Ok(false);
    }
    Ok(!search_isomorphisms(a, b, true, 1)?.is_empty())
}

/// Converts a permutation group to a table and tests isomorphism with `b`.
pub fn is_isomorphic_perm(a: &PermGroup, b: &Group) -> Result<bool> {
    let elements = a.try_elements(ISOMORPHISM_CAP)?;
    if elements.len() != b.order() {
        return Ok(false);
    }
    let table = Group::from_perm_group(a, ISOMORPHISM_CAP)?;
    is_isomorphic(&table, b)
}

impl Group {
    /// Every automorphism as an element map, refusing more than `cap` of them.
    pub fn automorphism_maps(&self, cap: usize) -> Result<Vec<Vec<usize>>> {
        search_isomorphisms(self, self, false, cap).map_err(|e| match e {
            Error::CapExceeded { size, cap, .. } => Error::CapExceeded {
                what: "automorphism group order",
                size,
                cap,
            },
            other => other,
        })
    }
}
