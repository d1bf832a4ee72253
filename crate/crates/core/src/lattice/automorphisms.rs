use super::FiniteLattice;
use crate::error::{cap_check, Result};
use crate::limits::LATTICE_AUT_CAP;
use crate::perm::{Perm, PermGroup};

/// Upper bound on the number of automorphisms collected by one search.
const MAX_AUTOMORPHISMS: usize = 50_000;

/// All lattice automorphisms of `l` with the default size cap.
pub fn lattice_automorphisms(l: &FiniteLattice) -> Result<PermGroup> {
    lattice_automorphisms_with(l, LATTICE_AUT_CAP, None)
}

/// Lattice automorphisms, optionally restricted to those preserving `colors`.
///
/// An automorphism of a finite lattice is determined by its action on the
/// join-irreducibles, so the search assigns images to those (matching rank
/// and cover-degree profiles, and the colour if given), extends by joins,
/// and keeps the extensions that are order isomorphisms.
pub fn lattice_automorphisms_with(
    l: &FiniteLattice,
    cap: usize,
    colors: Option<&[u64]>,
) -> Result<PermGroup> {
    let n = l.len();
    cap_check("lattice size for automorphism search", n, cap)?;
    let maps = automorphism_maps(l, colors)?;
    let perms = maps.into_iter().map(Perm::from_vec_unchecked).collect();
    Ok(PermGroup::from_elements_trusted(n, perms))
}

pub(crate) fn automorphism_maps(l: &FiniteLattice, colors: Option<&[u64]>) -> Result<Vec<Vec<usize>>> {
    let n = l.len();
    let rank = l.rank();
    let lower = l.lower_covers();
    let upper = l.upper_covers();
    let color = |x: usize| colors.map_or(0, |c| c[x]);
    let profile: Vec<(usize, usize, usize, u64)> = (0..n)
        .map(|x| (rank[x], lower[x].len(), upper[x].len(), color(x)))
        .collect();
    let j = l.join_irreducibles();
    let below: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..j.len()).filter(|&k| l.leq(j[k], x)).collect())
        .collect();

    let mut out = Vec::new();
    let mut images: Vec<usize> = Vec::with_capacity(j.len());
    let mut used = vec![false; n];
    search(
        l, &j, &profile, &below, colors, &mut images, &mut used, &mut out,
    )?;
    out.sort();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    l: &FiniteLattice,
    j: &[usize],
    profile: &[(usize, usize, usize, u64)],
    below: &[Vec<usize>],
    colors: Option<&[u64]>,
    images: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) -> Result<()> {
    let k = images.len();
    if k == j.len() {
        if let Some(map) = extend(l, images, below, colors) {
            cap_check("number of lattice automorphisms", out.len() + 1, MAX_AUTOMORPHISMS)?;
            out.push(map);
        }
        return Ok(());
    }
    let x = j[k];
    for &c in j {
        if used[c] || profile[c] != profile[x] {
            continue;
        }
        let consistent = (0..k).all(|t| {
            let (y, fy) = (j[t], images[t]);
            l.leq(x, y) == l.leq(c, fy) && l.leq(y, x) == l.leq(fy, c)
        });
        if !consistent {
            continue;
        }
        used[c] = true;
        images.push(c);
        search(l, j, profile, below, colors, images, used, out)?;
        images.pop();
        used[c] = false;
    }
    Ok(())
}

fn extend(
    l: &FiniteLattice,
    images: &[usize],
    below: &[Vec<usize>],
    colors: Option<&[u64]>,
) -> Option<Vec<usize>> {
    let n = l.len();
    let mut map = vec![0usize; n];
    let mut seen = vec![false; n];
    for x in 0..n {
        let fx = below[x]
            .iter()
            .fold(l.bottom(), |acc, &t| l.join(acc, images[t]));
        if seen[fx] {
            return None;
        }
        if let Some(c) = colors {
            if c[x] != c[fx] {
                return None;
            }
        }
        seen[fx] = true;
        map[x] = fx;
    }
    for a in 0..n {
        for b in 0..n {
            if l.leq(a, b) != l.leq(map[a], map[b]) {
                return None;
            }
        }
    }
    Some(map)
}
