use std::sync::Arc;

use super::{factorize, orbits_of_perms, CyclicProductGroup, Group, Subgroup};
use crate::error::{Error, Result};
use crate::limits::{ISOMORPHISM_CAP, SUBGROUP_CAP};
use crate::perm::Perm;

/// An automorphism, stored both as images of the group's generators and as
/// the induced permutation of element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupAutomorphism {
    images: Vec<usize>,
    perm: Perm,
}

impl GroupAutomorphism {
    /// Extends generator images to a map and checks it is a bijective homomorphism.
    pub fn from_images(g: &Group, images: Vec<usize>) -> Result<Self> {
        let gens = g.generators();
        if gens.len() != images.len() {
            return Err(Error::InvalidAutomorphism(format!(
                "expected {} generator images, got {}",
                gens.len(),
                images.len()
            )));
        }
        for (&s, &t) in gens.iter().zip(&images) {
            if t >= g.order() || g.element_order(s) != g.element_order(t) {
                return Err(Error::InvalidAutomorphism(format!(
                    "image {t} of generator {s} has the wrong order"
                )));
            }
        }
        let map = match g {
            // Matching orders already satisfy every relation of the standard basis.
            Group::Product(p) => linear_extension(p, &images),
            Group::Table(_) => super::extend_hom(g, g, &gens, &images)
                .ok_or_else(|| Error::InvalidAutomorphism("images violate a relation".into()))?,
        };
        if map.contains(&usize::MAX) {
            return Err(Error::InvalidAutomorphism("generators do not span".into()));
        }
        let perm = Perm::new(map)
            .map_err(|_| Error::InvalidAutomorphism("induced map is not injective".into()))?;
        Ok(GroupAutomorphism { images, perm })
    }

    /// Checks that an element permutation is a homomorphism.
    pub fn from_perm(g: &Group, perm: Perm) -> Result<Self> {
        if perm.degree() != g.order() {
            return Err(Error::InvalidAutomorphism("degree mismatch".into()));
        }
        let gens = g.generators();
        for x in 0..g.order() {
            for &s in &gens {
                if perm.apply(g.mul(x, s)) != g.mul(perm.apply(x), perm.apply(s)) {
                    return Err(Error::InvalidAutomorphism(format!(
                        "not a homomorphism at ({x}, {s})"
                    )));
                }
            }
        }
        let images = gens.iter().map(|&s| perm.apply(s)).collect();
        Ok(GroupAutomorphism { images, perm })
    }

    pub(crate) fn from_parts_unchecked(images: Vec<usize>, perm: Perm) -> Self {
        GroupAutomorphism { images, perm }
    }

    pub fn identity(g: &Group) -> Self {
        GroupAutomorphism {
            images: g.generators(),
            perm: Perm::identity(g.order()),
        }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.perm.apply(x)
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn perm(&self) -> &Perm {
        &self.perm
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GroupAutomorphism) -> GroupAutomorphism {
        GroupAutomorphism {
            images: other.images.iter().map(|&y| self.perm.apply(y)).collect(),
            perm: self.perm.compose(&other.perm),
        }
    }

    pub fn power(&self, k: u64) -> GroupAutomorphism {
        let n = self.perm.degree();
        let mut acc = Perm::identity(n);
        let mut base = self.perm.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = base.compose(&acc);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        GroupAutomorphism {
            images: self.preimage_generators().iter().map(|&s| acc.apply(s)).collect(),
            perm: acc,
        }
    }

    /// The generators whose images are stored, recovered from the permutation.
    fn preimage_generators(&self) -> Vec<usize> {
        let inv = self.perm.inverse();
        self.images.iter().map(|&y| inv.apply(y)).collect()
    }

    pub fn order(&self) -> usize {
        self.perm.order()
    }
}

/// `Σ d_i e_i ↦ Σ d_i images[i]` over the nontrivial coordinates, each
/// element reached from one with a smaller index.
fn linear_extension(p: &CyclicProductGroup, images: &[usize]) -> Vec<usize> {
    let mut coords: Vec<(usize, usize, usize)> = (0..p.rank())
        .filter(|&i| p.moduli()[i] > 1)
        .zip(images)
        .map(|(i, &img)| (p.generator(i), p.moduli()[i] as usize, img))
        .collect();
    coords.sort_unstable();
    let mut map = vec![0; p.order()];
    for x in 1..p.order() {
        let &(s, _, img) = coords
            .iter()
            .find(|&&(s, m, _)| (x / s) % m != 0)
            .expect("nonzero element has a nonzero digit");
        map[x] = p.add(map[x - s], img);
    }
    map
}

/// One prime-power cyclic factor of a `Z_{m_i}` coordinate.
#[derive(Clone, Copy, Debug)]
struct PrimaryCoord {
    coord: usize,
    e: u32,
    q: u64,
}

/// Sylow component: coordinates carrying a `p`-part, sorted by exponent.
#[derive(Clone, Debug)]
struct Component {
    p: u64,
    coords: Vec<PrimaryCoord>,
}

fn components(g: &CyclicProductGroup) -> Vec<Component> {
    let mut comps: Vec<Component> = Vec::new();
    for (i, &m) in g.moduli().iter().enumerate() {
        for (p, e) in factorize(m) {
            let q = p.pow(e);
            let c = PrimaryCoord { coord: i, e, q };
            match comps.iter_mut().find(|c| c.p == p) {
                Some(comp) => comp.coords.push(c),
                None => comps.push(Component { p, coords: vec![c] }),
            }
        }
    }
    comps.sort_by_key(|c| c.p);
    for c in &mut comps {
        c.coords.sort_by_key(|pc| (pc.e, pc.coord));
    }
    comps
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    acc
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m as i128, (a % m) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "{a} not invertible mod {m}");
    t.rem_euclid(m as i128) as u64
}

/// A generator of the cyclic group `(Z/p^e)^*`, `p` odd.
fn primitive_root(p: u64, e: u32) -> u64 {
    let phi_p = p - 1;
    let prime_factors: Vec<u64> = factorize(phi_p).into_iter().map(|(f, _)| f).collect();
    let g = (2..p)
        .find(|&g| prime_factors.iter().all(|&f| mod_pow(g, phi_p / f, p) != 1))
        .unwrap_or(1);
    if e >= 2 && mod_pow(g, phi_p, p * p) == 1 {
        g + p
    } else {
        g
    }
}

/// Linear map on one Sylow component: `f_c ↦ Σ_r m[r][c] f_r`.
fn apply_component(g: &CyclicProductGroup, comp: &Component, m: &[Vec<u64>], x: usize) -> usize {
    let digits = g.digits(x);
    let v: Vec<u64> = comp
        .coords
        .iter()
        .map(|pc| digits[pc.coord] % pc.q)
        .collect();
    let mut out: Vec<i64> = digits.iter().map(|&d| d as i64).collect();
    for (r, pc) in comp.coords.iter().enumerate() {
        let q = pc.q as u128;
        let new_v = m[r]
            .iter()
            .zip(&v)
            .fold(0u128, |acc, (&a, &b)| (acc + a as u128 * b as u128) % q) as u64;
        // Replace the p-part of the digit, keeping the coprime parts (CRT).
        let modulus = g.moduli()[pc.coord];
        let cof = modulus / pc.q;
        let unit = cof * mod_inverse(cof % pc.q, pc.q) % modulus;
        let old = v[r];
        let d = out[pc.coord].rem_euclid(modulus as i64) as u64;
        let delta = (new_v + pc.q - old) % pc.q;
        out[pc.coord] = ((d as u128 + delta as u128 * unit as u128) % modulus as u128) as i64;
    }
    g.index_of(&out)
}

fn automorphism_from_component(
    group: &Group,
    g: &CyclicProductGroup,
    comp: &Component,
    m: &[Vec<u64>],
) -> GroupAutomorphism {
    let images: Vec<usize> = group
        .generators()
        .iter()
        .map(|&s| apply_component(g, comp, m, s))
        .collect();
    GroupAutomorphism::from_images(group, images).expect("generator family yields automorphisms")
}

/// Generators of `Aut(G)` for an abelian group given as a product of cyclic groups.
///
/// Each coordinate is split into prime-power parts. Per Sylow component with
/// exponents `e_1 ≤ … ≤ e_k` the family is: unit multiplications of each
/// factor, transvections `f_j ↦ f_j + p^{max(0, e_i - e_j)} f_i`, and swaps of
/// factors with equal exponent.
pub fn aut_generators(group: &Group) -> Result<Vec<GroupAutomorphism>> {
    let g = group.as_product().ok_or(Error::InvalidGroup(
        "automorphism generators need a product of cyclic groups".into(),
    ))?;
    let mut out = Vec::new();
    for comp in components(g) {
        let k = comp.coords.len();
        let p = comp.p;
        let identity: Vec<Vec<u64>> = (0..k)
            .map(|r| (0..k).map(|c| u64::from(r == c)).collect())
            .collect();
        for (i, pc) in comp.coords.iter().enumerate() {
            let units: Vec<u64> = if p == 2 {
                match pc.e {
                    1 => vec![],
                    2 => vec![pc.q - 1],
                    _ => vec![pc.q - 1, 5],
                }
            } else {
                vec![primitive_root(p, pc.e) % pc.q]
            };
            for u in units {
                if u == 1 {
                    continue;
                }
                let mut m = identity.clone();
                m[i][i] = u;
                out.push(automorphism_from_component(group, g, &comp, &m));
            }
        }
        for i in 0..k {
            for j in 0..k {
                if i == j {
                    continue;
                }
                let (ei, ej) = (comp.coords[i].e, comp.coords[j].e);
                let mut m = identity.clone();
                m[i][j] = p.pow(ei.saturating_sub(ej));
                out.push(automorphism_from_component(group, g, &comp, &m));
            }
        }
        for i in 0..k {
            for j in i + 1..k {
                if comp.coords[i].e == comp.coords[j].e {
                    let mut m = identity.clone();
                    m.swap(i, j);
                    out.push(automorphism_from_component(group, g, &comp, &m));
                }
            }
        }
    }
    out.retain(|a| !a.perm().is_identity());
    out.dedup();
    Ok(out)
}

/// All automorphisms by backtracking over generator images.
pub fn automorphisms_brute_force(group: &Group, cap: usize) -> Result<Vec<GroupAutomorphism>> {
    let gens = group.generators();
    Ok(group
        .automorphism_maps(cap)?
        .into_iter()
        .map(|map| {
            let images = gens.iter().map(|&s| map[s]).collect();
            GroupAutomorphism::from_parts_unchecked(images, Perm::from_vec_unchecked(map))
        })
        .collect())
}

/// Orbits of the group generated by `gens` on the elements of `g`.
pub fn orbits(g: &Group, gens: &[GroupAutomorphism]) -> Vec<Vec<usize>> {
    let perms: Vec<Perm> = gens.iter().map(|a| a.perm().clone()).collect();
    orbits_of_perms(g.order(), &perms)
}

/// A generating set of `Aut(G)`: structured generators for products,
/// every automorphism for multiplication tables.
pub fn automorphism_generators(g: &Group) -> Result<Vec<GroupAutomorphism>> {
    match g {
        Group::Product(_) => aut_generators(g),
        Group::Table(_) => automorphisms_brute_force(g, ISOMORPHISM_CAP * 64),
    }
}

/// Whether every automorphism of the parent maps `h` onto itself.
pub fn is_characteristic(h: &Subgroup) -> Result<bool> {
    let g = h.parent();
    let gens = h.generators();
    let auts = automorphism_generators(g)?;
    Ok(auts
        .iter()
        .all(|a| gens.iter().all(|&x| h.contains(a.apply(x)))))
}

/// A subgroup that is not characteristic.
///
/// For products: the smallest-exponent factor of a Sylow component with at
/// least two factors. Otherwise the subgroup lattice is searched.
pub fn noncharacteristic_subgroup(g: &Arc<Group>) -> Result<Subgroup> {
    if g.is_cyclic() {
        return Err(Error::Cyclic(format!(
            "{} has only characteristic subgroups",
            g.describe()
        )));
    }
    if let Some(prod) = g.as_product() {
        if let Some(comp) = components(prod).into_iter().find(|c| c.coords.len() >= 2) {
            let pc = comp.coords[0];
            let m = prod.moduli()[pc.coord];
            let x = prod.scale(prod.generator(pc.coord), (m / pc.q) as i64);
            let h = Subgroup::generated(g.clone(), &[x])?;
            if !is_characteristic(&h)? {
                return Ok(h);
            }
        }
    }
    for h in super::all_subgroups(g, SUBGROUP_CAP)? {
        if !is_characteristic(&h)? {
            return Ok(h);
        }
    }
    Err(Error::Verification(format!(
        "no non-characteristic subgroup found in {}",
        g.describe()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::CayleyGroup;
    use crate::perm::PermGroup;

    fn generated_order(g: &Group) -> usize {
        let gens: Vec<Perm> = aut_generators(g)
            .unwrap()
            .iter()
            .map(|a| a.perm().clone())
            .collect();
        PermGroup::new(g.order(), gens).unwrap().order()
    }

    #[test]
    fn z2z8_has_six_orbits() {
        let g = Group::product(vec![2, 8]).unwrap();
        assert_eq!(orbits(&g, &aut_generators(&g).unwrap()).len(), 6);
    }

    #[test]
    fn z5_single_generator() {
        let g = Group::cyclic(5).unwrap();
        let gens = aut_generators(&g).unwrap();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].apply(1), 2);
        assert_eq!(orbits(&g, &gens), vec![vec![0], vec![1, 2, 3, 4]]);
    }

    #[test]
    fn z9_orbits() {
        let g = Group::cyclic(9).unwrap();
        let o = orbits(&g, &aut_generators(&g).unwrap());
        assert_eq!(o, vec![vec![0], vec![3, 6], vec![1, 2, 4, 5, 7, 8]]);
    }

    #[test]
    fn gl23_order() {
        assert_eq!(generated_order(&Group::product(vec![3, 3]).unwrap()), 48);
    }

    #[test]
    fn mixed_moduli_use_crt() {
        // Z6 × Z2 ≅ Z3 × Z2 × Z2, |Aut| = 2 · 6.
        let g = Group::product(vec![6, 2]).unwrap();
        assert_eq!(generated_order(&g), 12);
        assert_eq!(automorphisms_brute_force(&g, 100).unwrap().len(), 12);
    }

    #[test]
    fn generated_group_matches_brute_force() {
        for moduli in [vec![2, 8], vec![4, 4], vec![2, 2, 2], vec![2, 4], vec![3, 9], vec![16]] {
            let g = Group::product(moduli.clone()).unwrap();
            let brute = automorphisms_brute_force(&g, 10_000).unwrap();
            assert_eq!(generated_order(&g), brute.len(), "{moduli:?}");
        }
    }

    #[test]
    fn characteristic_checks() {
        let z12 = Arc::new(Group::cyclic(12).unwrap());
        for h in crate::groups::all_subgroups(&z12, 100).unwrap() {
            assert!(is_characteristic(&h).unwrap());
        }
        let v = Arc::new(Group::product(vec![2, 2]).unwrap());
        let h = Subgroup::generated(v, &[1]).unwrap();
        assert!(!is_characteristic(&h).unwrap());
    }

    #[test]
    fn noncharacteristic_recipe() {
        let g = Arc::new(Group::product(vec![3, 27]).unwrap());
        let h = noncharacteristic_subgroup(&g).unwrap();
        assert_eq!(h.order(), 3);
        assert_eq!(h.elements(), &[0, 1, 2]);
        assert!(matches!(
            noncharacteristic_subgroup(&Arc::new(Group::cyclic(6).unwrap())),
            Err(Error::Cyclic(_))
        ));
        let d4 = Arc::new(Group::Table(CayleyGroup::dihedral(4).unwrap()));
        assert!(!is_characteristic(&noncharacteristic_subgroup(&d4).unwrap()).unwrap());
    }

    #[test]
    fn power_and_compose() {
        let g = Group::cyclic(7).unwrap();
        let a = GroupAutomorphism::from_images(&g, vec![3]).unwrap();
        assert_eq!(a.order(), 6);
        assert_eq!(a.power(2).apply(1), 2);
        assert_eq!(a.compose(&a).apply(1), 2);
        assert_eq!(a.power(6).perm(), &Perm::identity(7));
        assert!(GroupAutomorphism::from_images(&g, vec![0]).is_err());
    }
}
