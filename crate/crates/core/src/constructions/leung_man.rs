use std::sync::Arc;

use num_rational::BigRational;

use crate::algebra::{project_pi, AlgebraElement, CoefficientField, Quotient, SchurPartition, SchurRing, Span};
use crate::error::{Error, Result};
use crate::groups::{orbits, Group, GroupAutomorphism, Subgroup};

/// The orbits of `⟨gens⟩ ≤ Aut(G)`.
pub fn cyclotomic(group: Arc<Group>, gens: &[GroupAutomorphism], field: CoefficientField) -> Result<SchurRing> {
    for a in gens {
        if a.perm().degree() != group.order() {
            return Err(Error::GroupMismatch);
        }
    }
    let blocks = orbits(&group, gens);
    SchurRing::from_blocks(group, field, blocks)
}

/// A Schur ring over a group `A` together with an injective homomorphism
/// `A → G`, listed as the image of each element of `A`.
#[derive(Clone, Copy, Debug)]
pub struct Embedded<'a> {
    pub sring: &'a SchurRing,
    pub map: &'a [usize],
}

impl Embedded<'_> {
    fn check_into(&self, g: &Group) -> Result<Vec<usize>> {
        let a = self.sring.group();
        if self.map.len() != a.order() {
            return Err(Error::Precondition("embedding has the wrong length".into()));
        }
        let mut image: Vec<usize> = self.map.to_vec();
        if image.iter().any(|&y| y >= g.order()) {
            return Err(Error::Precondition("embedding leaves the group".into()));
        }
        for x in 0..a.order() {
            for y in 0..a.order() {
                if self.map[a.mul(x, y)] != g.mul(self.map[x], self.map[y]) {
                    return Err(Error::Precondition("embedding is not a homomorphism".into()));
                }
            }
        }
        image.sort_unstable();
        image.dedup();
        if image.len() != a.order() {
            return Err(Error::Precondition("embedding is not injective".into()));
        }
        Ok(image)
    }

    fn blocks(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        self.sring
            .blocks()
            .iter()
            .map(|b| b.iter().map(|&x| self.map[x]).collect())
    }
}

/// `x ↦ x·(n/a)`, embedding `Z_a` onto the order-`a` subgroup of `Z_n`.
pub fn cyclic_embedding(a: usize, n: usize) -> Vec<usize> {
    (0..a).map(|x| x * (n / a)).collect()
}

/// Blocks `C_i D_j` for `G = H × K` with S-rings over the two factors.
pub fn dot_product(group: Arc<Group>, h: Embedded<'_>, k: Embedded<'_>, field: CoefficientField) -> Result<SchurRing> {
    let hs = h.check_into(&group)?;
    let ks = k.check_into(&group)?;
    let mut mark = vec![false; group.order()];
    for &x in &hs {
        mark[x] = true;
    }
    if ks.iter().filter(|&&y| mark[y]).count() != 1 || hs.len() * ks.len() != group.order() {
        return Err(Error::Precondition("factors are not complementary".into()));
    }
    if !hs.iter().all(|&x| ks.iter().all(|&y| group.mul(x, y) == group.mul(y, x))) {
        return Err(Error::Precondition("factors do not commute".into()));
    }
    let kb: Vec<Vec<usize>> = k.blocks().collect();
    let mut blocks = Vec::new();
    for c in h.blocks() {
        for d in &kb {
            blocks.push(c.iter().flat_map(|&x| d.iter().map(move |&y| (x, y))).map(|(x, y)| group.mul(x, y)).collect());
        }
    }
    SchurRing::from_blocks(group, field, blocks)
}

/// `S_K ∧ S_{G/H}` for `1 < H ≤ K < G`, `H` normal in `G`, with `H` an
/// S-subgroup of `S_K` and `K/H` an S-subgroup of `S_{G/H}`.
///
/// `s_k` lives on `K` (embedded in `G`) and `s_quot` on `q.group()`. The
/// factors must satisfy `π(S_K) = F(K/H) ∩ S_{G/H}`; the blocks are those of
/// `S_K` together with `π^{-1}(D_j)` for the `D_j` outside `K/H`.
pub fn wedge_product(s_k: Embedded<'_>, s_quot: &SchurRing, q: &Quotient) -> Result<SchurRing> {
    let g = q.parent().clone();
    let field = s_k.sring.field();
    if s_quot.field() != field {
        return Err(Error::FieldMismatch("wedge factors over different fields".into()));
    }
    if **s_quot.group() != **q.group() {
        return Err(Error::GroupMismatch);
    }
    let ks = s_k.check_into(&g)?;
    let k = Subgroup::from_elements(g.clone(), ks)?;
    let h = q.subgroup();
    if h.is_trivial() || k.is_full() || !h.is_subset_of(&k) {
        return Err(Error::Precondition("wedge needs 1 < H <= K < G".into()));
    }
    let kq = q.image(k.elements());
    let mut in_kq = vec![false; q.group().order()];
    for &c in &kq {
        in_kq[c] = true;
    }

    let m = q.group().order();
    let dense = |x: &AlgebraElement| -> Vec<BigRational> { x.to_dense() };
    let mut projected = Span::new(field, m);
    for c in s_k.blocks() {
        let x = project_pi(&AlgebraElement::simple(g.clone(), field, &c), q)?;
        projected.insert(&dense(&x));
    }
    let mut inside = Span::new(field, m);
    let mut outside: Vec<&Vec<usize>> = Vec::new();
    for d in s_quot.blocks() {
        if d.iter().all(|&c| in_kq[c]) {
            inside.insert(&dense(&AlgebraElement::simple(q.group().clone(), field, d)));
        } else {
            outside.push(d);
        }
    }
    if !projected.same_as(&inside) {
        return Err(Error::IncompatibleWedge {
            projected: projected.dim(),
            intersection: inside.dim(),
        });
    }
    let mut in_h = vec![false; g.order()];
    for &x in h.elements() {
        in_h[x] = true;
    }
    let splits = |b: &[usize], inside: &dyn Fn(usize) -> bool| {
        let c = b.iter().filter(|&&x| inside(x)).count();
        c != 0 && c != b.len()
    };
    if s_k.blocks().any(|b| splits(&b, &|x| in_h[x])) {
        return Err(Error::Precondition("H is not an S-subgroup of S_K".into()));
    }
    if s_quot.blocks().iter().any(|d| splits(d, &|c| in_kq[c])) {
        return Err(Error::Precondition("K/H is not an S-subgroup of S_quot".into()));
    }
    let mut blocks: Vec<Vec<usize>> = s_k.blocks().collect();
    for d in outside {
        blocks.push(q.preimage(d));
    }
    let p = SchurPartition::new(g, blocks)
        .map_err(|e| Error::Precondition(format!("wedge blocks do not partition G: {e}")))?;
    SchurRing::new(p, field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::aut_generators;
    use crate::perm::Perm;

    const Q: CoefficientField = CoefficientField::Rationals;

    fn z(n: u64) -> Arc<Group> {
        Arc::new(Group::cyclic(n).unwrap())
    }

    #[test]
    fn cyclotomic_by_negation() {
        let g = z(8);
        let neg = GroupAutomorphism::from_perm(&g, Perm::new((0..8).map(|x| (8 - x) % 8).collect()).unwrap()).unwrap();
        let s = cyclotomic(g, &[neg], Q).unwrap();
        assert_eq!(s.blocks(), &[vec![0], vec![4], vec![1, 7], vec![2, 6], vec![3, 5]]);
    }

    #[test]
    fn cyclotomic_full_aut_is_rational() {
        let g = Arc::new(Group::product(vec![2, 4]).unwrap());
        let s = cyclotomic(g.clone(), &aut_generators(&g).unwrap(), Q).unwrap();
        assert!(s.is_rational().unwrap());
    }

    #[test]
    fn dot_of_full_algebras_is_full() {
        let g = z(6);
        let f2 = SchurRing::full(z(2), Q);
        let f3 = SchurRing::full(z(3), Q);
        let e2 = cyclic_embedding(2, 6);
        let e3 = cyclic_embedding(3, 6);
        let s = dot_product(g.clone(), Embedded { sring: &f2, map: &e2 }, Embedded { sring: &f3, map: &e3 }, Q).unwrap();
        assert_eq!(s, SchurRing::full(g, Q));
    }

    #[test]
    fn dot_over_z3_squared() {
        let g = Arc::new(Group::product(vec![3, 3]).unwrap());
        let p = g.as_product().unwrap().clone();
        let first: Vec<usize> = (0..3).map(|i| p.index_of(&[i, 0])).collect();
        let second: Vec<usize> = (0..3).map(|i| p.index_of(&[0, i])).collect();
        let t = SchurRing::trivial(z(3), Q);
        let f = SchurRing::full(z(3), Q);
        let s = dot_product(g, Embedded { sring: &t, map: &first }, Embedded { sring: &f, map: &second }, Q).unwrap();
        assert_eq!(s.dimension(), 6);
    }

    #[test]
    fn dot_rejects_overlap() {
        let g = z(4);
        let t = SchurRing::trivial(z(2), Q);
        let e = cyclic_embedding(2, 4);
        let r = dot_product(g, Embedded { sring: &t, map: &e }, Embedded { sring: &t, map: &e }, Q);
        assert!(r.is_err());
    }

    #[test]
    fn wedge_z8() {
        let g = z(8);
        let h = Subgroup::generated(g.clone(), &[4]).unwrap();
        let q = Quotient::new(&h).unwrap();
        let sk = SchurRing::trivial(z(4), Q);
        let emb = cyclic_embedding(4, 8);
        let sq = SchurRing::trivial(z(4), Q);
        // π(S_K) contains the coset 2 + H, which is not a block sum of S_quot
        let r = wedge_product(Embedded { sring: &sk, map: &emb }, &sq, &q);
        assert!(matches!(r, Err(Error::IncompatibleWedge { .. })));

        let sk = SchurRing::trivial(z(2), Q);
        let emb = cyclic_embedding(2, 8);
        let s = wedge_product(Embedded { sring: &sk, map: &emb }, &sq, &q).unwrap();
        assert_eq!(s.blocks(), &[vec![0], vec![4], vec![1, 2, 3, 5, 6, 7]]);
    }

    #[test]
    fn incompatible_full_over_trivial() {
        let g = z(8);
        let h = Subgroup::generated(g.clone(), &[4]).unwrap();
        let q = Quotient::new(&h).unwrap();
        let sk = SchurRing::full(z(4), Q);
        let emb = cyclic_embedding(4, 8);
        let sq = SchurRing::trivial(z(4), Q);
        let r = wedge_product(Embedded { sring: &sk, map: &emb }, &sq, &q);
        assert!(matches!(r, Err(Error::IncompatibleWedge { .. })));
    }

    #[test]
    fn wedge_in_characteristic_three() {
        // Ex: Z12 over F3 with H = K = ⟨4⟩ and the full algebra on Z12/H
        let f3 = CoefficientField::prime(3).unwrap();
        let g = z(12);
        let h = Subgroup::generated(g.clone(), &[4]).unwrap();
        let q = Quotient::new(&h).unwrap();
        let sk = SchurRing::trivial(z(3), f3);
        let emb = cyclic_embedding(3, 12);
        let sq = SchurRing::full(z(4), f3);
        let s = wedge_product(Embedded { sring: &sk, map: &emb }, &sq, &q).unwrap();
        assert_eq!(
            s.blocks(),
            &[vec![0], vec![4, 8], vec![1, 5, 9], vec![2, 6, 10], vec![3, 7, 11]]
        );
    }
}
