use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use schur_core::algebra::{is_psring, w_algebra, AlgebraElement, CoefficientField, SchurRing};
use schur_core::constructions::{enumerate_cyclic_srings, units};
use schur_core::groups::{all_subgroups, parse_group, Group};
use schur_core::ptuple::{concrete_group, LambdaSignature};

const Q: CoefficientField = CoefficientField::Rationals;

fn indicator(g: &Arc<Group>, mask: &[bool]) -> AlgebraElement {
    let set: Vec<usize> = (0..g.order()).filter(|&x| mask[x % mask.len()]).collect();
    AlgebraElement::simple(g.clone(), Q, &set)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hadamard_laws(
        n in 1u64..20,
        a in prop::collection::vec(any::<bool>(), 20),
        b in prop::collection::vec(any::<bool>(), 20),
        c in prop::collection::vec(any::<bool>(), 20),
    ) {
        let g = Arc::new(Group::cyclic(n).unwrap());
        let (x, y, z) = (indicator(&g, &a), indicator(&g, &b), indicator(&g, &c));
        prop_assert_eq!(x.hadamard(&y).unwrap(), y.hadamard(&x).unwrap());
        prop_assert_eq!(
            x.hadamard(&y).unwrap().hadamard(&z).unwrap(),
            x.hadamard(&y.hadamard(&z).unwrap()).unwrap()
        );
        prop_assert_eq!(x.hadamard(&x).unwrap(), x.clone());
        // Convolution distributes over addition.
        prop_assert_eq!(
            x.mul(&y.add(&z).unwrap()).unwrap(),
            x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap()
        );
    }

    #[test]
    fn structure_constants_count_pairs(n in 1usize..=24, pick in any::<prop::sample::Index>(), q in prop::sample::select(vec![0u64, 2, 3, 5])) {
        let all = enumerate_cyclic_srings(n).unwrap();
        let s0 = &all[pick.index(all.len())];
        let field = if q == 0 { Q } else { CoefficientField::prime(q).unwrap() };
        // Over F_q the blocks stay Schur, with constants stored reduced.
        let s = SchurRing::from_blocks(s0.group().clone(), field, s0.blocks().to_vec()).unwrap();
        let sizes = s.partition().sizes();
        let d = s.dimension();
        for i in 0..d {
            for j in 0..d {
                if q == 0 {
                    let total: u64 = (0..d).map(|k| s.lambda(i, j, k) * sizes[k] as u64).sum();
                    prop_assert_eq!(total, (sizes[i] * sizes[j]) as u64);
                } else {
                    for k in 0..d {
                        prop_assert_eq!(s.lambda(i, j, k), s0.lambda(i, j, k) % q);
                    }
                }
            }
        }
    }
}

#[test]
fn power_maps_permute_blocks() {
    for n in 1..=30usize {
        for s in enumerate_cyclic_srings(n).unwrap().iter() {
            for m in units(n) {
                let map = s.power_block_map(m as i64).expect("power map permutes basic sets");
                let mut sorted = map.clone();
                sorted.sort_unstable();
                assert_eq!(sorted, (0..s.dimension()).collect::<Vec<_>>(), "n={n} m={m}");
            }
        }
    }
}

#[test]
fn symbolic_constants_match_concrete() {
    for (p, l) in [(3u64, vec![1u32, 3]), (3, vec![1, 1, 2]), (5, vec![1, 2])] {
        let s = LambdaSignature::new(p, l.clone()).unwrap();
        let a = w_algebra(&s).unwrap();
        let g = concrete_group(&s).unwrap();
        for i in 0..a.dim() {
            let xi = a.instantiate(&a.unit(i), &g).unwrap();
            for j in 0..a.dim() {
                let xj = a.instantiate(&a.unit(j), &g).unwrap();
                let prod = a.instantiate(&a.mul(&a.unit(i), &a.unit(j)), &g).unwrap();
                assert_eq!(prod, xi.mul(&xj).unwrap(), "p={p} {l:?} ({i},{j})");
                let had = a.instantiate(&a.hadamard(&a.unit(i), &a.unit(j)), &g).unwrap();
                assert_eq!(had, xi.hadamard(&xj).unwrap());
            }
            let o = a.instantiate(&a.o_element(i), &g).unwrap();
            assert_eq!(BigRational::from_integer(a.o_size(i)), o.augmentation());
        }
    }
}

#[test]
fn o_basis_is_orthogonal() {
    let s = LambdaSignature::new(3, vec![1, 3, 5]).unwrap();
    let a = w_algebra(&s).unwrap();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let h = a.hadamard(&a.o_element(i), &a.o_element(j));
            if i == j {
                assert_eq!(h, a.o_element(i));
            } else {
                assert!(h.iter().all(Zero::is_zero), "O{i} o O{j} is nonzero");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn subgroup_spans_are_psrings(
        spec in prop::sample::select(vec!["Z12", "Z2xZ4", "Z3xZ3", "S3", "D4", "Z2^3"]),
        picks in prop::collection::vec(any::<prop::sample::Index>(), 1..5),
    ) {
        let g = Arc::new(parse_group(spec).unwrap());
        let subs = all_subgroups(&g, 4096).unwrap();
        let normal: Vec<_> = subs.into_iter().filter(|h| h.is_normal()).collect();
        // Close the chosen normal subgroups under ∩ and products.
        let mut members: Vec<_> = picks.iter().map(|ix| normal[ix.index(normal.len())].clone()).collect();
        loop {
            let before = members.len();
            let snapshot = members.clone();
            for a in &snapshot {
                for b in &snapshot {
                    for h in [a.intersection(b), a.join(b)] {
                        if !members.contains(&h) {
                            members.push(h);
                        }
                    }
                }
            }
            if members.len() == before {
                break;
            }
        }
        let closed: Vec<AlgebraElement> = members.iter().map(|h| AlgebraElement::simple(g.clone(), Q, h.elements())).collect();
        prop_assert!(is_psring(&closed).unwrap());
    }
}
