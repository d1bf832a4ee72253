use std::sync::Arc;

use super::{canonicalize, CanonicalTuple, LambdaSignature, Tuple};
use crate::error::{Error, Result};
use crate::groups::{CyclicProductGroup, Group, Subgroup};

/// The concrete group `Z_{p^{λ_1}} × … × Z_{p^{λ_n}}`.
pub fn concrete_group(sig: &LambdaSignature) -> Result<Arc<Group>> {
    Ok(Arc::new(Group::Product(CyclicProductGroup::from_signature(sig)?)))
}

fn signature_of(g: &Group) -> Result<(&CyclicProductGroup, LambdaSignature)> {
    let prod = g
        .as_product()
        .ok_or_else(|| Error::InvalidGroup("expected a product of cyclic groups".into()))?;
    let sig = prod
        .p_group_signature()
        .ok_or_else(|| Error::InvalidGroup(format!("{} is not an abelian p-group in sorted form", g.describe())))?;
    Ok((prod, sig))
}

/// `â` with `|g_i| = p^{a_i}`.
pub fn type_of(g: &Group, x: usize) -> Result<Tuple> {
    let (prod, sig) = signature_of(g)?;
    Ok(type_of_in(prod, &sig, x))
}

fn type_of_in(prod: &CyclicProductGroup, sig: &LambdaSignature, x: usize) -> Tuple {
    let p = sig.p();
    Tuple(
        (0..prod.rank())
            .map(|i| {
                let m = prod.moduli()[i];
                let mut ord = m / num_integer::gcd(m, prod.digit(x, i));
                let mut e = 0;
                while ord > 1 {
                    ord /= p;
                    e += 1;
                }
                e
            })
            .collect(),
    )
}

/// `T(â)`.
pub fn type_set(a: &Tuple, g: &Group) -> Result<Vec<usize>> {
    let (prod, sig) = signature_of(g)?;
    sig.check(a)?;
    Ok((0..g.order()).filter(|&x| type_of_in(prod, &sig, x) == *a).collect())
}

/// `R(â) = ⋃_{b̂ ≤ â} T(b̂)`, checked to be a subgroup of order `p^{Σa}`.
pub fn regular_subgroup(a: &Tuple, g: &Arc<Group>) -> Result<Subgroup> {
    let (prod, sig) = signature_of(g)?;
    sig.check(a)?;
    let elements: Vec<usize> = (0..g.order())
        .filter(|&x| type_of_in(prod, &sig, x).leq(a))
        .collect();
    let expected = (sig.p() as usize).pow(a.sum());
    if elements.len() != expected {
        return Err(Error::Verification(format!(
            "|R{a}| = {} but expected {expected}",
            elements.len()
        )));
    }
    Subgroup::from_elements(g.clone(), elements)
}

/// `O(â)`: all elements whose type canonicalises to `â`.
pub fn automorphism_class(a: &CanonicalTuple, g: &Group) -> Result<Vec<usize>> {
    let (prod, sig) = signature_of(g)?;
    CanonicalTuple::new(a.tuple().clone(), &sig)?;
    let mut out = Vec::new();
    for x in 0..g.order() {
        if canonicalize(&type_of_in(prod, &sig, x), &sig)? == *a {
            out.push(x);
        }
    }
    Ok(out)
}

/// All automorphism classes, keyed by canonical tuple in lexicographic order.
pub fn automorphism_classes(g: &Group) -> Result<Vec<(CanonicalTuple, Vec<usize>)>> {
    let (prod, sig) = signature_of(g)?;
    let tuples = super::canonical_tuples(&sig);
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); tuples.len()];
    for x in 0..g.order() {
        let c = canonicalize(&type_of_in(prod, &sig, x), &sig)?;
        let k = tuples.binary_search(&c).expect("canonical tuple enumerated");
        classes[k].push(x);
    }
    Ok(tuples.into_iter().zip(classes).collect())
}
