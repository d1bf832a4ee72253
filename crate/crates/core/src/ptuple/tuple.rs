use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::groups::is_prime;
use crate::lattice::FiniteLattice;

/// `(p; λ_1 ≤ … ≤ λ_n)` describing `Z_{p^{λ_1}} × … × Z_{p^{λ_n}}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LambdaSignature {
    p: u64,
    lambda: Vec<u32>,
}

impl LambdaSignature {
    pub fn new(p: u64, lambda: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidTuple(format!("{p} is not prime")));
        }
        if lambda.is_empty() {
            return Err(Error::InvalidTuple("signature needs at least one exponent".into()));
        }
        if lambda[0] == 0 || lambda.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidTuple(format!(
                "exponents {lambda:?} must satisfy 1 <= l_1 <= ... <= l_n"
            )));
        }
        Ok(LambdaSignature { p, lambda })
    }

    /// `λ = (1, 3, …, 2n-1)`.
    pub fn odd_staircase(p: u64, n: usize) -> Result<Self> {
        Self::new(p, (0..n as u32).map(|i| 2 * i + 1).collect())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn lambda(&self) -> &[u32] {
        &self.lambda
    }

    pub fn rank(&self) -> usize {
        self.lambda.len()
    }

    /// `λ_i - λ_{i-1}` with `λ_0 = 0`.
    pub fn gap(&self, i: usize) -> u32 {
        if i == 0 {
            self.lambda[0]
        } else {
            self.lambda[i] - self.lambda[i - 1]
        }
    }

    /// `|G| = p^{Σλ}` when it fits in a `u128`.
    pub fn order(&self) -> Option<u128> {
        let e: u32 = self.lambda.iter().sum();
        (self.p as u128).checked_pow(e)
    }

    pub fn zero(&self) -> Tuple {
        Tuple(vec![0; self.rank()])
    }

    pub fn top(&self) -> Tuple {
        Tuple(self.lambda.clone())
    }

    pub fn check(&self, a: &Tuple) -> Result<()> {
        if a.len() != self.rank() {
            return Err(Error::InvalidTuple(format!(
                "tuple {a} has length {}, expected {}",
                a.len(),
                self.rank()
            )));
        }
        if a.0.iter().zip(&self.lambda).any(|(x, l)| x > l) {
            return Err(Error::InvalidTuple(format!(
                "tuple {a} exceeds {}",
                Tuple(self.lambda.clone())
            )));
        }
        Ok(())
    }
}

impl fmt::Display for LambdaSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l: Vec<String> = self.lambda.iter().map(|x| x.to_string()).collect();
        write!(f, "p={};lambda={}", self.p, l.join(","))
    }
}

/// An exponent tuple `â` with the componentwise order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tuple(pub Vec<u32>);

impl Tuple {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn leq(&self, other: &Tuple) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn meet(&self, other: &Tuple) -> Tuple {
        Tuple(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn join(&self, other: &Tuple) -> Tuple {
        Tuple(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn sum(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Parses `R(0,1,2)`, `O(0,1,2)`, `(0,1,2)` or `0,1,2`.
    pub fn parse(s: &str) -> Result<Tuple> {
        let t = s.trim();
        let t = t
            .strip_prefix('R')
            .or_else(|| t.strip_prefix('O'))
            .unwrap_or(t)
            .trim();
        let t = t.strip_prefix('(').unwrap_or(t);
        let t = t.strip_suffix(')').unwrap_or(t);
        t.split(',')
            .map(|x| {
                x.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad tuple '{s}'")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Tuple)
    }
}

impl fmt::Display for Tuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", v.join(","))
    }
}

impl Serialize for Tuple {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A tuple satisfying `a_i ≤ a_{i+1}` and `a_{i+1} - a_i ≤ λ_{i+1} - λ_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct CanonicalTuple(Tuple);

impl CanonicalTuple {
    pub fn new(a: Tuple, sig: &LambdaSignature) -> Result<Self> {
        if is_canonical(&a, sig)? {
            Ok(CanonicalTuple(a))
        } else {
            Err(Error::InvalidTuple(format!("{a} is not canonical for {sig}")))
        }
    }

    pub fn tuple(&self) -> &Tuple {
        &self.0
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0 .0
    }

    pub fn leq(&self, other: &CanonicalTuple) -> bool {
        self.0.leq(&other.0)
    }

    pub fn meet(&self, other: &CanonicalTuple) -> CanonicalTuple {
        CanonicalTuple(self.0.meet(&other.0))
    }

    pub fn join(&self, other: &CanonicalTuple) -> CanonicalTuple {
        CanonicalTuple(self.0.join(&other.0))
    }

    pub fn sum(&self) -> u32 {
        self.0.sum()
    }
}

impl fmt::Display for CanonicalTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn is_canonical(a: &Tuple, sig: &LambdaSignature) -> Result<bool> {
    sig.check(a)?;
    let l = sig.lambda();
    Ok((0..a.len().saturating_sub(1))
        .all(|i| a.0[i] <= a.0[i + 1] && a.0[i + 1] - a.0[i] <= l[i + 1] - l[i]))
}

/// The least canonical tuple above `a`, by the fixpoint
/// `b_i ← max(a_i, b_{i-1}, b_{i+1} - (λ_{i+1} - λ_i))`.
pub fn canonicalize(a: &Tuple, sig: &LambdaSignature) -> Result<CanonicalTuple> {
    sig.check(a)?;
    let l = sig.lambda();
    let n = a.len();
    let mut b = a.0.clone();
    loop {
        let mut changed = false;
        for i in 0..n {
            let mut v = b[i];
            if i > 0 {
                v = v.max(b[i - 1]);
            }
            if i + 1 < n {
                v = v.max(b[i + 1].saturating_sub(l[i + 1] - l[i]));
            }
            if v != b[i] {
                b[i] = v;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(CanonicalTuple(Tuple(b)))
}

/// Canonical tuples in lexicographic order.
pub fn canonical_tuples(sig: &LambdaSignature) -> Vec<CanonicalTuple> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; sig.rank()];
    fn rec(i: usize, sig: &LambdaSignature, cur: &mut Vec<u32>, out: &mut Vec<CanonicalTuple>) {
        if i == cur.len() {
            out.push(CanonicalTuple(Tuple(cur.clone())));
            return;
        }
        let lo = if i == 0 { 0 } else { cur[i - 1] };
        let hi = lo + sig.gap(i);
        for v in lo..=hi {
            cur[i] = v;
            rec(i + 1, sig, cur, out);
        }
    }
    rec(0, sig, &mut cur, &mut out);
    out
}

/// All tuples `0 ≤ â ≤ λ̂` in lexicographic order.
pub fn all_tuples(sig: &LambdaSignature) -> Vec<Tuple> {
    let mut out = vec![Vec::new()];
    for &l in sig.lambda() {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                (0..=l).map(move |v| {
                    let mut t = prefix.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out.into_iter().map(Tuple).collect()
}

/// `∏ (λ_i - λ_{i-1} + 1)`.
pub fn count_classes(sig: &LambdaSignature) -> u128 {
    (0..sig.rank()).map(|i| sig.gap(i) as u128 + 1).product()
}

/// The lattice of canonical tuples, i.e. the characteristic subgroups for odd `p`.
#[derive(Clone, Debug)]
pub struct CharLattice {
    pub signature: LambdaSignature,
    pub tuples: Vec<CanonicalTuple>,
    pub lattice: FiniteLattice,
}

impl CharLattice {
    pub fn index_of(&self, t: &CanonicalTuple) -> Option<usize> {
        self.tuples.binary_search(t).ok()
    }
}

pub fn char_lattice(sig: &LambdaSignature) -> Result<CharLattice> {
    if sig.p() == 2 {
        return Err(Error::EvenPrime(2));
    }
    let tuples = canonical_tuples(sig);
    let lattice = canonical_lattice(&tuples)?;
    Ok(CharLattice {
        signature: sig.clone(),
        tuples,
        lattice,
    })
}

/// Lattice on a sorted tuple list closed under componentwise min and max.
pub(crate) fn canonical_lattice(tuples: &[CanonicalTuple]) -> Result<FiniteLattice> {
    let labels = tuples.iter().map(|t| format!("R{t}")).collect();
    let find = |t: CanonicalTuple| -> usize {
        tuples
            .binary_search(&t)
            .expect("tuple set closed under meet and join")
    };
    for a in tuples {
        for b in tuples {
            if tuples.binary_search(&a.meet(b)).is_err() || tuples.binary_search(&a.join(b)).is_err() {
                return Err(Error::InvalidTuple(format!(
                    "node set is not closed under meet and join at {a}, {b}"
                )));
            }
        }
    }
    FiniteLattice::from_fns(
        labels,
        |a, b| find(tuples[a].meet(&tuples[b])),
        |a, b| find(tuples[a].join(&tuples[b])),
    )
}

/// `ψ(Y)`: coordinate `k` (0-based) is `k + 1` if `k ∈ Y`, else `k`.
pub fn psi_embed(sig: &LambdaSignature, y: &[usize]) -> Result<CanonicalTuple> {
    let n = sig.rank();
    let expected: Vec<u32> = (0..n as u32).map(|i| 2 * i + 1).collect();
    if sig.lambda() != expected.as_slice() {
        return Err(Error::InvalidTuple(format!(
            "psi needs lambda = (1,3,...,{}), got {sig}",
            2 * n - 1
        )));
    }
    if let Some(&k) = y.iter().find(|&&k| k >= n) {
        return Err(Error::InvalidTuple(format!("index {k} out of range")));
    }
    let a: Vec<u32> = (0..n)
        .map(|k| k as u32 + u32::from(y.contains(&k)))
        .collect();
    CanonicalTuple::new(Tuple(a), sig)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(p: u64, l: &[u32]) -> LambdaSignature {
        LambdaSignature::new(p, l.to_vec()).unwrap()
    }

    fn t(v: &[u32]) -> Tuple {
        Tuple(v.to_vec())
    }

    #[test]
    fn canonical_predicate() {
        let s = sig(3, &[1, 3]);
        assert!(is_canonical(&t(&[1, 1]), &s).unwrap());
        assert!(!is_canonical(&t(&[1, 0]), &s).unwrap());
        assert!(!is_canonical(&t(&[0, 3]), &s).unwrap());
        assert!(is_canonical(&t(&[2, 0]), &s).is_err());
    }

    #[test]
    fn canonicalize_examples() {
        let s = sig(2, &[1, 3]);
        assert_eq!(canonicalize(&t(&[1, 0]), &s).unwrap().as_slice(), &[1, 1]);
        assert_eq!(canonicalize(&t(&[0, 3]), &s).unwrap().as_slice(), &[1, 3]);
        for c in canonical_tuples(&s) {
            assert_eq!(canonicalize(c.tuple(), &s).unwrap(), c);
        }
    }

    #[test]
    fn lex_order_matches_tables() {
        let s = sig(3, &[1, 3]);
        let rendered: Vec<String> = canonical_tuples(&s).iter().map(|c| c.to_string()).collect();
        assert_eq!(rendered, ["(0,0)", "(0,1)", "(0,2)", "(1,1)", "(1,2)", "(1,3)"]);
        let s = sig(3, &[1, 3, 5]);
        let c = canonical_tuples(&s);
        assert_eq!(c.len(), 18);
        assert_eq!(c[4].as_slice(), &[0, 1, 2]);
        assert_eq!(c[13].as_slice(), &[1, 2, 3]);
    }

    #[test]
    fn counts() {
        assert_eq!(count_classes(&sig(3, &[1, 3])), 6);
        assert_eq!(count_classes(&sig(3, &[1, 3, 5])), 18);
        assert_eq!(count_classes(&sig(5, &[4])), 5);
    }

    #[test]
    fn char_lattice_shapes() {
        let l = char_lattice(&sig(3, &[2, 2])).unwrap();
        let r: Vec<String> = l.tuples.iter().map(|c| c.to_string()).collect();
        assert_eq!(r, ["(0,0)", "(1,1)", "(2,2)"]);
        assert_eq!(l.lattice.covers(), vec![(0, 1), (1, 2)]);
        assert!(matches!(char_lattice(&sig(2, &[1, 3])), Err(Error::EvenPrime(2))));
    }

    #[test]
    fn psi_square() {
        let s = sig(3, &[1, 3]);
        assert_eq!(psi_embed(&s, &[]).unwrap().as_slice(), &[0, 1]);
        assert_eq!(psi_embed(&s, &[0]).unwrap().as_slice(), &[1, 1]);
        assert_eq!(psi_embed(&s, &[1]).unwrap().as_slice(), &[0, 2]);
        assert_eq!(psi_embed(&s, &[0, 1]).unwrap().as_slice(), &[1, 2]);
        assert!(psi_embed(&sig(3, &[1, 2]), &[]).is_err());
    }

    #[test]
    fn tuple_parsing() {
        assert_eq!(Tuple::parse("R(0,1,2)").unwrap(), t(&[0, 1, 2]));
        assert_eq!(Tuple::parse("O(1,3)").unwrap(), t(&[1, 3]));
        assert_eq!(Tuple::parse("2, 2").unwrap(), t(&[2, 2]));
        assert!(Tuple::parse("R(a)").is_err());
    }
}
