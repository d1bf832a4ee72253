use crate::error::{cap_check, Error, Result};
use crate::limits::MAX_GROUP_ORDER;
use crate::ptuple::LambdaSignature;

/// `Z_{m_1} × … × Z_{m_k}` with elements encoded in mixed radix, coordinate
/// 0 least significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicProductGroup {
    moduli: Vec<u64>,
    strides: Vec<usize>,
    order: usize,
}

impl CyclicProductGroup {
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        if moduli.contains(&0) {
            return Err(Error::InvalidGroup("moduli must be positive".into()));
        }
        let mut strides = Vec::with_capacity(moduli.len());
        let mut order: usize = 1;
        for &m in &moduli {
            strides.push(order);
            order = order
                .checked_mul(m as usize)
                .filter(|&o| o <= MAX_GROUP_ORDER)
                .ok_or(Error::CapExceeded {
                    what: "group order",
                    size: usize::MAX,
                    cap: MAX_GROUP_ORDER,
                })?;
        }
        cap_check("group order", order, MAX_GROUP_ORDER)?;
        Ok(CyclicProductGroup {
            moduli,
            strides,
            order,
        })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    /// `Z_{p^{λ_1}} × … × Z_{p^{λ_n}}`.
    pub fn from_signature(sig: &LambdaSignature) -> Result<Self> {
        let moduli = sig
            .lambda()
            .iter()
            .map(|&l| {
                sig.p()
                    .checked_pow(l)
                    .filter(|&m| m as usize <= MAX_GROUP_ORDER)
                    .ok_or(Error::CapExceeded {
                        what: "group order",
                        size: usize::MAX,
                        cap: MAX_GROUP_ORDER,
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(moduli)
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn digit(&self, x: usize, i: usize) -> u64 {
        ((x / self.strides[i]) as u64) % self.moduli[i]
    }

    pub fn digits(&self, x: usize) -> Vec<u64> {
        (0..self.rank()).map(|i| self.digit(x, i)).collect()
    }

    /// Encodes a coordinate vector, reducing each entry modulo its modulus.
    pub fn index_of(&self, digits: &[i64]) -> usize {
        digits
            .iter()
            .zip(&self.moduli)
            .zip(&self.strides)
            .map(|((&d, &m), &s)| (d.rem_euclid(m as i64) as usize) * s)
            .sum()
    }

    /// The standard generator `e_i`.
    pub fn generator(&self, i: usize) -> usize {
        if self.moduli[i] == 1 {
            0
        } else {
            self.strides[i]
        }
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        let mut out = 0;
        for i in 0..self.moduli.len() {
            let m = self.moduli[i] as usize;
            let s = self.strides[i];
            let da = (a / s) % m;
            let db = (b / s) % m;
            out += ((da + db) % m) * s;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        let mut out = 0;
        for i in 0..self.moduli.len() {
            let m = self.moduli[i] as usize;
            let s = self.strides[i];
            let da = (a / s) % m;
            let db = (b / s) % m;
            out += ((da + m - db) % m) * s;
        }
        out
    }

    pub fn neg(&self, a: usize) -> usize {
        self.sub(0, a)
    }

    pub fn scale(&self, a: usize, k: i64) -> usize {
        let mut out = 0;
        for i in 0..self.moduli.len() {
            let m = self.moduli[i] as i128;
            let d = self.digit(a, i) as i128;
            out += ((d * k as i128).rem_euclid(m) as usize) * self.strides[i];
        }
        out
    }

    pub fn element_order(&self, a: usize) -> usize {
        (0..self.rank()).fold(1usize, |acc, i| {
            let m = self.moduli[i];
            let d = self.digit(a, i);
            let o = m / num_integer::gcd(m, d);
            num_integer::lcm(acc, o as usize)
        })
    }

    /// Signature `(p; λ_1 ≤ … ≤ λ_n)` when every modulus is a power (> 1) of one
    /// prime and the exponents are nondecreasing.
    pub fn p_group_signature(&self) -> Option<LambdaSignature> {
        let mut p = None;
        let mut lambda = Vec::new();
        for &m in &self.moduli {
            let (q, e) = prime_power(m)?;
            match p {
                None => p = Some(q),
                Some(pp) if pp != q => return None,
                _ => {}
            }
            lambda.push(e);
        }
        LambdaSignature::new(p?, lambda).ok()
    }

    pub fn label(&self, x: usize) -> String {
        let d = self.digits(x);
        if d.len() == 1 {
            d[0].to_string()
        } else {
            format!(
                "({})",
                d.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
            )
        }
    }
}

/// `Some((p, e))` if `m = p^e` with `p` prime and `e ≥ 1`.
pub fn prime_power(m: u64) -> Option<(u64, u32)> {
    if m < 2 {
        return None;
    }
    let f = factorize(m);
    if f.len() == 1 {
        Some(f[0])
    } else {
        None
    }
}

/// Prime factorisation by trial division, primes ascending.
pub fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            let mut e = 0;
            while m.is_multiple_of(d) {
                m /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_radix_round_trip() {
        let g = CyclicProductGroup::new(vec![2, 8]).unwrap();
        assert_eq!(g.order(), 16);
        for x in 0..16 {
            let d: Vec<i64> = g.digits(x).iter().map(|&v| v as i64).collect();
            assert_eq!(g.index_of(&d), x);
        }
        let s = g.generator(0);
        let t = g.generator(1);
        assert_eq!(g.element_order(s), 2);
        assert_eq!(g.element_order(t), 8);
        assert_eq!(g.add(s, g.scale(t, 4)), g.index_of(&[1, 4]));
        assert_eq!(g.neg(t), g.index_of(&[0, 7]));
        assert_eq!(g.label(g.index_of(&[1, 3])), "(1,3)");
    }

    #[test]
    fn signature_detection() {
        let g = CyclicProductGroup::new(vec![3, 27]).unwrap();
        let sig = g.p_group_signature().unwrap();
        assert_eq!(sig.p(), 3);
        assert_eq!(sig.lambda(), &[1, 3]);
        assert!(CyclicProductGroup::new(vec![8, 2])
            .unwrap()
            .p_group_signature()
            .is_none());
        assert!(CyclicProductGroup::new(vec![6])
            .unwrap()
            .p_group_signature()
            .is_none());
    }

    #[test]
    fn rejects_zero_modulus() {
        assert!(CyclicProductGroup::new(vec![3, 0]).is_err());
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(prime_power(81), Some((3, 4)));
        assert_eq!(prime_power(12), None);
        assert!(is_prime(97));
        assert!(!is_prime(1));
    }
}
