use super::{CyclicProductGroup, Group, GroupAutomorphism};
use crate::error::{Error, Result};
use crate::perm::Perm;

/// `GF(2^m)` with elements as bit masks (bit `i` is the coefficient of `x^i`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2m {
    m: u32,
    /// Reduction polynomial without its leading term.
    low: u64,
}

impl Gf2m {
    /// `poly` lists coefficients from `x^0` up to `x^m`; the last must be 1.
    pub fn new(poly: &[u8]) -> Result<Self> {
        if poly.len() < 2 || *poly.last().unwrap() != 1 {
            return Err(Error::NotPrimitive("need a monic polynomial of degree >= 1".into()));
        }
        let m = (poly.len() - 1) as u32;
        if m > 20 {
            return Err(Error::CapExceeded {
                what: "field degree",
                size: m as usize,
                cap: 20,
            });
        }
        let mut low = 0u64;
        for (i, &c) in poly[..m as usize].iter().enumerate() {
            match c {
                0 => {}
                1 => low |= 1 << i,
                _ => return Err(Error::NotPrimitive("coefficients must be 0 or 1".into())),
            }
        }
        let f = Gf2m { m, low };
        let order = (1u64 << m) - 1;
        let mut x = 1u64;
        for k in 1..=order {
            x = f.mul_x(x);
            if x == 1 && k < order {
                return Err(Error::NotPrimitive(format!("x has order {k} < {order}")));
            }
        }
        if x != 1 {
            // x is a zero divisor: the polynomial is reducible.
            return Err(Error::NotPrimitive("x is not a unit".into()));
        }
        Ok(f)
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn size(&self) -> usize {
        1 << self.m
    }

    #[inline]
    pub fn mul_x(&self, a: u64) -> u64 {
        let b = a << 1;
        if b >> self.m & 1 == 1 {
            (b ^ (1 << self.m)) ^ self.low
        } else {
            b
        }
    }

    pub fn mul(&self, mut a: u64, mut b: u64) -> u64 {
        let mut acc = 0;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            a = self.mul_x(a);
            b >>= 1;
        }
        acc
    }

    /// `ω^k` with `ω` the residue of `x`.
    pub fn omega_pow(&self, k: u64) -> u64 {
        let order = (1u64 << self.m) - 1;
        let mut acc = 1;
        for _ in 0..k % order.max(1) {
            acc = self.mul_x(acc);
        }
        acc
    }
}

/// The additive group of `GF(2^m)` as `Z_2^m` together with multiplication by `ω`.
pub fn gf2m_additive_group(m: u32, poly: &[u8]) -> Result<(CyclicProductGroup, GroupAutomorphism)> {
    if poly.len() != m as usize + 1 {
        return Err(Error::NotPrimitive(format!(
            "polynomial has degree {}, expected {m}",
            poly.len().saturating_sub(1)
        )));
    }
    let field = Gf2m::new(poly)?;
    let g = CyclicProductGroup::new(vec![2; m as usize])?;
    // Mixed-radix index with all moduli 2 is exactly the bit mask.
    let perm = Perm::new((0..g.order() as u64).map(|a| field.mul_x(a) as usize).collect())?;
    let aut = GroupAutomorphism::from_perm(&Group::Product(g.clone()), perm)?;
    Ok((g, aut))
}
