use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::groups::is_prime;

/// Coefficients are either exact rationals or residues mod a prime `q`.
///
/// Field elements are always `BigRational`; over `F_q` they are kept as
/// integers in `0..q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum CoefficientField {
    #[default]
    Rationals,
    PrimeField(u64),
}

impl CoefficientField {
    pub fn prime(q: u64) -> Result<Self> {
        if is_prime(q) {
            Ok(CoefficientField::PrimeField(q))
        } else {
            Err(Error::InvalidField(format!("{q} is not prime")))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            CoefficientField::Rationals => 0,
            CoefficientField::PrimeField(q) => *q,
        }
    }

    /// Maps a rational into the field.
    pub fn reduce(&self, x: &BigRational) -> Result<BigRational> {
        match self {
            CoefficientField::Rationals => Ok(x.clone()),
            CoefficientField::PrimeField(q) => {
                let q = BigInt::from(*q);
                let den = x.denom().mod_floor(&q);
                if den.is_zero() {
                    return Err(Error::NotInvertible(format!("{} mod {q}", x.denom())));
                }
                let inv = den.modpow(&(&q - 2u32), &q);
                Ok(BigRational::from_integer((x.numer() * inv).mod_floor(&q)))
            }
        }
    }

    pub fn from_int(&self, n: i64) -> BigRational {
        self.reduce(&BigRational::from_integer(n.into()))
            .expect("integers always reduce")
    }

    pub fn from_bigint(&self, n: BigInt) -> BigRational {
        self.reduce(&BigRational::from_integer(n))
            .expect("integers always reduce")
    }

    /// A nonnegative count as a field element, kept as a `u64` residue.
    pub fn reduce_count(&self, n: u64) -> u64 {
        match self {
            CoefficientField::Rationals => n,
            CoefficientField::PrimeField(q) => n % q,
        }
    }

    pub fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.reduce(&(a + b)).expect("sum of field elements")
    }

    pub fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.reduce(&(a - b)).expect("difference of field elements")
    }

    pub fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.reduce(&(a * b)).expect("product of field elements")
    }

    pub fn neg(&self, a: &BigRational) -> BigRational {
        self.reduce(&-a).expect("negation of a field element")
    }

    pub fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::NotInvertible("0".into()));
        }
        self.reduce(&a.recip())
    }

    /// Whether `n` is a unit in the field, i.e. not divisible by the characteristic.
    pub fn is_unit(&self, n: i64) -> bool {
        match self {
            CoefficientField::Rationals => n != 0,
            CoefficientField::PrimeField(q) => !n.unsigned_abs().is_multiple_of(*q),
        }
    }
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientField::Rationals => write!(f, "Q"),
            CoefficientField::PrimeField(q) => write!(f, "F{q}"),
        }
    }
}

impl FromStr for CoefficientField {
    type Err = Error;

    /// `Q`, `QQ`, `F<q>`, `GF(q)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("qq") {
            return Ok(CoefficientField::Rationals);
        }
        let digits = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| t.strip_prefix('F'))
            .or_else(|| t.strip_prefix('f'))
            .ok_or_else(|| Error::InvalidField(format!("unrecognised field '{s}'")))?;
        let q: u64 = digits
            .parse()
            .map_err(|_| Error::InvalidField(format!("unrecognised field '{s}'")))?;
        CoefficientField::prime(q)
    }
}

impl Serialize for CoefficientField {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
