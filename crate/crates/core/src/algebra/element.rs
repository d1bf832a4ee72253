use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::CoefficientField;
use crate::error::{cap_check, Error, Result};
use crate::groups::Group;
use crate::limits::MULTIPLY_CAP;

/// `Σ a_g g` in the group algebra `F G`, stored sparsely.
#[derive(Clone)]
pub struct AlgebraElement {
    group: Arc<Group>,
    field: CoefficientField,
    coeffs: BTreeMap<usize, BigRational>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs && same_group(&self.group, &other.group)
    }
}

impl Eq for AlgebraElement {}

fn same_group(a: &Arc<Group>, b: &Arc<Group>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl AlgebraElement {
    pub fn zero(group: Arc<Group>, field: CoefficientField) -> Self {
        AlgebraElement {
            group,
            field,
            coeffs: BTreeMap::new(),
        }
    }

    /// The identity element `1`.
    pub fn one(group: Arc<Group>, field: CoefficientField) -> Self {
        let e = group.identity();
        Self::basis(group, field, e)
    }

    pub fn basis(group: Arc<Group>, field: CoefficientField, g: usize) -> Self {
        let mut x = Self::zero(group, field);
        x.coeffs.insert(g, field.from_int(1));
        x.prune();
        x
    }

    /// The simple quantity `C̄`.
    pub fn simple(group: Arc<Group>, field: CoefficientField, set: &[usize]) -> Self {
        let mut x = Self::zero(group, field);
        let one = field.from_int(1);
        let f = field;
        for &g in set {
            let c = x.coeffs.entry(g).or_insert_with(BigRational::zero);
            *c = f.add(c, &one);
        }
        x.prune();
        x
    }

    /// `Ḡ`.
    pub fn group_sum(group: Arc<Group>, field: CoefficientField) -> Self {
        let all: Vec<usize> = (0..group.order()).collect();
        Self::simple(group, field, &all)
    }

    pub fn from_coeffs(
        group: Arc<Group>,
        field: CoefficientField,
        coeffs: impl IntoIterator<Item = (usize, BigRational)>,
    ) -> Result<Self> {
        let mut x = Self::zero(group, field);
        for (g, c) in coeffs {
            if g >= x.group.order() {
                return Err(Error::InvalidGroup(format!("element {g} out of range")));
            }
            let c = field.reduce(&c)?;
            let e = x.coeffs.entry(g).or_insert_with(BigRational::zero);
            *e = field.add(e, &c);
        }
        x.prune();
        Ok(x)
    }

    pub fn from_dense(group: Arc<Group>, field: CoefficientField, dense: &[BigRational]) -> Result<Self> {
        Self::from_coeffs(group, field, dense.iter().cloned().enumerate())
    }

    fn prune(&mut self) {
        self.coeffs.retain(|_, c| !c.is_zero());
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn field(&self) -> CoefficientField {
        self.field
    }

    pub fn coeff(&self, g: usize) -> BigRational {
        self.coeffs.get(&g).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.coeffs.iter().map(|(g, c)| (*g, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn to_dense(&self) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.group.order()];
        for (g, c) in &self.coeffs {
            v[*g] = c.clone();
        }
        v
    }

    fn compat(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        if !same_group(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compat(other)?;
        let mut out = self.clone();
        for (g, c) in &other.coeffs {
            let e = out.coeffs.entry(*g).or_insert_with(BigRational::zero);
            *e = self.field.add(e, c);
        }
        out.prune();
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.field.from_int(-1))
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        let s = self.field.reduce(s).expect("scalar must lie in the field");
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c = self.field.mul(c, &s);
        }
        out.prune();
        out
    }

    /// Convolution product `xy`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compat(other)?;
        cap_check("support product", self.support_len() * other.support_len(), MULTIPLY_CAP)?;
        let g = &self.group;
        if let (Some(a), Some(b)) = (small_ints(self), small_ints(other)) {
            let mut acc = vec![0i128; g.order()];
            let mut touched = Vec::new();
            for &(x, cx) in &a {
                for &(y, cy) in &b {
                    let z = g.mul(x, y);
                    if acc[z] == 0 {
                        touched.push(z);
                    }
                    acc[z] += cx * cy;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let coeffs = touched
                .into_iter()
                .map(|z| (z, BigRational::from_integer(acc[z].into())));
            return Self::from_coeffs(g.clone(), self.field, coeffs);
        }
        let mut out: BTreeMap<usize, BigRational> = BTreeMap::new();
        for (x, cx) in &self.coeffs {
            for (y, cy) in &other.coeffs {
                let e = out.entry(g.mul(*x, *y)).or_insert_with(BigRational::zero);
                *e += cx * cy;
            }
        }
        Self::from_coeffs(g.clone(), self.field, out)
    }

    /// Hadamard product `x ∘ y = Σ a_g b_g g`.
    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        self.compat(other)?;
        let mut out = Self::zero(self.group.clone(), self.field);
        for (g, c) in &self.coeffs {
            if let Some(d) = other.coeffs.get(g) {
                out.coeffs.insert(*g, self.field.mul(c, d));
            }
        }
        out.prune();
        Ok(out)
    }

    /// `x^{(m)} = Σ a_g g^m`.
    pub fn power_map(&self, m: i64) -> Self {
        let mut out = Self::zero(self.group.clone(), self.field);
        for (g, c) in &self.coeffs {
            let e = out
                .coeffs
                .entry(self.group.pow(*g, m))
                .or_insert_with(BigRational::zero);
            *e = self.field.add(e, c);
        }
        out.prune();
        out
    }

    /// `x^{(-1)}`.
    pub fn inverse_map(&self) -> Self {
        self.power_map(-1)
    }

    /// Total coefficient sum (the augmentation).
    pub fn augmentation(&self) -> BigRational {
        self.coeffs
            .values()
            .fold(BigRational::zero(), |acc, c| self.field.add(&acc, c))
    }
}

fn small_ints(x: &AlgebraElement) -> Option<Vec<(usize, i128)>> {
    x.coeffs
        .iter()
        .map(|(g, c)| {
            if c.is_integer() {
                c.numer().to_i64().map(|v| (*g, v as i128))
            } else {
                None
            }
        })
        .collect()
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(g, c)| format!("{c}*{}", self.group.label(*g)))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}
