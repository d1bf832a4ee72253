use num_rational::BigRational;
use num_traits::Zero;

use super::CoefficientField;

/// A subspace of `F^len` kept in reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Span {
    field: CoefficientField,
    len: usize,
    /// Sparse rows, each with a unit pivot that is zero in every other row.
    rows: Vec<Vec<(usize, BigRational)>>,
    pivots: Vec<usize>,
}

impl Span {
    pub fn new(field: CoefficientField, len: usize) -> Self {
        Span {
            field,
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors<'a>(
        field: CoefficientField,
        len: usize,
        vectors: impl IntoIterator<Item = &'a [BigRational]>,
    ) -> Self {
        let mut s = Span::new(field, len);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn field(&self) -> CoefficientField {
        self.field
    }

    /// The residue of `v` after elimination against the current rows.
    pub fn reduce(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        let f = self.field;
        let mut r: Vec<BigRational> = v.iter().map(|x| f.reduce(x).expect("field element")).collect();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let c = r[p].clone();
            for (j, a) in row {
                r[*j] = f.sub(&r[*j], &f.mul(&c, a));
            }
        }
        r
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[BigRational]) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let f = self.field;
        let inv = f.inv(&r[p]).expect("nonzero pivot");
        let row: Vec<(usize, BigRational)> = r
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| (j, f.mul(x, &inv)))
            .collect();
        for old in self.rows.iter_mut() {
            let Some(c) = old.iter().find(|(j, _)| *j == p).map(|(_, c)| c.clone()) else {
                continue;
            };
            let mut dense: Vec<BigRational> = vec![BigRational::zero(); self.len];
            for (j, a) in old.iter() {
                dense[*j] = a.clone();
            }
            for (j, a) in &row {
                dense[*j] = f.sub(&dense[*j], &f.mul(&c, a));
            }
            *old = dense
                .into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .collect();
        }
        self.rows.push(row);
        self.pivots.push(p);
        true
    }

    /// Basis rows as dense vectors.
    pub fn basis(&self) -> Vec<Vec<BigRational>> {
        self.rows
            .iter()
            .map(|row| {
                let mut d = vec![BigRational::zero(); self.len];
                for (j, a) in row {
                    d[*j] = a.clone();
                }
                d
            })
            .collect()
    }

    pub fn is_subspace_of(&self, other: &Span) -> bool {
        self.basis().iter().all(|v| other.contains(v))
    }

    pub fn same_as(&self, other: &Span) -> bool {
        self.dim() == other.dim() && self.is_subspace_of(other)
    }
}
