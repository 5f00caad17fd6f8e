//! Subspaces of `F^n` kept in reduced row echelon form.

use crate::error::{Error, Result};
use crate::field::{Elem, FiniteField};
use crate::matrix::Matrix;

/// Row-reduces `rows` in place, drops zero rows, and returns the pivot
/// columns (ascending).
pub(crate) fn rref_rows(field: &FiniteField, rows: &mut Vec<Vec<Elem>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let s = field.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, s);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = field.sub(*x, field.mul(factor, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// A subspace with its canonical basis: the nonzero rows of the reduced
/// echelon form, pivots ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: FiniteField,
    ambient: usize,
    basis: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn from_vectors(field: &FiniteField, ambient: usize, vectors: impl IntoIterator<Item = Vec<Elem>>) -> Subspace {
        let mut rows: Vec<Vec<Elem>> = vectors.into_iter().collect();
        debug_assert!(rows.iter().all(|r| r.len() == ambient));
        let pivots = rref_rows(field, &mut rows, ambient);
        Subspace { field: field.clone(), ambient, basis: rows, pivots }
    }

    pub fn zero(field: &FiniteField, ambient: usize) -> Subspace {
        Subspace { field: field.clone(), ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: &FiniteField, ambient: usize) -> Subspace {
        Subspace::from_vectors(field, ambient, Matrix::identity(field, ambient).to_rows())
    }

    /// Span of the coordinate vectors `e_i`, `i in indices`.
    pub fn coordinate(field: &FiniteField, ambient: usize, indices: &[usize]) -> Subspace {
        let vectors = indices.iter().map(|&i| {
            let mut v = vec![Elem::ZERO; ambient];
            v[i] = Elem::ONE;
            v
        });
        Subspace::from_vectors(field, ambient, vectors)
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Elem>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// `v` minus its component along the canonical basis.
    pub fn reduce(&self, v: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut out = v.to_vec();
        for (b, &piv) in self.basis.iter().zip(&self.pivots) {
            let c = out[piv];
            if c.is_zero() {
                continue;
            }
            for (x, &y) in out.iter_mut().zip(b) {
                *x = f.sub(*x, f.mul(c, y));
            }
        }
        out
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        self.reduce(v).iter().all(|a| a.is_zero())
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the space.
    pub fn coords(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        self.contains(v).then(|| self.pivots.iter().map(|&p| v[p]).collect())
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::from_vectors(&self.field, self.ambient, self.basis.iter().chain(&other.basis).cloned())
    }

    /// `{a : a . v = 0 for all v in self}`.
    pub fn annihilator(&self) -> Subspace {
        if self.basis.is_empty() {
            return Subspace::full(&self.field, self.ambient);
        }
        Matrix::from_rows(&self.field, self.basis.clone())
            .expect("basis rows are rectangular")
            .null_space()
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let f = &self.field;
        let ann = other.annihilator();
        if ann.dim() == 0 || self.dim() == 0 {
            return if ann.dim() == 0 { self.clone() } else { Subspace::zero(f, self.ambient) };
        }
        let dot = |a: &[Elem], b: &[Elem]| a.iter().zip(b).fold(Elem::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)));
        let system = Matrix::from_fn(f, ann.dim(), self.dim(), |r, i| dot(&ann.basis[r], &self.basis[i]));
        let sols = system.null_space();
        let vectors = sols.basis.iter().map(|a| self.combine(a));
        Subspace::from_vectors(f, self.ambient, vectors.collect::<Vec<_>>())
    }

    /// `sum_i a_i b_i` over the canonical basis.
    pub fn combine(&self, a: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut out = vec![Elem::ZERO; self.ambient];
        for (c, b) in a.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (x, &y) in out.iter_mut().zip(b) {
                *x = f.add(*x, f.mul(*c, y));
            }
        }
        out
    }

    /// Basis vectors as the columns of an `ambient x dim` matrix.
    pub fn to_columns(&self) -> Matrix {
        Matrix::from_columns(&self.field, self.ambient, &self.basis)
    }

    pub fn is_invariant(&self, a: &Matrix) -> bool {
        self.basis.iter().all(|v| self.contains(&a.mul_vec(v).expect("square action")))
    }

    /// Matrix of `a` restricted to this invariant subspace, in the canonical
    /// basis.
    pub fn restrict(&self, a: &Matrix) -> Result<Matrix> {
        let cols: Vec<Vec<Elem>> = self
            .basis
            .iter()
            .map(|v| {
                self.coords(&a.mul_vec(v)?)
                    .ok_or_else(|| Error::Invariant("subspace is not invariant".into()))
            })
            .collect::<Result<_>>()?;
        Ok(Matrix::from_columns(&self.field, self.dim(), &cols))
    }

    /// Non-pivot coordinates; their unit vectors span a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient).filter(|i| !self.pivots.contains(i)).collect()
    }

    /// Matrix of the map induced by `a` on the quotient by this invariant
    /// subspace, in the basis of complement unit vectors.
    pub fn quotient_action(&self, a: &Matrix) -> Result<Matrix> {
        if !self.is_invariant(a) {
            return Err(Error::Invariant("subspace is not invariant".into()));
        }
        let comp = self.complement_indices();
        let cols: Vec<Vec<Elem>> = comp
            .iter()
            .map(|&j| {
                let image = self.reduce(&a.column(j));
                comp.iter().map(|&i| image[i]).collect()
            })
            .collect();
        Ok(Matrix::from_columns(&self.field, comp.len(), &cols))
    }

    /// Image of every basis vector under an entrywise map into `target`.
    pub fn map(&self, target: &FiniteField, f: impl Fn(Elem) -> Elem) -> Subspace {
        let vectors = self.basis.iter().map(|v| v.iter().map(|&a| f(a)).collect());
        Subspace::from_vectors(target, self.ambient, vectors.collect::<Vec<_>>())
    }

    /// Lexicographic key used to break ties between equal-dimensional spaces.
    pub fn sort_key(&self) -> Vec<u64> {
        self.basis.iter().flatten().map(|a| a.0).collect()
    }
}
