//! Dense matrices over a [`FiniteField`].

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, FiniteField};
use crate::poly::Poly;
use crate::subspace::{rref_rows, Subspace};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FiniteField,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|&a| self.field.format_elem(a)).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: &FiniteField, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![Elem::ZERO; rows * cols] }
    }

    pub fn identity(field: &FiniteField, n: usize) -> Matrix {
        Matrix::scalar(field, n, Elem::ONE)
    }

    pub fn scalar(field: &FiniteField, n: usize, s: Elem) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = s;
        }
        m
    }

    pub fn from_fn(field: &FiniteField, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Elem) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    pub fn from_rows(field: &FiniteField, rows: Vec<Vec<Elem>>) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        if rows.iter().flatten().any(|&a| !field.contains(a)) {
            return Err(Error::NotInField);
        }
        let n = rows.len();
        Ok(Matrix { field: field.clone(), rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    /// Integer entries reduced into the prime subfield.
    pub fn from_ints(field: &FiniteField, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_fn(field, rows.len(), cols, |i, j| field.from_int(rows[i][j]))
    }

    /// Matrix whose columns are `columns`, each of length `rows`.
    pub fn from_columns(field: &FiniteField, rows: usize, columns: &[Vec<Elem>]) -> Matrix {
        Matrix::from_fn(field, rows, columns.len(), |i, j| columns[j][i])
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Elem>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(self.rows)
    }

    fn same_shape(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn neg(&self) -> Matrix {
        let f = &self.field;
        Matrix { data: self.data.iter().map(|&a| f.neg(a)).collect(), ..self.clone() }
    }

    pub fn scale(&self, s: Elem) -> Matrix {
        let f = &self.field;
        Matrix { data: self.data.iter().map(|&a| f.mul(a, s)).collect(), ..self.clone() }
    }

    /// `self + s * I`.
    pub fn add_scalar(mut self, s: Elem) -> Matrix {
        let n = self.rows.min(self.cols);
        for i in 0..n {
            let k = i * self.cols + i;
            self.data[k] = self.field.add(self.data[k], s);
        }
        self
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    if !b.is_zero() {
                        *d = f.add(*d, f.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Elem::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect())
    }

    pub fn pow(&self, mut e: u64) -> Result<Matrix> {
        let n = self.require_square()?;
        let mut acc = Matrix::identity(&self.field, n);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `[a, b] = ab - ba`.
    pub fn commutator(&self, other: &Matrix) -> Result<Matrix> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    /// `Some(mu)` when `self = mu * I`.
    pub fn scalar_value(&self) -> Option<Elem> {
        if self.rows != self.cols {
            return None;
        }
        let mu = if self.rows == 0 { Elem::ZERO } else { self.get(0, 0) };
        for i in 0..self.rows {
            for j in 0..self.cols {
                let expect = if i == j { mu } else { Elem::ZERO };
                if self.get(i, j) != expect {
                    return None;
                }
            }
        }
        Some(mu)
    }

    /// Entrywise image under `f`, e.g. a field embedding.
    pub fn map(&self, target: &FiniteField, f: impl Fn(Elem) -> Elem) -> Matrix {
        Matrix { field: target.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| f(a)).collect() }
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut rows = self.to_rows();
        let pivots = rref_rows(&self.field, &mut rows, self.cols);
        let mut out = Matrix::zeros(&self.field, self.rows, self.cols);
        for (i, r) in rows.iter().enumerate() {
            out.data[i * self.cols..(i + 1) * self.cols].copy_from_slice(r);
        }
        (out, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Null space as a subspace of the column space.
    pub fn null_space(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let vectors = free.iter().map(|&fc| {
            let mut v = vec![Elem::ZERO; self.cols];
            v[fc] = Elem::ONE;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(i, fc));
            }
            v
        });
        Subspace::from_vectors(f, self.cols, vectors)
    }

    /// Basis of `{v : Av = 0}` as columns, in reduced column echelon form.
    pub fn kernel(&self) -> Matrix {
        self.null_space().to_columns()
    }

    /// `(ker A^r, r)` for the least `r >= 1` with `ker A^r = ker A^(r+1)`.
    pub fn stable_kernel(&self) -> Result<(Subspace, usize)> {
        self.require_square()?;
        let mut power = self.clone();
        let mut current = power.null_space();
        let mut r = 1;
        loop {
            power = power.mul(self)?;
            let next = power.null_space();
            if next.dim() == current.dim() {
                return Ok((current, r));
            }
            current = next;
            r += 1;
        }
    }

    /// Monic minimal polynomial, from the first linear dependence among
    /// `I, A, A^2, ...`.
    pub fn min_poly(&self) -> Result<Poly> {
        let n = self.require_square()?;
        let f = &self.field;
        // (reduced vector, pivot, combination of powers)
        let mut basis: Vec<(Vec<Elem>, usize, Vec<Elem>)> = Vec::new();
        let mut power = Matrix::identity(f, n);
        for k in 0..=n {
            let mut v = power.data.clone();
            let mut combo = vec![Elem::ZERO; k + 1];
            combo[k] = Elem::ONE;
            for (b, piv, bc) in &basis {
                let c = v[*piv];
                if c.is_zero() {
                    continue;
                }
                for (x, &y) in v.iter_mut().zip(b) {
                    *x = f.sub(*x, f.mul(c, y));
                }
                for (x, &y) in combo.iter_mut().zip(bc) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
            match v.iter().position(|a| !a.is_zero()) {
                None => return Ok(Poly::new(f, combo)),
                Some(piv) => {
                    let s = f.inv(v[piv]);
                    v.iter_mut().for_each(|x| *x = f.mul(*x, s));
                    combo.iter_mut().for_each(|x| *x = f.mul(*x, s));
                    basis.push((v, piv, combo));
                }
            }
            power = power.mul(self)?;
        }
        Err(Error::Invariant("no dependence among the first n+1 powers".into()))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        let n = self.rows;
        if self.cols != n {
            return None;
        }
        let f = &self.field;
        let mut rows: Vec<Vec<Elem>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { Elem::ONE } else { Elem::ZERO }));
                r
            })
            .collect();
        let pivots = rref_rows(f, &mut rows, 2 * n);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Matrix::from_fn(f, n, n, |i, j| rows[i][n + j]))
    }

    /// Block matrix `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        Ok(Matrix::from_fn(&self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn gf(p: u64) -> FiniteField {
        make_field(p, 1).unwrap()
    }

    #[test]
    fn min_poly_examples() {
        let f = gf(3);
        let j = Matrix::from_ints(&f, &[&[0, -1], &[1, 0]]);
        assert_eq!(j.min_poly().unwrap(), Poly::new(&f, vec![Elem(1), Elem(0), Elem(1)]));
        assert_eq!(Matrix::zeros(&f, 3, 3).min_poly().unwrap(), Poly::t(&f));
        assert_eq!(Matrix::identity(&f, 4).min_poly().unwrap(), Poly::linear(&f, Elem(1)));
        assert!(Matrix::zeros(&f, 2, 3).min_poly().is_err());
    }

    #[test]
    fn kernel_examples() {
        let f = gf(5);
        assert_eq!(Matrix::zeros(&f, 2, 2).kernel(), Matrix::identity(&f, 2));
        assert_eq!(Matrix::identity(&f, 3).kernel().cols(), 0);
        let d = Matrix::from_ints(&f, &[&[1, 0], &[0, 0]]);
        assert_eq!(d.kernel(), Matrix::from_ints(&f, &[&[0], &[1]]));
    }

    #[test]
    fn stable_kernel_examples() {
        let f = gf(3);
        let jordan = Matrix::from_ints(&f, &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let (k, r) = jordan.stable_kernel().unwrap();
        assert_eq!((k.dim(), r), (3, 3));
        let (k, r) = Matrix::from_ints(&f, &[&[1, 1], &[0, 2]]).stable_kernel().unwrap();
        assert_eq!((k.dim(), r), (0, 1));
        let (k, r) = Matrix::from_ints(&f, &[&[0, 0], &[0, 1]]).stable_kernel().unwrap();
        assert_eq!((k.to_columns(), r), (Matrix::from_ints(&f, &[&[1], &[0]]), 1));
    }

    #[test]
    fn inverse_round_trip() {
        let f = gf(7);
        let a = Matrix::from_ints(&f, &[&[1, 2, 3], &[0, 1, 4], &[5, 6, 0]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(&f, 3));
        assert!(Matrix::from_ints(&f, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }
}
