//! Finite-dimensional modules given by action matrices on the algebra basis.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Elem, FiniteField, Tower};
use crate::lie::{LieAlgebra, Subalgebra, ValidationReport, Violation};
use crate::matrix::Matrix;
use crate::subspace::Subspace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieModule {
    algebra: Arc<LieAlgebra>,
    dim: usize,
    action: Vec<Matrix>,
}

impl LieModule {
    pub fn new(algebra: &Arc<LieAlgebra>, action: Vec<Matrix>) -> Result<LieModule> {
        if action.len() != algebra.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} action matrices for an algebra of dimension {}",
                action.len(),
                algebra.dim()
            )));
        }
        let dim = match action.first() {
            Some(m) => m.rows(),
            None => return Err(Error::InvalidModule("the algebra has no basis elements".into())),
        };
        if dim == 0 {
            return Err(Error::ZeroDimensional);
        }
        for m in &action {
            if m.field() != algebra.field() {
                return Err(Error::FieldMismatch);
            }
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch(format!("action matrices must all be {dim}x{dim}")));
            }
        }
        Ok(LieModule { algebra: algebra.clone(), dim, action })
    }

    pub fn trivial(algebra: &Arc<LieAlgebra>, dim: usize) -> Result<LieModule> {
        let zero = Matrix::zeros(algebra.field(), dim, dim);
        LieModule::new(algebra, vec![zero; algebra.dim()])
    }

    pub fn adjoint(algebra: &Arc<LieAlgebra>) -> Result<LieModule> {
        let action = (0..algebra.dim()).map(|i| algebra.ad_matrix(&algebra.basis_vector(i))).collect::<Result<_>>()?;
        LieModule::new(algebra, action)
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> &FiniteField {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    pub fn rho_basis(&self, i: usize) -> &Matrix {
        &self.action[i]
    }

    pub fn rho(&self, v: &[Elem]) -> Result<Matrix> {
        if v.len() != self.algebra.dim() {
            return Err(Error::DimensionMismatch(format!("{} coordinates for dimension {}", v.len(), self.algebra.dim())));
        }
        let f = self.field();
        let mut out = Matrix::zeros(f, self.dim, self.dim);
        for (a, m) in v.iter().zip(&self.action) {
            if !a.is_zero() {
                out = out.add(&m.scale(*a))?;
            }
        }
        Ok(out)
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.algebra.dim();
        let mut violations = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = self.action[i].commutator(&self.action[j]).unwrap();
                let rhs = self.rho(self.algebra.bracket_basis(i, j)).unwrap();
                if lhs != rhs {
                    violations.push(Violation::ModuleBracket { i, j });
                }
            }
        }
        ValidationReport { violations }
    }

    /// `phi_x = rho(x)^p - rho(x^[p])`.
    pub fn phi(&self, x: &[Elem]) -> Result<Matrix> {
        let p = self.field().characteristic();
        self.rho(x)?.pow(p)?.sub(&self.rho(&self.algebra.p_power(x)?)?)
    }

    pub fn phi_basis(&self, i: usize) -> Matrix {
        self.phi(&self.algebra.basis_vector(i)).expect("basis vector has the right length")
    }

    /// The F-rational character of the module, if every `phi_{e_i}` is a
    /// scalar.
    pub fn has_character(&self) -> Option<Vec<Elem>> {
        let f = self.field();
        (0..self.algebra.dim()).map(|i| self.phi_basis(i).scalar_value().map(|mu| f.pth_root(mu))).collect()
    }

    /// `Hom(V, W)` with `(x.f) = rho_W(x) f - f rho_V(x)`, on matrix units
    /// `E_ab` (row `a` in `W`, column `b` in `V`) at index `a * dim V + b`.
    pub fn hom_module(v: &LieModule, w: &LieModule) -> Result<LieModule> {
        if v.algebra != w.algebra {
            return Err(Error::Precondition("modules are over different algebras".into()));
        }
        let f = v.field();
        let (dv, dw) = (v.dim, w.dim);
        let action = v
            .action
            .iter()
            .zip(&w.action)
            .map(|(rv, rw)| {
                Matrix::from_fn(f, dv * dw, dv * dw, |row, col| {
                    let (a, b) = (row / dv, row % dv);
                    let (c, d) = (col / dv, col % dv);
                    let mut e = Elem::ZERO;
                    if b == d {
                        e = rw.get(a, c);
                    }
                    if a == c {
                        e = f.sub(e, rv.get(d, b));
                    }
                    e
                })
            })
            .collect();
        LieModule::new(&v.algebra, action)
    }

    pub fn direct_sum(&self, other: &LieModule) -> Result<LieModule> {
        if self.algebra != other.algebra {
            return Err(Error::Precondition("modules are over different algebras".into()));
        }
        let (d1, d2) = (self.dim, other.dim);
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| {
                Matrix::from_fn(self.field(), d1 + d2, d1 + d2, |i, j| match (i < d1, j < d1) {
                    (true, true) => a.get(i, j),
                    (false, false) => b.get(i - d1, j - d1),
                    _ => Elem::ZERO,
                })
            })
            .collect();
        LieModule::new(&self.algebra, action)
    }

    pub fn is_submodule(&self, space: &Subspace) -> bool {
        self.action.iter().all(|m| space.is_invariant(m))
    }

    /// The action on an invariant subspace, in its canonical basis.
    pub fn submodule(&self, space: &Subspace) -> Result<LieModule> {
        if space.dim() == 0 {
            return Err(Error::ZeroDimensional);
        }
        let action = self.action.iter().map(|m| space.restrict(m)).collect::<Result<_>>()?;
        LieModule::new(&self.algebra, action)
    }

    /// The action on `V / space`, in the basis of complement unit vectors.
    pub fn quotient(&self, space: &Subspace) -> Result<LieModule> {
        if space.dim() == self.dim {
            return Err(Error::ZeroDimensional);
        }
        let action = self.action.iter().map(|m| space.quotient_action(m)).collect::<Result<_>>()?;
        LieModule::new(&self.algebra, action)
    }

    /// Restriction to a p-subalgebra, as a module over the subalgebra on its
    /// own.
    pub fn restrict(&self, sub: &Subalgebra) -> Result<LieModule> {
        if sub.parent() != &self.algebra {
            return Err(Error::Precondition("subalgebra of a different algebra".into()));
        }
        let algebra = Arc::new(sub.to_algebra()?);
        let action = sub.indices().iter().map(|&i| self.action[i].clone()).collect();
        LieModule::new(&algebra, action)
    }

    /// `K (x) V` over the extended algebra.
    pub fn extend_scalars(&self, tower: &Tower) -> Result<LieModule> {
        let algebra = Arc::new(self.algebra.extend_scalars(tower)?);
        let ext = tower.ext();
        let action = self.action.iter().map(|m| m.map(ext, |a| tower.embed(a))).collect();
        LieModule::new(&algebra, action)
    }

    /// Same module over an already extended copy of the algebra.
    pub fn extend_to(&self, algebra: &Arc<LieAlgebra>, tower: &Tower) -> Result<LieModule> {
        if algebra.field() != tower.ext() || tower.base() != self.field() {
            return Err(Error::FieldMismatch);
        }
        let action = self.action.iter().map(|m| m.map(tower.ext(), |a| tower.embed(a))).collect();
        LieModule::new(algebra, action)
    }

    /// The isomorphic module `g rho g^-1`.
    pub fn conjugate_by(&self, g: &Matrix) -> Result<LieModule> {
        let inv = g.inverse().ok_or_else(|| Error::Precondition("change of basis is singular".into()))?;
        let action = self.action.iter().map(|m| g.mul(m)?.mul(&inv)).collect::<Result<_>>()?;
        LieModule::new(&self.algebra, action)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixture_modules_validate() {
        assert!(fixtures::rotation_module().validate().is_valid());
        assert!(fixtures::diagonal_module(fixtures::DiagonalPMap::Zero).validate().is_valid());
    }

    #[test]
    fn same_matrix_for_both_generators_is_invalid() {
        let l = Arc::new(fixtures::two_dim_nonabelian(3));
        let a = Matrix::from_ints(l.field(), &[&[1, 1], &[0, 2]]);
        let m = LieModule::new(&l, vec![a.clone(), a]).unwrap();
        assert_eq!(m.validate().violations, vec![Violation::ModuleBracket { i: 0, j: 1 }]);
    }

    #[test]
    fn phi_examples() {
        let w = fixtures::rotation_module();
        assert_eq!(w.phi_basis(0), w.rho_basis(0).clone());
        let v = fixtures::diagonal_module(fixtures::DiagonalPMap::Zero);
        assert_eq!(v.phi_basis(0), Matrix::from_ints(v.field(), &[&[1, 0], &[0, 0]]));
        assert!(v.phi(&[Elem(0), Elem(0)]).unwrap().is_zero());
    }

    #[test]
    fn characters() {
        let v = fixtures::diagonal_module(fixtures::DiagonalPMap::Zero);
        let line = v.submodule(&Subspace::coordinate(v.field(), 2, &[0])).unwrap();
        assert_eq!(line.has_character(), Some(vec![Elem(1), Elem(0)]));
        assert_eq!(fixtures::rotation_module().has_character(), None);
        let l = Arc::new(fixtures::two_dim_nonabelian(3));
        let l0 = Arc::new(LieAlgebra::abelian(l.field(), vec!["a".into()], vec![vec![Elem(0)]]).unwrap());
        assert_eq!(LieModule::trivial(&l0, 1).unwrap().has_character(), Some(vec![Elem(0)]));
    }

    #[test]
    fn hom_of_lines_subtracts_characters() {
        let v = fixtures::diagonal_module(fixtures::DiagonalPMap::Zero);
        let f = v.field().clone();
        let l1 = v.submodule(&Subspace::coordinate(&f, 2, &[0])).unwrap();
        let l2 = v.submodule(&Subspace::coordinate(&f, 2, &[1])).unwrap();
        let h = LieModule::hom_module(&l1, &l2).unwrap();
        assert_eq!(h.dim(), 1);
        assert_eq!(h.has_character(), Some(vec![Elem(2), Elem(1)]));
        let w = fixtures::rotation_module();
        let hw = LieModule::hom_module(&w, &w).unwrap();
        assert_eq!(hw.dim(), 4);
        assert!(hw.validate().is_valid());
    }

    #[test]
    fn zero_dimensional_rejected() {
        let w = fixtures::rotation_module();
        assert_eq!(w.quotient(&Subspace::full(w.field(), 2)).unwrap_err(), Error::ZeroDimensional);
    }
}
