//! Restricted Lie algebras given by structure constants and the p-map on a
//! basis.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Elem, FiniteField, Tower};
use crate::matrix::Matrix;
use crate::subspace::Subspace;

/// A failed axiom, with the basis indices involved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    SelfBracket { i: usize },
    Antisymmetry { i: usize, j: usize },
    Jacobi { i: usize, j: usize, k: usize },
    /// `ad(e_i^[p]) != (ad e_i)^p`.
    PMapAd { i: usize },
    /// `[R_i, R_j] != sum_k c_ij^k R_k` on a module.
    ModuleBracket { i: usize, j: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SelfBracket { i } => write!(f, "[e{i}, e{i}] != 0"),
            Violation::Antisymmetry { i, j } => write!(f, "[e{i}, e{j}] != -[e{j}, e{i}]"),
            Violation::Jacobi { i, j, k } => write!(f, "Jacobi identity fails on (e{i}, e{j}, e{k})"),
            Violation::PMapAd { i } => write!(f, "ad(e{i}^[p]) != (ad e{i})^p"),
            Violation::ModuleBracket { i, j } => {
                write!(f, "[rho(e{i}), rho(e{j})] != rho([e{i}, e{j}])")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    field: FiniteField,
    names: Vec<String>,
    // c[(i * n + j) * n + k] = coefficient of e_k in [e_i, e_j]
    structure: Vec<Elem>,
    pmap: Vec<Vec<Elem>>,
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra({:?}, {:?})", self.field, self.names)
    }
}

impl LieAlgebra {
    /// Builds an algebra from the brackets `[e_i, e_j]` listed for some pairs
    /// (the opposite order is filled in by antisymmetry, unlisted pairs are
    /// zero) and the p-map images of the basis.
    pub fn new(
        field: &FiniteField,
        names: Vec<String>,
        brackets: &[(usize, usize, Vec<Elem>)],
        pmap: Vec<Vec<Elem>>,
    ) -> Result<LieAlgebra> {
        let n = names.len();
        let mut structure = vec![Elem::ZERO; n * n * n];
        let mut seen = vec![false; n * n];
        for (i, j, v) in brackets {
            let (i, j) = (*i, *j);
            if i >= n || j >= n {
                return Err(Error::DimensionMismatch(format!("bracket index ({i}, {j}) out of range for dimension {n}")));
            }
            if v.len() != n {
                return Err(Error::DimensionMismatch(format!("bracket [e{i}, e{j}] has {} coordinates", v.len())));
            }
            if i == j {
                if v.iter().any(|a| !a.is_zero()) {
                    return Err(Error::InvalidAlgebra(format!("[e{i}, e{i}] must vanish")));
                }
                continue;
            }
            let neg: Vec<Elem> = v.iter().map(|&a| field.neg(a)).collect();
            for (a, b, w) in [(i, j, v.clone()), (j, i, neg)] {
                let slot = &mut structure[(a * n + b) * n..(a * n + b + 1) * n];
                if seen[a * n + b] && slot != w.as_slice() {
                    return Err(Error::InvalidAlgebra(format!("conflicting values for [e{a}, e{b}]")));
                }
                slot.copy_from_slice(&w);
                seen[a * n + b] = true;
            }
        }
        LieAlgebra::from_structure_constants(field, names, structure, pmap)
    }

    /// Raw constructor; only shapes are checked, see [`LieAlgebra::validate`].
    pub fn from_structure_constants(
        field: &FiniteField,
        names: Vec<String>,
        structure: Vec<Elem>,
        pmap: Vec<Vec<Elem>>,
    ) -> Result<LieAlgebra> {
        let n = names.len();
        if structure.len() != n * n * n {
            return Err(Error::DimensionMismatch("structure constants".into()));
        }
        if pmap.len() != n || pmap.iter().any(|v| v.len() != n) {
            return Err(Error::DimensionMismatch("p-map needs one coordinate vector per basis element".into()));
        }
        if structure.iter().chain(pmap.iter().flatten()).any(|&a| !field.contains(a)) {
            return Err(Error::NotInField);
        }
        Ok(LieAlgebra { field: field.clone(), names, structure, pmap })
    }

    /// Abelian algebra with the given p-map.
    pub fn abelian(field: &FiniteField, names: Vec<String>, pmap: Vec<Vec<Elem>>) -> Result<LieAlgebra> {
        let n = names.len();
        LieAlgebra::from_structure_constants(field, names, vec![Elem::ZERO; n * n * n], pmap)
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Elem> {
        let mut v = vec![Elem::ZERO; self.dim()];
        v[i] = Elem::ONE;
        v
    }

    /// Coordinates of `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Elem] {
        let n = self.dim();
        &self.structure[(i * n + j) * n..(i * n + j + 1) * n]
    }

    /// Coordinates of `e_i^[p]`.
    pub fn p_image(&self, i: usize) -> &[Elem] {
        &self.pmap[i]
    }

    fn check_len(&self, v: &[Elem]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!("{} coordinates for dimension {}", v.len(), self.dim())));
        }
        Ok(())
    }

    pub fn bracket(&self, u: &[Elem], v: &[Elem]) -> Result<Vec<Elem>> {
        self.check_len(u)?;
        self.check_len(v)?;
        let f = &self.field;
        let n = self.dim();
        let mut out = vec![Elem::ZERO; n];
        for (i, &a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in v.iter().enumerate() {
                if b.is_zero() || i == j {
                    continue;
                }
                let ab = f.mul(a, b);
                for (o, &c) in out.iter_mut().zip(self.bracket_basis(i, j)) {
                    *o = f.add(*o, f.mul(ab, c));
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `w -> [v, w]`.
    pub fn ad_matrix(&self, v: &[Elem]) -> Result<Matrix> {
        self.check_len(v)?;
        let n = self.dim();
        let cols: Vec<Vec<Elem>> = (0..n).map(|j| self.bracket(v, &self.basis_vector(j))).collect::<Result<_>>()?;
        Ok(Matrix::from_columns(&self.field, n, &cols))
    }

    /// `v^[p]`, extending the basis values by Jacobson's formula
    /// `(a+b)^[p] = a^[p] + b^[p] + sum_i s_i(a, b)` with `i s_i(a, b)` the
    /// coefficient of `t^(i-1)` in `ad(ta + b)^(p-1)(a)`.
    pub fn p_power(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        self.check_len(v)?;
        let f = &self.field;
        let p = f.characteristic();
        let n = self.dim();
        let mut partial = vec![Elem::ZERO; n];
        let mut acc = vec![Elem::ZERO; n];
        for (i, &coef) in v.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let b: Vec<Elem> = self.basis_vector(i).iter().map(|&x| f.mul(x, coef)).collect();
            let bp = f.pow(coef, p as u128);
            add_scaled(f, &mut acc, &self.pmap[i], bp);
            if partial.iter().any(|a| !a.is_zero()) {
                let s = self.jacobson_correction(&partial, &b)?;
                add_scaled(f, &mut acc, &s, Elem::ONE);
            }
            add_scaled(f, &mut partial, &b, Elem::ONE);
        }
        Ok(acc)
    }

    /// `sum_{i=1}^{p-1} s_i(a, b)`.
    fn jacobson_correction(&self, a: &[Elem], b: &[Elem]) -> Result<Vec<Elem>> {
        let f = &self.field;
        let p = f.characteristic() as usize;
        let n = self.dim();
        // coefficients of t^0, t^1, ... in ad(ta + b)^k (a)
        let mut terms: Vec<Vec<Elem>> = vec![a.to_vec()];
        for _ in 1..p {
            let mut next = vec![vec![Elem::ZERO; n]; terms.len() + 1];
            for (k, u) in terms.iter().enumerate() {
                add_scaled(f, &mut next[k], &self.bracket(b, u)?, Elem::ONE);
                add_scaled(f, &mut next[k + 1], &self.bracket(a, u)?, Elem::ONE);
            }
            terms = next;
        }
        let mut out = vec![Elem::ZERO; n];
        for i in 1..p {
            let inv_i = f.inv(f.from_int(i as i64));
            add_scaled(f, &mut out, &terms[i - 1], inv_i);
        }
        Ok(out)
    }

    pub fn validate(&self) -> ValidationReport {
        let f = &self.field;
        let n = self.dim();
        let mut violations = Vec::new();
        for i in 0..n {
            if self.bracket_basis(i, i).iter().any(|a| !a.is_zero()) {
                violations.push(Violation::SelfBracket { i });
            }
            for j in i + 1..n {
                let sym = self
                    .bracket_basis(i, j)
                    .iter()
                    .zip(self.bracket_basis(j, i))
                    .any(|(&a, &b)| !f.add(a, b).is_zero());
                if sym {
                    violations.push(Violation::Antisymmetry { i, j });
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (ei, ej, ek) = (self.basis_vector(i), self.basis_vector(j), self.basis_vector(k));
                    let t1 = self.bracket(&ei, self.bracket_basis(j, k)).unwrap();
                    let t2 = self.bracket(&ej, self.bracket_basis(k, i)).unwrap();
                    let t3 = self.bracket(&ek, self.bracket_basis(i, j)).unwrap();
                    if t1.iter().zip(&t2).zip(&t3).any(|((&a, &b), &c)| !f.add(f.add(a, b), c).is_zero()) {
                        violations.push(Violation::Jacobi { i, j, k });
                    }
                }
            }
        }
        let p = f.characteristic();
        for i in 0..n {
            let lhs = self.ad_matrix(&self.pmap[i]).unwrap();
            let rhs = self.ad_matrix(&self.basis_vector(i)).unwrap().pow(p).unwrap();
            if lhs != rhs {
                violations.push(Violation::PMapAd { i });
            }
        }
        ValidationReport { violations }
    }

    /// The same algebra over the extension field of `tower`.
    pub fn extend_scalars(&self, tower: &Tower) -> Result<LieAlgebra> {
        if tower.base() != &self.field {
            return Err(Error::FieldMismatch);
        }
        let ext = tower.ext();
        Ok(LieAlgebra {
            field: ext.clone(),
            names: self.names.clone(),
            structure: self.structure.iter().map(|&a| tower.embed(a)).collect(),
            pmap: self.pmap.iter().map(|v| v.iter().map(|&a| tower.embed(a)).collect()).collect(),
        })
    }
}

pub(crate) fn add_scaled(f: &FiniteField, acc: &mut [Elem], v: &[Elem], s: Elem) {
    if s.is_zero() {
        return;
    }
    for (a, &b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a = f.add(*a, f.mul(s, b));
        }
    }
}

/// A subalgebra spanned by a subset of the ambient basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subalgebra {
    parent: Arc<LieAlgebra>,
    indices: Vec<usize>,
}

impl Subalgebra {
    pub fn new(parent: &Arc<LieAlgebra>, indices: &[usize]) -> Result<Subalgebra> {
        let mut indices = indices.to_vec();
        indices.sort_unstable();
        indices.dedup();
        let n = parent.dim();
        if let Some(&bad) = indices.iter().find(|&&i| i >= n) {
            return Err(Error::DimensionMismatch(format!("basis index {bad} out of range for dimension {n}")));
        }
        for &i in &indices {
            for &j in &indices {
                let closed = parent
                    .bracket_basis(i, j)
                    .iter()
                    .enumerate()
                    .all(|(k, a)| a.is_zero() || indices.contains(&k));
                if !closed {
                    return Err(Error::NotSubalgebra(indices));
                }
            }
        }
        Ok(Subalgebra { parent: parent.clone(), indices })
    }

    pub fn whole(parent: &Arc<LieAlgebra>) -> Subalgebra {
        Subalgebra { parent: parent.clone(), indices: (0..parent.dim()).collect() }
    }

    pub fn parent(&self) -> &Arc<LieAlgebra> {
        &self.parent
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn dim(&self) -> usize {
        self.indices.len()
    }

    /// Basis indices of the parent outside the subalgebra, ascending.
    pub fn cobasis(&self) -> Vec<usize> {
        (0..self.parent.dim()).filter(|i| !self.indices.contains(i)).collect()
    }

    pub fn span(&self) -> Subspace {
        Subspace::coordinate(self.parent.field(), self.parent.dim(), &self.indices)
    }

    /// Closed under the p-map (it suffices to check the basis, by Jacobson's
    /// formula and bracket closure).
    pub fn is_p_closed(&self) -> bool {
        self.indices
            .iter()
            .all(|&i| self.parent.p_image(i).iter().enumerate().all(|(k, a)| a.is_zero() || self.indices.contains(&k)))
    }

    /// The subalgebra as a restricted Lie algebra in its own right, with the
    /// inherited names, brackets and p-map.
    pub fn to_algebra(&self) -> Result<LieAlgebra> {
        if !self.is_p_closed() {
            return Err(Error::NotPSubalgebra(self.indices.clone()));
        }
        let parent = &self.parent;
        let m = self.dim();
        let mut structure = Vec::with_capacity(m * m * m);
        for &i in &self.indices {
            for &j in &self.indices {
                let b = parent.bracket_basis(i, j);
                structure.extend(self.indices.iter().map(|&k| b[k]));
            }
        }
        let pmap = self
            .indices
            .iter()
            .map(|&i| self.indices.iter().map(|&k| parent.p_image(i)[k]).collect())
            .collect();
        let names = self.indices.iter().map(|&i| parent.names()[i].clone()).collect();
        LieAlgebra::from_structure_constants(parent.field(), names, structure, pmap)
    }
}

/// `{x in L : [x, U] in U}`.
pub fn idealizer(algebra: &LieAlgebra, space: &Subspace) -> Result<Subspace> {
    let f = algebra.field();
    let n = algebra.dim();
    if space.ambient() != n {
        return Err(Error::DimensionMismatch("subspace ambient dimension".into()));
    }
    let ann = space.annihilator();
    let mut rows = Vec::new();
    for u in space.basis() {
        // [x, u] = -ad(u) x
        let ad_u = algebra.ad_matrix(u)?;
        for alpha in ann.basis() {
            rows.push((0..n).map(|j| {
                (0..n).fold(Elem::ZERO, |acc, k| f.add(acc, f.mul(alpha[k], ad_u.get(k, j))))
            }).collect::<Vec<_>>());
        }
    }
    if rows.is_empty() {
        return Ok(Subspace::full(f, n));
    }
    Ok(Matrix::from_rows(f, rows)?.null_space())
}

/// Idealizer of a subalgebra; always contains it.
pub fn idealizer_of(sub: &Subalgebra) -> Result<Subspace> {
    idealizer(sub.parent(), &sub.span())
}

/// The ascending chain `S, N(S), N(N(S)), ...` if it reaches `L`, else
/// `None`. Each term is an ideal of the next.
pub fn subnormal_chain(sub: &Subalgebra) -> Result<Option<Vec<Subspace>>> {
    let parent = sub.parent();
    let mut chain = vec![sub.span()];
    loop {
        let last = chain.last().unwrap();
        if last.is_full() {
            return Ok(Some(chain));
        }
        let next = idealizer(parent, last)?;
        if next.dim() == last.dim() {
            return Ok(None);
        }
        chain.push(next);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::fixtures;

    #[test]
    fn two_dim_algebra_is_restricted() {
        let l = fixtures::two_dim_nonabelian(3);
        assert!(l.validate().is_valid());
    }

    #[test]
    fn wrong_pmap_is_reported() {
        let f = make_field(3, 1).unwrap();
        let names = vec!["x".to_string(), "y".to_string()];
        let l = LieAlgebra::new(
            &f,
            names,
            &[(0, 1, vec![Elem(0), Elem(1)])],
            vec![vec![Elem(1), Elem(0)], vec![Elem(1), Elem(0)]],
        )
        .unwrap();
        assert_eq!(l.validate().violations, vec![Violation::PMapAd { i: 1 }]);
    }

    #[test]
    fn abelian_any_pmap_is_valid() {
        let f = make_field(5, 1).unwrap();
        let l = LieAlgebra::abelian(&f, vec!["a".into(), "b".into()], vec![vec![Elem(3), Elem(4)], vec![Elem(1), Elem(1)]]).unwrap();
        assert!(l.validate().is_valid());
        assert_eq!(l.p_power(&[Elem(1), Elem(1)]).unwrap(), vec![Elem(4), Elem(0)]);
    }

    #[test]
    fn jacobson_on_sum() {
        let l = fixtures::two_dim_nonabelian(3);
        assert_eq!(l.p_power(&[Elem(1), Elem(1)]).unwrap(), vec![Elem(1), Elem(1)]);
        assert_eq!(l.p_power(&[Elem(0), Elem(1)]).unwrap(), vec![Elem(0), Elem(0)]);
        assert_eq!(l.p_power(&[Elem(1), Elem(0)]).unwrap(), vec![Elem(1), Elem(0)]);
    }

    #[test]
    fn ad_examples() {
        let l = fixtures::two_dim_nonabelian(3);
        let f = l.field().clone();
        assert_eq!(l.ad_matrix(&[Elem(1), Elem(0)]).unwrap(), Matrix::from_ints(&f, &[&[0, 0], &[0, 1]]));
        assert!(l.ad_matrix(&[Elem(1)]).is_err());
    }

    #[test]
    fn idealizers_and_chains() {
        let l = Arc::new(fixtures::two_dim_nonabelian(3));
        let x = Subalgebra::new(&l, &[0]).unwrap();
        let y = Subalgebra::new(&l, &[1]).unwrap();
        assert_eq!(idealizer_of(&x).unwrap(), x.span());
        assert!(idealizer_of(&y).unwrap().is_full());
        assert!(idealizer_of(&Subalgebra::whole(&l)).unwrap().is_full());
        assert_eq!(subnormal_chain(&x).unwrap(), None);
        let chain = subnormal_chain(&y).unwrap().unwrap();
        assert_eq!(chain.len(), 2);
        assert_eq!(chain[0], y.span());
        assert!(chain[1].is_full());
    }

    #[test]
    fn heisenberg_chain_has_three_steps() {
        let l = Arc::new(fixtures::heisenberg(3, [Elem(0), Elem(0), Elem(0)]));
        let x = Subalgebra::new(&l, &[0]).unwrap();
        let chain = subnormal_chain(&x).unwrap().unwrap();
        assert_eq!(chain.iter().map(Subspace::dim).collect::<Vec<_>>(), vec![1, 2, 3]);
    }

    #[test]
    fn sub_algebra_checks() {
        let l = Arc::new(fixtures::heisenberg(3, [Elem(0), Elem(0), Elem(0)]));
        assert_eq!(Subalgebra::new(&l, &[0, 1]).unwrap_err(), Error::NotSubalgebra(vec![0, 1]));
        let s = Subalgebra::new(&l, &[0, 2]).unwrap();
        assert_eq!(s.cobasis(), vec![1]);
        assert!(s.is_p_closed());
        assert_eq!(s.to_algebra().unwrap().dim(), 2);
    }
}
