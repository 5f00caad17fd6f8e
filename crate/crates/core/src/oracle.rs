//! Brute-force ground truth: spinning, exhaustive irreducibility,
//! composition series, clusters from composition factors, Hom dimensions.
//!
//! None of this shares code with the eigenspace machinery beyond basic
//! linear algebra, so it can be used to cross-check it.

use crate::cluster::{splitting_tower, Character, Cluster};
use crate::error::{Error, Result};
use crate::field::{Elem, FiniteField, Tower};
use crate::lmodule::LieModule;
use crate::matrix::Matrix;
use crate::par::Execution;
use crate::subspace::Subspace;

pub const DEFAULT_BOUND: u64 = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest `|F|^dim` an exhaustive scan may enumerate.
    pub bound: u64,
    pub exec: Execution,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { bound: DEFAULT_BOUND, exec: Execution::default() }
    }
}

/// Smallest submodule containing `v`.
pub fn spin(m: &LieModule, v: &[Elem]) -> Result<Subspace> {
    if v.len() != m.dim() {
        return Err(Error::DimensionMismatch(format!("vector of length {} in a module of dimension {}", v.len(), m.dim())));
    }
    let f = m.field();
    let mut space = Subspace::zero(f, m.dim());
    let mut queue = vec![v.to_vec()];
    while let Some(u) = queue.pop() {
        if space.contains(&u) {
            continue;
        }
        space = space.sum(&Subspace::from_vectors(f, m.dim(), [u.clone()]));
        for r in m.action() {
            queue.push(r.mul_vec(&u)?);
        }
    }
    Ok(space)
}

/// `|F|^d`, if within the bound.
pub fn enumeration_size(field: &FiniteField, dim: usize, bound: u64) -> Result<u64> {
    let size = (field.size() as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    if size > bound as u128 {
        return Err(Error::BoundExceeded { size, bound });
    }
    Ok(size as u64)
}

/// The vector with base-`q` digits of `idx` (first coordinate most
/// significant), if it is nonzero with leading coordinate 1.
fn normalized_vector(field: &FiniteField, dim: usize, mut idx: u64) -> Option<Vec<Elem>> {
    let q = field.size();
    let mut v = vec![Elem::ZERO; dim];
    for x in v.iter_mut().rev() {
        *x = Elem(idx % q);
        idx /= q;
    }
    (v.iter().find(|a| !a.is_zero()) == Some(&Elem::ONE)).then_some(v)
}

/// Every nonzero vector spins to the whole space.
pub fn is_irreducible(m: &LieModule, cfg: &OracleConfig) -> Result<bool> {
    let d = m.dim();
    if d == 1 {
        return Ok(true);
    }
    let size = enumeration_size(m.field(), d, cfg.bound)?;
    Ok(cfg.exec.all_range(size, |idx| match normalized_vector(m.field(), d, idx) {
        Some(v) => spin(m, &v).map(|s| s.is_full()).unwrap_or(false),
        None => true,
    }))
}

/// A minimal nonzero submodule: least dimension among all spins, ties
/// broken by the smallest echelon basis.
pub fn minimal_submodule(m: &LieModule, cfg: &OracleConfig) -> Result<Subspace> {
    let d = m.dim();
    let size = enumeration_size(m.field(), d, cfg.bound)?;
    let spins = cfg.exec.map_range(size, |idx| normalized_vector(m.field(), d, idx).map(|v| spin(m, &v)));
    let mut best: Option<Subspace> = None;
    for s in spins.into_iter().flatten() {
        let s = s?;
        let better = match &best {
            None => true,
            Some(b) => (s.dim(), s.sort_key()) < (b.dim(), b.sort_key()),
        };
        if better {
            best = Some(s);
        }
    }
    best.ok_or(Error::ZeroDimensional)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionSeries {
    pub factors: Vec<LieModule>,
}

impl CompositionSeries {
    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(LieModule::dim).collect()
    }
}

/// Factors of the series built bottom-up from minimal submodules.
pub fn composition_factors(m: &LieModule, cfg: &OracleConfig) -> Result<CompositionSeries> {
    let mut factors = Vec::new();
    let mut current = m.clone();
    loop {
        let s = minimal_submodule(&current, cfg)?;
        factors.push(current.submodule(&s)?);
        if s.is_full() {
            return Ok(CompositionSeries { factors });
        }
        current = current.quotient(&s)?;
    }
}

/// `cl(V)` as the characters of the composition factors of `K (x) V`.
pub fn cluster_by_factors(m: &LieModule, cfg: &OracleConfig) -> Result<Cluster> {
    cluster_by_factors_in(m, &splitting_tower(m)?, cfg)
}

pub fn cluster_by_factors_in(m: &LieModule, tower: &Tower, cfg: &OracleConfig) -> Result<Cluster> {
    let mk = m.extend_scalars(tower)?;
    let series = composition_factors(&mk, cfg)?;
    let k = tower.ext();
    let chars = series
        .factors
        .iter()
        .map(|fac| {
            let values = fac
                .has_character()
                .ok_or_else(|| Error::Invariant("composition factor over the splitting field has no character".into()))?;
            Character::new(k, tower.q(), values)
        })
        .collect::<Result<Vec<_>>>()?;
    Cluster::new(k, tower.q(), chars)
}

/// `dim {f : rho_W(x) f = f rho_V(x) for all basis x}`.
pub fn hom_dim(v: &LieModule, w: &LieModule) -> Result<usize> {
    if v.algebra() != w.algebra() {
        return Err(Error::Precondition("modules are over different algebras".into()));
    }
    let f = v.field();
    let (dv, dw) = (v.dim(), w.dim());
    let unknowns = dv * dw;
    let mut rows = Vec::new();
    for (rv, rw) in v.action().iter().zip(w.action()) {
        // entry (a, b) of rho_W f - f rho_V, f_{cd} at index c * dv + d
        for a in 0..dw {
            for b in 0..dv {
                let mut row = vec![Elem::ZERO; unknowns];
                for c in 0..dw {
                    let idx = c * dv + b;
                    row[idx] = f.add(row[idx], rw.get(a, c));
                }
                for d in 0..dv {
                    let idx = a * dv + d;
                    row[idx] = f.sub(row[idx], rv.get(d, b));
                }
                rows.push(row);
            }
        }
    }
    Ok(Matrix::from_rows(f, rows)?.null_space().dim())
}

/// Amenability straight from the definition: over `K`, on each
/// `V_c = cap_i ker (phi_i - c(e_i)^p)^d`, every `phi_i - c(e_i)^p` vanishes.
pub fn amenable_by_definition(m: &LieModule, tower: &Tower, cluster: &Cluster) -> Result<bool> {
    let k = tower.ext();
    let d = m.dim();
    let p = k.characteristic() as u128;
    let phis: Vec<Matrix> = (0..m.algebra().dim()).map(|i| m.phi_basis(i).map(k, |a| tower.embed(a))).collect();
    let mut total = 0;
    for c in cluster.chars() {
        let shifted: Vec<Matrix> = phis.iter().zip(c.values()).map(|(phi, &v)| phi.clone().add_scalar(k.neg(k.pow(v, p)))).collect();
        let mut space = Subspace::full(k, d);
        for s in &shifted {
            space = space.intersect(&s.pow(d as u64)?.null_space());
        }
        total += space.dim();
        for s in &shifted {
            if space.basis().iter().any(|v| s.mul_vec(v).map(|w| w.iter().any(|a| !a.is_zero())).unwrap_or(true)) {
                return Ok(false);
            }
        }
    }
    if total != d {
        return Err(Error::Invariant("generalized eigenspaces do not fill the module".into()));
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::compute_cluster;
    use crate::fixtures::{self, DiagonalPMap};
    use std::sync::Arc;

    #[test]
    fn spins() {
        let v = fixtures::diagonal_module(DiagonalPMap::Zero);
        assert_eq!(spin(&v, &[Elem(1), Elem(0)]).unwrap(), Subspace::coordinate(v.field(), 2, &[0]));
        let w = fixtures::rotation_module();
        assert!(spin(&w, &[Elem(1), Elem(0)]).unwrap().is_full());
        assert_eq!(spin(&w, &[Elem(0), Elem(0)]).unwrap().dim(), 0);
        assert!(spin(&w, &[Elem(0)]).is_err());
    }

    #[test]
    fn irreducibility() {
        let cfg = OracleConfig::default();
        assert!(is_irreducible(&fixtures::rotation_module(), &cfg).unwrap());
        assert!(!is_irreducible(&fixtures::diagonal_module(DiagonalPMap::Zero), &cfg).unwrap());
        let tiny = OracleConfig { bound: 4, ..cfg };
        assert!(matches!(is_irreducible(&fixtures::rotation_module(), &tiny), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn series() {
        let cfg = OracleConfig::default();
        let v = fixtures::diagonal_module(DiagonalPMap::Zero);
        assert_eq!(composition_factors(&v, &cfg).unwrap().dims(), vec![1, 1]);
        assert_eq!(composition_factors(&fixtures::rotation_module(), &cfg).unwrap().dims(), vec![2]);
        let l = Arc::new(fixtures::two_dim_nonabelian(3));
        let f = l.field().clone();
        let tri = LieModule::new(&l, vec![Matrix::from_ints(&f, &[&[1, 0], &[0, 0]]), Matrix::from_ints(&f, &[&[0, 1], &[0, 0]])]).unwrap();
        assert!(tri.validate().is_valid());
        assert_eq!(composition_factors(&tri, &cfg).unwrap().dims(), vec![1, 1]);
    }

    #[test]
    fn factor_clusters_match() {
        let cfg = OracleConfig::default();
        for m in [fixtures::rotation_module(), fixtures::diagonal_module(DiagonalPMap::Zero), fixtures::orbit_merging_module()] {
            assert_eq!(cluster_by_factors(&m, &cfg).unwrap(), compute_cluster(&m).unwrap());
        }
    }

    #[test]
    fn hom_dims() {
        let w = fixtures::rotation_module();
        assert_eq!(hom_dim(&w, &w).unwrap(), 2);
        let v = fixtures::diagonal_module(DiagonalPMap::Zero);
        let f = v.field().clone();
        let l1 = v.submodule(&Subspace::coordinate(&f, 2, &[0])).unwrap();
        let l2 = v.submodule(&Subspace::coordinate(&f, 2, &[1])).unwrap();
        assert_eq!(hom_dim(&l1, &l2).unwrap(), 0);
        assert_eq!(hom_dim(&v, &v).unwrap(), 2);
    }

    #[test]
    fn amenable_definition() {
        for (m, expected) in [(fixtures::rotation_module(), true), (fixtures::jordan_p2(), false)] {
            let tower = splitting_tower(&m).unwrap();
            let cl = crate::cluster::compute_cluster_in(&m, &tower).unwrap();
            assert_eq!(amenable_by_definition(&m, &tower, &cl).unwrap(), expected);
        }
    }
}
