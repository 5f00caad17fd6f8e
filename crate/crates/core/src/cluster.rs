//! Characters, clusters and the cluster decomposition.
//!
//! Everything is computed over one extension `K` of the base field chosen
//! large enough to contain the eigenvalues of all `phi_{e_i}`. Characters
//! are recovered from joint eigenvalues by taking p-th roots.

use std::cmp::Ordering;
use std::fmt;

use num_integer::lcm;

use crate::error::{Error, Result};
use crate::field::{galois_orbit, Elem, FiniteField, Tower};
use crate::lie::{subnormal_chain, Subalgebra};
use crate::lmodule::LieModule;
use crate::matrix::Matrix;
use crate::par::Execution;
use crate::poly::{irreducible_factor_degrees, is_squarefree, roots_in_field, Poly};
use crate::subspace::Subspace;

/// Values `c(e_i)` in `K`, relative to the base field of size `base_q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Character {
    field: FiniteField,
    base_q: u64,
    values: Vec<Elem>,
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.formatted().join(", "))
    }
}

impl Character {
    pub fn new(field: &FiniteField, base_q: u64, values: Vec<Elem>) -> Result<Character> {
        field.subfield_exponent(base_q)?;
        if values.iter().any(|&a| !field.contains(a)) {
            return Err(Error::NotInField);
        }
        Ok(Character { field: field.clone(), base_q, values })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn base_q(&self) -> u64 {
        self.base_q
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    /// Concatenated coefficient vectors, lowest degree first; the sort key.
    pub fn key(&self) -> Vec<u64> {
        self.values.iter().flat_map(|&a| self.field.coeffs(a)).collect()
    }

    pub fn formatted(&self) -> Vec<String> {
        self.values.iter().map(|&a| self.field.format_elem(a)).collect()
    }

    /// `c^(q^e)`, componentwise.
    pub fn conjugate(&self, e: i64) -> Character {
        let m = self.field.subfield_exponent(self.base_q).expect("checked at construction") as i64;
        let values = self.values.iter().map(|&a| self.field.frobenius(a, e * m)).collect();
        Character { values, ..self.clone() }
    }

    /// The conjugacy class of `c`, starting at `c`.
    pub fn orbit(&self) -> Vec<Character> {
        galois_orbit(&self.field, &self.values, self.base_q)
            .expect("checked at construction")
            .into_iter()
            .map(|values| Character { values, ..self.clone() })
            .collect()
    }

    /// `[F[c] : F]`.
    pub fn degree(&self) -> usize {
        self.orbit().len()
    }

    pub fn restrict(&self, indices: &[usize]) -> Character {
        Character { values: indices.iter().map(|&i| self.values[i]).collect(), ..self.clone() }
    }

    /// `self - other`.
    pub fn sub(&self, other: &Character) -> Result<Character> {
        if self.field != other.field || self.base_q != other.base_q {
            return Err(Error::FieldMismatch);
        }
        if self.values.len() != other.values.len() {
            return Err(Error::DimensionMismatch("characters of different algebras".into()));
        }
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| self.field.sub(a, b)).collect();
        Ok(Character { values, ..self.clone() })
    }

    /// The values as elements of the base field, when they all lie there.
    pub fn rational_values(&self, tower: &Tower) -> Option<Vec<Elem>> {
        self.values.iter().map(|&a| tower.pullback(a)).collect()
    }
}

impl PartialOrd for Character {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Character {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key()).then_with(|| self.values.cmp(&other.values))
    }
}

pub fn character_field(c: &Character) -> usize {
    c.degree()
}

/// A finite set of characters over one field, kept sorted.
#[derive(Clone, PartialEq, Eq)]
pub struct Cluster {
    field: FiniteField,
    base_q: u64,
    chars: Vec<Character>,
}

impl fmt::Debug for Cluster {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.chars).finish()
    }
}

impl Cluster {
    pub fn new(field: &FiniteField, base_q: u64, chars: impl IntoIterator<Item = Character>) -> Result<Cluster> {
        field.subfield_exponent(base_q)?;
        let mut chars: Vec<Character> = chars.into_iter().collect();
        if chars.iter().any(|c| c.field != *field || c.base_q != base_q) {
            return Err(Error::FieldMismatch);
        }
        chars.sort();
        chars.dedup();
        Ok(Cluster { field: field.clone(), base_q, chars })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn base_q(&self) -> u64 {
        self.base_q
    }

    pub fn chars(&self) -> &[Character] {
        &self.chars
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn contains(&self, c: &Character) -> bool {
        self.chars.binary_search(c).is_ok()
    }

    pub fn is_frobenius_closed(&self) -> bool {
        self.chars.iter().all(|c| self.contains(&c.conjugate(1)))
    }

    /// Whether the cluster is a single conjugacy class.
    pub fn is_simple(&self) -> Result<bool> {
        let first = self.chars.first().ok_or(Error::EmptyCluster)?;
        let orbit = first.orbit();
        Ok(orbit.len() == self.chars.len() && orbit.iter().all(|c| self.contains(c)))
    }

    /// Partition into conjugacy classes (restricted to members), ordered by
    /// least member.
    pub fn orbits(&self) -> Vec<Cluster> {
        let mut seen = vec![false; self.chars.len()];
        let mut out = Vec::new();
        for (i, c) in self.chars.iter().enumerate() {
            if seen[i] {
                continue;
            }
            let members: Vec<Character> = c
                .orbit()
                .into_iter()
                .filter_map(|d| self.chars.binary_search(&d).ok())
                .map(|j| {
                    seen[j] = true;
                    self.chars[j].clone()
                })
                .collect();
            out.push(Cluster { field: self.field.clone(), base_q: self.base_q, chars: sorted(members) });
        }
        out
    }

    pub fn restrict(&self, indices: &[usize]) -> Cluster {
        let chars = sorted(self.chars.iter().map(|c| c.restrict(indices)).collect());
        Cluster { chars, ..self.clone() }
    }

    /// `{c2 - c1 : c1 in self, c2 in other}`.
    pub fn differences(&self, other: &Cluster) -> Result<Cluster> {
        let mut out = Vec::new();
        for c1 in &self.chars {
            for c2 in &other.chars {
                out.push(c2.sub(c1)?);
            }
        }
        Cluster::new(&self.field, self.base_q, out)
    }
}

fn sorted(mut chars: Vec<Character>) -> Vec<Character> {
    chars.sort();
    chars.dedup();
    chars
}

/// Least `D` such that `GF(q^D)` contains every eigenvalue of every matrix.
pub fn splitting_degree_of(mats: &[Matrix]) -> Result<usize> {
    let mut d = 1;
    for a in mats {
        for deg in irreducible_factor_degrees(&a.min_poly()?)? {
            d = lcm(d, deg);
        }
    }
    Ok(d)
}

fn basis_phis(m: &LieModule) -> Vec<Matrix> {
    (0..m.algebra().dim()).map(|i| m.phi_basis(i)).collect()
}

pub fn splitting_degree(m: &LieModule) -> Result<usize> {
    splitting_degree_of(&basis_phis(m))
}

pub fn splitting_tower(m: &LieModule) -> Result<Tower> {
    Tower::new(m.field(), splitting_degree(m)?)
}

/// One extension that splits every listed module.
pub fn common_tower(modules: &[&LieModule]) -> Result<Tower> {
    let base = modules.first().ok_or_else(|| Error::Precondition("no modules".into()))?.field();
    let mut d = 1;
    for m in modules {
        if m.field() != base {
            return Err(Error::FieldMismatch);
        }
        d = lcm(d, splitting_degree(m)?);
    }
    Tower::new(base, d)
}

/// A joint generalized eigenspace of a commuting family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenPiece {
    pub eigenvalues: Vec<Elem>,
    pub space: Subspace,
}

/// Joint generalized eigenspaces of commuting square matrices over their own
/// field, by successive refinement. Fails if some eigenvalue lies outside
/// the field.
pub fn joint_eigenspaces(mats: &[Matrix]) -> Result<Vec<EigenPiece>> {
    let first = mats.first().ok_or_else(|| Error::Precondition("empty matrix family".into()))?;
    let f = first.field().clone();
    let d = first.require_square()?;
    let mut pieces = vec![EigenPiece { eigenvalues: Vec::new(), space: Subspace::full(&f, d) }];
    for a in mats {
        let mut next = Vec::new();
        for piece in pieces {
            let r = piece.space.restrict(a)?;
            let mut roots = roots_in_field(&r.min_poly()?, &f)?;
            roots.dedup();
            let mut covered = 0;
            for mu in roots {
                let (ker, _) = r.clone().add_scalar(f.neg(mu)).stable_kernel()?;
                covered += ker.dim();
                let vectors: Vec<Vec<Elem>> = ker.basis().iter().map(|c| piece.space.combine(c)).collect();
                let mut eigenvalues = piece.eigenvalues.clone();
                eigenvalues.push(mu);
                next.push(EigenPiece { eigenvalues, space: Subspace::from_vectors(&f, d, vectors) });
            }
            if covered != piece.space.dim() {
                return Err(Error::Precondition(format!("eigenvalues do not all lie in {f:?}")));
            }
        }
        pieces = next;
    }
    Ok(pieces)
}

fn embed_all(mats: &[Matrix], tower: &Tower) -> Vec<Matrix> {
    mats.iter().map(|a| a.map(tower.ext(), |x| tower.embed(x))).collect()
}

fn pieces_and_chars(phis: &[Matrix], tower: &Tower) -> Result<Vec<(EigenPiece, Character)>> {
    let k = tower.ext();
    let pieces = joint_eigenspaces(&embed_all(phis, tower))?;
    pieces
        .into_iter()
        .map(|piece| {
            let values = piece.eigenvalues.iter().map(|&mu| k.pth_root(mu)).collect();
            let c = Character::new(k, tower.q(), values)?;
            Ok((piece, c))
        })
        .collect()
}

fn check_tower(m: &LieModule, tower: &Tower) -> Result<()> {
    if tower.base() != m.field() {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

/// `cl(V)` over the least splitting extension.
pub fn compute_cluster(m: &LieModule) -> Result<Cluster> {
    compute_cluster_in(m, &splitting_tower(m)?)
}

/// `cl(V)` with values in the extension of `tower`, which must split every
/// `phi_{e_i}`.
pub fn compute_cluster_in(m: &LieModule, tower: &Tower) -> Result<Cluster> {
    check_tower(m, tower)?;
    let found = pieces_and_chars(&basis_phis(m), tower)?;
    Cluster::new(tower.ext(), tower.q(), found.into_iter().map(|(_, c)| c))
}

/// Clusters of many modules, each over its own splitting field.
pub fn compute_clusters(modules: &[LieModule], exec: Execution) -> Vec<Result<Cluster>> {
    exec.map(modules, compute_cluster)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterPart {
    /// A single conjugacy class.
    pub cluster: Cluster,
    /// The component, over the base field.
    pub space: Subspace,
    /// Least `r` with `m_{e_j}(phi_{e_j})^r = 0` on the component for all `j`,
    /// `m_{e_j}` the product of `t - c(e_j)^p` over distinct values in the
    /// class.
    pub exponent: usize,
}

impl ClusterPart {
    /// Basis of the component as matrix columns.
    pub fn basis_matrix(&self) -> Matrix {
        self.space.to_columns()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterDecomposition {
    pub tower: Tower,
    /// Basis indices whose `phi` define the decomposition.
    pub indices: Vec<usize>,
    pub cluster: Cluster,
    pub parts: Vec<ClusterPart>,
}

pub fn cluster_decompose(m: &LieModule) -> Result<ClusterDecomposition> {
    cluster_decompose_in(m, &splitting_tower(m)?)
}

pub fn cluster_decompose_in(m: &LieModule, tower: &Tower) -> Result<ClusterDecomposition> {
    let all: Vec<usize> = (0..m.algebra().dim()).collect();
    decompose_indices(m, &all, tower)
}

/// The cluster decomposition of `V` as an `S`-module, with `phi` taken
/// from the p-map of `L`. Requires `S` subnormal; every component is then an
/// `L`-submodule, which is checked.
pub fn decompose_wrt(m: &LieModule, sub: &Subalgebra) -> Result<ClusterDecomposition> {
    let phis: Vec<Matrix> = sub.indices().iter().map(|&i| m.phi_basis(i)).collect();
    let tower = Tower::new(m.field(), splitting_degree_of(&phis)?)?;
    decompose_wrt_in(m, sub, &tower)
}

pub fn decompose_wrt_in(m: &LieModule, sub: &Subalgebra, tower: &Tower) -> Result<ClusterDecomposition> {
    if sub.parent() != m.algebra() {
        return Err(Error::Precondition("subalgebra of a different algebra".into()));
    }
    if subnormal_chain(sub)?.is_none() {
        return Err(Error::NotSubnormal(sub.indices().to_vec()));
    }
    decompose_indices(m, sub.indices(), tower)
}

fn decompose_indices(m: &LieModule, indices: &[usize], tower: &Tower) -> Result<ClusterDecomposition> {
    check_tower(m, tower)?;
    let f = m.field();
    let d = m.dim();
    let phis: Vec<Matrix> = indices.iter().map(|&i| m.phi_basis(i)).collect();
    let found = pieces_and_chars(&phis, tower)?;
    let cluster = Cluster::new(tower.ext(), tower.q(), found.iter().map(|(_, c)| c.clone()))?;
    let orbits = cluster.orbits();
    let parts: Vec<ClusterPart> = Execution::default()
        .map(&orbits, |orbit| component(m, &phis, &found, orbit, tower))
        .into_iter()
        .collect::<Result<_>>()?;

    let total: usize = parts.iter().map(|p| p.space.dim()).sum();
    let span = parts.iter().fold(Subspace::zero(f, d), |acc, p| acc.sum(&p.space));
    if total != d || !span.is_full() {
        return Err(Error::Invariant("components do not form a direct sum decomposition".into()));
    }
    for part in &parts {
        if !m.is_submodule(&part.space) {
            return Err(Error::Invariant("component is not a submodule".into()));
        }
    }
    Ok(ClusterDecomposition { tower: tower.clone(), indices: indices.to_vec(), cluster, parts })
}

fn component(
    m: &LieModule,
    phis: &[Matrix],
    found: &[(EigenPiece, Character)],
    orbit: &Cluster,
    tower: &Tower,
) -> Result<ClusterPart> {
    let f = m.field();
    let k = tower.ext();
    let d = m.dim();
    let over_k = found
        .iter()
        .filter(|(_, c)| orbit.contains(c))
        .fold(Subspace::zero(k, d), |acc, (piece, _)| acc.sum(&piece.space));
    // The sum is Galois-stable, so its reduced echelon basis is fixed by
    // Frobenius and has entries in the base field.
    let rows = over_k
        .basis()
        .iter()
        .map(|row| row.iter().map(|&a| tower.pullback(a)).collect::<Option<Vec<Elem>>>())
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Invariant("component is not defined over the base field".into()))?;
    let space = Subspace::from_vectors(f, d, rows);
    if space.dim() != over_k.dim() {
        return Err(Error::Invariant("component dimension changed under descent".into()));
    }
    let p = f.characteristic() as u128;
    let mut exponent = 1;
    for (j, phi) in phis.iter().enumerate() {
        let mut roots: Vec<Elem> = orbit.chars().iter().map(|c| k.pow(c.values()[j], p)).collect();
        roots.sort();
        roots.dedup();
        let poly_k = roots.iter().fold(Poly::one(k), |acc, &mu| acc.mul(&Poly::linear(k, mu)));
        let coeffs = poly_k
            .coeffs()
            .iter()
            .map(|&a| tower.pullback(a))
            .collect::<Option<Vec<Elem>>>()
            .ok_or_else(|| Error::Invariant("orbit polynomial is not defined over the base field".into()))?;
        let g = Poly::new(f, coeffs).eval_matrix(phi)?;
        let (ker, r) = space.restrict(&g)?.stable_kernel()?;
        if !ker.is_full() {
            return Err(Error::Invariant("orbit polynomial is not nilpotent on its component".into()));
        }
        exponent = exponent.max(r);
    }
    Ok(ClusterPart { cluster: orbit.clone(), space, exponent })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmenabilityReport {
    /// Minimal polynomial of `phi_{e_i}`, per basis index.
    pub min_polys: Vec<Poly>,
    pub squarefree: Vec<bool>,
}

impl AmenabilityReport {
    pub fn is_amenable(&self) -> bool {
        self.squarefree.iter().all(|&b| b)
    }
}

/// Amenable iff every `phi_{e_i}` has a squarefree minimal polynomial.
pub fn is_amenable(m: &LieModule) -> Result<AmenabilityReport> {
    let min_polys: Vec<Poly> = basis_phis(m).iter().map(Matrix::min_poly).collect::<Result<_>>()?;
    let squarefree = min_polys.iter().map(is_squarefree).collect::<Result<_>>()?;
    Ok(AmenabilityReport { min_polys, squarefree })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::field::make_field;
    use crate::fixtures::{self, DiagonalPMap};

    fn gf9_i() -> (FiniteField, Elem) {
        let k = make_field(3, 2).unwrap();
        let i = k.from_coeffs(&[0, 1]).unwrap();
        (k, i)
    }

    #[test]
    fn rotation_cluster() {
        let w = fixtures::rotation_module();
        let c = compute_cluster(&w).unwrap();
        let (k, i) = gf9_i();
        assert_eq!(c.field(), &k);
        assert_eq!(k.modulus_string(), "t^2 + 1");
        let values: Vec<Vec<Elem>> = c.chars().iter().map(|c| c.values().to_vec()).collect();
        assert_eq!(values, vec![vec![i], vec![k.neg(i)]]);
        assert!(c.is_simple().unwrap());
        assert_eq!(c.chars()[0].conjugate(1), c.chars()[1]);
        assert_eq!(character_field(&c.chars()[0]), 2);
    }

    #[test]
    fn diagonal_under_both_pmaps() {
        let v = fixtures::diagonal_module(DiagonalPMap::Zero);
        let dec = cluster_decompose(&v).unwrap();
        assert_eq!(dec.parts.len(), 2);
        let vals: Vec<Vec<Elem>> = dec.parts.iter().map(|p| p.cluster.chars()[0].values().to_vec()).collect();
        assert_eq!(vals, vec![vec![Elem(0), Elem(1)], vec![Elem(1), Elem(0)]]);
        assert_eq!(dec.parts[0].space, Subspace::coordinate(v.field(), 2, &[1]));
        assert!(!dec.cluster.is_simple().unwrap());

        let v = fixtures::diagonal_module(DiagonalPMap::Toral);
        let dec = cluster_decompose(&v).unwrap();
        assert_eq!(dec.parts.len(), 1);
        assert_eq!(dec.parts[0].cluster.chars()[0].values(), &[Elem(0), Elem(1)]);
        assert!(dec.parts[0].space.is_full());
    }

    #[test]
    fn nonscalar_pmap_has_no_character() {
        let v = fixtures::diagonal_module(DiagonalPMap::NonScalar);
        assert_eq!(v.has_character(), None);
        assert_eq!(compute_cluster(&v).unwrap().len(), 2);
    }

    #[test]
    fn trivial_module_has_zero_cluster() {
        let l = Arc::new(fixtures::two_dim_nonabelian(3));
        let t = LieModule::trivial(&l, 3).unwrap();
        let c = compute_cluster(&t).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.chars()[0].values(), &[Elem(0), Elem(0)]);
        let dec = cluster_decompose(&t).unwrap();
        assert_eq!(dec.parts.len(), 1);
        assert!(dec.parts[0].space.is_full());
    }

    #[test]
    fn merged_orbits_are_separated() {
        let v = fixtures::orbit_merging_module();
        let dec = cluster_decompose(&v).unwrap();
        assert_eq!(dec.cluster.len(), 4);
        assert_eq!(dec.parts.len(), 2);
        assert!(dec.parts.iter().all(|p| p.space.dim() == 2 && p.exponent == 1));
        for part in &dec.parts {
            let sub = v.submodule(&part.space).unwrap();
            assert_eq!(compute_cluster_in(&sub, &dec.tower).unwrap(), part.cluster);
        }
    }

    #[test]
    fn wrt_whole_algebra_matches_plain_decomposition() {
        let v = fixtures::diagonal_module(DiagonalPMap::Zero);
        let l = v.algebra().clone();
        let dec = decompose_wrt(&v, &Subalgebra::whole(&l)).unwrap();
        assert_eq!(dec, cluster_decompose(&v).unwrap());
        let a1 = Subalgebra::new(&l, &[0]).unwrap();
        let dec = decompose_wrt(&v, &a1).unwrap();
        assert_eq!(dec.parts.len(), 2);
        assert!(dec.parts.iter().all(|p| v.is_submodule(&p.space)));
    }

    #[test]
    fn wrt_requires_subnormal() {
        let l = Arc::new(fixtures::two_dim_nonabelian(3));
        let ad = LieModule::adjoint(&l).unwrap();
        let x = Subalgebra::new(&l, &[0]).unwrap();
        assert_eq!(decompose_wrt(&ad, &x).unwrap_err(), Error::NotSubnormal(vec![0]));
    }

    #[test]
    fn amenability() {
        let rep = is_amenable(&fixtures::rotation_module()).unwrap();
        assert!(rep.is_amenable());
        assert_eq!(rep.min_polys[0].to_string(), "t^2 + 1");
        let rep = is_amenable(&fixtures::jordan_p2()).unwrap();
        assert!(!rep.is_amenable());
        assert_eq!(rep.min_polys[0].to_string(), "t^2");
    }

    #[test]
    fn cluster_helpers() {
        let f = make_field(3, 1).unwrap();
        let ch = |a, b| Character::new(&f, 3, vec![Elem(a), Elem(b)]).unwrap();
        let c = Cluster::new(&f, 3, [ch(0, 1), ch(1, 0), ch(0, 1)]).unwrap();
        assert_eq!(c.len(), 2);
        assert!(!c.is_simple().unwrap());
        assert_eq!(c.orbits().len(), 2);
        assert_eq!(Cluster::new(&f, 3, []).unwrap().is_simple(), Err(Error::EmptyCluster));
        assert_eq!(ch(1, 2).degree(), 1);
        let d = c.differences(&c).unwrap();
        assert_eq!(d.len(), 3);
    }

    #[test]
    fn hom_cluster_of_rotation() {
        let w = fixtures::rotation_module();
        let h = LieModule::hom_module(&w, &w).unwrap();
        let tower = common_tower(&[&w, &h]).unwrap();
        let cw = compute_cluster_in(&w, &tower).unwrap();
        let ch = compute_cluster_in(&h, &tower).unwrap();
        assert_eq!(ch, cw.differences(&cw).unwrap());
        let (_, i) = gf9_i();
        let k = tower.ext();
        let vals: Vec<Elem> = ch.chars().iter().map(|c| c.values()[0]).collect();
        assert_eq!(vals, vec![Elem(0), i, k.neg(i)]);
    }
}
