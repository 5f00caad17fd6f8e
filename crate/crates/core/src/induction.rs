//! Induction from a p-subalgebra spanned by basis vectors.
//!
//! The induced module has basis `e(r) (x) b^j`, where `e(r)` runs over the
//! ordered monomials `y_1^{r_1} ... y_t^{r_t}` in the cobasis with exponents
//! below `p`, and `b^j` over the basis of `W`. The action of a basis element
//! is found by straightening `x e(r)` into that form, using the brackets of
//! `L`, the action of `S` on `W`, and `y^p = y^[p] + c(y)^p` for cobasis
//! elements.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::cluster::{compute_cluster_in, is_amenable, joint_eigenspaces, splitting_tower, Character, Cluster};
use crate::error::{Error, Result};
use crate::field::{Elem, FiniteField, Tower};
use crate::lie::{LieAlgebra, Subalgebra};
use crate::lmodule::LieModule;
use crate::matrix::Matrix;
use crate::par::Execution;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisLabel {
    /// Cobasis exponents, in cobasis order.
    pub exponents: Vec<usize>,
    /// Index into the basis of `W`.
    pub w_index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedModule {
    pub module: LieModule,
    pub labels: Vec<BasisLabel>,
    pub cluster: Cluster,
    pub subalgebra: Vec<usize>,
    pub cobasis: Vec<usize>,
}

/// Whether distinct members of `C` have distinct restrictions to `S`.
pub fn restricts_simply(cluster: &Cluster, sub: &Subalgebra) -> bool {
    cluster.restrict(sub.indices()).len() == cluster.len()
}

/// The conjugacy class of the character of `L` that agrees with `c_s` on
/// `S` and takes the given values on the cobasis (in cobasis order). The
/// values must lie in `F[c_s]`.
pub fn extend_character(c_s: &Character, sub: &Subalgebra, cobasis_values: &[Elem]) -> Result<Cluster> {
    let n = sub.parent().dim();
    let cobasis = sub.cobasis();
    if c_s.values().len() != sub.dim() || cobasis_values.len() != cobasis.len() {
        return Err(Error::DimensionMismatch("character and cobasis value counts".into()));
    }
    let k = c_s.field();
    let m = k.subfield_exponent(c_s.base_q())? as i64;
    let deg = c_s.degree() as i64;
    for &a in cobasis_values {
        if !k.contains(a) || k.frobenius(a, m * deg) != a {
            return Err(Error::Precondition(format!(
                "cobasis value {} lies outside the field generated by the character",
                k.format_elem(a)
            )));
        }
    }
    let mut values = vec![Elem::ZERO; n];
    for (&i, &a) in sub.indices().iter().zip(c_s.values()) {
        values[i] = a;
    }
    for (&i, &a) in cobasis.iter().zip(cobasis_values) {
        values[i] = a;
    }
    let c = Character::new(k, c_s.base_q(), values)?;
    Cluster::new(k, c_s.base_q(), c.orbit())
}

/// Extends every conjugacy class of `cl(W)` by the same cobasis values.
pub fn extend_cluster(cl_w: &Cluster, sub: &Subalgebra, cobasis_values: &[Elem]) -> Result<Cluster> {
    let mut chars = Vec::new();
    for orbit in cl_w.orbits() {
        chars.extend(extend_character(&orbit.chars()[0], sub, cobasis_values)?.chars().iter().cloned());
    }
    Cluster::new(cl_w.field(), cl_w.base_q(), chars)
}

fn check_inputs(w: &LieModule, sub: &Subalgebra) -> Result<()> {
    if !sub.is_p_closed() {
        return Err(Error::NotPSubalgebra(sub.indices().to_vec()));
    }
    if **w.algebra() != sub.to_algebra()? {
        return Err(Error::Precondition("module is not over the given subalgebra".into()));
    }
    Ok(())
}

fn tower_for(base: &FiniteField, ext: &FiniteField) -> Result<Tower> {
    if ext.characteristic() != base.characteristic() || !ext.degree().is_multiple_of(base.degree()) {
        return Err(Error::FieldMismatch);
    }
    Tower::new(base, ext.degree() / base.degree())
}

/// `ind_S^L(W, C)`, with `C` given over its own extension of `F`.
pub fn induce(w: &LieModule, sub: &Subalgebra, cluster: &Cluster) -> Result<InducedModule> {
    let tower = tower_for(w.field(), cluster.field())?;
    induce_in(w, sub, cluster, &tower)
}

pub fn induce_in(w: &LieModule, sub: &Subalgebra, cluster: &Cluster, tower: &Tower) -> Result<InducedModule> {
    check_inputs(w, sub)?;
    if cluster.field() != tower.ext() || cluster.base_q() != tower.q() {
        return Err(Error::FieldMismatch);
    }
    let amen = is_amenable(w)?;
    if let Some(i) = amen.squarefree.iter().position(|&b| !b) {
        return Err(Error::NotAmenable(sub.indices()[i]));
    }
    if cluster.is_empty() {
        return Err(Error::EmptyCluster);
    }
    if !cluster.is_frobenius_closed() {
        return Err(Error::Precondition("cluster is not closed under conjugation".into()));
    }
    if !restricts_simply(cluster, sub) {
        return Err(Error::NotRestrictingSimply);
    }
    let cl_w = compute_cluster_in(w, tower)?;
    if cluster.restrict(sub.indices()) != cl_w {
        return Err(Error::Precondition("restriction of the cluster differs from cl(W)".into()));
    }

    let k = tower.ext();
    let p = k.characteristic();
    let dw = w.dim();
    let phis: Vec<Matrix> = (0..sub.dim()).map(|s| w.phi_basis(s).map(k, |a| tower.embed(a))).collect();
    let pieces = joint_eigenspaces(&phis)?;
    let columns: Vec<Vec<Elem>> = pieces.iter().flat_map(|pc| pc.space.basis().iter().cloned()).collect();
    let basis = Matrix::from_columns(k, dw, &columns);
    let basis_inv = basis.inverse().ok_or_else(|| Error::Invariant("eigenspaces do not span W".into()))?;

    let straighteners: Vec<(Straightener, Matrix)> = cluster
        .chars()
        .iter()
        .map(|c| {
            let target: Vec<Elem> = sub.indices().iter().map(|&i| k.pow(c.values()[i], p as u128)).collect();
            let mut start = 0;
            let mut diag = vec![Elem::ZERO; dw];
            for piece in &pieces {
                let end = start + piece.space.dim();
                if piece.eigenvalues == target {
                    diag[start..end].fill(Elem::ONE);
                }
                start = end;
            }
            let d = Matrix::from_fn(k, dw, dw, |i, j| if i == j { diag[i] } else { Elem::ZERO });
            let projection = basis.mul(&d)?.mul(&basis_inv)?;
            let cvals_p: Vec<Elem> = sub.cobasis().iter().map(|&i| k.pow(c.values()[i], p as u128)).collect();
            let rho: Vec<Matrix> = w.action().iter().map(|m| m.map(k, |a| tower.embed(a))).collect();
            let embed = |v: &[Elem]| v.iter().map(|&a| tower.embed(a)).collect::<Vec<_>>();
            Ok((Straightener::new(k, sub, &embed, cvals_p, rho), projection))
        })
        .collect::<Result<_>>()?;

    let n = sub.parent().dim();
    let nblocks = straighteners[0].0.blocks;
    let dim = nblocks * dw;
    // Per conjugate, the full action on K (x) V; then sum against projections.
    let per_char: Vec<Vec<Vec<Op>>> = Execution::default()
        .map(&straighteners, |(st, _)| st.clone().all_actions())
        .into_iter()
        .collect::<Result<_>>()?;
    let mut action = Vec::with_capacity(n);
    for x in 0..n {
        let mut m = Matrix::zeros(k, dim, dim);
        for ((_, proj), acts) in straighteners.iter().zip(&per_char) {
            for (r, op) in acts[x].iter().enumerate() {
                for (r2, block) in op.iter().enumerate() {
                    if block.is_zero() {
                        continue;
                    }
                    let piece = block.mul(proj)?;
                    for i in 0..dw {
                        for j in 0..dw {
                            let (row, col) = (r2 * dw + i, r * dw + j);
                            m.set(row, col, k.add(m.get(row, col), piece.get(i, j)));
                        }
                    }
                }
            }
        }
        let mut out = Matrix::zeros(tower.base(), dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                let a = tower
                    .pullback(m.get(i, j))
                    .ok_or_else(|| Error::Invariant("induced action has an entry outside the base field".into()))?;
                out.set(i, j, a);
            }
        }
        action.push(out);
    }
    let module = LieModule::new(sub.parent(), action)?;
    Ok(InducedModule {
        module,
        labels: labels(p as usize, sub.cobasis().len(), dw),
        cluster: cluster.clone(),
        subalgebra: sub.indices().to_vec(),
        cobasis: sub.cobasis(),
    })
}

/// Induction when every cobasis value lies in `F`: one straightening over
/// `F` applied to all of `W`, with no eigenspace decomposition.
pub fn induce_rational(w: &LieModule, sub: &Subalgebra, cobasis_values: &[Elem]) -> Result<InducedModule> {
    check_inputs(w, sub)?;
    let f = w.field();
    let p = f.characteristic();
    if cobasis_values.len() != sub.cobasis().len() {
        return Err(Error::DimensionMismatch("one value per cobasis element".into()));
    }
    if cobasis_values.iter().any(|&a| !f.contains(a)) {
        return Err(Error::NotInField);
    }
    let tower = splitting_tower(w)?;
    let cl_w = compute_cluster_in(w, &tower)?;
    let embedded: Vec<Elem> = cobasis_values.iter().map(|&a| tower.embed(a)).collect();
    let cluster = extend_cluster(&cl_w, sub, &embedded)?;

    let cvals_p = cobasis_values.iter().map(|&a| f.pow(a, p as u128)).collect();
    let st = Straightener::new(f, sub, &|v: &[Elem]| v.to_vec(), cvals_p, w.action().to_vec());
    let dw = w.dim();
    let dim = st.blocks * dw;
    let acts = st.all_actions()?;
    let action = acts
        .iter()
        .map(|per_r| {
            let mut m = Matrix::zeros(f, dim, dim);
            for (r, op) in per_r.iter().enumerate() {
                for (r2, block) in op.iter().enumerate() {
                    for i in 0..dw {
                        for j in 0..dw {
                            m.set(r2 * dw + i, r * dw + j, block.get(i, j));
                        }
                    }
                }
            }
            m
        })
        .collect();
    Ok(InducedModule {
        module: LieModule::new(sub.parent(), action)?,
        labels: labels(p as usize, sub.cobasis().len(), dw),
        cluster,
        subalgebra: sub.indices().to_vec(),
        cobasis: sub.cobasis(),
    })
}

fn labels(p: usize, t: usize, dw: usize) -> Vec<BasisLabel> {
    let blocks = p.pow(t as u32);
    (0..blocks)
        .flat_map(|r| (0..dw).map(move |j| BasisLabel { exponents: decode(r, p, t), w_index: j }))
        .collect()
}

/// Exponent tuple of a block index; the first cobasis element is the most
/// significant digit.
fn decode(mut r: usize, p: usize, t: usize) -> Vec<usize> {
    let mut digits = vec![0; t];
    for d in digits.iter_mut().rev() {
        *d = r % p;
        r /= p;
    }
    digits
}

fn encode(digits: &[usize], p: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * p + d)
}

/// `sum_r' e(r') (x) op[r'](w)`, one `dim W` square block per monomial.
type Op = Vec<Matrix>;

#[derive(Clone, Copy, Debug)]
enum Slot {
    Sub(usize),
    Co(usize),
}

#[derive(Clone)]
struct Straightener {
    field: FiniteField,
    p: usize,
    blocks: usize,
    dw: usize,
    slots: Vec<Slot>,
    cobasis: Vec<usize>,
    brackets: Vec<Vec<Vec<Elem>>>,
    pmap: Vec<Vec<Elem>>,
    cvals_p: Vec<Elem>,
    rho: Vec<Matrix>,
    memo: HashMap<(usize, usize), Op>,
    active: HashSet<(usize, usize)>,
}

impl Straightener {
    fn new(
        field: &FiniteField,
        sub: &Subalgebra,
        embed: &dyn Fn(&[Elem]) -> Vec<Elem>,
        cvals_p: Vec<Elem>,
        rho: Vec<Matrix>,
    ) -> Straightener {
        let l: &Arc<LieAlgebra> = sub.parent();
        let n = l.dim();
        let p = field.characteristic() as usize;
        let cobasis = sub.cobasis();
        let mut slots = vec![Slot::Sub(0); n];
        for (s, &i) in sub.indices().iter().enumerate() {
            slots[i] = Slot::Sub(s);
        }
        for (a, &i) in cobasis.iter().enumerate() {
            slots[i] = Slot::Co(a);
        }
        let brackets = (0..n).map(|i| (0..n).map(|j| embed(l.bracket_basis(i, j))).collect()).collect();
        let pmap = (0..n).map(|i| embed(l.p_image(i))).collect();
        Straightener {
            field: field.clone(),
            p,
            blocks: p.pow(cobasis.len() as u32),
            dw: rho[0].rows(),
            slots,
            cobasis,
            brackets,
            pmap,
            cvals_p,
            rho,
            memo: HashMap::new(),
            active: HashSet::new(),
        }
    }

    /// `acts[x][r]`: the action of basis element `x` on `e(r) (x) W`.
    fn all_actions(mut self) -> Result<Vec<Vec<Op>>> {
        let n = self.slots.len();
        (0..n).map(|x| (0..self.blocks).map(|r| self.act(x, r)).collect()).collect()
    }

    fn zero_op(&self) -> Op {
        vec![Matrix::zeros(&self.field, self.dw, self.dw); self.blocks]
    }

    fn unit_op(&self, r: usize, m: Matrix) -> Op {
        let mut op = self.zero_op();
        op[r] = m;
        op
    }

    fn identity(&self) -> Matrix {
        Matrix::identity(&self.field, self.dw)
    }

    fn act(&mut self, x: usize, r: usize) -> Result<Op> {
        if let Some(op) = self.memo.get(&(x, r)) {
            return Ok(op.clone());
        }
        if !self.active.insert((x, r)) {
            return Err(Error::Invariant("straightening did not terminate".into()));
        }
        let op = self.straighten(x, r)?;
        self.active.remove(&(x, r));
        self.memo.insert((x, r), op.clone());
        Ok(op)
    }

    fn straighten(&mut self, x: usize, r: usize) -> Result<Op> {
        let t = self.cobasis.len();
        let digits = decode(r, self.p, t);
        let shifted = |b: usize, delta: isize| {
            let mut d = digits.clone();
            d[b] = (d[b] as isize + delta) as usize;
            encode(&d, self.p)
        };
        let Some(a) = digits.iter().position(|&d| d > 0) else {
            return Ok(match self.slots[x] {
                Slot::Sub(s) => self.unit_op(0, self.rho[s].clone()),
                Slot::Co(b) => self.unit_op(shifted(b, 1), self.identity()),
            });
        };
        match self.slots[x] {
            Slot::Co(b) if b < a => Ok(self.unit_op(shifted(b, 1), self.identity())),
            Slot::Co(b) if b == a && digits[a] < self.p - 1 => Ok(self.unit_op(shifted(a, 1), self.identity())),
            Slot::Co(b) if b == a => {
                // y^p = y^[p] + c(y)^p
                let rest = shifted(a, -(digits[a] as isize));
                let pimage = self.pmap[x].clone();
                let mut op = self.apply_vec(&pimage, rest)?;
                op[rest] = op[rest].clone().add_scalar(self.cvals_p[a]);
                Ok(op)
            }
            _ => {
                // x y_a e(r') = y_a (x e(r')) + [x, y_a] e(r')
                let ya = self.cobasis[a];
                let lower = shifted(a, -1);
                let inner = self.act(x, lower)?;
                let mut op = self.apply_basis(ya, &inner)?;
                let br = self.brackets[x][ya].clone();
                add_ops(&mut op, &self.apply_vec(&br, lower)?)?;
                Ok(op)
            }
        }
    }

    /// `sum_i v_i e_i` applied to `e(r) (x) w`.
    fn apply_vec(&mut self, v: &[Elem], r: usize) -> Result<Op> {
        let mut out = self.zero_op();
        for (i, &c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let op = self.act(i, r)?;
            for (o, m) in out.iter_mut().zip(&op) {
                *o = o.add(&m.scale(c))?;
            }
        }
        Ok(out)
    }

    /// `e_i` applied to the result of `op`.
    fn apply_basis(&mut self, i: usize, op: &Op) -> Result<Op> {
        let mut out = self.zero_op();
        for (r, m) in op.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            let act = self.act(i, r)?;
            for (o, a) in out.iter_mut().zip(&act) {
                if !a.is_zero() {
                    *o = o.add(&a.mul(m)?)?;
                }
            }
        }
        Ok(out)
    }
}

fn add_ops(acc: &mut Op, other: &Op) -> Result<()> {
    for (a, b) in acc.iter_mut().zip(other) {
        *a = a.add(b)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::compute_cluster;
    use crate::field::make_field;
    use crate::fixtures;

    fn rotation_induced(alpha: u64, beta: u64) -> InducedModule {
        let (w, sub) = fixtures::rotation_and_sub();
        let tower = splitting_tower(&w).unwrap();
        let cl_w = compute_cluster_in(&w, &tower).unwrap();
        let k = tower.ext();
        let lambda = k.from_coeffs(&[alpha, beta]).unwrap();
        let c = extend_cluster(&cl_w, &sub, &[lambda]).unwrap();
        induce_in(&w, &sub, &c, &tower).unwrap()
    }

    #[test]
    fn rotation_table() {
        for alpha in 0..3 {
            for beta in 0..3 {
                let ind = rotation_induced(alpha, beta);
                let f = ind.module.field().clone();
                let (a, b) = (alpha as i64, beta as i64);
                let x = Matrix::from_ints(
                    &f,
                    &[
                        &[0, -1, 0, 0, 0, 0],
                        &[1, 0, 0, 0, 0, 0],
                        &[0, 0, 1, -1, 0, 0],
                        &[0, 0, 1, 1, 0, 0],
                        &[0, 0, 0, 0, -1, -1],
                        &[0, 0, 0, 0, 1, -1],
                    ],
                );
                let y = Matrix::from_ints(
                    &f,
                    &[
                        &[0, 0, 0, 0, a, -b],
                        &[0, 0, 0, 0, b, a],
                        &[1, 0, 0, 0, 0, 0],
                        &[0, 1, 0, 0, 0, 0],
                        &[0, 0, 1, 0, 0, 0],
                        &[0, 0, 0, 1, 0, 0],
                    ],
                );
                assert_eq!(ind.module.rho_basis(0), &x, "alpha={alpha} beta={beta}");
                assert_eq!(ind.module.rho_basis(1), &y, "alpha={alpha} beta={beta}");
                assert!(ind.module.validate().is_valid());
                assert_eq!(compute_cluster_in(&ind.module, &tower_for(&f, ind.cluster.field()).unwrap()).unwrap(), ind.cluster);
            }
        }
    }

    #[test]
    fn labels_order() {
        let ind = rotation_induced(1, 0);
        let got: Vec<(Vec<usize>, usize)> = ind.labels.iter().map(|l| (l.exponents.clone(), l.w_index)).collect();
        assert_eq!(
            got,
            vec![(vec![0], 0), (vec![0], 1), (vec![1], 0), (vec![1], 1), (vec![2], 0), (vec![2], 1)]
        );
    }

    #[test]
    fn rational_shortcut_agrees() {
        let (w, sub) = fixtures::rotation_and_sub();
        for alpha in 0..3 {
            let general = rotation_induced(alpha, 0);
            let shortcut = induce_rational(&w, &sub, &[Elem(alpha)]).unwrap();
            assert_eq!(general.module, shortcut.module);
            assert_eq!(general.cluster, shortcut.cluster);
        }
    }

    #[test]
    fn extension_rules() {
        let (w, sub) = fixtures::rotation_and_sub();
        let cl_w = compute_cluster(&w).unwrap();
        let k = cl_w.field().clone();
        let lambda = k.from_coeffs(&[1, 2]).unwrap();
        let c = extend_character(&cl_w.chars()[0], &sub, &[lambda]).unwrap();
        assert_eq!(c.len(), 2);
        assert!(restricts_simply(&c, &sub));
        let conj: Vec<Elem> = c.chars().iter().map(|c| c.values()[1]).collect();
        assert!(conj.contains(&lambda) && conj.contains(&k.frobenius(lambda, 1)));

        let f = make_field(3, 1).unwrap();
        let rational = Character::new(&k, 3, vec![Elem(0)]).unwrap();
        assert_eq!(extend_character(&rational, &sub, &[Elem(0)]).unwrap().len(), 1);
        assert!(extend_character(&rational, &sub, &[lambda]).is_err());
        let _ = f;
    }

    #[test]
    fn non_simple_restriction_is_rejected() {
        let (w, sub) = fixtures::rotation_and_sub();
        let k = make_field(3, 2).unwrap();
        let i = k.from_coeffs(&[0, 1]).unwrap();
        let ni = k.neg(i);
        let ch = |a, b| Character::new(&k, 3, vec![a, b]).unwrap();
        let c = Cluster::new(&k, 3, [ch(i, Elem(0)), ch(ni, Elem(0)), ch(i, Elem(1)), ch(ni, Elem(1))]).unwrap();
        assert!(!restricts_simply(&c, &sub));
        assert_eq!(induce(&w, &sub, &c).unwrap_err(), Error::NotRestrictingSimply);
    }

    #[test]
    fn non_amenable_is_rejected() {
        let j = fixtures::jordan_p2();
        let l = fixtures::jordan_p2_parent();
        let sub = Subalgebra::new(&l, &[0]).unwrap();
        let tower = splitting_tower(&j).unwrap();
        let cl = compute_cluster_in(&j, &tower).unwrap();
        let c = extend_cluster(&cl, &sub, &[Elem(0)]).unwrap();
        assert_eq!(induce_in(&j, &sub, &c, &tower).unwrap_err(), Error::NotAmenable(0));
    }
}
