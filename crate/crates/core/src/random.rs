//! Seeded generators of random restricted Lie algebras and modules for
//! property tests and benchmarks.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::field::{make_field, Elem, FiniteField};
use crate::fixtures;
use crate::lie::{LieAlgebra, Subalgebra};
use crate::lmodule::LieModule;
use crate::matrix::Matrix;
use crate::oracle::spin;
use crate::poly::{is_irreducible, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Abelian of the given dimension with a random p-map.
    Abelian(usize),
    /// `[x, y] = y`.
    Affine,
    /// `[x, y] = y` plus a central `z`.
    AffineCentral,
    /// `[x, y] = z`.
    Heisenberg,
    Sl2,
}

#[derive(Clone, Debug)]
pub struct RandomAlgebra {
    pub algebra: Arc<LieAlgebra>,
    pub family: Family,
    /// Basis indices of a subalgebra known to be subnormal.
    pub subnormal: Vec<usize>,
    /// Basis indices of a proper p-subalgebra with nonempty cobasis, when
    /// the family has one.
    pub p_subalgebra: Option<Vec<usize>>,
}

fn elem(rng: &mut impl Rng, f: &FiniteField) -> Elem {
    Elem(rng.gen_range(0..f.size()))
}

fn vector(rng: &mut impl Rng, f: &FiniteField, n: usize) -> Vec<Elem> {
    (0..n).map(|_| elem(rng, f)).collect()
}

fn names(n: usize, prefix: &str) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// A random algebra over `GF(p)` of dimension at most 3.
pub fn random_algebra(rng: &mut impl Rng, p: u64) -> RandomAlgebra {
    let f = make_field(p, 1).expect("prime");
    let mut families = vec![Family::Abelian(1), Family::Abelian(2), Family::Abelian(3), Family::Affine, Family::AffineCentral, Family::Heisenberg];
    if p > 2 {
        families.push(Family::Sl2);
    }
    let family = *families.choose(rng).unwrap();
    random_algebra_of(rng, &f, family)
}

pub fn random_algebra_of(rng: &mut impl Rng, f: &FiniteField, family: Family) -> RandomAlgebra {
    let p = f.characteristic();
    let z = Elem::ZERO;
    match family {
        Family::Abelian(n) => {
            let pmap = (0..n).map(|_| vector(rng, f, n)).collect();
            let algebra = Arc::new(LieAlgebra::abelian(f, names(n, "a"), pmap).expect("well-formed"));
            let k = rng.gen_range(1..=n);
            let mut idx: Vec<usize> = (0..n).collect();
            idx.shuffle(rng);
            let mut subnormal = idx[..k].to_vec();
            subnormal.sort_unstable();
            let p_sub = (0..n).find(|&i| algebra.p_image(i).iter().enumerate().all(|(j, a)| j == i || a.is_zero()));
            let p_subalgebra = p_sub.filter(|_| n > 1).map(|i| vec![i]);
            RandomAlgebra { algebra, family, subnormal, p_subalgebra }
        }
        Family::Affine => {
            let algebra = Arc::new(LieAlgebra::new(
                f,
                vec!["x".into(), "y".into()],
                &[(0, 1, vec![z, Elem::ONE])],
                vec![vec![Elem::ONE, z], vec![z, z]],
            )
            .expect("well-formed"));
            let p_subalgebra = Some(if rng.gen_bool(0.5) { vec![0] } else { vec![1] });
            RandomAlgebra { algebra, family, subnormal: vec![1], p_subalgebra }
        }
        Family::AffineCentral => {
            let (a, b, c) = (elem(rng, f), elem(rng, f), elem(rng, f));
            let algebra = Arc::new(LieAlgebra::new(
                f,
                vec!["x".into(), "y".into(), "z".into()],
                &[(0, 1, vec![z, Elem::ONE, z])],
                vec![vec![Elem::ONE, z, a], vec![z, z, b], vec![z, z, c]],
            )
            .expect("well-formed"));
            let subnormal = [vec![1], vec![2], vec![1, 2]].choose(rng).unwrap().clone();
            RandomAlgebra { algebra, family, subnormal, p_subalgebra: Some(vec![1, 2]) }
        }
        Family::Heisenberg => {
            let scalars = [elem(rng, f), elem(rng, f), elem(rng, f)];
            let algebra = Arc::new(fixtures::heisenberg(p, scalars));
            RandomAlgebra { algebra, family, subnormal: vec![0], p_subalgebra: Some(vec![0, 2]) }
        }
        Family::Sl2 => {
            let algebra = Arc::new(fixtures::sl2(p));
            RandomAlgebra { algebra, family, subnormal: vec![0, 1, 2], p_subalgebra: None }
        }
    }
}

/// A random invertible matrix.
pub fn random_invertible(rng: &mut impl Rng, f: &FiniteField, d: usize) -> Matrix {
    loop {
        let g = Matrix::from_fn(f, d, d, |_, _| elem(rng, f));
        if g.inverse().is_some() {
            return g;
        }
    }
}

fn companion(f: &FiniteField, monic: &Poly) -> Matrix {
    let n = monic.degree().unwrap();
    let c = monic.coeffs();
    Matrix::from_fn(f, n, n, |i, j| {
        if j == n - 1 {
            f.neg(c[i])
        } else if i == j + 1 {
            Elem::ONE
        } else {
            Elem::ZERO
        }
    })
}

fn block_diag(f: &FiniteField, blocks: &[Matrix]) -> Matrix {
    let d: usize = blocks.iter().map(Matrix::rows).sum();
    let mut m = Matrix::zeros(f, d, d);
    let mut off = 0;
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                m.set(off + i, off + j, b.get(i, j));
            }
        }
        off += b.rows();
    }
    m
}

/// Block diagonal of scalar, Jordan and companion blocks, conjugated by a
/// random invertible matrix. With `shifted`, block eigenvalues are
/// `base + {0, 1, 2}` so that `[R_x, R_y] = R_y` has nonzero solutions.
fn structured(rng: &mut impl Rng, f: &FiniteField, d: usize, base: Elem, shifted: bool) -> Matrix {
    let mut blocks = Vec::new();
    let mut left = d;
    while left > 0 {
        let size = rng.gen_range(1..=left.min(3));
        let mut eig = base;
        if shifted {
            eig = f.add(eig, f.from_int(rng.gen_range(0..3)));
        } else if rng.gen_bool(0.5) {
            eig = elem(rng, f);
        }
        let block = match rng.gen_range(0..3) {
            0 => Matrix::scalar(f, size, eig),
            1 => Matrix::from_fn(f, size, size, |i, j| {
                if i == j {
                    eig
                } else if j == i + 1 {
                    Elem::ONE
                } else {
                    Elem::ZERO
                }
            }),
            _ => {
                let mut coeffs = vector(rng, f, size);
                coeffs.push(Elem::ONE);
                let poly = Poly::new(f, coeffs);
                if rng.gen_bool(0.5) && !is_irreducible(&poly) {
                    Matrix::scalar(f, size, eig)
                } else {
                    companion(f, &poly)
                }
            }
        };
        blocks.push(block);
        left -= size;
    }
    let g = random_invertible(rng, f, d);
    g.mul(&block_diag(f, &blocks)).unwrap().mul(&g.inverse().unwrap()).unwrap()
}

/// Random element of the solution space of the homogeneous linear
/// conditions `map(X) = 0` on `d x d` matrices.
fn random_solution(rng: &mut impl Rng, f: &FiniteField, d: usize, map: &dyn Fn(&Matrix) -> Vec<Elem>) -> Matrix {
    let units: Vec<Vec<Elem>> = (0..d * d)
        .map(|u| {
            let mut e = Matrix::zeros(f, d, d);
            e.set(u / d, u % d, Elem::ONE);
            map(&e)
        })
        .collect();
    let rows = units[0].len();
    if rows == 0 {
        return Matrix::from_fn(f, d, d, |_, _| elem(rng, f));
    }
    let system = Matrix::from_fn(f, rows, d * d, |i, j| units[j][i]);
    let sols = system.null_space();
    let mut x = vec![Elem::ZERO; d * d];
    for b in sols.basis() {
        let c = elem(rng, f);
        for (a, &v) in x.iter_mut().zip(b) {
            *a = f.add(*a, f.mul(c, v));
        }
    }
    Matrix::from_fn(f, d, d, |i, j| x[i * d + j])
}

fn commutant_solution(rng: &mut impl Rng, f: &FiniteField, d: usize, with: &[Matrix]) -> Matrix {
    let with = with.to_vec();
    random_solution(rng, f, d, &move |x: &Matrix| {
        with.iter().flat_map(|a| a.commutator(x).unwrap().data().to_vec()).collect()
    })
}

/// A random module of dimension exactly `d` built directly from the
/// algebra's relations.
fn base_module(rng: &mut impl Rng, alg: &RandomAlgebra, d: usize) -> LieModule {
    let l = &alg.algebra;
    let f = l.field().clone();
    let base = elem(rng, &f);
    let action = match alg.family {
        Family::Abelian(n) => {
            let mut action = vec![structured(rng, &f, d, base, false)];
            for _ in 1..n {
                let next = commutant_solution(rng, &f, d, &action);
                action.push(next);
            }
            action
        }
        Family::Affine | Family::AffineCentral => {
            let rx = structured(rng, &f, d, base, true);
            let rx2 = rx.clone();
            // [R_x, R_y] = R_y
            let ry = random_solution(rng, &f, d, &move |y: &Matrix| rx2.commutator(y).unwrap().sub(y).unwrap().data().to_vec());
            let mut action = vec![rx.clone(), ry.clone()];
            if alg.family == Family::AffineCentral {
                action.push(commutant_solution(rng, &f, d, &[rx, ry]));
            }
            action
        }
        Family::Heisenberg => {
            let p = f.characteristic() as usize;
            if d >= p && rng.gen_bool(0.6) {
                let weyl = weyl_module(rng, &f, p);
                let rest = d - p;
                if rest == 0 {
                    weyl
                } else {
                    let other = heisenberg_commuting(rng, &f, rest);
                    weyl.iter().zip(&other).map(|(a, b)| block_diag(&f, &[a.clone(), b.clone()])).collect()
                }
            } else {
                heisenberg_commuting(rng, &f, d)
            }
        }
        Family::Sl2 => {
            let p = f.characteristic() as usize;
            let mut pieces: Vec<Vec<Matrix>> = Vec::new();
            let mut left = d;
            while left > 0 {
                if left >= p && rng.gen_bool(0.6) {
                    pieces.push(baby_verma(rng, &f, p));
                    left -= p;
                } else if left >= 3 && rng.gen_bool(0.3) {
                    pieces.push((0..3).map(|i| l.ad_matrix(&l.basis_vector(i)).unwrap()).collect());
                    left -= 3;
                } else {
                    pieces.push(vec![Matrix::zeros(&f, 1, 1); 3]);
                    left -= 1;
                }
            }
            (0..3).map(|i| block_diag(&f, &pieces.iter().map(|pc| pc[i].clone()).collect::<Vec<_>>())).collect()
        }
    };
    LieModule::new(l, action).expect("generated shapes are consistent")
}

/// `x -> d/dt + a`, `y -> lambda t + b`, `z -> lambda` on
/// `F[t] / (t^p - mu)`.
fn weyl_module(rng: &mut impl Rng, f: &FiniteField, p: usize) -> Vec<Matrix> {
    let (a, b, mu) = (elem(rng, f), elem(rng, f), elem(rng, f));
    let lambda = loop {
        let l = elem(rng, f);
        if !l.is_zero() {
            break l;
        }
    };
    let dx = Matrix::from_fn(f, p, p, |i, j| if j == i + 1 { f.from_int(j as i64) } else { Elem::ZERO });
    let mt = Matrix::from_fn(f, p, p, |i, j| {
        if i == j + 1 {
            Elem::ONE
        } else if i == 0 && j == p - 1 {
            mu
        } else {
            Elem::ZERO
        }
    });
    vec![dx.add_scalar(a), mt.scale(lambda).add_scalar(b), Matrix::scalar(f, p, lambda)]
}

fn heisenberg_commuting(rng: &mut impl Rng, f: &FiniteField, d: usize) -> Vec<Matrix> {
    let base = elem(rng, f);
    let rx = structured(rng, f, d, base, false);
    let ry = commutant_solution(rng, f, d, std::slice::from_ref(&rx));
    vec![rx, ry, Matrix::zeros(f, d, d)]
}

/// Baby Verma module of `sl2` with highest weight `lambda` and
/// `f^p = mu` on `v_0, ..., v_{p-1}`.
fn baby_verma(rng: &mut impl Rng, f: &FiniteField, p: usize) -> Vec<Matrix> {
    let (lambda, mu) = (elem(rng, f), elem(rng, f));
    let e = Matrix::from_fn(f, p, p, |i, j| {
        if j == i + 1 {
            let jj = f.from_int(j as i64);
            f.mul(jj, f.add(f.sub(lambda, jj), Elem::ONE))
        } else {
            Elem::ZERO
        }
    });
    let h = Matrix::from_fn(f, p, p, |i, j| if i == j { f.sub(lambda, f.from_int(2 * i as i64)) } else { Elem::ZERO });
    let fm = Matrix::from_fn(f, p, p, |i, j| {
        if i == j + 1 {
            Elem::ONE
        } else if i == 0 && j == p - 1 {
            mu
        } else {
            Elem::ZERO
        }
    });
    vec![e, h, fm]
}

/// A random module of dimension between 1 and `max_dim`: a directly
/// generated module, a direct sum, a Hom module, or a submodule or quotient
/// of one of these, conjugated by a random change of basis.
pub fn random_module(rng: &mut impl Rng, alg: &RandomAlgebra, max_dim: usize) -> LieModule {
    let f = alg.algebra.field().clone();
    let m = match rng.gen_range(0..10) {
        0..=4 => {
            let d = rng.gen_range(1..=max_dim);
            base_module(rng, alg, d)
        }
        5 | 6 if max_dim >= 2 => {
            let d1 = rng.gen_range(1..max_dim);
            let d2 = rng.gen_range(1..=max_dim - d1);
            base_module(rng, alg, d1).direct_sum(&base_module(rng, alg, d2)).unwrap()
        }
        7 if max_dim >= 2 => {
            let d1 = rng.gen_range(1..=max_dim.min(3));
            let d2 = rng.gen_range(1..=(max_dim / d1).max(1));
            LieModule::hom_module(&base_module(rng, alg, d1), &base_module(rng, alg, d2)).unwrap()
        }
        _ => {
            let d = rng.gen_range(1..=max_dim);
            let m = base_module(rng, alg, d);
            let v = vector(rng, &f, d);
            match spin(&m, &v) {
                Ok(s) if s.dim() > 0 && !s.is_full() => {
                    if rng.gen_bool(0.5) {
                        m.submodule(&s).unwrap()
                    } else {
                        m.quotient(&s).unwrap()
                    }
                }
                _ => m,
            }
        }
    };
    let g = random_invertible(rng, &f, m.dim());
    m.conjugate_by(&g).unwrap()
}

/// A random module over a subalgebra viewed as an algebra on its own.
pub fn random_sub_module(rng: &mut impl Rng, alg: &RandomAlgebra, sub: &Subalgebra, max_dim: usize) -> LieModule {
    let m = random_module(rng, alg, max_dim);
    m.restrict(sub).expect("p-subalgebra")
}
