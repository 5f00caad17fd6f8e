//! Small worked examples used by tests, the acceptance suite and the CLI.

use std::sync::Arc;

use crate::field::{make_field, Elem, FiniteField};
use crate::lie::{LieAlgebra, Subalgebra};
use crate::lmodule::LieModule;
use crate::matrix::Matrix;

fn gf(p: u64) -> FiniteField {
    make_field(p, 1).expect("prime")
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

/// `<x, y>` over `GF(p)` with `[x, y] = y`, `x^[p] = x`, `y^[p] = 0`.
pub fn two_dim_nonabelian(p: u64) -> LieAlgebra {
    let f = gf(p);
    LieAlgebra::new(
        &f,
        names(&["x", "y"]),
        &[(0, 1, vec![Elem(0), Elem(1)])],
        vec![vec![Elem(1), Elem(0)], vec![Elem(0), Elem(0)]],
    )
    .expect("well-formed")
}

/// The 2-dimensional module of `S = <x>` inside [`two_dim_nonabelian`]
/// over `GF(3)` with `x b1 = b2`, `x b2 = -b1`, and the subalgebra.
pub fn rotation_and_sub() -> (LieModule, Subalgebra) {
    let l = Arc::new(two_dim_nonabelian(3));
    let sub = Subalgebra::new(&l, &[0]).expect("x spans a subalgebra");
    let s = Arc::new(sub.to_algebra().expect("x^[3] = x"));
    let rho = Matrix::from_ints(l.field(), &[&[0, -1], &[1, 0]]);
    (LieModule::new(&s, vec![rho]).expect("well-formed"), sub)
}

pub fn rotation_module() -> LieModule {
    rotation_and_sub().0
}

/// Which p-map to put on the abelian algebra of [`diagonal_module`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagonalPMap {
    /// `a1^[p] = a2^[p] = 0`.
    Zero,
    /// `a1^[p] = a1`, `a2^[p] = -a1`; the module then has a character.
    Toral,
    /// `a1^[p] = 0`, `a2^[p] = -a1`; here `phi_{a1}` is not scalar.
    NonScalar,
}

pub fn diagonal_algebra(pmap: DiagonalPMap) -> Arc<LieAlgebra> {
    let f = gf(3);
    let (z, one, minus) = (Elem(0), Elem(1), f.neg(Elem(1)));
    let images = match pmap {
        DiagonalPMap::Zero => vec![vec![z, z], vec![z, z]],
        DiagonalPMap::Toral => vec![vec![one, z], vec![minus, z]],
        DiagonalPMap::NonScalar => vec![vec![z, z], vec![minus, z]],
    };
    Arc::new(LieAlgebra::abelian(&f, names(&["a1", "a2"]), images).expect("well-formed"))
}

/// Abelian `<a1, a2>` over `GF(3)` acting on `<v1, v2>` by `a_i v_i = v_i`,
/// `a_i v_j = 0`.
pub fn diagonal_module(pmap: DiagonalPMap) -> LieModule {
    let l = diagonal_algebra(pmap);
    let f = l.field().clone();
    let a1 = Matrix::from_ints(&f, &[&[1, 0], &[0, 0]]);
    let a2 = Matrix::from_ints(&f, &[&[0, 0], &[0, 1]]);
    LieModule::new(&l, vec![a1, a2]).expect("well-formed")
}

/// Abelian `<x, y>` over `GF(2)` with zero p-map.
pub fn jordan_p2_parent() -> Arc<LieAlgebra> {
    let f = gf(2);
    let z = vec![Elem(0), Elem(0)];
    Arc::new(LieAlgebra::abelian(&f, names(&["x", "y"]), vec![z.clone(), z]).expect("well-formed"))
}

/// `<x>` with `x^[2] = 0` acting on `GF(2)^3` by a nilpotent Jordan block;
/// `phi_x = rho(x)^2` has minimal polynomial `t^2`, so this is not amenable.
pub fn jordan_p2() -> LieModule {
    let parent = jordan_p2_parent();
    let s = Arc::new(Subalgebra::new(&parent, &[0]).unwrap().to_algebra().unwrap());
    let j = Matrix::from_ints(parent.field(), &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
    LieModule::new(&s, vec![j]).expect("well-formed")
}

/// Abelian `<a1, a2>` over `GF(3)`, zero p-map, on `GF(3)^4` with
/// `rho(a1) = diag(J, J)` and `rho(a2) = diag(J, -J)`, `J` of order 4.
/// Its four characters form two conjugacy classes whose values agree
/// coordinatewise up to conjugation, so the classes cannot be told apart
/// one basis element at a time.
pub fn orbit_merging_module() -> LieModule {
    let f = gf(3);
    let z = vec![Elem(0), Elem(0)];
    let l = Arc::new(LieAlgebra::abelian(&f, names(&["a1", "a2"]), vec![z.clone(), z]).expect("well-formed"));
    let a1 = Matrix::from_ints(&f, &[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]]);
    let a2 = Matrix::from_ints(&f, &[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, -1, 0]]);
    LieModule::new(&l, vec![a1, a2]).expect("well-formed")
}

/// Heisenberg `<x, y, z>` over `GF(p)`, `[x, y] = z`, with
/// `x^[p] = a z`, `y^[p] = b z`, `z^[p] = c z`.
pub fn heisenberg(p: u64, [a, b, c]: [Elem; 3]) -> LieAlgebra {
    let f = gf(p);
    let z = Elem(0);
    LieAlgebra::new(
        &f,
        names(&["x", "y", "z"]),
        &[(0, 1, vec![z, z, Elem(1)])],
        vec![vec![z, z, a], vec![z, z, b], vec![z, z, c]],
    )
    .expect("well-formed")
}

/// `sl2 = <e, h, f>` over `GF(p)`, `p > 2`, with `e^[p] = f^[p] = 0` and
/// `h^[p] = h`.
pub fn sl2(p: u64) -> LieAlgebra {
    let f = gf(p);
    let (z, one) = (Elem(0), Elem(1));
    let two = f.from_int(2);
    LieAlgebra::new(
        &f,
        names(&["e", "h", "f"]),
        &[
            (1, 0, vec![two, z, z]),
            (1, 2, vec![z, z, f.neg(two)]),
            (0, 2, vec![z, one, z]),
        ],
        vec![vec![z, z, z], vec![z, one, z], vec![z, z, z]],
    )
    .expect("well-formed")
}
