use clusterkit_core::poly::{is_irreducible, poly_gcd, roots_in_field};
use clusterkit_core::random::{random_algebra, random_module};
use clusterkit_core::{compute_cluster, make_field, Elem, FiniteField, Matrix, Poly, Tower};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fields() -> impl Strategy<Value = FiniteField> {
    prop_oneof![Just((2u64, 1usize)), Just((2, 3)), Just((3, 1)), Just((3, 2)), Just((5, 1)), Just((5, 2)), Just((7, 1))]
        .prop_map(|(p, k)| make_field(p, k).unwrap())
}

fn field_and_elems(n: usize) -> impl Strategy<Value = (FiniteField, Vec<Elem>)> {
    fields().prop_flat_map(move |f| {
        let q = f.size();
        (Just(f), prop::collection::vec((0..q).prop_map(Elem), n))
    })
}

fn field_and_matrix() -> impl Strategy<Value = (FiniteField, Matrix)> {
    fields().prop_flat_map(|f| {
        let q = f.size();
        (1usize..5, 1usize..5).prop_flat_map(move |(r, c)| {
            let f = f.clone();
            prop::collection::vec((0..q).prop_map(Elem), r * c).prop_map(move |data| {
                let m = Matrix::from_fn(&f, r, c, |i, j| data[i * c + j]);
                (f.clone(), m)
            })
        })
    })
}

fn field_and_polys() -> impl Strategy<Value = (FiniteField, Poly, Poly)> {
    fields().prop_flat_map(|f| {
        let q = f.size();
        let coeffs = || prop::collection::vec((0..q).prop_map(Elem), 1..6);
        (Just(f), coeffs(), coeffs()).prop_map(|(f, a, b)| {
            let (pa, pb) = (Poly::new(&f, a), Poly::new(&f, b));
            (f, pa, pb)
        })
    })
}

proptest! {
    #[test]
    fn frobenius_is_a_ring_homomorphism((f, v) in field_and_elems(2)) {
        let (a, b) = (v[0], v[1]);
        prop_assert_eq!(f.frobenius(f.add(a, b), 1), f.add(f.frobenius(a, 1), f.frobenius(b, 1)));
        prop_assert_eq!(f.frobenius(f.mul(a, b), 1), f.mul(f.frobenius(a, 1), f.frobenius(b, 1)));
        prop_assert_eq!(f.frobenius(f.frobenius(a, 1), -1), a);
    }

    #[test]
    fn pth_root_inverts_pth_power((f, v) in field_and_elems(1)) {
        let p = f.characteristic() as u128;
        prop_assert_eq!(f.pow(f.pth_root(v[0]), p), v[0]);
        prop_assert_eq!(f.pth_root(f.pow(v[0], p)), v[0]);
    }

    #[test]
    fn field_axioms((f, v) in field_and_elems(3)) {
        let (a, b, c) = (v[0], v[1], v[2]);
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Elem(0));
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a)), Elem(1));
        }
    }

    #[test]
    fn tower_embedding_is_a_homomorphism((f, v) in field_and_elems(2), degree in 1usize..4) {
        prop_assume!((f.size() as u128).pow(degree as u32) <= 1 << 16);
        let t = Tower::new(&f, degree).unwrap();
        let (a, b) = (v[0], v[1]);
        let k = t.ext();
        prop_assert_eq!(t.embed(f.add(a, b)), k.add(t.embed(a), t.embed(b)));
        prop_assert_eq!(t.embed(f.mul(a, b)), k.mul(t.embed(a), t.embed(b)));
        prop_assert_eq!(t.pullback(t.embed(a)), Some(a));
    }

    #[test]
    fn rank_nullity((_f, m) in field_and_matrix()) {
        let kernel = m.null_space();
        prop_assert_eq!(m.rank() + kernel.dim(), m.cols());
        for v in kernel.basis() {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(|a| a.is_zero()));
        }
    }

    #[test]
    fn min_poly_annihilates((_f, m) in field_and_matrix()) {
        prop_assume!(m.rows() == m.cols());
        let mp = m.min_poly().unwrap();
        prop_assert!(mp.eval_matrix(&m).unwrap().is_zero());
        prop_assert!(mp.degree().unwrap() <= m.rows());
    }

    #[test]
    fn inverse_is_two_sided((f, m) in field_and_matrix()) {
        prop_assume!(m.rows() == m.cols());
        let n = m.rows();
        match m.inverse() {
            Some(inv) => {
                prop_assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(&f, n));
                prop_assert_eq!(inv.mul(&m).unwrap(), Matrix::identity(&f, n));
            }
            None => prop_assert!(m.rank() < n),
        }
    }

    #[test]
    fn gcd_divides_both((_f, a, b) in field_and_polys()) {
        prop_assume!(!a.is_zero() || !b.is_zero());
        let g = poly_gcd(&a, &b).unwrap();
        prop_assert!(g.divides(&a));
        prop_assert!(g.divides(&b));
    }

    #[test]
    fn division_identity((_f, a, b) in field_and_polys()) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(q.mul(&b).add(&r), a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn roots_divide((f, a, _b) in field_and_polys()) {
        prop_assume!(!a.is_zero() && a.degree() > Some(0));
        let roots = roots_in_field(&a, &f).unwrap();
        let prod = roots.iter().fold(Poly::one(&f), |acc, &r| acc.mul(&Poly::linear(&f, r)));
        prop_assert!(prod.divides(&a));
        for r in roots {
            prop_assert!(a.eval(r).is_zero());
        }
    }

    #[test]
    fn irreducible_has_no_roots((f, a, _b) in field_and_polys()) {
        prop_assume!(a.degree() > Some(1));
        if is_irreducible(&a) {
            prop_assert!(roots_in_field(&a, &f).unwrap().is_empty());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn p_power_is_compatible_with_ad(seed in any::<u64>(), p in prop_oneof![Just(2u64), Just(3), Just(5)]) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = random_algebra(&mut rng, p).algebra;
        let f = alg.field().clone();
        let v: Vec<Elem> = (0..alg.dim()).map(|i| Elem((seed >> (4 * i)) % f.size())).collect();
        let lhs = alg.ad_matrix(&alg.p_power(&v).unwrap()).unwrap();
        let rhs = alg.ad_matrix(&v).unwrap().pow(p).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn phi_commutes_with_the_action(seed in any::<u64>(), p in prop_oneof![Just(2u64), Just(3), Just(5)]) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = random_algebra(&mut rng, p);
        let m = random_module(&mut rng, &alg, 5);
        prop_assert!(m.validate().is_valid());
        for i in 0..alg.algebra.dim() {
            for j in 0..alg.algebra.dim() {
                prop_assert!(m.phi_basis(i).commutator(m.rho_basis(j)).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn clusters_are_stable_under_base_change(seed in any::<u64>(), p in prop_oneof![Just(2u64), Just(3)]) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = random_algebra(&mut rng, p);
        let m = random_module(&mut rng, &alg, 4);
        let cl = compute_cluster(&m).unwrap();
        let bigger = Tower::new(m.field(), 2).unwrap();
        let mk = m.extend_scalars(&bigger).unwrap();
        let ck = compute_cluster(&mk).unwrap();
        prop_assert_eq!(cl.len(), ck.len());
    }
}
