use std::sync::Arc;

use nalgebra::Matrix2;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use braidsurf::braid::{ab_product, abelianize, burau_su2, BraidWord};
use braidsurf::lifting::smith_normal_form;
use braidsurf::perm::{builtin, FiniteGroup, Permutation};
use braidsurf::spherical::{neretin_phi2, spin_matrix, PairVars, SU2Element};
use braidsurf::surface::words::{evaluate, surface_relator};
use braidsurf::surface::{mcg_moves, SurfaceMonodromy};

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(&v).unwrap())
}

fn braid(n: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    let gen = (1..n as i32).prop_flat_map(|i| prop_oneof![Just(i), Just(-i)]);
    prop::collection::vec(gen, 0..=max_len).prop_map(move |l| BraidWord::new(n, l).unwrap())
}

fn group(name: &str) -> Arc<FiniteGroup> {
    Arc::new(builtin(name).unwrap())
}

proptest! {
    #[test]
    fn permutation_group_laws(a in perm(5), b in perm(5), c in perm(5)) {
        prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
        prop_assert!(a.then(&a.inverse()).is_identity());
        prop_assert_eq!(a.then(&b).sign(), a.sign() * b.sign());
        prop_assert_eq!(Permutation::from_lex_rank(5, a.lex_rank()), a);
    }

    #[test]
    fn abelianization_is_a_homomorphism(u in braid(4, 8), v in braid(4, 8)) {
        let lhs = abelianize(&u.concat(&v).unwrap());
        let rhs = ab_product(&abelianize(&u), &abelianize(&v)).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(abelianize(&u.concat(&u.inverse()).unwrap()).is_identity());
    }

    #[test]
    fn free_reduction_keeps_the_permutation(u in braid(5, 12)) {
        prop_assert_eq!(u.free_reduce().underlying_permutation(), u.underlying_permutation());
        prop_assert_eq!(u.free_reduce().writhe(), u.writhe());
    }

    #[test]
    fn burau_su2_is_multiplicative(u in braid(3, 6), v in braid(3, 6), th in 0.2f64..1.8) {
        let uv = burau_su2(&u.concat(&v).unwrap(), th).unwrap();
        let prod = burau_su2(&u, th).unwrap() * burau_su2(&v, th).unwrap();
        prop_assert!((uv - prod).norm() < 1e-9);
    }

    #[test]
    fn moves_preserve_the_relator(seed in any::<u64>(), picks in prop::collection::vec(0usize..64, 1..6)) {
        let s3 = group("S3");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (tuples, _) = braidsurf::surface::enumerate(&s3, 1, 2, &Default::default()).unwrap();
        let t = &tuples[rand::Rng::random_range(&mut rng, 0..tuples.len())];
        let moves = mcg_moves(1, 2);
        let mut cur = t.entries().to_vec();
        for p in picks {
            cur = moves[p % moves.len()].apply(&s3, &cur);
            let m = SurfaceMonodromy::from_flat(s3.clone(), 1, cur.clone()).unwrap();
            prop_assert!(m.validate());
            // puncture-fixing moves keep each c_j in its conjugacy class
            for j in 0..2 {
                prop_assert_eq!(s3.class_of(m.c(j)), s3.class_of(t.c(j)));
            }
        }
        let rel = surface_relator(1, 2);
        prop_assert_eq!(evaluate(&rel, &cur, &s3), s3.identity());
    }

    #[test]
    fn smith_solutions_solve(rows in prop::collection::vec(prop::collection::vec(-4i128..5, 4), 1..5), x in prop::collection::vec(-3i128..4, 4)) {
        let b: Vec<i128> = rows.iter().map(|r| r.iter().zip(&x).map(|(a, v)| a * v).sum()).collect();
        let smith = smith_normal_form(&rows, 4);
        let sol = smith.solve(&b);
        prop_assert!(sol.is_some());
        let sol = sol.unwrap();
        for (r, want) in rows.iter().zip(&b) {
            prop_assert_eq!(r.iter().zip(&sol).map(|(a, v)| a * v).sum::<i128>(), *want);
        }
    }

    #[test]
    fn spin_matrices_are_unitary_representations(seed in any::<u64>(), n in 0u32..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = SU2Element::random(&mut rng);
        let b = SU2Element::random(&mut rng);
        let ab = spin_matrix(a.mul(&b).matrix(), n);
        let prod = spin_matrix(a.matrix(), n) * spin_matrix(b.matrix(), n);
        prop_assert!((ab - prod).norm() < 1e-9);
        let u = spin_matrix(a.matrix(), n);
        let dim = n as usize + 1;
        prop_assert!((u.adjoint() * &u - nalgebra::DMatrix::<Complex64>::identity(dim, dim)).norm() < 1e-9);
    }

    #[test]
    fn neretin_is_conjugation_invariant(seed in any::<u64>(), xr in -0.1f64..0.1, yi in -0.1f64..0.1) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a: Vec<SU2Element> = (0..3).map(|_| SU2Element::random(&mut rng)).collect();
        let h = SU2Element::random(&mut rng);
        let x = PairVars::constant(3, Complex64::new(xr, 0.02));
        let y = PairVars::constant(3, Complex64::new(0.03, yi));
        let v = neretin_phi2(&a, &x, &y).unwrap();
        let conj: Vec<SU2Element> = a.iter().map(|m| m.conjugate_by(&h)).collect();
        prop_assert!((neretin_phi2(&conj, &x, &y).unwrap() - v).norm() < 1e-9);
    }

    #[test]
    fn su2_elements_roundtrip_through_json(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = SU2Element::random(&mut rng);
        let back: SU2Element = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
        let diff: Matrix2<Complex64> = back.matrix() - a.matrix();
        prop_assert!(diff.norm() < 1e-12);
    }
}
