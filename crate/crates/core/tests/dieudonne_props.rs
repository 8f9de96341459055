use std::collections::HashSet;

use eostrata::dieudonne::*;
use eostrata::gf::{Embedding, FieldCtx};
use eostrata::symplectic::SymplecticSpace;
use eostrata::weyl::enumerate_iw;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn lagrangians(p: u32, k: u32, c: usize) -> Vec<eostrata::symplectic::Subspace> {
    SymplecticSpace::standard(&FieldCtx::new(p, k).unwrap(), c).enumerate_lagrangians()
}

#[test]
fn psi_is_injective_and_dual() {
    for g in 1..=5 {
        let mut seen = HashSet::new();
        for w in enumerate_iw(g) {
            let v = psi(&w);
            assert_eq!(v.len(), 2 * g + 1);
            for i in 0..=2 * g {
                assert_eq!(v[2 * g - i] + i, v[i] + g);
                assert_eq!(v[i], i - w.r(i, g).unwrap());
            }
            assert!(v.windows(2).all(|s| s[1] - s[0] <= 1));
            assert!(seen.insert(v));
        }
    }
}

#[test]
fn invariants_in_odd_characteristic() {
    for (c, g) in [(1, 2), (1, 3), (2, 4), (2, 5)] {
        for u in lagrangians(3, 2, c) {
            let m = DieudonneModule::from_lagrangian(&u, g).unwrap();
            let r = m.invariants().unwrap();
            assert!(r.all_hold(), "{r:?}");
            assert_eq!(r.kernel_corollary, Some(true));
            assert!(verify_pullback(&u, g).unwrap());
        }
    }
}

#[test]
fn joint_sign_flip_keeps_everything() {
    let flipped = GradedSigns { a: 1, b: 1, s1: -1 };
    for u in lagrangians(3, 2, 2) {
        let base = eo_type(&DieudonneModule::from_lagrangian(&u, 5).unwrap()).unwrap();
        let m = DieudonneModule::from_lagrangian_with_signs(&u, 5, flipped).unwrap();
        assert!(m.invariants().unwrap().all_hold());
        assert_eq!(eo_type(&m).unwrap(), base);
    }
}

#[test]
fn single_sign_flips_break_only_the_adjunction() {
    let mut broken_a = 0;
    let mut broken_s1 = 0;
    for u in lagrangians(3, 2, 1) {
        let base = eo_type(&DieudonneModule::from_lagrangian(&u, 3).unwrap()).unwrap();
        for (signs, counter) in [
            (GradedSigns { a: -1, b: 1, s1: -1 }, &mut broken_a),
            (GradedSigns { a: -1, b: -1, s1: 1 }, &mut broken_s1),
        ] {
            let m = DieudonneModule::from_lagrangian_with_signs(&u, 3, signs).unwrap();
            let r = m.invariants().unwrap();
            assert!(r.ker_f_is_im_v && r.ker_v_is_im_f && r.ker_f_dim_is_g);
            *counter += (!r.adjunction) as usize;
            assert_eq!(eo_type(&m).unwrap(), base);
        }
    }
    assert_eq!(broken_a, 10);
    assert_eq!(broken_s1, 10);
}

#[test]
fn eo_type_is_invariant_under_rational_symplectic_change() {
    let small = FieldCtx::new(2, 2).unwrap();
    let big = FieldCtx::new(2, 4).unwrap();
    let emb = Embedding::new(&small, &big).unwrap();
    let space = SymplecticSpace::standard(&big, 2);
    let small_space = SymplecticSpace::standard(&small, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..100 {
        let h = small_space.random_symplectic_with(&mut rng).map(|x| emb.apply(x));
        let u = space.random_lagrangian(&mut rng);
        let a = eo_type(&DieudonneModule::from_lagrangian(&u, 4).unwrap()).unwrap();
        let b = eo_type(&DieudonneModule::from_lagrangian(&u.apply(&h).unwrap(), 4).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn canonical_flag_contains_the_kernel_of_v() {
    for u in lagrangians(2, 4, 1) {
        let m = DieudonneModule::from_lagrangian(&u, 3).unwrap();
        let cf = canonical_flag(&m).unwrap();
        assert!(cf.flag.members().contains(&m.ker_v()));
        for c in cf.flag.members() {
            assert!(cf.flag.members().contains(&m.v_preimage(c).unwrap()));
        }
        assert_eq!(*cf.fdims.last().unwrap(), 3);
    }
}

#[test]
fn rejects_bad_inputs() {
    let f = FieldCtx::new(2, 2).unwrap();
    let u = eostrata::symplectic::Subspace::coordinate(&f, 2, [1]);
    assert!(DieudonneModule::from_lagrangian(&u, 1).is_err());
    let not_lagrangian = eostrata::symplectic::Subspace::coordinate(&f, 4, [1, 4]);
    assert!(DieudonneModule::from_lagrangian(&not_lagrangian, 4).is_err());
}
