use eostrata::dlclassify::*;
use eostrata::gf::FieldCtx;
use eostrata::symplectic::SymplecticSpace;
use eostrata::weyl::{enumerate_iw, ParabolicType};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn counts(c: usize, p: u32, m: u32) -> Vec<u64> {
    let cen = census(c, p, m).unwrap();
    assert!(cen.checks.all_pass(), "{:?}", cen.checks);
    cen.records.iter().map(|r| r.count).collect()
}

#[test]
fn census_tables() {
    assert_eq!(counts(1, 3, 1), vec![10, 0]);
    assert_eq!(counts(1, 3, 2), vec![10, 72]);
    assert_eq!(counts(2, 2, 2), vec![85, 1020, 0, 3264]);
    assert_eq!(counts(2, 3, 1), vec![820, 0, 0, 0]);
}

#[test]
fn census_records_follow_label_order() {
    let cen = census(2, 2, 1).unwrap();
    let labels: Vec<_> = cen.records.iter().map(|r| r.label.clone()).collect();
    assert_eq!(labels, enumerate_iw(2));
    for r in &cen.records {
        assert_eq!(r.word, r.label.reduced_word().letters().to_vec());
        assert_eq!((r.p, r.m, r.c), (2, 1, 2));
    }
}

#[test]
fn rational_points_have_identity_label() {
    // over F_{p^2} every Lagrangian is fixed by the p^2 twist
    let small = census_field(2, 1).unwrap();
    let space = SymplecticSpace::standard(&small, 2);
    for u in space.enumerate_lagrangians() {
        assert!(classify_fine(&space, &u, DEFAULT_TWIST).unwrap().w.is_identity());
    }
}

#[test]
fn rank_three_samples() {
    let field = FieldCtx::new(2, 4).unwrap();
    let space = SymplecticSpace::standard(&field, 3);
    let siegel = ParabolicType::siegel(3);
    let labels = enumerate_iw(3);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut seen = std::collections::HashSet::new();
    for _ in 0..300 {
        let u = space.random_lagrangian(&mut rng);
        let run = classify_fine_run(&space, &u, DEFAULT_TWIST).unwrap();
        let w = run.label.w.clone();
        assert!(labels.contains(&w));
        let coarse = classify_coarse(&space, &u, DEFAULT_TWIST).unwrap();
        assert_eq!(w.min_double_coset_rep(&siegel, &siegel), coarse.rep);
        let (dual, t) = dual_route_class(&space, &u, DEFAULT_TWIST).unwrap();
        assert_eq!(t, *run.types.last().unwrap());
        assert_eq!(dual.min_double_coset_rep(&siegel, &t), w.min_double_coset_rep(&siegel, &t));
        assert!(space.is_self_dual(&run.stable_flag).unwrap());
        seen.insert(w);
    }
    assert!(seen.len() > 1);
}

#[test]
fn equivariance_rank_two() {
    assert!(equivariance_check(2, 3, 2, 50, 1).unwrap());
    assert!(equivariance_check(1, 5, 1, 50, 2).unwrap());
}

#[test]
fn twist_by_one_is_a_different_frobenius() {
    // Classifying with the p-power twist instead is still well defined but
    // the labels need not match; only the partition total is fixed.
    let field = census_field(2, 2).unwrap();
    let space = SymplecticSpace::standard(&field, 1);
    let mut differ = 0;
    for u in space.enumerate_lagrangians() {
        let a = classify_fine(&space, &u, 1).unwrap();
        let b = classify_fine(&space, &u, DEFAULT_TWIST).unwrap();
        differ += (a != b) as usize;
    }
    assert!(differ > 0);
}
