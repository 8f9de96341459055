#![allow(dead_code)]

use std::collections::HashSet;

use eostrata::gf::FieldCtx;
use eostrata::symplectic::{Flag, SymplecticSpace};
use eostrata::weyl::{all_elements, WeylElement};
use rand::{Rng, RngExt};

/// A self-dual coordinate flag with random symmetric dimension set, moved by
/// a random symplectic matrix.
pub fn random_self_dual_flag<R: Rng>(space: &SymplecticSpace, rng: &mut R) -> Flag {
    let n = space.half_dim();
    let d = space.dim();
    let mut dims = HashSet::new();
    for s in 1..=n {
        if rng.random_range(0..2) == 1 {
            dims.insert(s);
            dims.insert(d - s);
        }
    }
    let mut dims: Vec<usize> = dims.into_iter().collect();
    dims.sort();
    let flag = Flag::coordinate(space.field(), d, &dims);
    let g = space.random_symplectic_with(rng);
    let moved = flag.apply(&g).unwrap();
    assert!(space.is_self_dual(&moved).unwrap());
    moved
}

/// Either a moved coordinate flag or `{0, U, L}` for a random Lagrangian `U`.
pub fn random_flag<R: Rng>(space: &SymplecticSpace, rng: &mut R) -> Flag {
    if rng.random_range(0..4) == 0 {
        Flag::from_subspace(&space.random_lagrangian(rng))
    } else {
        random_self_dual_flag(space, rng)
    }
}

/// `(dim C_a, dim D_b, dim(C_a ∩ D_b))` for all member pairs.
pub fn intersection_dims(c: &Flag, d: &Flag) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for ca in c.members() {
        for db in d.members() {
            out.push((ca.dim(), db.dim(), ca.intersect(db).unwrap().dim()));
        }
    }
    out
}

pub fn matches_table(w: &WeylElement, table: &[(usize, usize, usize)]) -> bool {
    table.iter().all(|&(a, b, k)| w.r(b, a).unwrap() == k)
}

/// Every element of the whole group whose rank function fits the table.
pub fn all_matching(n: usize, table: &[(usize, usize, usize)]) -> Vec<WeylElement> {
    all_elements(n).into_iter().filter(|w| matches_table(w, table)).collect()
}

pub fn fields() -> Vec<FieldCtx> {
    vec![FieldCtx::new(2, 2).unwrap(), FieldCtx::new(3, 2).unwrap()]
}

/// `∏_{i=1..n} (q^i + 1)`.
pub fn lagrangian_count_formula(q: u64, n: usize) -> u64 {
    (1..=n as u32).map(|i| q.pow(i) + 1).product()
}

/// No left descent in `types`, via lengths only.
pub fn no_left_descent_in(w: &WeylElement, types: &eostrata::weyl::ParabolicType) -> bool {
    types.iter().all(|i| w.mul_simple_left(i).length() > w.length())
}
