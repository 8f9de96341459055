//! Fine and coarse Deligne–Lusztig labels of Lagrangians, and the point census.
//!
//! The Frobenius of the classification is the `p^qexp`-power twist of
//! coordinates (`qexp = 2` by default), acting trivially on the Weyl group.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bedard::{sequence_for, FrobeniusAction};
use crate::error::{Error, Result};
use crate::gf::{Embedding, FieldCtx};
use crate::symplectic::{Flag, Subspace, SymplecticSpace};
use crate::weyl::{enumerate_iw, ParabolicType, WeylElement};

pub const DEFAULT_TWIST: i64 = 2;

/// Fine label, an element of `^I W_c` for the Siegel type.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct StratumLabelFine {
    pub w: WeylElement,
}

/// Coarse label, the minimal representative of `W_I w W_I`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct StratumLabelCoarse {
    pub rep: WeylElement,
}

/// The refinement run behind a fine label.
#[derive(Debug, Clone)]
pub struct FineRun {
    pub label: StratumLabelFine,
    /// `relpos(D_n, F(D_n))` for each flag before stabilization.
    pub positions: Vec<WeylElement>,
    pub types: Vec<ParabolicType>,
    pub stable_flag: Flag,
}

fn lagrangian_flag(space: &SymplecticSpace, u: &Subspace) -> Result<Flag> {
    if !space.is_lagrangian(u)? {
        return Err(Error::NotLagrangian);
    }
    Ok(Flag::from_subspace(u))
}

fn refine_self_dual(space: &SymplecticSpace, c: &Flag, d: &Flag) -> Result<Flag> {
    let r = c.refine(d)?;
    if !space.is_self_dual(&r)? {
        return Err(Error::Invariant("refinement of self-dual flags is not self-dual".into()));
    }
    Ok(r)
}

fn iteration_bound(c: usize) -> usize {
    2 * c * (c + 1) + 1
}

/// Runs `D_{n+1} = Ref_{F(D_n)}(D_n)` from `D_0 = {0, U, L}` to stabilization
/// and checks the observed positions and types against the Bédard sequence of
/// the resulting label.
pub fn classify_fine_run(space: &SymplecticSpace, u: &Subspace, qexp: i64) -> Result<FineRun> {
    let c = space.half_dim();
    let mut d = lagrangian_flag(space, u)?;
    let mut positions = Vec::new();
    let mut types = Vec::new();
    for _ in 0..iteration_bound(c) {
        let fd = d.twist(qexp);
        positions.push(space.relpos(&d, &fd)?);
        types.push(space.flag_type(&d)?);
        let next = refine_self_dual(space, &d, &fd)?;
        if next == d {
            let w = positions.last().unwrap().clone();
            let siegel = ParabolicType::siegel(c);
            let seq = sequence_for(&w, &siegel, &FrobeniusAction::identity(c))?;
            let expected = &seq.steps[..seq.steps.len() - 1];
            let agrees = expected.len() == positions.len()
                && expected.iter().zip(positions.iter().zip(&types)).all(|(s, (u, t))| s.u == *u && s.types == *t);
            if !agrees {
                return Err(Error::Invariant(format!("refinement positions {positions:?} disagree with the sequence of {w}")));
            }
            return Ok(FineRun { label: StratumLabelFine { w }, positions, types, stable_flag: d });
        }
        d = next;
    }
    Err(Error::NoStabilization(iteration_bound(c)))
}

pub fn classify_fine(space: &SymplecticSpace, u: &Subspace, qexp: i64) -> Result<StratumLabelFine> {
    Ok(classify_fine_run(space, u, qexp)?.label)
}

pub fn classify_coarse(space: &SymplecticSpace, u: &Subspace, qexp: i64) -> Result<StratumLabelCoarse> {
    let d = lagrangian_flag(space, u)?;
    Ok(StratumLabelCoarse { rep: space.relpos(&d, &d.twist(qexp))? })
}

/// The second route: `D'_{n+1} = Ref_{F(D'_n)}(D_0)`; the position of `D_0`
/// against `F(D'_∞)`, as a class in `W_I \ W / W_{I'_∞}`.
pub fn dual_route_class(space: &SymplecticSpace, u: &Subspace, qexp: i64) -> Result<(WeylElement, ParabolicType)> {
    let c = space.half_dim();
    let d0 = lagrangian_flag(space, u)?;
    let mut d = d0.clone();
    for _ in 0..iteration_bound(c) {
        let next = refine_self_dual(space, &d0, &d.twist(qexp))?;
        if next == d {
            let t = space.flag_type(&d)?;
            return Ok((space.relpos(&d0, &d.twist(qexp))?, t));
        }
        d = next;
    }
    Err(Error::NoStabilization(iteration_bound(c)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRecord {
    pub p: u32,
    pub m: u32,
    pub c: usize,
    pub label: WeylElement,
    pub word: Vec<usize>,
    pub count: u64,
}

/// Per-point consistency tallies gathered during a census.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CensusChecks {
    pub points: u64,
    pub expected_points: u64,
    pub coarse_fine_agree: u64,
    pub dual_route_agree: u64,
    pub rational_iff_identity: u64,
}

impl CensusChecks {
    pub fn all_pass(&self) -> bool {
        let n = self.expected_points;
        self.points == n && self.coarse_fine_agree == n && self.dual_route_agree == n && self.rational_iff_identity == n
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Census {
    pub records: Vec<CensusRecord>,
    pub checks: CensusChecks,
}

struct PointResult {
    label: WeylElement,
    coarse_ok: bool,
    dual_ok: bool,
    rational_ok: bool,
}

fn classify_point(space: &SymplecticSpace, u: &Subspace, qexp: i64) -> Result<PointResult> {
    let c = space.half_dim();
    let siegel = ParabolicType::siegel(c);
    let run = classify_fine_run(space, u, qexp)?;
    let w = run.label.w;
    let coarse = classify_coarse(space, u, qexp)?;
    let coarse_ok = w.min_double_coset_rep(&siegel, &siegel) == coarse.rep;
    let (dual, dual_type) = dual_route_class(space, u, qexp)?;
    let i_inf = *run.types.last().unwrap();
    let dual_ok = dual_type == i_inf
        && dual.min_double_coset_rep(&siegel, &i_inf) == w.min_double_coset_rep(&siegel, &i_inf);
    let rational_ok = (u.twist(qexp) == *u) == w.is_identity();
    Ok(PointResult { label: w, coarse_ok, dual_ok, rational_ok })
}

/// The field `F_{p^{2m}}` over which points are counted.
pub fn census_field(p: u32, m: u32) -> Result<FieldCtx> {
    FieldCtx::new(p, 2 * m)
}

/// Classifies every Lagrangian of `F_{p^{2m}}^{2c}`; one record per element
/// of `^I W_c`, in `(length, one-line)` order.
pub fn census(c: usize, p: u32, m: u32) -> Result<Census> {
    let field = census_field(p, m)?;
    let space = SymplecticSpace::standard(&field, c);
    let points = space.enumerate_lagrangians();
    let results: Vec<PointResult> =
        points.par_iter().map(|u| classify_point(&space, u, DEFAULT_TWIST)).collect::<Result<_>>()?;
    let mut counts: HashMap<WeylElement, u64> = HashMap::new();
    let mut checks = CensusChecks { expected_points: space.lagrangian_count(), ..Default::default() };
    for r in &results {
        *counts.entry(r.label.clone()).or_default() += 1;
        checks.points += 1;
        checks.coarse_fine_agree += r.coarse_ok as u64;
        checks.dual_route_agree += r.dual_ok as u64;
        checks.rational_iff_identity += r.rational_ok as u64;
    }
    let labels = enumerate_iw(c);
    if counts.keys().any(|w| !labels.contains(w)) {
        return Err(Error::Invariant("a point received a label outside the index set".into()));
    }
    let records = labels
        .into_iter()
        .map(|w| CensusRecord {
            p,
            m,
            c,
            count: counts.get(&w).copied().unwrap_or(0),
            word: w.reduced_word().letters().to_vec(),
            label: w,
        })
        .collect();
    Ok(Census { records, checks })
}

/// Compares fine labels of `U` and `gU` for random `g ∈ Sp_{2c}(F_{p^2})`
/// and random Lagrangians `U` over `F_{p^{2m}}`.
pub fn equivariance_check(c: usize, p: u32, m: u32, trials: usize, seed: u64) -> Result<bool> {
    let small = FieldCtx::new(p, 2)?;
    let big = census_field(p, m)?;
    let emb = Embedding::new(&small, &big)?;
    let small_space = SymplecticSpace::standard(&small, c);
    let space = SymplecticSpace::standard(&big, c);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let g = small_space.random_symplectic_with(&mut rng).map(|x| emb.apply(x));
        let u = space.random_lagrangian(&mut rng);
        let gu = u.apply(&g)?;
        if classify_fine(&space, &gu, DEFAULT_TWIST)? != classify_fine(&space, &u, DEFAULT_TWIST)? {
            return Ok(false);
        }
    }
    Ok(true)
}
