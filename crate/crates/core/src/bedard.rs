//! Bédard sequences `(u_n, I_n)` and the fine-stratum labels they produce.
//!
//! Sequences are enumerated forward: `u_0` ranges over `^I W^{F(I)}`, then
//! `I_{n+1} = I_n ∩ ^{u_n}F(I_n)` and `u_{n+1}` ranges over the minimal
//! `(I_{n+1}, F(I_{n+1}))`-representatives inside `W_{I_{n+1}} u_n W_{F(I_n)}`.
//! A branch stops once the type no longer shrinks.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::weyl::{all_elements, enumerate_iw, longest_element, parabolic_subgroup, ParabolicType, WeylElement};

/// An automorphism of the Coxeter system of `W_n`, given by where it sends each `s_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FrobeniusAction {
    map: Vec<usize>,
}

fn coxeter_order(n: usize, i: usize, j: usize) -> usize {
    let (a, b) = (i.min(j), i.max(j));
    if a == b {
        1
    } else if b == a + 1 {
        if b == n { 4 } else { 3 }
    } else {
        2
    }
}

impl FrobeniusAction {
    pub fn identity(n: usize) -> Self {
        FrobeniusAction { map: (1..=n).collect() }
    }

    /// `map[i-1]` is the index of `F(s_i)`.
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n + 1];
        for &k in &map {
            if k == 0 || k > n || seen[k] {
                return Err(Error::InvalidFrobenius(map));
            }
            seen[k] = true;
        }
        for i in 1..=n {
            for j in 1..=n {
                if coxeter_order(n, i, j) != coxeter_order(n, map[i - 1], map[j - 1]) {
                    return Err(Error::InvalidFrobenius(map));
                }
            }
        }
        Ok(FrobeniusAction { map })
    }

    pub fn rank(&self) -> usize {
        self.map.len()
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &k)| k == i + 1)
    }

    pub fn apply(&self, types: &ParabolicType) -> ParabolicType {
        ParabolicType::from_indices(types.rank(), types.iter().map(|i| self.map[i - 1])).expect("map is a permutation")
    }

    /// Smallest `F`-stable set containing `types`.
    pub fn closure(&self, types: &ParabolicType) -> ParabolicType {
        let mut cur = *types;
        loop {
            let next = cur.union(&self.apply(&cur));
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BedardStep {
    pub u: WeylElement,
    pub types: ParabolicType,
}

/// A stabilized sequence; the last two steps coincide.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BedardSequence {
    pub i0: ParabolicType,
    pub steps: Vec<BedardStep>,
    pub u_inf: WeylElement,
    pub i_inf: ParabolicType,
}

/// The simple reflections of the form `w s w^{-1}` with `s ∈ J`.
pub fn conjugate_type(w: &WeylElement, types: &ParabolicType) -> ParabolicType {
    let n = w.rank();
    let inv = w.inverse();
    let mut out = ParabolicType::empty(n);
    for s in types.iter() {
        let t = w.mul_simple_right(s).compose(&inv).expect("same rank");
        let simple = (1..=n).find(|&k| t == WeylElement::simple_reflection(k, n).expect("in range"));
        if let Some(k) = simple {
            out = out.union(&ParabolicType::from_indices(n, [k]).expect("in range"));
        }
    }
    out
}

/// `dim P_J = l(w_0) - l(w_{0,J})`.
pub fn flag_variety_dim(types: &ParabolicType) -> usize {
    let n = types.rank();
    n * n - longest_element(types).length()
}

fn min_left_reps(types: &ParabolicType) -> Vec<WeylElement> {
    if *types == ParabolicType::siegel(types.rank()) {
        return enumerate_iw(types.rank());
    }
    all_elements(types.rank()).into_iter().filter(|w| w.is_min_left_rep(types)).collect()
}

pub struct BedardTable {
    sequences: Vec<BedardSequence>,
    by_label: HashMap<WeylElement, usize>,
}

impl BedardTable {
    pub fn sequences(&self) -> &[BedardSequence] {
        &self.sequences
    }
}

fn extend(frob: &FrobeniusAction, seq: &mut Vec<BedardStep>, i0: &ParabolicType, out: &mut Vec<BedardSequence>) {
    let last = seq.last().expect("nonempty").clone();
    let f_cur = frob.apply(&last.types);
    let next = last.types.intersection(&conjugate_type(&last.u, &f_cur));
    if next == last.types {
        seq.push(last.clone());
        out.push(BedardSequence { i0: *i0, steps: seq.clone(), u_inf: last.u, i_inf: last.types });
        seq.pop();
        return;
    }
    let f_next = frob.apply(&next);
    let mut candidates: Vec<WeylElement> = parabolic_subgroup(&f_cur)
        .iter()
        .map(|b| last.u.compose(b).expect("same rank").min_double_coset_rep(&next, &f_next))
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    candidates.sort();
    for u in candidates {
        seq.push(BedardStep { u, types: next });
        extend(frob, seq, i0, out);
        seq.pop();
    }
}

fn build_table(types: &ParabolicType, frob: &FrobeniusAction) -> Result<BedardTable> {
    let n = types.rank();
    let f_i = frob.apply(types);
    let starts: HashSet<WeylElement> = all_elements(n).iter().map(|w| w.min_double_coset_rep(types, &f_i)).collect();
    let mut starts: Vec<_> = starts.into_iter().collect();
    starts.sort();
    let mut sequences = Vec::new();
    for u0 in starts {
        let mut seq = vec![BedardStep { u: u0, types: *types }];
        extend(frob, &mut seq, types, &mut sequences);
    }
    let mut by_label = HashMap::new();
    for (idx, s) in sequences.iter().enumerate() {
        if by_label.insert(s.u_inf.clone(), idx).is_some() {
            return Err(Error::Invariant(format!("two sequences end at {}", s.u_inf)));
        }
    }
    let reps = min_left_reps(types);
    if reps.len() != by_label.len() || reps.iter().any(|w| !by_label.contains_key(w)) {
        return Err(Error::Invariant(format!("sequence labels do not biject onto the left representatives of {types:?}")));
    }
    Ok(BedardTable { sequences, by_label })
}

type TableKey = (usize, u32, Vec<usize>);

fn table_cache() -> &'static Mutex<HashMap<TableKey, Arc<BedardTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<TableKey, Arc<BedardTable>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// All sequences starting at `types`, memoized per `(I, F)`. Fails if the
/// labels `u_inf` do not hit every element of `^I W` exactly once.
pub fn table(types: &ParabolicType, frob: &FrobeniusAction) -> Result<Arc<BedardTable>> {
    if types.rank() != frob.rank() {
        return Err(Error::RankMismatch { left: types.rank(), right: frob.rank() });
    }
    let key = (types.rank(), types.mask(), frob.map.clone());
    if let Some(t) = table_cache().lock().unwrap().get(&key) {
        return Ok(t.clone());
    }
    let t = Arc::new(build_table(types, frob)?);
    table_cache().lock().unwrap().entry(key).or_insert(t.clone());
    Ok(t)
}

pub fn enumerate_sequences(types: &ParabolicType, frob: &FrobeniusAction) -> Result<Vec<BedardSequence>> {
    Ok(table(types, frob)?.sequences.clone())
}

pub fn sequence_for(w: &WeylElement, types: &ParabolicType, frob: &FrobeniusAction) -> Result<BedardSequence> {
    if !w.is_min_left_rep(types) {
        return Err(Error::NotInIW(w.to_string()));
    }
    let t = table(types, frob)?;
    let idx = t.by_label.get(w).ok_or_else(|| Error::NotInIW(w.to_string()))?;
    Ok(t.sequences[*idx].clone())
}

pub fn stratum_dimension(w: &WeylElement, types: &ParabolicType, frob: &FrobeniusAction) -> Result<usize> {
    let seq = sequence_for(w, types, frob)?;
    let i_inf = seq.i_inf;
    let both = i_inf.intersection(&frob.apply(&i_inf));
    Ok(seq.u_inf.length() + flag_variety_dim(&both) - flag_variety_dim(&i_inf))
}

/// True iff `I_inf ∪ supp(u_inf)` lies in no proper `F`-stable standard parabolic.
pub fn is_irreducible(w: &WeylElement, types: &ParabolicType, frob: &FrobeniusAction) -> Result<bool> {
    let seq = sequence_for(w, types, frob)?;
    let generated = frob.closure(&seq.i_inf.union(&seq.u_inf.support()));
    Ok(generated == ParabolicType::full(w.rank()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::evaluate_word;

    fn t(n: usize, v: &[usize]) -> ParabolicType {
        ParabolicType::from_indices(n, v.iter().copied()).unwrap()
    }

    #[test]
    fn frobenius_validation() {
        assert!(FrobeniusAction::new(vec![2, 1]).is_ok());
        assert!(FrobeniusAction::new(vec![2, 1, 3]).is_err());
        assert!(FrobeniusAction::new(vec![1, 1]).is_err());
        let swap = FrobeniusAction::new(vec![2, 1]).unwrap();
        assert_eq!(swap.closure(&t(2, &[1])), t(2, &[1, 2]));
    }

    #[test]
    fn conjugate_examples() {
        let e = WeylElement::identity(2);
        assert_eq!(conjugate_type(&e, &t(2, &[1])), t(2, &[1]));
        let s1 = WeylElement::simple_reflection(1, 2).unwrap();
        assert_eq!(conjugate_type(&s1, &t(2, &[1])), t(2, &[1]));
        // s_2 s_1 s_2 is not a simple reflection
        let s2 = WeylElement::simple_reflection(2, 2).unwrap();
        assert!(conjugate_type(&s2, &t(2, &[1])).is_empty());
    }

    #[test]
    fn dims() {
        assert_eq!(flag_variety_dim(&ParabolicType::full(3)), 0);
        assert_eq!(flag_variety_dim(&ParabolicType::empty(1)), 1);
        assert_eq!(flag_variety_dim(&t(2, &[1])), 3);
    }

    #[test]
    fn small_tables() {
        let id1 = FrobeniusAction::identity(1);
        let seqs = enumerate_sequences(&ParabolicType::empty(1), &id1).unwrap();
        assert_eq!(seqs.len(), 2);
        assert!(seqs.iter().all(|s| s.steps.len() == 2 && s.i_inf.is_empty()));
        let id2 = FrobeniusAction::identity(2);
        assert_eq!(enumerate_sequences(&t(2, &[1]), &id2).unwrap().len(), 4);
        let id3 = FrobeniusAction::identity(3);
        assert_eq!(enumerate_sequences(&t(3, &[1, 2]), &id3).unwrap().len(), 8);
    }

    #[test]
    fn identity_label() {
        let i = t(3, &[1, 2]);
        let seq = sequence_for(&WeylElement::identity(3), &i, &FrobeniusAction::identity(3)).unwrap();
        assert!(seq.steps.iter().all(|s| s.u.is_identity() && s.types == i));
    }

    #[test]
    fn dimension_and_irreducibility() {
        let id = FrobeniusAction::identity(2);
        let i = t(2, &[1]);
        let w = evaluate_word(2, &[2, 1, 2]).unwrap();
        assert_eq!(stratum_dimension(&w, &i, &id).unwrap(), 3);
        assert!(is_irreducible(&w, &i, &id).unwrap());
        assert_eq!(stratum_dimension(&WeylElement::identity(2), &i, &id).unwrap(), 0);
        let s1 = WeylElement::simple_reflection(1, 2).unwrap();
        assert!(sequence_for(&s1, &i, &id).is_err());
        let full = ParabolicType::full(2);
        assert!(is_irreducible(&WeylElement::identity(2), &full, &id).unwrap());
        assert!(!is_irreducible(&WeylElement::identity(1), &ParabolicType::empty(1), &FrobeniusAction::identity(1)).unwrap());
    }

    #[test]
    fn twisted_frobenius_in_rank_two() {
        let swap = FrobeniusAction::new(vec![2, 1]).unwrap();
        for mask in 0..4u32 {
            let i = ParabolicType::from_indices(2, (1..=2).filter(|k| mask & (1 << (k - 1)) != 0)).unwrap();
            let seqs = enumerate_sequences(&i, &swap).unwrap();
            assert_eq!(seqs.len(), 8 / parabolic_subgroup(&i).len());
        }
    }
}
