//! The Weyl group `W_n` of `Sp_{2n}` as symmetric permutations of `{1, ..., 2n}`.
//!
//! An element `w` is stored by its one-line form `[w(1), ..., w(2n)]` and always
//! satisfies `w(2n+1-i) = 2n+1-w(i)`. Composition applies the right factor
//! first: `a.compose(&b)` is `i -> a(b(i))`. Under this convention right
//! multiplication by `s_i` swaps positions and left multiplication swaps values,
//! so
//!
//! * right descents of `w` are the `i` with `w(i) > w(i+1)`;
//! * `w` is a minimal representative of `W_I w` iff it has no left descent in `I`;
//!   for the Siegel type `I = {s_1, ..., s_{n-1}}` this reads
//!   `w^{-1}(1) < ... < w^{-1}(n)`.
//!
//! The simple reflections are `s_n = (n, n+1)` and
//! `s_i = (i, i+1)(2n-i, 2n+1-i)` for `i < n`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest rank for which the whole group is materialized.
pub const MAX_ENUMERATED_RANK: usize = 6;

/// A subset of the simple reflections `{s_1, ..., s_n}`, stored as a bitmask
/// over generator indices. Used for parabolic types as well as descent sets
/// and supports.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParabolicType {
    rank: usize,
    mask: u32,
}

impl ParabolicType {
    pub fn empty(rank: usize) -> Self {
        assert!(rank < 32, "rank {rank} too large for a generator mask");
        ParabolicType { rank, mask: 0 }
    }

    pub fn full(rank: usize) -> Self {
        let mut t = Self::empty(rank);
        t.mask = ((1u64 << rank) - 1) as u32;
        t
    }

    /// `{s_1, ..., s_{n-1}}`, the type of the stabilizer of a Lagrangian.
    pub fn siegel(rank: usize) -> Self {
        let mut t = Self::full(rank);
        if rank > 0 {
            t.remove(rank);
        }
        t
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(rank: usize, indices: I) -> Result<Self> {
        let mut t = Self::empty(rank);
        for i in indices {
            if i == 0 || i > rank {
                return Err(Error::GeneratorOutOfRange { index: i, rank });
            }
            t.insert(i);
        }
        Ok(t)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn contains(&self, i: usize) -> bool {
        i >= 1 && i <= self.rank && self.mask & (1 << (i - 1)) != 0
    }

    pub(crate) fn insert(&mut self, i: usize) {
        self.mask |= 1 << (i - 1);
    }

    pub(crate) fn remove(&mut self, i: usize) {
        self.mask &= !(1 << (i - 1));
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.rank).filter(|&i| self.contains(i))
    }

    pub fn indices(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn union(&self, other: &Self) -> Self {
        ParabolicType { rank: self.rank, mask: self.mask | other.mask }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        ParabolicType { rank: self.rank, mask: self.mask & other.mask }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.mask & !other.mask == 0
    }

    /// All subsets of `S_n`.
    pub fn all(rank: usize) -> impl Iterator<Item = ParabolicType> {
        (0..(1u32 << rank)).map(move |mask| ParabolicType { rank, mask })
    }
}

impl fmt::Debug for ParabolicType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.indices())
    }
}

impl Serialize for ParabolicType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.indices().serialize(s)
    }
}

/// Which descent to strip first when several are available.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StripOrder {
    SmallestFirst,
    LargestFirst,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct WeylElement {
    perm: Vec<u8>,
}

impl TryFrom<Vec<usize>> for WeylElement {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        WeylElement::from_one_line(&v)
    }
}

impl From<WeylElement> for Vec<usize> {
    fn from(w: WeylElement) -> Self {
        w.one_line()
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.perm.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        assert!(2 * n < 256, "rank {n} too large");
        WeylElement { perm: (1..=2 * n as u8).collect() }
    }

    pub fn from_one_line(values: &[usize]) -> Result<Self> {
        let m = values.len();
        let bad = || Error::InvalidPermutation(m / 2, format!("{values:?}"));
        if !m.is_multiple_of(2) || m >= 256 {
            return Err(bad());
        }
        let mut seen = vec![false; m + 1];
        for (idx, &v) in values.iter().enumerate() {
            if v == 0 || v > m || seen[v] {
                return Err(bad());
            }
            seen[v] = true;
            if values[m - 1 - idx] != m + 1 - v {
                return Err(bad());
            }
        }
        Ok(WeylElement { perm: values.iter().map(|&v| v as u8).collect() })
    }

    /// `s_i` in `W_n`.
    pub fn simple_reflection(i: usize, n: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::GeneratorOutOfRange { index: i, rank: n });
        }
        let mut w = Self::identity(n);
        w.swap_positions(i);
        Ok(w)
    }

    pub fn rank(&self) -> usize {
        self.perm.len() / 2
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.perm.iter().map(|&v| v as usize).collect()
    }

    /// `w(i)` for `1 <= i <= 2n`.
    pub fn apply(&self, i: usize) -> usize {
        self.perm[i - 1] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.perm.len()];
        for (i, &v) in self.perm.iter().enumerate() {
            inv[v as usize - 1] = (i + 1) as u8;
        }
        WeylElement { perm: inv }
    }

    /// `self ∘ other`, i.e. `i -> self(other(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch { left: self.rank(), right: other.rank() });
        }
        Ok(self.compose_unchecked(other))
    }

    fn compose_unchecked(&self, other: &Self) -> Self {
        WeylElement { perm: other.perm.iter().map(|&b| self.perm[b as usize - 1]).collect() }
    }

    /// Right multiplication by `s_i`: swaps positions `i, i+1` and their mirrors.
    fn swap_positions(&mut self, i: usize) {
        let m = self.perm.len();
        let n = m / 2;
        if i == n {
            self.perm.swap(n - 1, n);
        } else {
            self.perm.swap(i - 1, i);
            self.perm.swap(m - i - 1, m - i);
        }
    }

    /// Left multiplication by `s_i`: swaps values `i, i+1` and their mirrors.
    fn swap_values(&mut self, i: usize) {
        let m = self.perm.len() as u8;
        let n = m / 2;
        let i = i as u8;
        let pair: [(u8, u8); 2] = if i == n { [(n, n + 1), (0, 0)] } else { [(i, i + 1), (m - i, m + 1 - i)] };
        for v in self.perm.iter_mut() {
            for &(a, b) in &pair {
                if a == 0 {
                    continue;
                }
                if *v == a {
                    *v = b;
                } else if *v == b {
                    *v = a;
                }
            }
        }
    }

    /// `self · s_i`.
    pub fn mul_simple_right(&self, i: usize) -> Self {
        let mut w = self.clone();
        w.swap_positions(i);
        w
    }

    /// `s_i · self`.
    pub fn mul_simple_left(&self, i: usize) -> Self {
        let mut w = self.clone();
        w.swap_values(i);
        w
    }

    pub fn is_right_descent(&self, i: usize) -> bool {
        self.perm[i - 1] > self.perm[i]
    }

    pub fn is_left_descent(&self, i: usize) -> bool {
        let pos = |v: usize| self.perm.iter().position(|&x| x as usize == v).unwrap();
        pos(i) > pos(i + 1)
    }

    pub fn right_descents(&self) -> ParabolicType {
        let n = self.rank();
        let mut t = ParabolicType::empty(n);
        for i in (1..=n).filter(|&i| self.is_right_descent(i)) {
            t.insert(i);
        }
        t
    }

    pub fn left_descents(&self) -> ParabolicType {
        self.inverse().right_descents()
    }

    fn pick(set: &ParabolicType, order: StripOrder) -> Option<usize> {
        match order {
            StripOrder::SmallestFirst => set.iter().next(),
            StripOrder::LargestFirst => set.iter().last(),
        }
    }

    /// Coxeter length, by stripping right descents until the identity is reached.
    pub fn length(&self) -> usize {
        self.reduced_word().len()
    }

    /// A reduced word, smallest descent stripped first.
    pub fn reduced_word(&self) -> ReducedWord {
        self.reduced_word_with(StripOrder::SmallestFirst)
    }

    pub fn reduced_word_with(&self, order: StripOrder) -> ReducedWord {
        let mut w = self.clone();
        let mut stripped = Vec::new();
        while let Some(i) = Self::pick(&w.right_descents(), order) {
            w.swap_positions(i);
            stripped.push(i);
        }
        stripped.reverse();
        ReducedWord { rank: self.rank(), letters: stripped }
    }

    /// The generators occurring in a reduced word.
    pub fn support(&self) -> ParabolicType {
        self.reduced_word().support()
    }

    /// True iff `self` has no left descent in `types`, i.e. is the minimal
    /// element of `W_I · self`.
    pub fn is_min_left_rep(&self, types: &ParabolicType) -> bool {
        types.iter().all(|i| !self.is_left_descent(i))
    }

    pub fn is_min_right_rep(&self, types: &ParabolicType) -> bool {
        types.iter().all(|i| !self.is_right_descent(i))
    }

    /// The unique minimal element of `W_I · self · W_J`.
    pub fn min_double_coset_rep(&self, left: &ParabolicType, right: &ParabolicType) -> Self {
        self.min_double_coset_rep_with(left, right, StripOrder::SmallestFirst)
    }

    pub fn min_double_coset_rep_with(&self, left: &ParabolicType, right: &ParabolicType, order: StripOrder) -> Self {
        let mut w = self.clone();
        loop {
            let l = w.left_descents().intersection(left);
            if let Some(i) = Self::pick(&l, order) {
                w.swap_values(i);
                continue;
            }
            let r = w.right_descents().intersection(right);
            if let Some(i) = Self::pick(&r, order) {
                w.swap_positions(i);
                continue;
            }
            return w;
        }
    }

    /// `r_w(i, j) = #{a in 1..=i : w(a) <= j}`.
    pub fn r(&self, i: usize, j: usize) -> Result<usize> {
        let bound = self.perm.len();
        if i > bound || j > bound {
            return Err(Error::RankIndexOutOfRange { i, j, bound });
        }
        Ok(self.perm[..i].iter().filter(|&&v| (v as usize) <= j).count())
    }

    /// Number of leading fixed points `1, 2, ...`.
    fn leading_fixed(&self) -> usize {
        self.perm.iter().enumerate().take_while(|(i, &v)| v as usize == i + 1).count().min(self.rank())
    }

    /// `𝔯(w)(i) = w(g-c+i) - (g-c)`, defined on `W_g^[c]` (elements fixing `1..=g-c`).
    pub fn r_map(&self, c: usize) -> Result<Self> {
        let g = self.rank();
        let not_in = || Error::NotInParabolicEmbedding { element: self.to_string(), c, fixed: g.saturating_sub(c) };
        if c > g || self.leading_fixed() < g - c {
            return Err(not_in());
        }
        let shift = g - c;
        Ok(WeylElement { perm: self.perm[shift..shift + 2 * c].iter().map(|&v| v - shift as u8).collect() })
    }

    /// The unique `w` in `W_g^[c]` with `𝔯(w) = self` (here `c = self.rank()`).
    pub fn r_map_inv(&self, g: usize) -> Result<Self> {
        let c = self.rank();
        if c > g {
            return Err(Error::RankMismatch { left: c, right: g });
        }
        let shift = (g - c) as u8;
        let mut perm: Vec<u8> = (1..=shift).collect();
        perm.extend(self.perm.iter().map(|&v| v + shift));
        perm.extend((g + c + 1) as u8..=(2 * g) as u8);
        Ok(WeylElement { perm })
    }

    /// Minimal `c` with `self ∈ W_g^[c]` when `2c <= g`, otherwise `None`.
    pub fn class_c(&self) -> Result<Option<usize>> {
        let g = self.rank();
        if !self.is_min_left_rep(&ParabolicType::siegel(g)) {
            return Err(Error::NotInIW(self.to_string()));
        }
        let c = g - self.leading_fixed();
        Ok((2 * c <= g).then_some(c))
    }
}

/// A word in the simple reflections whose length equals the length of its value.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ReducedWord {
    #[serde(skip)]
    rank: usize,
    letters: Vec<usize>,
}

impl fmt::Debug for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.letters)
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Evaluates `s_{a_1} s_{a_2} ... s_{a_k}` in `W_n`.
pub fn evaluate_word(n: usize, letters: &[usize]) -> Result<WeylElement> {
    let mut w = WeylElement::identity(n);
    for &i in letters {
        if i == 0 || i > n {
            return Err(Error::GeneratorOutOfRange { index: i, rank: n });
        }
        w.swap_positions(i);
    }
    Ok(w)
}

impl ReducedWord {
    /// Checks reducedness by evaluating the word.
    pub fn new(n: usize, letters: Vec<usize>) -> Result<Self> {
        let w = evaluate_word(n, &letters)?;
        if w.length() != letters.len() {
            return Err(Error::NotReduced(letters));
        }
        Ok(ReducedWord { rank: n, letters })
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn evaluate(&self) -> WeylElement {
        evaluate_word(self.rank, &self.letters).expect("letters validated at construction")
    }

    pub fn support(&self) -> ParabolicType {
        let mut t = ParabolicType::empty(self.rank);
        for &i in &self.letters {
            t.insert(i);
        }
        t
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n);
            out.push(q);
        }
    }
    out
}

/// Every element of `W_n` (size `2^n n!`), sorted by one-line form.
pub fn all_elements(n: usize) -> Vec<WeylElement> {
    assert!(n <= MAX_ENUMERATED_RANK, "rank {n} exceeds the enumeration limit");
    let m = 2 * n;
    let mut out = Vec::with_capacity((1 << n) * (1..=n).product::<usize>());
    for pi in permutations(n) {
        for signs in 0..(1u32 << n) {
            let mut perm = vec![0u8; m];
            for i in 0..n {
                let v = if signs & (1 << i) != 0 { m + 1 - pi[i] } else { pi[i] };
                perm[i] = v as u8;
                perm[m - 1 - i] = (m + 1 - v) as u8;
            }
            out.push(WeylElement { perm });
        }
    }
    out.sort();
    out
}

/// The standard parabolic subgroup `W_J`.
pub fn parabolic_subgroup(types: &ParabolicType) -> Vec<WeylElement> {
    let n = types.rank();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::from([WeylElement::identity(n)]);
    seen.insert(WeylElement::identity(n));
    while let Some(w) = queue.pop_front() {
        for i in types.iter() {
            let x = w.mul_simple_right(i);
            if seen.insert(x.clone()) {
                queue.push_back(x);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    out
}

/// The longest element of `W_J`: climb by generators of `J` that are not yet descents.
pub fn longest_element(types: &ParabolicType) -> WeylElement {
    let mut w = WeylElement::identity(types.rank());
    while let Some(i) = types.iter().find(|&i| !w.is_right_descent(i)) {
        w.swap_positions(i);
    }
    w
}

fn sort_by_length(v: &mut [WeylElement]) {
    v.sort_by_cached_key(|w| (w.length(), w.clone()));
}

/// `^I W_n` for the Siegel type, sorted by `(length, one-line)`.
///
/// Built directly: the positions of the values `1..=n` form an increasing
/// sequence that picks one position from each mirror pair `{j, 2n+1-j}`.
pub fn enumerate_iw(n: usize) -> Vec<WeylElement> {
    let m = 2 * n;
    let mut out = Vec::with_capacity(1 << n);
    for choice in 0..(1u32 << n) {
        let mut positions: Vec<usize> =
            (1..=n).map(|j| if choice & (1 << (j - 1)) != 0 { m + 1 - j } else { j }).collect();
        positions.sort_unstable();
        let mut perm = vec![0u8; m];
        for (k, &p) in positions.iter().enumerate() {
            perm[p - 1] = (k + 1) as u8;
            perm[m - p] = (m - k) as u8;
        }
        out.push(WeylElement { perm });
    }
    sort_by_length(&mut out);
    debug_assert_eq!(out.len(), 1 << n);
    out
}

type CosetKey = (usize, u32, u32);

fn coset_cache() -> &'static Mutex<HashMap<CosetKey, Arc<Vec<WeylElement>>>> {
    static CACHE: OnceLock<Mutex<HashMap<CosetKey, Arc<Vec<WeylElement>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `^I W^J`: the minimal representatives of `W_I \ W_n / W_J`, sorted by
/// `(length, one-line)`. Materialized by reducing every group element, and
/// memoized per `(n, I, J)`.
pub fn double_coset_reps(left: &ParabolicType, right: &ParabolicType) -> Result<Arc<Vec<WeylElement>>> {
    if left.rank() != right.rank() {
        return Err(Error::RankMismatch { left: left.rank(), right: right.rank() });
    }
    let key = (left.rank(), left.mask(), right.mask());
    if let Some(v) = coset_cache().lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let set: HashSet<WeylElement> =
        all_elements(left.rank()).iter().map(|w| w.min_double_coset_rep(left, right)).collect();
    let mut reps: Vec<_> = set.into_iter().collect();
    sort_by_length(&mut reps);
    let reps = Arc::new(reps);
    coset_cache().lock().unwrap().insert(key, reps.clone());
    Ok(reps)
}

/// The reduced word `(s_n ... s_{i_a})(s_n ... s_{i_b}) ...` attached to a subset of `{1..n}`.
///
/// Both factor orders are tried; exactly one distinct word must evaluate to a
/// reduced element of `^I W_n`.
pub fn canonical_word_iw(n: usize, subset: &[usize]) -> Result<ReducedWord> {
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.iter().any(|&i| i == 0 || i > n) {
        return Err(Error::CanonicalWord(subset.to_vec()));
    }
    let factor = |i: usize| (i..=n).rev().collect::<Vec<_>>();
    let descending: Vec<usize> = sorted.iter().rev().flat_map(|&i| factor(i)).collect();
    let ascending: Vec<usize> = sorted.iter().flat_map(|&i| factor(i)).collect();
    let siegel = ParabolicType::siegel(n);
    let mut good: Vec<Vec<usize>> = [descending, ascending]
        .into_iter()
        .filter(|word| {
            let w = evaluate_word(n, word).expect("letters in range");
            w.length() == word.len() && w.is_min_left_rep(&siegel)
        })
        .collect();
    good.dedup();
    match good.len() {
        1 => Ok(ReducedWord { rank: n, letters: good.pop().unwrap() }),
        _ => Err(Error::CanonicalWord(sorted)),
    }
}
