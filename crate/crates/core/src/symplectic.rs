//! Subspaces and flags of a symplectic space over a finite field.
//!
//! The standard form on `F^{2n}` has `⟨e_i, e_{2n+1-i}⟩ = 1` for `i <= n` and
//! `-1` for `i > n`, so the coordinate flag `span(e_1..e_k)` is self-dual and
//! the form commutes with Frobenius twists.
//!
//! Relative position uses the convention of [`crate::weyl`]: the pair
//! `(E, x·E)`, with `E` the coordinate flag and `x` acting by `e_i -> e_{x(i)}`,
//! has position `x`, and `dim(C_a ∩ D_b) = r_x(dim D_b, dim C_a)`.

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, GfElem};
use crate::matrix::Matrix;
use crate::weyl::{double_coset_reps, ParabolicType, WeylElement};

/// A vector space `F^{2n}` with an alternating nondegenerate form.
#[derive(Debug, Clone)]
pub struct SymplecticSpace {
    field: FieldCtx,
    n: usize,
    gram: Matrix,
}

impl SymplecticSpace {
    pub fn standard(field: &FieldCtx, n: usize) -> Self {
        let d = 2 * n;
        let mut gram = Matrix::zeros(d, d);
        for i in 0..n {
            gram[(i, d - 1 - i)] = field.one();
            gram[(d - 1 - i, i)] = field.neg(field.one());
        }
        SymplecticSpace { field: field.clone(), n, gram }
    }

    /// Any alternating nondegenerate form.
    pub fn with_gram(field: &FieldCtx, gram: Matrix) -> Result<Self> {
        let d = gram.rows();
        if gram.cols() != d || !d.is_multiple_of(2) {
            return Err(Error::BadGram);
        }
        for i in 0..d {
            if !gram[(i, i)].is_zero() {
                return Err(Error::BadGram);
            }
            for j in 0..d {
                if field.add(gram[(i, j)], gram[(j, i)]) != field.zero() {
                    return Err(Error::BadGram);
                }
            }
        }
        if gram.rank(field) != d {
            return Err(Error::BadGram);
        }
        Ok(SymplecticSpace { field: field.clone(), n: d / 2, gram })
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn half_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn pair(&self, x: &[GfElem], y: &[GfElem]) -> GfElem {
        let gy = self.gram.apply(&self.field, y).expect("dimension checked by caller");
        self.field.sum(x.iter().zip(&gy).map(|(&a, &b)| self.field.mul(a, b)))
    }

    /// `Mᵀ G M = G`.
    pub fn is_symplectic(&self, m: &Matrix) -> bool {
        let f = &self.field;
        let lhs = m.transpose().mul(f, &self.gram).and_then(|x| x.mul(f, m));
        lhs.map(|x| x == self.gram).unwrap_or(false)
    }

    fn check(&self, u: &Subspace) -> Result<()> {
        if u.field != self.field {
            return Err(Error::FieldMismatch);
        }
        if u.ambient() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: u.ambient() });
        }
        Ok(())
    }

    /// `{x : ⟨u, x⟩ = 0 for all u ∈ U}`.
    pub fn perp(&self, u: &Subspace) -> Result<Subspace> {
        self.check(u)?;
        let k = u.basis.mul(&self.field, &self.gram)?.kernel(&self.field);
        Ok(Subspace { field: self.field.clone(), basis: k })
    }

    pub fn is_isotropic(&self, u: &Subspace) -> Result<bool> {
        self.check(u)?;
        let rows = u.basis.row_vecs();
        Ok(rows.iter().all(|x| rows.iter().all(|y| self.pair(x, y).is_zero())))
    }

    pub fn is_lagrangian(&self, u: &Subspace) -> Result<bool> {
        Ok(u.dim() == self.n && self.is_isotropic(u)?)
    }

    pub fn is_self_dual(&self, flag: &Flag) -> Result<bool> {
        for c in flag.members() {
            if !flag.members().contains(&self.perp(c)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Adds `C^⊥` for every member. For a chain of isotropic/coisotropic
    /// members this is again a chain.
    pub fn close_under_perp(&self, flag: &Flag) -> Result<Flag> {
        let mut set: Vec<Subspace> = flag.members().to_vec();
        for c in flag.members() {
            set.push(self.perp(c)?);
        }
        Flag::from_members(set)
    }

    /// The type `{s_i : i ∉ dims, 1 <= i <= n}` of a self-dual flag.
    pub fn flag_type(&self, flag: &Flag) -> Result<ParabolicType> {
        if !self.is_self_dual(flag)? {
            return Err(Error::NotSelfDual);
        }
        let dims = flag.dims();
        ParabolicType::from_indices(self.n, (1..=self.n).filter(|i| !dims.contains(i)))
    }

    /// The unique `w ∈ ^I W^J` whose rank table matches `dim(C_a ∩ D_b)`.
    pub fn relpos(&self, c: &Flag, d: &Flag) -> Result<WeylElement> {
        let i = self.flag_type(c)?;
        let j = self.flag_type(d)?;
        let table = intersection_table(c, d)?;
        let reps = double_coset_reps(&i, &j)?;
        let matches: Vec<&WeylElement> = reps
            .iter()
            .filter(|w| table.iter().all(|&(a, b, dim)| w.r(b, a).expect("dims within 2n") == dim))
            .collect();
        match matches.as_slice() {
            [w] => Ok((*w).clone()),
            _ => Err(Error::RelposMatch { matches: matches.len() }),
        }
    }

    /// Random symplectic matrix as a product of transvections `x -> x + a⟨v,x⟩v`.
    pub fn random_symplectic(&self, seed: u64) -> Matrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.random_symplectic_with(&mut rng)
    }

    pub fn random_symplectic_with<R: Rng>(&self, rng: &mut R) -> Matrix {
        let f = &self.field;
        let d = self.dim();
        let mut m = Matrix::identity(f, d);
        for _ in 0..8 * self.n.max(1) {
            let v: Vec<GfElem> = (0..d).map(|_| random_elem(f, rng)).collect();
            let a = loop {
                let a = random_elem(f, rng);
                if !a.is_zero() {
                    break a;
                }
            };
            // T = I + a v vᵀ G
            let vt_g = Matrix::from_rows(vec![v.clone()], d).unwrap().mul(f, &self.gram).unwrap();
            let mut t = Matrix::identity(f, d);
            for r in 0..d {
                for s in 0..d {
                    let add = f.mul(a, f.mul(v[r], vt_g[(0, s)]));
                    t[(r, s)] = f.add(t[(r, s)], add);
                }
            }
            m = t.mul(f, &m).unwrap();
        }
        m
    }

    /// Visits every Lagrangian once, in a deterministic order.
    ///
    /// RREF bases are built row by row over each admissible pivot set (one
    /// column from each pair `{j, 2n+1-j}`); the free entries of a new row solve
    /// the linear isotropy conditions against the rows already chosen.
    pub fn for_each_lagrangian(&self, mut visit: impl FnMut(Subspace)) {
        for pivots in self.pivot_sets() {
            let mut rows = Vec::new();
            self.extend_rows(&pivots, &mut rows, &mut |rows| {
                visit(Subspace::from_rref_rows(&self.field, self.dim(), rows));
            });
        }
    }

    pub fn enumerate_lagrangians(&self) -> Vec<Subspace> {
        let mut out = Vec::new();
        self.for_each_lagrangian(|u| out.push(u));
        out
    }

    pub fn lagrangian_count(&self) -> u64 {
        let q = self.field.order() as u64;
        (1..=self.n as u32).map(|i| q.pow(i) + 1).product()
    }

    /// A random Lagrangian: a random admissible pivot set, then random
    /// solutions row by row. Not uniform across pivot sets.
    pub fn random_lagrangian<R: Rng>(&self, rng: &mut R) -> Subspace {
        let sets = self.pivot_sets();
        'retry: loop {
            let chosen = &sets[rng.random_range(0..sets.len())];
            let mut rows: Vec<Vec<GfElem>> = Vec::new();
            for k in 0..chosen.len() {
                let Some((particular, kernel)) = self.row_solutions(chosen, &rows, k) else {
                    continue 'retry;
                };
                let mut row = particular;
                for kv in &kernel {
                    let c = random_elem(&self.field, rng);
                    for (x, &y) in row.iter_mut().zip(kv) {
                        *x = self.field.add(*x, self.field.mul(c, y));
                    }
                }
                rows.push(row);
            }
            return Subspace::from_rref_rows(&self.field, self.dim(), &rows);
        }
    }

    fn pivot_sets(&self) -> Vec<Vec<usize>> {
        let d = self.dim();
        (0..(1u32 << self.n))
            .map(|choice| {
                let mut p: Vec<usize> =
                    (0..self.n).map(|j| if choice & (1 << j) != 0 { d - 1 - j } else { j }).collect();
                p.sort_unstable();
                p
            })
            .collect()
    }

    /// Solutions for row `k`: a particular row and a basis of the homogeneous part.
    fn row_solutions(
        &self,
        pivots: &[usize],
        rows: &[Vec<GfElem>],
        k: usize,
    ) -> Option<(Vec<GfElem>, Vec<Vec<GfElem>>)> {
        let f = &self.field;
        let d = self.dim();
        let p = pivots[k];
        let free: Vec<usize> = (p + 1..d).filter(|c| !pivots.contains(c)).collect();
        // ⟨r_l, e_p + Σ x_j e_j⟩ = 0 for each earlier row l
        let gr: Vec<Vec<GfElem>> = rows
            .iter()
            .map(|r| {
                let row = Matrix::from_rows(vec![r.clone()], d).unwrap().mul(f, &self.gram).unwrap();
                row.row(0).to_vec()
            })
            .collect();
        let mut aug = Matrix::zeros(rows.len(), free.len() + 1);
        for (l, g) in gr.iter().enumerate() {
            for (c, &j) in free.iter().enumerate() {
                aug[(l, c)] = g[j];
            }
            aug[(l, free.len())] = f.neg(g[p]);
        }
        let piv = aug.rref(f);
        if piv.last() == Some(&free.len()) {
            return None;
        }
        let mut x = vec![f.zero(); free.len()];
        for (r, &c) in piv.iter().enumerate() {
            x[c] = aug[(r, free.len())];
        }
        let coeff = aug.block(0, 0, aug.rows(), free.len());
        let kernel = coeff.kernel(f);
        let embed = |v: &[GfElem], lead: GfElem| {
            let mut row = vec![f.zero(); d];
            row[p] = lead;
            for (c, &j) in free.iter().enumerate() {
                row[j] = v[c];
            }
            row
        };
        let particular = embed(&x, f.one());
        let kernel = kernel.row_vecs().iter().map(|v| embed(v, f.zero())).collect();
        Some((particular, kernel))
    }

    fn extend_rows(&self, pivots: &[usize], rows: &mut Vec<Vec<GfElem>>, done: &mut dyn FnMut(&[Vec<GfElem>])) {
        let k = rows.len();
        if k == pivots.len() {
            done(rows);
            return;
        }
        let Some((particular, kernel)) = self.row_solutions(pivots, rows, k) else {
            return;
        };
        let f = &self.field;
        let q = f.order() as u64;
        let count = q.pow(kernel.len() as u32);
        for code in 0..count {
            let mut row = particular.clone();
            let mut c = code;
            for kv in &kernel {
                let coef = GfElem((c % q) as u32);
                c /= q;
                if coef.is_zero() {
                    continue;
                }
                for (x, &y) in row.iter_mut().zip(kv) {
                    *x = f.add(*x, f.mul(coef, y));
                }
            }
            rows.push(row);
            self.extend_rows(pivots, rows, done);
            rows.pop();
        }
    }
}

pub(crate) fn random_elem<R: Rng>(f: &FieldCtx, rng: &mut R) -> GfElem {
    GfElem(rng.random_range(0..f.order()))
}

/// `(dim C_a, dim D_b, dim(C_a ∩ D_b))` for every pair of members.
fn intersection_table(c: &Flag, d: &Flag) -> Result<Vec<(usize, usize, usize)>> {
    let mut out = Vec::new();
    for ca in c.members() {
        for db in d.members() {
            out.push((ca.dim(), db.dim(), ca.intersect(db)?.dim()));
        }
    }
    Ok(out)
}

/// A subspace of `F^d` held by its reduced row-echelon basis.
#[derive(Clone)]
pub struct Subspace {
    field: FieldCtx,
    basis: Matrix,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis && self.field == other.field
    }
}

impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.basis.hash(state);
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by dimension, then by basis codes.
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.dim(), self.codes()).cmp(&(other.dim(), other.codes()))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<u32>> = self.codes().chunks(self.ambient().max(1)).map(|r| r.to_vec()).collect();
        write!(f, "Subspace({}; {:?})", self.ambient(), rows)
    }
}

impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.dim()))?;
        for row in self.basis.row_vecs() {
            let coeffs: Vec<Vec<u32>> = row.iter().map(|&x| self.field.coeffs(x)).collect();
            seq.serialize_element(&coeffs)?;
        }
        seq.end()
    }
}

impl Subspace {
    pub fn zero(field: &FieldCtx, ambient: usize) -> Self {
        Subspace { field: field.clone(), basis: Matrix::zeros(0, ambient) }
    }

    pub fn full(field: &FieldCtx, ambient: usize) -> Self {
        Subspace { field: field.clone(), basis: Matrix::identity(field, ambient) }
    }

    /// Span of arbitrary vectors.
    pub fn span(field: &FieldCtx, ambient: usize, vectors: Vec<Vec<GfElem>>) -> Result<Self> {
        let mut basis = Matrix::from_rows(vectors, ambient)?;
        basis.rref(field);
        Ok(Subspace { field: field.clone(), basis })
    }

    /// Span of `e_{i}` for the given 1-based indices.
    pub fn coordinate(field: &FieldCtx, ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let rows = indices
            .into_iter()
            .map(|i| {
                let mut v = vec![field.zero(); ambient];
                v[i - 1] = field.one();
                v
            })
            .collect();
        Self::span(field, ambient, rows).expect("rows have ambient length")
    }

    fn from_rref_rows(field: &FieldCtx, ambient: usize, rows: &[Vec<GfElem>]) -> Self {
        let basis = Matrix::from_rows(rows.to_vec(), ambient).expect("rows have ambient length");
        debug_assert_eq!({
            let mut b = basis.clone();
            b.rref(field);
            b
        }, basis);
        Subspace { field: field.clone(), basis }
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn codes(&self) -> Vec<u32> {
        self.basis.row_vecs().concat().iter().map(|x| x.code()).collect()
    }

    fn same_space(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.ambient() != other.ambient() {
            return Err(Error::DimensionMismatch { expected: self.ambient(), found: other.ambient() });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        let mut rows = self.basis.row_vecs();
        rows.extend(other.basis.row_vecs());
        Self::span(&self.field, self.ambient(), rows)
    }

    /// Annihilator under the dot product.
    fn annihilator(&self) -> Self {
        Subspace { field: self.field.clone(), basis: self.basis.kernel(&self.field) }
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    pub fn contains_vector(&self, v: &[GfElem]) -> bool {
        let mut rows = self.basis.row_vecs();
        rows.push(v.to_vec());
        Matrix::from_rows(rows, self.ambient()).map(|m| m.rank(&self.field) == self.dim()).unwrap_or(false)
    }

    pub fn contains(&self, other: &Self) -> bool {
        other.basis.row_vecs().iter().all(|v| self.contains_vector(v))
    }

    /// Entrywise `p^r`-power of the basis, re-reduced.
    pub fn twist(&self, r: i64) -> Self {
        let mut basis = self.basis.frobenius(&self.field, r);
        basis.rref(&self.field);
        Subspace { field: self.field.clone(), basis }
    }

    /// Image under `x -> M x`.
    pub fn apply(&self, m: &Matrix) -> Result<Self> {
        let rows = self.basis.mul(&self.field, &m.transpose())?;
        Self::span(&self.field, m.rows(), rows.row_vecs())
    }
}

/// A strictly increasing chain `0 = C_0 ⊂ ... ⊂ C_r = F^d`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Flag {
    members: Vec<Subspace>,
}

impl fmt::Debug for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Flag{:?}", self.dims())
    }
}

impl Serialize for Flag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.members.serialize(s)
    }
}

impl Flag {
    /// Sorts and deduplicates, adds `0` and the ambient space, and checks that
    /// the result is a chain.
    pub fn from_members(members: Vec<Subspace>) -> Result<Self> {
        let first = members.first().ok_or(Error::NotAFlag)?;
        let (field, d) = (first.field.clone(), first.ambient());
        let mut set: BTreeSet<Subspace> = members.into_iter().collect();
        set.insert(Subspace::zero(&field, d));
        set.insert(Subspace::full(&field, d));
        let members: Vec<Subspace> = set.into_iter().collect();
        for w in members.windows(2) {
            w[0].same_space(&w[1])?;
            if w[0].dim() == w[1].dim() || !w[1].contains(&w[0]) {
                return Err(Error::NotAFlag);
            }
        }
        Ok(Flag { members })
    }

    /// `{0, U, F^d}`.
    pub fn from_subspace(u: &Subspace) -> Self {
        Self::from_members(vec![u.clone()]).expect("a single subspace is a chain")
    }

    /// `span(e_1..e_k)` for each `k` in `dims`.
    pub fn coordinate(field: &FieldCtx, ambient: usize, dims: &[usize]) -> Self {
        let members = std::iter::once(0).chain(dims.iter().copied()).map(|k| Subspace::coordinate(field, ambient, 1..=k)).collect();
        Self::from_members(members).expect("coordinate subspaces form a chain")
    }

    pub fn members(&self) -> &[Subspace] {
        &self.members
    }

    pub fn dims(&self) -> Vec<usize> {
        self.members.iter().map(|c| c.dim()).collect()
    }

    pub fn twist(&self, r: i64) -> Self {
        Flag { members: self.members.iter().map(|c| c.twist(r)).collect() }
    }

    pub fn apply(&self, m: &Matrix) -> Result<Self> {
        let members = self.members.iter().map(|c| c.apply(m)).collect::<Result<Vec<_>>>()?;
        Self::from_members(members)
    }

    /// The chain generated by `(C_{i+1} ∩ D_j) + C_i`.
    pub fn refine(&self, other: &Flag) -> Result<Flag> {
        let mut out = Vec::new();
        for pair in self.members.windows(2) {
            for dj in &other.members {
                out.push(pair[1].intersect(dj)?.sum(&pair[0])?);
            }
        }
        Self::from_members(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32, k: u32) -> FieldCtx {
        FieldCtx::new(p, k).unwrap()
    }

    #[test]
    fn standard_gram_is_valid() {
        let fd = f(3, 1);
        let sp = SymplecticSpace::standard(&fd, 2);
        assert!(SymplecticSpace::with_gram(&fd, sp.gram().clone()).is_ok());
        assert!(SymplecticSpace::with_gram(&fd, Matrix::identity(&fd, 2)).is_err());
        assert_eq!(sp.pair(&[fd.one(), fd.zero(), fd.zero(), fd.zero()], &[fd.zero(), fd.zero(), fd.zero(), fd.one()]), fd.one());
    }

    #[test]
    fn subspace_basics() {
        let fd = f(2, 2);
        let u = Subspace::coordinate(&fd, 4, [1, 2]);
        let v = Subspace::coordinate(&fd, 4, [2, 3]);
        assert_eq!(u.intersect(&u).unwrap(), u);
        assert_eq!(u.sum(&Subspace::zero(&fd, 4)).unwrap(), u);
        assert_eq!(u.intersect(&v).unwrap(), Subspace::coordinate(&fd, 4, [2]));
        assert_eq!(u.sum(&v).unwrap().dim(), 3);
        let sp = SymplecticSpace::standard(&fd, 2);
        assert_eq!(sp.perp(&u).unwrap(), u);
        assert!(sp.is_lagrangian(&u).unwrap());
        assert!(!sp.is_isotropic(&Subspace::coordinate(&fd, 4, [1, 4])).unwrap());
        let other = f(3, 1);
        assert_eq!(u.sum(&Subspace::zero(&other, 4)), Err(Error::FieldMismatch));
    }

    #[test]
    fn twist_roundtrip() {
        let fd = f(2, 4);
        let t = fd.generator();
        let u = Subspace::span(&fd, 2, vec![vec![fd.one(), t]]).unwrap();
        assert_ne!(u.twist(1), u);
        assert_eq!(u.twist(1).twist(-1), u);
        assert_eq!(u.twist(4), u);
    }

    #[test]
    fn lagrangian_counts() {
        for (p, k, n, count) in [(2, 2, 1, 5), (2, 2, 2, 85), (3, 2, 2, 820), (2, 1, 3, 135)] {
            let sp = SymplecticSpace::standard(&f(p, k), n);
            let all = sp.enumerate_lagrangians();
            assert_eq!(all.len() as u64, count);
            assert_eq!(sp.lagrangian_count(), count);
            assert!(all.iter().all(|u| sp.is_lagrangian(u).unwrap()));
            let distinct: std::collections::HashSet<_> = all.iter().collect();
            assert_eq!(distinct.len(), all.len());
        }
    }

    #[test]
    fn two_transverse_lines() {
        let fd = f(2, 2);
        let sp = SymplecticSpace::standard(&fd, 1);
        let u = Flag::from_subspace(&Subspace::coordinate(&fd, 2, [1]));
        let v = Flag::from_subspace(&Subspace::coordinate(&fd, 2, [2]));
        assert!(sp.relpos(&u, &u).unwrap().is_identity());
        assert_eq!(sp.relpos(&u, &v).unwrap(), WeylElement::simple_reflection(1, 1).unwrap());
    }

    #[test]
    fn refine_examples() {
        let fd = f(3, 1);
        let c = Flag::coordinate(&fd, 4, &[2]);
        assert_eq!(c.refine(&c).unwrap(), c);
        let d = Flag::coordinate(&fd, 4, &[1, 3]);
        let r = c.refine(&d).unwrap();
        assert_eq!(r.dims(), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn random_symplectic_preserves_gram() {
        let sp = SymplecticSpace::standard(&f(3, 2), 2);
        for seed in 0..20 {
            let m = sp.random_symplectic(seed);
            assert!(sp.is_symplectic(&m));
            assert_eq!(m, sp.random_symplectic(seed));
        }
        assert!(sp.is_symplectic(&Matrix::identity(sp.field(), 4)));
    }

    #[test]
    fn non_self_dual_flag_rejected() {
        let fd = f(2, 1);
        let sp = SymplecticSpace::standard(&fd, 2);
        let c = Flag::from_subspace(&Subspace::coordinate(&fd, 4, [1]));
        assert_eq!(sp.relpos(&c, &c), Err(Error::NotSelfDual));
    }
}
