//! Mod-`p` Dieudonné modules as semilinear algebra, the canonical flag, and
//! extraction of the Ekedahl–Oort type.
//!
//! A module is `N = K^{2g}` with `F(x) = A·σ(x)` and `V(x) = σ^{-1}(B·x)`,
//! where `σ` is the `p`-power map on coordinates. `A` and `B` are the linear
//! maps `N^{(p)} -> N` and `N -> N^{(p)}`; the BT₁ conditions read
//! `ker A = im B`, `ker B = im A`, and compatibility with the pairing `G` reads
//! `Aᵀ G = σ(G) B`.
//!
//! The model built from a Lagrangian `U ⊂ L = K^{2c}` is split along the slots
//! `[U | K | L^{(p)} | K^{(p)} | L/U]` of sizes `[c, g-2c, 2c, g-2c, c]`;
//! both `F` and `V` raise the slot index by two.

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::dlclassify::{classify_fine, DEFAULT_TWIST};
use crate::error::{Error, Result};
use crate::gf::{FieldCtx, GfElem};
use crate::matrix::Matrix;
use crate::symplectic::{Flag, Subspace, SymplecticSpace};
use crate::weyl::{enumerate_iw, WeylElement};

/// `x -> M · σ^r(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemilinearMap {
    pub matrix: Matrix,
    pub twist: i64,
}

impl SemilinearMap {
    pub fn apply(&self, field: &FieldCtx, x: &[GfElem]) -> Result<Vec<GfElem>> {
        let tx: Vec<GfElem> = x.iter().map(|&a| field.frobenius(a, self.twist)).collect();
        self.matrix.apply(field, &tx)
    }

    /// `(A, r) ∘ (B, s) = (A · σ^r(B), r + s)`.
    pub fn compose(&self, field: &FieldCtx, other: &SemilinearMap) -> Result<SemilinearMap> {
        let m = self.matrix.mul(field, &other.matrix.frobenius(field, self.twist))?;
        Ok(SemilinearMap { matrix: m, twist: self.twist + other.twist })
    }
}

/// Signs of the graded pieces of `F` on the split model: `gr⁰(F) = a·incl`,
/// `gr¹(F) = s1·id`, `gr²(F) = b·proj`. The pairing is derived from `a`
/// (the adjunction needs `a = b` and `s1 = -1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GradedSigns {
    pub a: i64,
    pub b: i64,
    pub s1: i64,
}

impl Default for GradedSigns {
    fn default() -> Self {
        GradedSigns { a: -1, b: -1, s1: -1 }
    }
}

#[derive(Debug, Clone)]
pub struct DieudonneModule {
    field: FieldCtx,
    g: usize,
    f: SemilinearMap,
    v: SemilinearMap,
    pairing: SymplecticSpace,
    /// slot boundaries when built from a Lagrangian
    slots: Option<[usize; 6]>,
    lagrangian: Option<Subspace>,
}

/// Outcome of each structural check on a module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub ker_f_is_im_v: bool,
    pub ker_v_is_im_f: bool,
    pub ker_f_dim_is_g: bool,
    pub adjunction: bool,
    /// `None` for modules not built from a Lagrangian.
    pub kernel_corollary: Option<bool>,
}

impl InvariantReport {
    pub fn all_hold(&self) -> bool {
        self.ker_f_is_im_v && self.ker_v_is_im_f && self.ker_f_dim_is_g && self.adjunction && self.kernel_corollary != Some(false)
    }
}

fn column_space(field: &FieldCtx, m: &Matrix) -> Subspace {
    Subspace::span(field, m.rows(), m.transpose().row_vecs()).expect("rows have ambient length")
}

fn kernel_space(field: &FieldCtx, m: &Matrix) -> Subspace {
    Subspace::span(field, m.cols(), m.kernel(field).row_vecs()).expect("rows have ambient length")
}

/// RREF basis of `U` as columns, and the projection `L -> L/U` in the basis of
/// the coordinate complement spanned by the non-pivot `e_j`.
fn lagrangian_coordinates(field: &FieldCtx, u: &Subspace) -> (Matrix, Matrix) {
    let c = u.dim();
    let rows = u.basis().row_vecs();
    let pivots: Vec<usize> = rows.iter().map(|r| r.iter().position(|x| !x.is_zero()).unwrap()).collect();
    let free: Vec<usize> = (0..2 * c).filter(|j| !pivots.contains(j)).collect();
    let uc = u.basis().transpose();
    let mut proj = Matrix::zeros(c, 2 * c);
    for (b, &j) in free.iter().enumerate() {
        proj[(b, j)] = field.one();
        for (a, &pa) in pivots.iter().enumerate() {
            proj[(b, pa)] = field.neg(rows[a][j]);
        }
    }
    (uc, proj)
}

impl DieudonneModule {
    /// A module from raw data; invariants are not checked here (see [`Self::invariants`]).
    pub fn new(field: &FieldCtx, f: Matrix, v_linear: Matrix, gram: Matrix) -> Result<Self> {
        let d = gram.rows();
        for m in [&f, &v_linear] {
            if m.rows() != d || m.cols() != d {
                return Err(Error::DimensionMismatch { expected: d, found: m.rows() });
            }
        }
        let pairing = SymplecticSpace::with_gram(field, gram)?;
        Ok(DieudonneModule {
            field: field.clone(),
            g: d / 2,
            f: SemilinearMap { matrix: f, twist: 1 },
            v: SemilinearMap { matrix: v_linear.frobenius(field, -1), twist: -1 },
            pairing,
            slots: None,
            lagrangian: None,
        })
    }

    /// The split model attached to a Lagrangian `U ⊂ F^{2c}` and `g >= 2c`,
    /// with all invariants checked.
    pub fn from_lagrangian(u: &Subspace, g: usize) -> Result<Self> {
        let m = Self::from_lagrangian_with_signs(u, g, GradedSigns::default())?;
        let report = m.invariants()?;
        if !report.all_hold() {
            return Err(Error::Invariant(format!("split model fails its invariants: {report:?}")));
        }
        Ok(m)
    }

    pub fn from_lagrangian_with_signs(u: &Subspace, g: usize, signs: GradedSigns) -> Result<Self> {
        let field = u.field().clone();
        let c = u.dim();
        let l = SymplecticSpace::standard(&field, c);
        if !l.is_lagrangian(u)? {
            return Err(Error::NotLagrangian);
        }
        if 2 * c > g {
            return Err(Error::RankTooSmall { c, g });
        }
        let k = g - 2 * c;
        let slots = [0, c, g - c, g + c, 2 * g - c, 2 * g];
        let (uc, proj) = lagrangian_coordinates(&field, u);
        let sgn = |s: i64| field.from_int(s);
        let d = 2 * g;

        let mut b = Matrix::zeros(d, d);
        b.set_block(slots[2], slots[0], &uc);
        b.set_block(slots[3], slots[1], &Matrix::identity(&field, k));
        b.set_block(slots[4], slots[2], &proj.frobenius(&field, 1));

        let mut a = Matrix::zeros(d, d);
        a.set_block(slots[2], slots[0], &uc.frobenius(&field, 1).scale(&field, sgn(signs.a)));
        a.set_block(slots[3], slots[1], &Matrix::identity(&field, k).scale(&field, sgn(signs.s1)));
        a.set_block(slots[4], slots[2], &proj.scale(&field, sgn(signs.b)));

        // ⟨u, l + U⟩ = a·⟨u, l⟩ on gr⁰ × gr⁴, the form of L on gr², identity on gr¹ × gr³.
        let z = l.gram().clone();
        let mut complement = Matrix::zeros(2 * c, c);
        for bi in 0..c {
            let j = (0..2 * c).find(|&j| proj[(bi, j)] == field.one() && (0..c).all(|o| o == bi || proj[(o, j)].is_zero()));
            complement[(j.expect("projection has a unit column per row"), bi)] = field.one();
        }
        let x = uc.transpose().mul(&field, &z)?.mul(&field, &complement)?.scale(&field, sgn(signs.a));
        let mut gram = Matrix::zeros(d, d);
        gram.set_block(slots[0], slots[4], &x);
        gram.set_block(slots[4], slots[0], &x.transpose().scale(&field, sgn(-1)));
        gram.set_block(slots[1], slots[3], &Matrix::identity(&field, k));
        gram.set_block(slots[3], slots[1], &Matrix::identity(&field, k).scale(&field, sgn(-1)));
        gram.set_block(slots[2], slots[2], &z);

        let mut m = Self::new(&field, a, b, gram)?;
        m.slots = Some(slots);
        m.lagrangian = Some(u.clone());
        Ok(m)
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn dim(&self) -> usize {
        2 * self.g
    }

    pub fn f(&self) -> &SemilinearMap {
        &self.f
    }

    pub fn v(&self) -> &SemilinearMap {
        &self.v
    }

    pub fn pairing(&self) -> &SymplecticSpace {
        &self.pairing
    }

    pub fn slots(&self) -> Option<[usize; 6]> {
        self.slots
    }

    fn a_lin(&self) -> &Matrix {
        &self.f.matrix
    }

    fn b_lin(&self) -> Matrix {
        self.v.matrix.frobenius(&self.field, 1)
    }

    /// Span of the listed slots plus a subspace placed in slot 2.
    fn slot_pullback(&self, in_slot2: &Subspace, later: &[usize]) -> Result<Subspace> {
        let slots = self.slots.expect("split model");
        let d = self.dim();
        let mut rows = Vec::new();
        for r in in_slot2.basis().row_vecs() {
            let mut v = vec![self.field.zero(); d];
            v[slots[2]..slots[3]].copy_from_slice(&r);
            rows.push(v);
        }
        for &s in later {
            for i in slots[s]..slots[s + 1] {
                let mut v = vec![self.field.zero(); d];
                v[i] = self.field.one();
                rows.push(v);
            }
        }
        Subspace::span(&self.field, d, rows)
    }

    pub fn invariants(&self) -> Result<InvariantReport> {
        let f = &self.field;
        let a = self.a_lin();
        let b = self.b_lin();
        let (ker_a, im_a) = (kernel_space(f, a), column_space(f, a));
        let (ker_b, im_b) = (kernel_space(f, &b), column_space(f, &b));
        let d = self.dim();
        let mut adjunction = true;
        'outer: for i in 0..d {
            for j in 0..d {
                let mut x = vec![f.zero(); d];
                let mut y = vec![f.zero(); d];
                x[i] = f.one();
                y[j] = f.one();
                let lhs = self.pairing.pair(&self.f.apply(f, &x)?, &y);
                let rhs = f.frobenius(self.pairing.pair(&x, &self.v.apply(f, &y)?), 1);
                if lhs != rhs {
                    adjunction = false;
                    break 'outer;
                }
            }
        }
        let kernel_corollary = match &self.lagrangian {
            Some(u) => Some(ker_a == self.slot_pullback(u, &[3, 4])? && ker_b == self.slot_pullback(&u.twist(1), &[3, 4])?),
            None => None,
        };
        Ok(InvariantReport {
            ker_f_is_im_v: ker_a == im_b,
            ker_v_is_im_f: ker_b == im_a,
            ker_f_dim_is_g: ker_a.dim() == self.g,
            adjunction,
            kernel_corollary,
        })
    }

    /// `ker V`.
    pub fn ker_v(&self) -> Subspace {
        kernel_space(&self.field, &self.b_lin())
    }

    /// `ker F`, as a subspace of the twisted source `N^{(p)}`.
    pub fn ker_f(&self) -> Subspace {
        kernel_space(&self.field, self.a_lin())
    }

    /// `V^{-1}(C^{(p)}) = {x : B x ∈ C^{(p)}}`.
    pub fn v_preimage(&self, c: &Subspace) -> Result<Subspace> {
        let f = &self.field;
        let target = c.twist(1);
        // x ↦ B x followed by the quotient by C^{(p)}: kernel of (ann C^{(p)}) · B
        let ann = target.basis().kernel(f);
        let cond = ann.mul(f, &self.b_lin())?;
        Ok(kernel_space(f, &cond))
    }

    /// `dim F(C^{(p)})`.
    pub fn f_image_dim(&self, c: &Subspace) -> Result<usize> {
        let img = c.twist(1).basis().mul(&self.field, &self.a_lin().transpose())?;
        Ok(img.rank(&self.field))
    }
}

impl Serialize for DieudonneModule {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let f = &self.field;
        let coeffs = |m: &Matrix| -> Vec<Vec<Vec<u32>>> {
            m.row_vecs().iter().map(|r| r.iter().map(|&x| f.coeffs(x)).collect()).collect()
        };
        let mut st = s.serialize_struct("DieudonneModule", 6)?;
        st.serialize_field("g", &self.g)?;
        st.serialize_field("dim", &self.dim())?;
        st.serialize_field("slots", &self.slots)?;
        st.serialize_field("f", &coeffs(&self.f.matrix))?;
        st.serialize_field("v", &coeffs(&self.v.matrix))?;
        st.serialize_field("pairing", &coeffs(self.pairing.gram()))?;
        st.end()
    }
}

#[derive(Debug, Clone)]
pub struct CanonicalFlag {
    pub flag: Flag,
    /// `dim F(C^{(p)})` for each member, in flag order.
    pub fdims: Vec<usize>,
    pub rounds: usize,
}

/// Closes `{0, ker V, N}` under `C -> V^{-1}(C)` and `C -> V^{-1}(C)^⊥`.
pub fn canonical_flag(m: &DieudonneModule) -> Result<CanonicalFlag> {
    let bound = 4 * m.g().max(1);
    let mut flag = Flag::from_members(vec![m.ker_v()])?;
    for round in 1..=bound {
        let mut members = flag.members().to_vec();
        for c in flag.members() {
            let pre = m.v_preimage(c)?;
            members.push(m.pairing().perp(&pre)?);
            members.push(pre);
        }
        let next = Flag::from_members(members)?;
        if next == flag {
            if !m.pairing().is_self_dual(&flag)? {
                return Err(Error::Invariant("canonical flag is not self-dual".into()));
            }
            let fdims = flag.members().iter().map(|c| m.f_image_dim(c)).collect::<Result<Vec<_>>>()?;
            for (w, fw) in flag.members().windows(2).zip(fdims.windows(2)) {
                let gap = w[1].dim() - w[0].dim();
                let inc = fw[1] - fw[0];
                if inc != 0 && inc != gap {
                    return Err(Error::Invariant(format!("F-image grows by {inc} on a gap of {gap}")));
                }
            }
            return Ok(CanonicalFlag { flag, fdims, rounds: round });
        }
        flag = next;
    }
    Err(Error::NoStabilization(bound))
}

/// `ψ_w(i) = #{a <= i : w(a) > g}`.
pub fn psi(w: &WeylElement) -> Vec<usize> {
    let g = w.rank();
    let mut out = vec![0];
    for a in 1..=2 * g {
        out.push(out[a - 1] + (w.apply(a) > g) as usize);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct EoType {
    pub w: WeylElement,
    pub word: Vec<usize>,
    pub psi: Vec<usize>,
}

/// Interpolates `ψ` across the canonical flag and finds the matching `w ∈ ^I W_g`.
pub fn eo_type(m: &DieudonneModule) -> Result<EoType> {
    let cf = canonical_flag(m)?;
    eo_type_from_flag(m.g(), &cf)
}

fn eo_type_from_flag(g: usize, cf: &CanonicalFlag) -> Result<EoType> {
    let dims = cf.flag.dims();
    let mut values = vec![0usize; 2 * g + 1];
    for (k, w) in dims.windows(2).enumerate() {
        let injective = cf.fdims[k + 1] > cf.fdims[k];
        for (off, v) in values[w[0]..=w[1]].iter_mut().enumerate() {
            *v = cf.fdims[k] + if injective { off } else { 0 };
        }
    }
    let matches: Vec<WeylElement> = enumerate_iw(g).into_iter().filter(|w| psi(w) == values).collect();
    let [w] = matches.as_slice() else {
        return Err(Error::RelposMatch { matches: matches.len() });
    };
    let pw = psi(w);
    if dims.iter().zip(&cf.fdims).any(|(&d, &fd)| pw[d] != fd) {
        return Err(Error::Invariant("matched type disagrees at a canonical dimension".into()));
    }
    Ok(EoType { w: w.clone(), word: w.reduced_word().letters().to_vec(), psi: values })
}

/// The EO type of the module built from `U` equals the lift of the fine label of `U`.
pub fn verify_pullback(u: &Subspace, g: usize) -> Result<bool> {
    let l = SymplecticSpace::standard(u.field(), u.dim());
    let label = classify_fine(&l, u, DEFAULT_TWIST)?;
    let eo = eo_type(&DieudonneModule::from_lagrangian(u, g)?)?;
    Ok(eo.w == label.w.r_map_inv(g)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> FieldCtx {
        FieldCtx::new(2, 4).unwrap()
    }

    fn line(f: &FieldCtx, slope: GfElem) -> Subspace {
        Subspace::span(f, 2, vec![vec![f.one(), slope]]).unwrap()
    }

    #[test]
    fn semilinear_composition_rule() {
        let f = FieldCtx::new(3, 2).unwrap();
        let t = f.generator();
        let mut a = Matrix::identity(&f, 2);
        a[(0, 1)] = t;
        let mut b = Matrix::identity(&f, 2);
        b[(1, 0)] = f.add(t, f.one());
        let fa = SemilinearMap { matrix: a, twist: 1 };
        let fb = SemilinearMap { matrix: b, twist: -1 };
        let x = vec![t, f.mul(t, t)];
        let direct = fa.apply(&f, &fb.apply(&f, &x).unwrap()).unwrap();
        let composed = fa.compose(&f, &fb).unwrap().apply(&f, &x).unwrap();
        assert_eq!(direct, composed);
    }

    #[test]
    fn small_models() {
        let f = field();
        let t = f.generator();
        for g in 2..=3 {
            for slope in [f.one(), t] {
                let m = DieudonneModule::from_lagrangian(&line(&f, slope), g).unwrap();
                assert!(m.invariants().unwrap().all_hold());
                assert_eq!(m.ker_f().dim(), g);
                assert_eq!(m.slots().unwrap(), [0, 1, g - 1, g + 1, 2 * g - 1, 2 * g]);
            }
        }
        assert_eq!(
            DieudonneModule::from_lagrangian(&Subspace::coordinate(&f, 4, [1, 2]), 3).unwrap_err(),
            Error::RankTooSmall { c: 2, g: 3 }
        );
    }

    #[test]
    fn eo_types_rank_one() {
        let f = field();
        let rational = DieudonneModule::from_lagrangian(&line(&f, f.one()), 2).unwrap();
        let eo = eo_type(&rational).unwrap();
        assert!(eo.w.is_identity());
        assert_eq!(&eo.psi[..3], &[0, 0, 0]);
        let other = DieudonneModule::from_lagrangian(&line(&f, f.generator()), 2).unwrap();
        let eo = eo_type(&other).unwrap();
        assert_eq!(eo.w.one_line(), vec![1, 3, 2, 4]);
        assert_eq!(&eo.psi[..3], &[0, 0, 1]);
    }

    #[test]
    fn preimage_edges() {
        let f = field();
        let m = DieudonneModule::from_lagrangian(&line(&f, f.generator()), 3).unwrap();
        assert_eq!(m.v_preimage(&Subspace::full(&f, 6)).unwrap(), Subspace::full(&f, 6));
        assert_eq!(m.v_preimage(&Subspace::zero(&f, 6)).unwrap(), m.ker_v());
    }

    #[test]
    fn superspecial_rank_one() {
        let f = FieldCtx::new(3, 2).unwrap();
        let mut a = Matrix::zeros(2, 2);
        a[(1, 0)] = f.one();
        let b = a.scale(&f, f.from_int(-1));
        let gram = SymplecticSpace::standard(&f, 1).gram().clone();
        let m = DieudonneModule::new(&f, a, b, gram).unwrap();
        assert!(m.invariants().unwrap().all_hold());
        let cf = canonical_flag(&m).unwrap();
        assert!(cf.rounds <= 2);
        assert!(eo_type(&m).unwrap().w.is_identity());
    }

    #[test]
    fn pullback_rank_one() {
        let f = field();
        let sp = SymplecticSpace::standard(&f, 1);
        for u in sp.enumerate_lagrangians() {
            assert!(verify_pullback(&u, 2).unwrap());
            assert!(verify_pullback(&u, 3).unwrap());
        }
    }
}
