//! Exact arithmetic in small finite fields `F_{p^k}`.
//!
//! Elements are stored as integer codes `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`
//! over the polynomial basis `1, t, ..., t^{k-1}`, where `t` is a root of the
//! lexicographically first monic irreducible polynomial of degree `k`. The
//! code ordering is the lexicographic order used for that search, so a given
//! `(p, k)` always yields the same field bit-for-bit.
//!
//! Fields of order at most 256 carry full addition and multiplication tables.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field order accepted by [`FieldCtx::new`].
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

const TABLE_LIMIT: u32 = 256;

/// An element of a finite field, as its integer code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GfElem(pub(crate) u32);

impl GfElem {
    pub const ZERO: GfElem = GfElem(0);

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    frob: Vec<u16>,
}

struct Inner {
    p: u32,
    k: u32,
    order: u32,
    /// low coefficients `c_0..c_{k-1}` of the monic modulus
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

/// Shared, immutable description of `F_{p^k}`. Cloning is cheap.
#[derive(Clone)]
pub struct FieldCtx(Arc<Inner>);

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.0.p, self.0.k, self.modulus())
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldCtx {}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// Dense polynomials over F_p, index = degree.

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    // m monic
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &mc) in m.iter().enumerate() {
            let t = (lead as u64 * mc as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - t) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let k = f.len() - 1;
    if k <= 1 {
        return k == 1;
    }
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut g = digits(low, p, d);
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn digits(mut code: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((code % p as u64) as u32);
        code /= p as u64;
    }
    out
}

impl FieldCtx {
    /// Builds `F_{p^k}` with the lexicographically first monic irreducible modulus.
    pub fn new(p: u32, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::ZeroDegree);
        }
        let order = (p as u64).checked_pow(k).filter(|&q| q <= MAX_FIELD_ORDER);
        let Some(order) = order else {
            return Err(Error::FieldTooLarge { p, k });
        };
        let modulus = (0..(p as u64).pow(k))
            .map(|low| {
                let mut f = digits(low, p, k as usize);
                f.push(1);
                f
            })
            .find(|f| is_irreducible(f, p))
            .map(|mut f| {
                f.pop();
                f
            })
            .expect("an irreducible polynomial exists in every degree");
        let mut inner = Inner { p, k, order: order as u32, modulus, tables: None };
        if inner.order <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(FieldCtx(Arc::new(inner)))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.k
    }

    pub fn order(&self) -> u32 {
        self.0.order
    }

    /// Full monic modulus, constant term first.
    pub fn modulus(&self) -> Vec<u32> {
        let mut m = self.0.modulus.clone();
        m.push(1);
        m
    }

    pub fn zero(&self) -> GfElem {
        GfElem(0)
    }

    pub fn one(&self) -> GfElem {
        GfElem(1)
    }

    /// The polynomial generator `t` (equal to the modulus root in the prime field).
    pub fn generator(&self) -> GfElem {
        if self.0.k == 1 {
            self.from_int(-(self.0.modulus[0] as i64))
        } else {
            GfElem(self.0.p)
        }
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, v: i64) -> GfElem {
        GfElem(v.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn elem(&self, code: u64) -> Result<GfElem> {
        if code >= self.0.order as u64 {
            return Err(Error::ElementOutOfRange { code, order: self.0.order as u64 });
        }
        Ok(GfElem(code as u32))
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<GfElem> {
        if coeffs.len() > self.0.k as usize {
            return Err(Error::DimensionMismatch { expected: self.0.k as usize, found: coeffs.len() });
        }
        let mut code = 0u64;
        for &c in coeffs.iter().rev() {
            if c >= self.0.p {
                return Err(Error::ElementOutOfRange { code: c as u64, order: self.0.p as u64 });
            }
            code = code * self.0.p as u64 + c as u64;
        }
        Ok(GfElem(code as u32))
    }

    /// Coefficients over `F_p`, constant term first, length `k`.
    pub fn coeffs(&self, a: GfElem) -> Vec<u32> {
        digits(a.0 as u64, self.0.p, self.0.k as usize)
    }

    pub fn elements(&self) -> impl Iterator<Item = GfElem> + '_ {
        (0..self.0.order).map(GfElem)
    }

    pub fn add(&self, a: GfElem, b: GfElem) -> GfElem {
        match &self.0.tables {
            Some(t) => GfElem(t.add[(a.0 * self.0.order + b.0) as usize] as u32),
            None => add_slow(&self.0, a, b),
        }
    }

    pub fn neg(&self, a: GfElem) -> GfElem {
        match &self.0.tables {
            Some(t) => GfElem(t.neg[a.0 as usize] as u32),
            None => neg_slow(&self.0, a),
        }
    }

    pub fn sub(&self, a: GfElem, b: GfElem) -> GfElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: GfElem, b: GfElem) -> GfElem {
        match &self.0.tables {
            Some(t) => GfElem(t.mul[(a.0 * self.0.order + b.0) as usize] as u32),
            None => mul_slow(&self.0, a, b),
        }
    }

    pub fn pow(&self, a: GfElem, mut e: u64) -> GfElem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: GfElem) -> Result<GfElem> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(match &self.0.tables {
            Some(t) => GfElem(t.inv[a.0 as usize] as u32),
            None => self.pow(a, self.0.order as u64 - 2),
        })
    }

    pub fn div(&self, a: GfElem, b: GfElem) -> Result<GfElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^(p^r)`; negative `r` applies the inverse Frobenius.
    pub fn frobenius(&self, a: GfElem, r: i64) -> GfElem {
        let r = r.rem_euclid(self.0.k as i64) as u32;
        match &self.0.tables {
            Some(t) => (0..r).fold(a, |x, _| GfElem(t.frob[x.0 as usize] as u32)),
            None => (0..r).fold(a, |x, _| self.pow(x, self.0.p as u64)),
        }
    }

    /// True when `a` lies in the subfield `F_{p^d}`.
    pub fn in_subfield(&self, a: GfElem, d: u32) -> bool {
        self.frobenius(a, d as i64) == a
    }

    pub fn sum<I: IntoIterator<Item = GfElem>>(&self, items: I) -> GfElem {
        items.into_iter().fold(self.zero(), |acc, x| self.add(acc, x))
    }

    /// Renders an element as a polynomial in `t`, e.g. `t+1`.
    pub fn format(&self, a: GfElem) -> String {
        let c = self.coeffs(a);
        let mut terms = Vec::new();
        for (i, &ci) in c.iter().enumerate().rev() {
            if ci == 0 {
                continue;
            }
            let coef = if ci == 1 && i > 0 { String::new() } else { ci.to_string() };
            terms.push(match i {
                0 => coef,
                1 => format!("{coef}t"),
                _ => format!("{coef}t^{i}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

fn add_slow(f: &Inner, a: GfElem, b: GfElem) -> GfElem {
    if f.p == 2 {
        return GfElem(a.0 ^ b.0);
    }
    let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
    while x > 0 || y > 0 {
        out += ((x % f.p + y % f.p) % f.p) * place;
        x /= f.p;
        y /= f.p;
        place = place.wrapping_mul(f.p);
    }
    GfElem(out)
}

fn neg_slow(f: &Inner, a: GfElem) -> GfElem {
    if f.p == 2 {
        return a;
    }
    let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
    while x > 0 {
        out += ((f.p - x % f.p) % f.p) * place;
        x /= f.p;
        place = place.wrapping_mul(f.p);
    }
    GfElem(out)
}

fn mul_slow(f: &Inner, a: GfElem, b: GfElem) -> GfElem {
    let k = f.k as usize;
    let x = digits(a.0 as u64, f.p, k);
    let y = digits(b.0 as u64, f.p, k);
    let mut prod = vec![0u32; 2 * k];
    for (i, &xi) in x.iter().enumerate() {
        if xi == 0 {
            continue;
        }
        for (j, &yj) in y.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + xi as u64 * yj as u64) % f.p as u64) as u32;
        }
    }
    let mut m = f.modulus.clone();
    m.push(1);
    let r = poly_rem(&prod, &m, f.p);
    let mut code = 0u64;
    for &c in r.iter().rev() {
        code = code * f.p as u64 + c as u64;
    }
    GfElem(code as u32)
}

fn build_tables(f: &Inner) -> Tables {
    let q = f.order;
    let mut add = vec![0u16; (q * q) as usize];
    let mut mul = vec![0u16; (q * q) as usize];
    for a in 0..q {
        for b in 0..q {
            add[(a * q + b) as usize] = add_slow(f, GfElem(a), GfElem(b)).0 as u16;
            mul[(a * q + b) as usize] = mul_slow(f, GfElem(a), GfElem(b)).0 as u16;
        }
    }
    let neg = (0..q).map(|a| neg_slow(f, GfElem(a)).0 as u16).collect();
    let mut inv = vec![0u16; q as usize];
    for a in 1..q {
        for b in 1..q {
            if mul[(a * q + b) as usize] == 1 {
                inv[a as usize] = b as u16;
                break;
            }
        }
    }
    let frob = (0..q)
        .map(|a| {
            let mut acc = 1u32;
            for _ in 0..f.p {
                acc = mul[(acc * q + a) as usize] as u32;
            }
            acc as u16
        })
        .collect();
    Tables { add, mul, neg, inv, frob }
}

/// A fixed ring embedding `F_{p^k} -> F_{p^{km}}`.
///
/// The generator of the source is sent to the smallest-code root of the
/// source modulus in the target, so the embedding is reproducible.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: FieldCtx,
    target: FieldCtx,
    gen_image: GfElem,
}

impl Embedding {
    pub fn new(source: &FieldCtx, target: &FieldCtx) -> Result<Self> {
        if source.p() != target.p() || !target.degree().is_multiple_of(source.degree()) {
            return Err(Error::DegreeMismatch { from: source.degree(), to: target.degree() });
        }
        let modulus = source.modulus();
        let gen_image = target
            .elements()
            .find(|&b| {
                let v = modulus
                    .iter()
                    .rev()
                    .fold(target.zero(), |acc, &c| target.add(target.mul(acc, b), target.from_int(c as i64)));
                v.is_zero()
            })
            .ok_or_else(|| Error::Invariant("source modulus has no root in target".into()))?;
        Ok(Embedding { source: source.clone(), target: target.clone(), gen_image })
    }

    pub fn source(&self) -> &FieldCtx {
        &self.source
    }

    pub fn target(&self) -> &FieldCtx {
        &self.target
    }

    pub fn apply(&self, a: GfElem) -> GfElem {
        let t = &self.target;
        self.source
            .coeffs(a)
            .iter()
            .rev()
            .fold(t.zero(), |acc, &c| t.add(t.mul(acc, self.gen_image), t.from_int(c as i64)))
    }
}

/// Embeds `a` from `source` into `target`.
pub fn embed(a: GfElem, source: &FieldCtx, target: &FieldCtx) -> Result<GfElem> {
    Ok(Embedding::new(source, target)?.apply(a))
}
