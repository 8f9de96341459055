//! Dense matrices over a [`FieldCtx`] with row reduction.

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, GfElem};

/// Row-major dense matrix. Arithmetic takes the field explicitly.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<GfElem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![GfElem::ZERO; rows * cols] }
    }

    pub fn identity(field: &FieldCtx, n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GfElem>>, cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r);
        }
        Ok(Matrix { rows: nrows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[GfElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<GfElem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, field: &FieldCtx, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = field.add(out[(i, j)], field.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, field: &FieldCtx, v: &[GfElem]) -> Result<Vec<GfElem>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| field.sum(self.row(i).iter().zip(v).map(|(&a, &b)| field.mul(a, b))))
            .collect())
    }

    pub fn scale(&self, field: &FieldCtx, s: GfElem) -> Matrix {
        self.map(|x| field.mul(s, x))
    }

    pub fn map(&self, f: impl Fn(GfElem) -> GfElem) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| f(x)).collect() }
    }

    /// Entrywise `p^r`-power.
    pub fn frobenius(&self, field: &FieldCtx, r: i64) -> Matrix {
        self.map(|x| field.frobenius(x, r))
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)];
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out[(i, j)] = self[(r0 + i, c0 + j)];
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Reduced row-echelon form in place; zero rows are dropped. Returns pivot columns.
    pub fn rref(&mut self, field: &FieldCtx) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = field.inv(self[(r, c)]).expect("pivot is nonzero");
            for j in c..self.cols {
                self[(r, j)] = field.mul(inv, self[(r, j)]);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self[(i, c)];
                if factor.is_zero() {
                    continue;
                }
                let nf = field.neg(factor);
                for j in c..self.cols {
                    let v = self[(r, j)];
                    if !v.is_zero() {
                        self[(i, j)] = field.add(self[(i, j)], field.mul(nf, v));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        self.data.truncate(r * self.cols);
        self.rows = r;
        pivots
    }

    pub fn rank(&self, field: &FieldCtx) -> usize {
        self.clone().rref(field).len()
    }

    /// Basis (as rows) of the right kernel `{x : M x = 0}`, in RREF.
    pub fn kernel(&self, field: &FieldCtx) -> Matrix {
        let mut r = self.clone();
        let pivots = r.rref(field);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(free.len(), self.cols);
        for (bi, &f) in free.iter().enumerate() {
            basis[(bi, f)] = field.one();
            for (pi, &pc) in pivots.iter().enumerate() {
                basis[(bi, pc)] = field.neg(r[(pi, f)]);
            }
        }
        basis.rref(field);
        basis
    }

    pub fn inverse(&self, field: &FieldCtx) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &Matrix::identity(field, n));
        let pivots = aug.rref(field);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(aug.block(0, n, n, n))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = GfElem;
    fn index(&self, (i, j): (usize, usize)) -> &GfElem {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GfElem {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(f: &FieldCtx, rows: &[&[i64]]) -> Matrix {
        let cols = rows[0].len();
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| f.from_int(x)).collect()).collect(), cols).unwrap()
    }

    #[test]
    fn rref_and_kernel() {
        let f = FieldCtx::new(5, 1).unwrap();
        let a = m(&f, &[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(a.rank(&f), 2);
        let k = a.kernel(&f);
        assert_eq!(k.rows(), 1);
        let v = a.apply(&f, k.row(0)).unwrap();
        assert!(v.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn inverse_roundtrip() {
        let f = FieldCtx::new(3, 2).unwrap();
        let t = f.generator();
        let mut a = Matrix::identity(&f, 3);
        a[(0, 1)] = t;
        a[(2, 0)] = f.add(t, f.one());
        let inv = a.inverse(&f).unwrap();
        assert_eq!(a.mul(&f, &inv).unwrap(), Matrix::identity(&f, 3));
        assert!(Matrix::zeros(2, 2).inverse(&f).is_none());
    }
}
